"""
Verification Service

Standalone checks of the engine:

- relation_A / relation_B / relation_C: local wall-crossing identities on
  balanced vector stars with signed determinants, plus a seeded fuzzer
- kontsevich_N and welschinger_total: independent numeric oracles for the
  y = 1 and y = -1 endpoints
- invariance_harness: the same invariant through several seeded configurations
- check_curve_properties: per-curve laws (symmetry, Laurent-ness, broccoli
  index dichotomy, parity ledger, bijection, broccolization)
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb as binomial
import logging
import random

from .broccolization import broccolize
from .curve_model import Degree, Vector, add, curve_class_predicates, det
from .enumeration import Config, EnumerationReport, enumerate_through
from .errors import ConfigurationError, DegenerateBracketError
from .invariants import (
    InvariantKind,
    InvariantResult,
    broccoli_index,
    compute_for_seed,
    parity_ledger,
    real_mult,
    refined_mult,
)
from .laurent import QFraction, YLaurent, bracket_minus, bracket_plus, plus_divisibility_order, to_y

logger = logging.getLogger(__name__)


# --- Wall-crossing relations ---

def _check_balanced(vectors: tuple[Vector, ...]) -> None:
    total = (0, 0)
    for v in vectors:
        total = add(total, v)
    if total != (0, 0):
        raise ConfigurationError(f"Vectors {list(vectors)} do not sum to zero")


def relation_A(v1: Vector, v2: Vector, v3: Vector) -> QFraction:
    """[A12] + [A13]; vanishes on every balanced triple."""
    _check_balanced((v1, v2, v3))
    return QFraction(bracket_minus(det(v1, v2)) + bracket_minus(det(v1, v3)))


def relation_B(v1: Vector, v2: Vector, v3: Vector, v4: Vector) -> QFraction:
    """[A12][A34] + [A23][A14] + [A13][A42] for four type II resolutions."""
    _check_balanced((v1, v2, v3, v4))
    return QFraction(
        bracket_minus(det(v1, v2)) * bracket_minus(det(v3, v4))
        + bracket_minus(det(v2, v3)) * bracket_minus(det(v1, v4))
        + bracket_minus(det(v1, v3)) * bracket_minus(det(v4, v2))
    )


def relation_C(v1: Vector, v2: Vector, v3: Vector, v4: Vector) -> QFraction:
    """
    [A12][A34]+ + [A23]+[A14] + [A13][A42]+ for a type II and a type III vertex.

    Raises:
        DegenerateBracketError: If A34, A23 or A42 vanishes
    """
    _check_balanced((v1, v2, v3, v4))
    return (
        bracket_minus(det(v1, v2)) * bracket_plus(det(v3, v4))
        + bracket_plus(det(v2, v3)) * bracket_minus(det(v1, v4))
        + bracket_minus(det(v1, v3)) * bracket_plus(det(v4, v2))
    )


RELATIONS = {"A": (relation_A, 3), "B": (relation_B, 4), "C": (relation_C, 4)}


@dataclass
class RelationReport:
    """
    Outcome of a fuzz run.

    Attributes:
        relation: "A", "B" or "C"
        samples: Samples drawn
        skipped: Degenerate samples (a needed determinant vanished)
        violations: Vector stars on which the relation did not vanish
        seed: Seed of the run
    """
    relation: str
    samples: int
    seed: int
    skipped: int = 0
    violations: list[list[Vector]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "samples": self.samples,
            "seed": self.seed,
            "skipped": self.skipped,
            "violations": [[list(v) for v in star] for star in self.violations],
            "ok": self.ok,
        }


def random_star(rng: random.Random, size: int, max_entry: int) -> list[Vector]:
    """size-1 random vectors plus the one that balances them."""
    star = [(rng.randint(-max_entry, max_entry), rng.randint(-max_entry, max_entry)) for _ in range(size - 1)]
    total = (0, 0)
    for v in star:
        total = add(total, v)
    star.append((-total[0], -total[1]))
    return star


def fuzz_relation(relation: str, samples: int, max_entry: int, seed: int) -> RelationReport:
    """
    Evaluate a relation on seeded random balanced stars.

    Raises:
        ConfigurationError: If the relation name is unknown
    """
    if relation not in RELATIONS:
        raise ConfigurationError(f"Unknown relation {relation!r}; expected one of {sorted(RELATIONS)}")
    check, size = RELATIONS[relation]
    rng = random.Random(seed)
    report = RelationReport(relation, samples, seed)
    for _ in range(samples):
        star = random_star(rng, size, max_entry)
        try:
            value = check(*star)
        except DegenerateBracketError:
            report.skipped += 1
            continue
        if not value.is_zero:
            report.violations.append(star)
    logger.info(
        f"Relation {relation}: {samples} samples, {report.skipped} skipped, "
        f"{len(report.violations)} violations"
    )
    return report


# --- Oracles ---

@lru_cache(maxsize=None)
def kontsevich_N(d: int) -> int:
    """Number of rational plane curves of degree d through 3d-1 general points."""
    if d < 1:
        raise ConfigurationError(f"Degree must be positive, got {d}")
    if d == 1:
        return 1
    total = 0
    for d_a in range(1, d):
        d_b = d - d_a
        total += (
            kontsevich_N(d_a) * kontsevich_N(d_b) * d_a ** 2 * d_b
            * (d_b * binomial(3 * d - 4, 3 * d_a - 2) - d_a * binomial(3 * d - 4, 3 * d_a - 1))
        )
    return total


def welschinger_total(
    degree: Degree,
    r: int,
    cfg: Config,
    report: EnumerationReport | None = None,
) -> Fraction:
    """Sum of real multiplicities of the curves through r real points, divided by |G|."""
    if report is None:
        report = enumerate_through(degree, r, 0, cfg)
    total = sum(Fraction(curve.orbit * real_mult(curve)) for curve in report.curves)
    return total / report.g_order


# --- Invariance harness ---

@dataclass
class InvarianceReport:
    """
    Outcome of computing one invariant through several configurations.

    Attributes:
        results: One result per seed, in seed order
        configs: The configuration drawn for each seed
        mismatch: First pair of seeds with different values, if any
    """
    results: list[InvariantResult]
    configs: list[Config]
    mismatch: tuple[int, int] | None = None

    @property
    def consistent(self) -> bool:
        return self.mismatch is None

    @property
    def value(self) -> YLaurent:
        return self.results[0].value

    def to_dict(self) -> dict:
        payload = {
            "consistent": self.consistent,
            "value": self.value.to_json(),
            "values": {str(r.seeds[0]): r.value.to_json() for r in self.results},
        }
        if self.mismatch is not None:
            a, b = self.mismatch
            payload["mismatch"] = {
                "seeds": [self.results[a].seeds[0], self.results[b].seeds[0]],
                "configs": [self.configs[a].to_dict(), self.configs[b].to_dict()],
            }
        return payload


def _run_seed(job: tuple) -> tuple[InvariantResult, Config]:
    kind, degree, r, s, seed, draw_options = job
    return compute_for_seed(kind, degree, r, s, seed, **draw_options)


def invariance_harness(
    degree: Degree,
    r: int,
    s: int,
    seeds: list[int],
    kind: InvariantKind = InvariantKind.REFINED_BROCCOLI,
    workers: int = 1,
    **draw_options,
) -> InvarianceReport:
    """
    Compute the invariant through one generic configuration per seed and
    compare the values exactly.

    Args:
        degree: Degree including fixed ends
        r: Real markings
        s: Complex markings
        seeds: At least two seeds
        kind: Which invariant
        workers: Worker processes; 1 runs in-process
        **draw_options: spread, denominator_bound, retry_budget

    Raises:
        ConfigurationError: With fewer than two seeds
    """
    if len(seeds) < 2:
        raise ConfigurationError("The invariance harness needs at least two seeds")
    jobs = [(kind, degree, r, s, seed, draw_options) for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_run_seed, jobs))
    else:
        runs = [_run_seed(job) for job in jobs]

    results = [result for result, _ in runs]
    configs = [cfg for _, cfg in runs]
    mismatch = None
    for i in range(1, len(results)):
        if results[i].value != results[0].value:
            mismatch = (0, i)
            break
    report = InvarianceReport(results, configs, mismatch)
    if report.consistent:
        logger.info(f"Invariance holds across {len(seeds)} seeds: {report.value}")
    else:
        logger.error(f"Invariance violated between seeds {seeds[0]} and {seeds[mismatch[1]]}")
    return report


# --- Per-curve properties ---

@dataclass
class PropertyReport:
    """Per-curve law violations found in one enumeration."""
    curves: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"curves": self.curves, "violations": list(self.violations), "ok": self.ok}


def check_curve_properties(report: EnumerationReport, fixed: frozenset[int]) -> PropertyReport:
    """
    Check the per-curve laws on every curve of an enumeration.

    - refined multiplicity is symmetric
    - m_C times the non-fixed end weights has integer coefficients
    - old broccoli iff i_B = 0 iff m_C(-1) != 0; otherwise i_B is even,
      positive and equals the (q + 1/q)-order of m_C times the weights
    - parity ledger on old broccoli curves
    - refined broccoli and descendant flags agree
    - broccolization ends at i_B = 0
    """
    found = PropertyReport()
    for position, curve in enumerate(report.curves):
        found.curves += 1
        comb = curve.comb
        where = f"curve {position}"
        flags = curve_class_predicates(comb, fixed)
        if flags.is_refined_broccoli != flags.is_descendant:
            found.violations.append(f"{where}: refined broccoli and descendant flags differ")

        weights = 1
        for end in comb.ends:
            if end.label not in fixed:
                weights *= end.weight
        m = refined_mult(comb, fixed).to_laurent()
        value = to_y(m)
        if not value.is_symmetric():
            found.violations.append(f"{where}: multiplicity {value} is not symmetric")
        scaled = m.scale(weights)
        if not scaled.has_integer_coefficients():
            found.violations.append(f"{where}: {scaled} has non-integer coefficients")

        index = broccoli_index(comb, fixed)
        at_minus_one = value.evaluate(-1)
        if flags.is_old_broccoli:
            if index != 0 or at_minus_one == 0:
                found.violations.append(f"{where}: old broccoli curve with i_B={index}, m(-1)={at_minus_one}")
            left, right = parity_ledger(comb, fixed)
            if left != right:
                found.violations.append(f"{where}: parity ledger {left} != {right}")
        else:
            order = plus_divisibility_order(scaled)
            if index <= 0 or index % 2 or at_minus_one != 0 or order != index:
                found.violations.append(
                    f"{where}: i_B={index}, divisibility order {order}, m(-1)={at_minus_one}"
                )
            result = broccolize(comb, fixed)
            if broccoli_index(result.comb, fixed) != 0:
                found.violations.append(f"{where}: broccolization did not reach i_B=0")

    logger.info(f"Checked {found.curves} curves, {len(found.violations)} violations")
    return found
