"""
Invariants Service

Curve multiplicities and the invariants aggregated from them.

Per curve:
- refined_mult: product of end and vertex multiplicities in q = y^(1/2)
- refined_severi_mult, real_mult, descendant_mult, broccoli_index
- refined_welschinger_mult (experimental)

Per configuration:
- invariant_rB / invariant_desc / invariant_desc_star / invariant_severi
- trop_descendant and its unordered variant

Aggregates are exact sums over one representative per label orbit,
weighted by orbit size and divided by |G(degree, F)|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb as binomial
import logging

from .curve_model import (
    CombType,
    CurveClassFlags,
    Degree,
    MarkingKind,
    PlacedCurve,
    VertexClass,
    VertexTag,
    curve_class_predicates,
    is_even,
    old_vertex_classes,
    vertex_classes,
)
from .enumeration import Config, EnumerationReport, enumerate_through, generic_configuration
from .errors import (
    ConfigurationError,
    DegenerateConfigurationError,
    NotWelschingerError,
    UnsupportedFeatureError,
)
from .laurent import (
    QFraction,
    QLaurent,
    YLaurent,
    bracket_minus,
    bracket_plus,
    double_end_factor,
    end_mult,
    end_mult_simple,
    to_y,
)

logger = logging.getLogger(__name__)


# --- Schemes ---

class MultiplicityScheme(str, Enum):
    """End multiplicities: the parity-signed ones, or the simpler m' variant."""
    STANDARD = "standard"
    SIMPLE = "simple"


class VertexScheme(str, Enum):
    """
    How type II and type III vertices are counted.

    Refined II uses the quantum integer, classical II the Mikhalkin
    multiplicity a. Refined III uses the plus-bracket, classical III counts 1.
    Only REFINED_BOTH (and its y=1 shadow CLASSICAL) gives invariants.
    """
    REFINED_BOTH = "refined"
    REFINED_II_ONLY = "refined-ii"
    REFINED_III_ONLY = "refined-iii"
    CLASSICAL = "classical"

    @property
    def refines_ii(self) -> bool:
        return self in (VertexScheme.REFINED_BOTH, VertexScheme.REFINED_II_ONLY)

    @property
    def refines_iii(self) -> bool:
        return self in (VertexScheme.REFINED_BOTH, VertexScheme.REFINED_III_ONLY)


def _curve_comb(curve: PlacedCurve | CombType) -> CombType:
    return curve.comb if isinstance(curve, PlacedCurve) else curve


# --- Per-curve multiplicities ---

def vertex_mult(vertex: VertexClass, scheme: VertexScheme = VertexScheme.REFINED_BOTH) -> QFraction:
    """
    Multiplicity of one refined vertex.

    Raises:
        ConfigurationError: If the vertex is not of type I, II or III
    """
    if vertex.tag is VertexTag.TYPE_I:
        return QFraction(1)
    if vertex.tag is VertexTag.TYPE_II:
        if scheme.refines_ii:
            return QFraction(bracket_minus(vertex.mikhalkin_a))
        return QFraction(vertex.mikhalkin_a)
    if vertex.tag is VertexTag.TYPE_III:
        if not scheme.refines_iii:
            return QFraction(1)
        if vertex.mikhalkin_a == 0:
            return double_end_factor()
        return bracket_plus(vertex.mikhalkin_a)
    raise ConfigurationError(f"Vertex of type {vertex.tag.value} has no refined multiplicity")


def ends_mult(
    comb: CombType,
    fixed: frozenset[int],
    multiplicity: MultiplicityScheme = MultiplicityScheme.STANDARD,
) -> QFraction:
    factor = end_mult if multiplicity is MultiplicityScheme.STANDARD else end_mult_simple
    total = QFraction(1)
    for end in comb.ends:
        total = total * factor(end.weight, end.label in fixed)
    return total


def refined_mult(
    curve: PlacedCurve | CombType,
    fixed: frozenset[int],
    multiplicity: MultiplicityScheme = MultiplicityScheme.STANDARD,
    vertex_scheme: VertexScheme = VertexScheme.REFINED_BOTH,
) -> QFraction:
    """
    Refined multiplicity m_C as a q-fraction.

    With the default schemes the result always reduces to a Laurent
    polynomial in y; use refined_value to get it in that form.
    """
    comb = _curve_comb(curve)
    total = ends_mult(comb, fixed, multiplicity)
    for vertex in vertex_classes(comb):
        total = total * vertex_mult(vertex, vertex_scheme)
    return total


def refined_value(
    curve: PlacedCurve | CombType,
    fixed: frozenset[int],
    multiplicity: MultiplicityScheme = MultiplicityScheme.STANDARD,
) -> YLaurent:
    """
    refined_mult reduced to a y-Laurent polynomial.

    Raises:
        NotLaurentError: If the fraction does not reduce or has odd q-exponents
    """
    return to_y(refined_mult(curve, fixed, multiplicity).to_laurent())


def refined_severi_mult(curve: PlacedCurve | CombType) -> YLaurent:
    """
    Product of quantum integers over the unmarked trivalent vertices.

    Raises:
        ConfigurationError: Unless the curve has only real markings on 2-valent
            vertices, trivalent unmarked vertices and primitive ends
    """
    comb = _curve_comb(curve)
    if any(m.kind is MarkingKind.COMPLEX for m in comb.markings):
        raise ConfigurationError("Refined Severi multiplicity needs s = 0")
    if any(end.weight != 1 for end in comb.ends):
        raise ConfigurationError("Refined Severi multiplicity needs primitive ends")
    total = QLaurent.one()
    for vertex in vertex_classes(comb):
        if vertex.tag is VertexTag.TYPE_II:
            total = total * bracket_minus(vertex.mikhalkin_a)
        elif vertex.tag is not VertexTag.TYPE_I:
            raise ConfigurationError(f"Vertex of type {vertex.tag.value} is not allowed in a Severi curve")
    return to_y(total)


def mikhalkin_mult(curve: PlacedCurve | CombType) -> int:
    """Product of Mikhalkin multiplicities over unmarked trivalent vertices."""
    total = 1
    for vertex in vertex_classes(_curve_comb(curve)):
        if vertex.tag is VertexTag.TYPE_II:
            total *= vertex.mikhalkin_a
    return total


descendant_mult = mikhalkin_mult


def real_mult(curve: PlacedCurve | CombType) -> int:
    """0 for even complex multiplicity, otherwise +1 or -1 by its residue mod 4."""
    mult = mikhalkin_mult(curve)
    if mult % 2 == 0:
        return 0
    return 1 if mult % 4 == 1 else -1


def broccoli_index(curve: PlacedCurve | CombType, fixed: frozenset[int]) -> int:
    """
    i_B = -#even complex-marked vertices - #even fixed ends
          + #even unmarked trivalent vertices + #even non-fixed ends.
    """
    comb = _curve_comb(curve)
    index = 0
    for vertex in vertex_classes(comb):
        if vertex.tag is VertexTag.TYPE_III and vertex.even:
            index -= 1
        elif vertex.tag is VertexTag.TYPE_II and vertex.even:
            index += 1
    for end in comb.ends:
        if is_even(end.direction):
            index += -1 if end.label in fixed else 1
    return index


def parity_ledger(curve: PlacedCurve | CombType, fixed: frozenset[int]) -> tuple[int, int]:
    """
    Both sides of n(3) + n(4) + e_n = n(6) + e_f on an oriented curve.

    Returns:
        (left, right); they agree on old broccoli curves
    """
    comb = _curve_comb(curve)
    tags = [c.tag for c in old_vertex_classes(comb)]
    even_ends = [end for end in comb.ends if is_even(end.direction)]
    e_f = sum(1 for end in even_ends if end.label in fixed)
    e_n = len(even_ends) - e_f
    left = tags.count(VertexTag.OLD_3) + tags.count(VertexTag.OLD_4) + e_n
    right = tags.count(VertexTag.OLD_6A) + tags.count(VertexTag.OLD_6B) + e_f
    return left, right


# --- Refined Welschinger multiplicities (experimental) ---

def _welschinger_factor(tag: VertexTag, a: int) -> QFraction:
    if tag in (VertexTag.OLD_1, VertexTag.OLD_7):
        return QFraction(1)
    if tag in (VertexTag.OLD_2, VertexTag.OLD_3, VertexTag.OLD_4):
        return QFraction(bracket_minus(a))
    if tag in (VertexTag.OLD_5, VertexTag.OLD_6B):
        return double_end_factor() if a == 0 else bracket_plus(a)
    if tag is VertexTag.OLD_8:
        return QFraction(
            QLaurent.from_mapping({a: 2, -a: -2}),
            QLaurent.from_mapping({2: 1, -2: -1}),
        )
    raise NotWelschingerError(f"Vertex type {tag.value} does not occur in Welschinger curves")


def welschinger_mult_from_vertices(vertices: list[tuple[VertexTag | str, int]]) -> QFraction:
    """
    Refined Welschinger multiplicity from (old vertex type, a) pairs.

    Usage:
        welschinger_mult_from_vertices([("3", 2), ("6b", 0), ("8", 4)])  # 4(y + 1/y)
    """
    total = QFraction(1)
    for tag, a in vertices:
        total = total * _welschinger_factor(VertexTag(tag), a)
    return total


def refined_welschinger_mult(curve: PlacedCurve | CombType) -> QFraction:
    """
    Refined multiplicity of a Welschinger curve, vertex contributions only.

    Raises:
        NotWelschingerError: If a vertex type is not allowed in Welschinger curves
        OrientationError: If the curve is not oriented
    """
    classes = old_vertex_classes(_curve_comb(curve))
    for vertex in classes:
        if vertex.tag is VertexTag.OLD_6B and not vertex.parallel_ends:
            raise NotWelschingerError("Type 6b vertex whose parallel odd edges are not ends")
    return welschinger_mult_from_vertices([(c.tag, c.mikhalkin_a) for c in classes])


# --- Curve summary ---

@dataclass(frozen=True)
class CurveMultiplicities:
    """
    All multiplicities of one curve.

    Attributes:
        refined: m_C(y)
        mikhalkin: Product of Mikhalkin multiplicities of unmarked trivalent vertices
        real_m: Real multiplicity (only for curves without complex markings)
        descendant: Descendant multiplicity
        broccoli_index: i_B(C)
        flags: Curve class predicates
    """
    refined: YLaurent
    mikhalkin: int
    real_m: int | None
    descendant: int
    broccoli_index: int
    flags: CurveClassFlags


def curve_multiplicities(curve: PlacedCurve | CombType, fixed: frozenset[int]) -> CurveMultiplicities:
    comb = _curve_comb(curve)
    complex_free = all(m.kind is MarkingKind.REAL for m in comb.markings)
    return CurveMultiplicities(
        refined=refined_value(comb, fixed),
        mikhalkin=mikhalkin_mult(comb),
        real_m=real_mult(comb) if complex_free else None,
        descendant=descendant_mult(comb),
        broccoli_index=broccoli_index(comb, fixed),
        flags=curve_class_predicates(comb, fixed),
    )


# --- Aggregation ---

class InvariantKind(str, Enum):
    REFINED_BROCCOLI = "rB"
    DESCENDANT = "desc"
    DESCENDANT_STAR = "desc_star"
    SEVERI = "severi"


@dataclass
class InvariantResult:
    """
    One invariant value for one or more configurations.

    Attributes:
        invariant: Which invariant
        degree: Degree including fixed ends
        r: Real markings
        s: Complex markings
        value: The invariant as a y-Laurent polynomial
        curves: Labeled curves counted
        g_order: |G(degree, F)|
        seeds: Seeds the configurations were drawn from
    """
    invariant: InvariantKind
    degree: Degree
    r: int
    s: int
    value: YLaurent
    curves: int
    g_order: int
    seeds: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "invariant": self.invariant.value,
            "degree": self.degree.to_dict(),
            "r": self.r,
            "s": self.s,
            "fixed": sorted(self.degree.fixed),
            "seeds": list(self.seeds),
            "value": self.value.to_json(),
            "curves": self.curves,
            "g_order": self.g_order,
        }


def _counted(report: EnumerationReport, fixed: frozenset[int], predicate) -> list[PlacedCurve]:
    return [curve for curve in report.curves if predicate(curve_class_predicates(curve.comb, fixed))]


def _sum_laurent(curves: list[PlacedCurve], g_order: int, per_curve) -> QLaurent:
    total = QLaurent.zero()
    for curve in curves:
        total = total + per_curve(curve).scale(curve.orbit)
    return total.scale(Fraction(1, g_order))


def _report_for(degree: Degree, r: int, s: int, cfg: Config, report: EnumerationReport | None) -> EnumerationReport:
    if report is not None:
        return report
    return enumerate_through(degree, r, s, cfg)


def _result(kind, degree, r, s, value: QLaurent, curves, report, seeds) -> InvariantResult:
    result = InvariantResult(
        invariant=kind,
        degree=degree,
        r=r,
        s=s,
        value=to_y(value),
        curves=sum(curve.orbit for curve in curves),
        g_order=report.g_order,
        seeds=list(seeds),
    )
    logger.info(f"Invariant {kind.value} for r={r}, s={s}: {result.value}")
    return result


def invariant_rB(
    degree: Degree,
    r: int,
    s: int,
    cfg: Config,
    report: EnumerationReport | None = None,
    seeds: tuple[int, ...] = (),
) -> InvariantResult:
    """Refined broccoli invariant: (1/|G|) * sum of m_C(y) over refined broccoli curves."""
    report = _report_for(degree, r, s, cfg, report)
    fixed = degree.fixed
    curves = _counted(report, fixed, lambda flags: flags.is_refined_broccoli)
    value = _sum_laurent(curves, report.g_order, lambda c: refined_mult(c, fixed).to_laurent())
    return _result(InvariantKind.REFINED_BROCCOLI, degree, r, s, value, curves, report, seeds)


def invariant_desc(
    degree: Degree,
    r: int,
    s: int,
    cfg: Config,
    report: EnumerationReport | None = None,
    seeds: tuple[int, ...] = (),
) -> InvariantResult:
    """Refined descendant invariant, summed over descendant curves."""
    report = _report_for(degree, r, s, cfg, report)
    fixed = degree.fixed
    curves = _counted(report, fixed, lambda flags: flags.is_descendant)
    value = _sum_laurent(curves, report.g_order, lambda c: refined_mult(c, fixed).to_laurent())
    return _result(InvariantKind.DESCENDANT, degree, r, s, value, curves, report, seeds)


def invariant_desc_star(
    degree: Degree,
    r: int,
    s: int,
    cfg: Config,
    report: EnumerationReport | None = None,
    seeds: tuple[int, ...] = (),
) -> InvariantResult:
    """Refined descendant invariant with the simple end multiplicities."""
    report = _report_for(degree, r, s, cfg, report)
    fixed = degree.fixed
    curves = _counted(report, fixed, lambda flags: flags.is_descendant)
    value = _sum_laurent(
        curves,
        report.g_order,
        lambda c: refined_mult(c, fixed, MultiplicityScheme.SIMPLE).to_laurent(),
    )
    return _result(InvariantKind.DESCENDANT_STAR, degree, r, s, value, curves, report, seeds)


def invariant_severi(
    degree: Degree,
    r: int,
    cfg: Config,
    report: EnumerationReport | None = None,
    seeds: tuple[int, ...] = (),
) -> InvariantResult:
    """
    Tropical refined Severi degree of rational curves through r points.

    Raises:
        ConfigurationError: If the degree has fixed ends
    """
    if degree.fixed:
        raise ConfigurationError("Refined Severi degrees are defined without fixed ends")
    report = _report_for(degree, r, 0, cfg, report)
    value = _sum_laurent(report.curves, report.g_order, lambda c: refined_severi_mult(c).to_q())
    return _result(InvariantKind.SEVERI, degree, r, 0, value, report.curves, report, seeds)


INVARIANTS = {
    InvariantKind.REFINED_BROCCOLI: invariant_rB,
    InvariantKind.DESCENDANT: invariant_desc,
    InvariantKind.DESCENDANT_STAR: invariant_desc_star,
}


def compute_invariant(
    kind: InvariantKind,
    degree: Degree,
    r: int,
    s: int,
    cfg: Config,
    report: EnumerationReport | None = None,
    seeds: tuple[int, ...] = (),
) -> InvariantResult:
    if kind is InvariantKind.SEVERI:
        if s:
            raise ConfigurationError("Refined Severi degrees need s = 0")
        return invariant_severi(degree, r, cfg, report, seeds)
    return INVARIANTS[kind](degree, r, s, cfg, report, seeds)


def compute_for_seed(
    kind: InvariantKind,
    degree: Degree,
    r: int,
    s: int,
    seed: int,
    **draw_options,
) -> tuple[InvariantResult, Config]:
    """Draw a generic configuration from the seed and compute the invariant through it."""
    cfg, report = generic_configuration(degree, r, s, seed, **draw_options)
    return compute_invariant(kind, degree, r, s, cfg, report, (seed,)), cfg


def scheme_total(
    report: EnumerationReport,
    fixed: frozenset[int],
    vertex_scheme: VertexScheme,
    multiplicity: MultiplicityScheme = MultiplicityScheme.STANDARD,
) -> QFraction:
    """Orbit-weighted total of refined_mult under any scheme, kept as a fraction."""
    total = QFraction(0)
    for curve in report.curves:
        total = total + refined_mult(curve, fixed, multiplicity, vertex_scheme) * curve.orbit
    return total * QFraction(QLaurent.constant(Fraction(1, report.g_order)))


# --- Tropical descendant invariants ---

def alpha_factor(degree: Degree) -> int:
    """I^alpha: the product of the weights of the fixed ends."""
    total = 1
    for j in degree.fixed:
        total *= degree.end_weight(j)
    return total


def _check_profile(k: tuple[int, ...]) -> tuple[int, int]:
    if any(k[2:]):
        raise UnsupportedFeatureError(
            "Marked vertices of valence above 4 are not supported (k_i must vanish for i >= 2)"
        )
    padded = tuple(k) + (0, 0)
    return padded[0], padded[1]


def trop_descendant(
    degree: Degree,
    k: tuple[int, ...],
    cfg: Config,
    report: EnumerationReport | None = None,
) -> Fraction:
    """
    Ordered tropical descendant count (1/I^alpha)(1/|G|) * sum of descendant_mult.

    k = (k0, k1): the first k0 markings sit at trivalent vertices, the next
    k1 at 4-valent vertices.

    Raises:
        UnsupportedFeatureError: If k has nonzero entries beyond k1
    """
    r, s = _check_profile(k)
    report = _report_for(degree, r, s, cfg, report)
    curves = _counted(report, degree.fixed, lambda flags: flags.is_descendant)
    total = sum(Fraction(curve.orbit * descendant_mult(curve)) for curve in curves)
    return total / (report.g_order * alpha_factor(degree))


def trop_descendant_unordered(degree: Degree, k: tuple[int, ...], cfg: Config) -> Fraction:
    """
    Unordered count: the ordered count summed over every choice of which
    points carry the 4-valent markings.

    Raises:
        DegenerateConfigurationError: If some assignment of markings to
            points is not in general position
    """
    r, s = _check_profile(k)
    total = Fraction(0)
    indices = range(r + s)
    for chosen in combinations(indices, s):
        real_points = [cfg.points[i] for i in indices if i not in chosen]
        complex_points = [cfg.points[i] for i in chosen]
        reordered = Config(tuple(real_points + complex_points), cfg.lines, r, s, cfg.fixed)
        report = enumerate_through(degree, r, s, reordered)
        if report.degenerate:
            detail = report.diagnostics[0] if report.diagnostics else "no diagnostic"
            raise DegenerateConfigurationError(
                f"Marking assignment {chosen} gives a degenerate configuration: {detail}"
            )
        total += trop_descendant(degree, k, reordered, report)
    return total


def multinomial(k: tuple[int, ...]) -> int:
    """|k|! / k! for a valence profile k."""
    total, remaining = 1, sum(k)
    for part in k:
        total *= binomial(remaining, part)
        remaining -= part
    return total


def weight_ratio(degree: Degree) -> Fraction:
    """Product of odd fixed end weights over product of odd non-fixed end weights."""
    ratio = Fraction(1)
    for label in degree.labels:
        w = degree.end_weight(label)
        if w % 2:
            ratio *= w if label in degree.fixed else Fraction(1, w)
    return ratio

