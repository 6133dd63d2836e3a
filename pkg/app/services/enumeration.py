"""
Enumeration Service

Finds every rational marked tropical curve of a given degree through a
configuration of point and line conditions, using exact arithmetic.

Curves through conditions in general position are naturally oriented: edges
flow away from markings and fixed ends toward the unique non-fixed end of
their component. The search follows that flow. A *root* is a rigid piece of
curve whose output edge has a known carrier (a ray from a solved point, or
the line of a fixed end). A *path* leaves a point in a known direction,
absorbs roots at trivalent vertices and finally escapes as a non-fixed end.

Two modes share the same grammar:

- geometric: carriers are intersected exactly, so only curves through the
  configuration survive (enumerate_through)
- symbolic: every merge is allowed, which lists all orientable labeled
  combinatorial types (enumerate_types)

Every candidate found geometrically is re-solved from scratch with the exact
linear placement system as an independent check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterator, Optional
import logging
import random

from .curve_model import (
    CombType,
    Degree,
    Edge,
    End,
    Marking,
    MarkingKind,
    PlacedCurve,
    Point,
    Vector,
    line_covector,
)
from .errors import ConfigurationError, RetryBudgetExhausted
from .laurent import format_rational, parse_rational

logger = logging.getLogger(__name__)

DEFAULT_SPREAD = 10_000
DEFAULT_DENOMINATOR_BOUND = 16
DEFAULT_RETRY_BUDGET = 25


# --- Conditions ---

@dataclass(frozen=True)
class LineCondition:
    """The end `end` must lie on the line covector . x = value."""
    end: int
    covector: Vector
    value: Fraction


@dataclass(frozen=True)
class Config:
    """
    Point and line conditions.

    Attributes:
        points: P_1..P_{r+s}; the first r are real markings, the rest complex
        lines: One line condition per fixed end
        r: Number of real markings
        s: Number of complex markings
        fixed: Labels of the fixed ends
    """
    points: tuple[Point, ...]
    lines: tuple[LineCondition, ...]
    r: int
    s: int
    fixed: frozenset[int] = frozenset()

    def kind(self, label: int) -> MarkingKind:
        return MarkingKind.REAL if label <= self.r else MarkingKind.COMPLEX

    def point(self, label: int) -> Point:
        return self.points[label - 1]

    def line_for(self, end: int) -> LineCondition:
        for line in self.lines:
            if line.end == end:
                return line
        raise ConfigurationError(f"No line condition for fixed end {end}")

    def validate(self, degree: Degree) -> None:
        """
        Raises:
            ConfigurationError: If counts, fixed ends or covectors disagree with the degree
        """
        if self.fixed != degree.fixed:
            raise ConfigurationError(
                f"Configuration fixes ends {sorted(self.fixed)} but the degree fixes {sorted(degree.fixed)}"
            )
        degree.check_counts(self.r, self.s)
        if len(self.points) != self.r + self.s:
            raise ConfigurationError(f"Expected {self.r + self.s} points, got {len(self.points)}")
        if sorted(line.end for line in self.lines) != sorted(self.fixed):
            raise ConfigurationError("Exactly one line condition per fixed end is required")
        for line in self.lines:
            v = degree.direction(line.end)
            if line.covector != line_covector(v):
                raise ConfigurationError(
                    f"Covector {line.covector} of end {line.end} is not the normalized annihilator of {v}"
                )

    def to_dict(self) -> dict:
        return {
            "points": [[format_rational(x), format_rational(y)] for x, y in self.points],
            "lines": [
                {"end": line.end, "covector": list(line.covector), "value": format_rational(line.value)}
                for line in self.lines
            ],
            "r": self.r,
            "s": self.s,
            "fixed": sorted(self.fixed),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "Config":
        try:
            return cls(
                points=tuple(
                    (parse_rational(x), parse_rational(y)) for x, y in payload["points"]
                ),
                lines=tuple(
                    LineCondition(
                        int(line["end"]),
                        (int(line["covector"][0]), int(line["covector"][1])),
                        parse_rational(line["value"]),
                    )
                    for line in payload.get("lines", [])
                ),
                r=int(payload["r"]),
                s=int(payload["s"]),
                fixed=frozenset(int(j) for j in payload.get("fixed", [])),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigurationError(f"Malformed configuration: {exc}") from exc


# --- Exact linear algebra ---

def solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """
    Solve a square system exactly by Gauss-Jordan elimination.

    Returns:
        The unique solution, or None when the matrix is singular
    """
    size = len(matrix)
    rows = [list(row) + [value] for row, value in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [value / lead for value in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[r][size] for r in range(size)]


class RejectionReason(str, Enum):
    SINGULAR = "singular"
    ZERO_LENGTH = "zero_length"
    NEGATIVE_LENGTH = "negative_length"
    PARALLEL = "parallel"


DEGENERATE_REASONS = frozenset({RejectionReason.SINGULAR, RejectionReason.ZERO_LENGTH})


@dataclass(frozen=True)
class Rejection:
    reason: RejectionReason
    detail: str = ""

    @property
    def degenerate(self) -> bool:
        return self.reason in DEGENERATE_REASONS


def solve_placement(comb: CombType, cfg: Config) -> PlacedCurve | Rejection:
    """
    Place a combinatorial type through the configuration.

    Unknowns are the anchor (image of vertex 0) and the bounded edge
    lengths. Each marking contributes two equations h(x_i) = P_i and each
    fixed end one equation covector . h(y_j) = c_j.

    Returns:
        The placed curve when all lengths are strictly positive, otherwise a
        typed rejection

    Raises:
        ConfigurationError: If the system is not square
    """
    unknowns = 2 + len(comb.edges)
    paths = comb.paths_from_anchor()
    matrix: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def position_row(vertex: int, covector: tuple[int, int]) -> list[Fraction]:
        row = [Fraction(0)] * unknowns
        row[0], row[1] = Fraction(covector[0]), Fraction(covector[1])
        for index, sign in paths[vertex]:
            dx, dy = comb.edges[index].direction
            row[2 + index] += sign * (covector[0] * dx + covector[1] * dy)
        return row

    for marking in comb.markings:
        x, y = cfg.point(marking.label)
        matrix.append(position_row(marking.vertex, (1, 0)))
        rhs.append(x)
        matrix.append(position_row(marking.vertex, (0, 1)))
        rhs.append(y)
    for end in comb.ends:
        if end.label in cfg.fixed:
            line = cfg.line_for(end.label)
            matrix.append(position_row(end.vertex, line.covector))
            rhs.append(line.value)

    if len(matrix) != unknowns:
        raise ConfigurationError(
            f"Placement system is not square: {len(matrix)} conditions for {unknowns} unknowns"
        )

    solution = solve_linear(matrix, rhs)
    if solution is None:
        return Rejection(RejectionReason.SINGULAR, "placement matrix is singular")
    lengths = tuple(solution[2:])
    if any(length == 0 for length in lengths):
        return Rejection(RejectionReason.ZERO_LENGTH, "a bounded edge has length 0")
    if any(length < 0 for length in lengths):
        return Rejection(RejectionReason.NEGATIVE_LENGTH)
    return PlacedCurve(comb, (solution[0], solution[1]), lengths)


# --- Search structures ---

Key = tuple[tuple[int, ...], int]


@dataclass(frozen=True, slots=True)
class _Terminal:
    end_class: int


@dataclass(frozen=True, slots=True)
class _PathMerge:
    root: object
    rest: object
    direction: Vector


@dataclass(frozen=True, slots=True)
class _FixedRoot:
    end_class: int


@dataclass(frozen=True, slots=True)
class _MergeRoot:
    left: object
    right: object
    direction: Vector


@dataclass(frozen=True, slots=True)
class _MarkingRoot:
    label: int
    branches: tuple
    direction: Vector
    symmetry: int = 1


@dataclass(frozen=True, slots=True)
class _Carrier:
    """Locus of a root's output edge: a ray from base, or a whole line."""
    base: Point
    direction: Vector
    line: bool = False


def _cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class _ConditionSearch:
    """
    Memoized search over roots and paths.

    Ends are grouped into classes. Fixed ends are always singleton classes.
    In grouped mode non-fixed ends with equal directions share a class and a
    found curve stands for its whole orbit of relabelings; in labeled mode
    every end is its own class.
    """

    def __init__(self, degree: Degree, r: int, s: int, cfg: Config | None, grouped: bool):
        self.degree = degree
        self.r = r
        self.s = s
        self.cfg = cfg
        self.geometric = cfg is not None

        classes: list[list[int]] = []
        by_direction: dict[Vector, int] = {}
        for label in degree.labels:
            if label in degree.fixed or not grouped:
                classes.append([label])
                continue
            v = degree.direction(label)
            if v not in by_direction:
                by_direction[v] = len(classes)
                classes.append([])
            classes[by_direction[v]].append(label)
        self.classes = classes
        self.class_direction = [degree.direction(c[0]) for c in classes]
        self.class_fixed = [c[0] in degree.fixed for c in classes]
        self.total = tuple(len(c) for c in classes)
        self.marking_count = r + s

        self.degenerate = False
        self.diagnostics: list[str] = []
        self.rejections: Counter = Counter()
        self._roots: dict[Key, list[tuple[object, _Carrier | None]]] = {}
        self._paths: dict[tuple, list[object]] = {}
        self._root_keys: dict[int, list[tuple[int, ...]]] = {}
        self._vectors: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    # --- Count vectors and masks ---

    def kind(self, label: int) -> MarkingKind:
        return MarkingKind.REAL if label <= self.r else MarkingKind.COMPLEX

    def cost(self, mask: int) -> int:
        return sum(self.kind(i + 1).cost for i in range(self.marking_count) if mask >> i & 1)

    def nonfixed(self, counts: tuple[int, ...]) -> int:
        return sum(c for c, fixed in zip(counts, self.class_fixed) if not fixed)

    def direction(self, counts: tuple[int, ...]) -> Vector:
        x = sum(c * v[0] for c, v in zip(counts, self.class_direction))
        y = sum(c * v[1] for c, v in zip(counts, self.class_direction))
        return (x, y)

    def sub_vectors(self, counts: tuple[int, ...]) -> list[tuple[int, ...]]:
        if counts not in self._vectors:
            self._vectors[counts] = [tuple(v) for v in product(*(range(c + 1) for c in counts))]
        return self._vectors[counts]

    @staticmethod
    def minus(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(x - y for x, y in zip(a, b))

    def is_path_key(self, counts: tuple[int, ...], mask: int) -> bool:
        return any(counts) and self.nonfixed(counts) - 1 == self.cost(mask)

    def is_root_key(self, counts: tuple[int, ...], mask: int) -> bool:
        return any(counts) and self.nonfixed(counts) == self.cost(mask)

    # --- Geometry ---

    def _flag_degenerate(self, reason: RejectionReason, detail: str) -> None:
        self.rejections[reason.value] += 1
        if not self.degenerate:
            logger.debug(f"Degenerate configuration: {detail}")
        self.degenerate = True
        if len(self.diagnostics) < 5:
            self.diagnostics.append(detail)

    def _intersect(self, a: _Carrier, b: _Carrier) -> Point | None:
        d1, d2 = a.direction, b.direction
        w = (b.base[0] - a.base[0], b.base[1] - a.base[1])
        den = _cross(d1, d2)
        if den == 0:
            if _cross(w, d1) == 0:
                self._flag_degenerate(RejectionReason.SINGULAR, f"collinear carriers through {a.base}")
            else:
                self.rejections[RejectionReason.PARALLEL.value] += 1
            return None
        t = Fraction(_cross(w, d2), den)
        u = Fraction(_cross(w, d1), den)
        if (not a.line and t == 0) or (not b.line and u == 0):
            self._flag_degenerate(RejectionReason.ZERO_LENGTH, f"vertex lands on a condition at {a.base}")
            return None
        if (not a.line and t < 0) or (not b.line and u < 0):
            self.rejections[RejectionReason.NEGATIVE_LENGTH.value] += 1
            return None
        return (a.base[0] + t * d1[0], a.base[1] + t * d1[1])

    def _fixed_carrier(self, label: int) -> _Carrier | None:
        if not self.geometric:
            return None
        line = self.cfg.line_for(label)
        lx, ly = line.covector
        base = (Fraction(0), line.value / ly) if ly != 0 else (line.value / lx, Fraction(0))
        v = self.degree.direction(label)
        return _Carrier(base, (-v[0], -v[1]), line=True)

    # --- Roots ---

    def root_keys(self, mask: int) -> list[tuple[int, ...]]:
        """Count vectors U with at least one root for (U, mask)."""
        if mask not in self._root_keys:
            self._root_keys[mask] = [
                counts for counts in self.sub_vectors(self.total)
                if self.is_root_key(counts, mask) and self.roots(counts, mask)
            ]
        return self._root_keys[mask]

    def roots(self, counts: tuple[int, ...], mask: int) -> list[tuple[object, _Carrier | None]]:
        key = (counts, mask)
        if key in self._roots:
            return self._roots[key]
        results: list[tuple[object, _Carrier | None]] = []

        if mask == 0 and sum(counts) == 1:
            cls = counts.index(1)
            if self.class_fixed[cls]:
                results.append((_FixedRoot(cls), self._fixed_carrier(self.classes[cls][0])))

        out = self.direction(counts)
        out = (-out[0], -out[1])
        for i in range(self.marking_count):
            if not mask >> i & 1 or out == (0, 0):
                continue
            label = i + 1
            rest = mask & ~(1 << i)
            point = self.cfg.point(label) if self.geometric else None
            branch_count = 1 if self.kind(label) is MarkingKind.REAL else 2
            carrier = _Carrier(point, out) if self.geometric else None
            for branches, symmetry in self.branch_choices(point, counts, rest, branch_count):
                results.append((_MarkingRoot(label, branches, out, symmetry), carrier))

        if out != (0, 0):
            for key_a, key_b in self.root_splits(counts, mask):
                for node_a, carrier_a in self.roots(*key_a):
                    for node_b, carrier_b in self.roots(*key_b):
                        if self.geometric:
                            vertex = self._intersect(carrier_a, carrier_b)
                            if vertex is None:
                                continue
                            carrier = _Carrier(vertex, out)
                        else:
                            carrier = None
                        results.append((_MergeRoot(node_a, node_b, out), carrier))

        self._roots[key] = results
        return results

    def root_splits(self, counts: tuple[int, ...], mask: int) -> Iterator[tuple[Key, Key]]:
        for sub_mask in _submasks(mask):
            for sub_counts in self.sub_vectors(counts):
                if not self.is_root_key(sub_counts, sub_mask):
                    continue
                other = (self.minus(counts, sub_counts), mask & ~sub_mask)
                first = (sub_counts, sub_mask)
                if any(other[0]) and first < other:
                    yield first, other

    # --- Paths ---

    def paths(self, start: Point | None, counts: tuple[int, ...], mask: int) -> list[object]:
        key = (start, counts, mask) if self.geometric else (counts, mask)
        if key in self._paths:
            return self._paths[key]
        results: list[object] = []
        d = self.direction(counts)

        if d != (0, 0):
            if mask == 0 and sum(counts) == 1 and not self.class_fixed[counts.index(1)]:
                results.append(_Terminal(counts.index(1)))
            else:
                ray = _Carrier(start, d) if self.geometric else None
                for sub_mask in _submasks(mask):
                    for sub_counts in self.root_keys(sub_mask):
                        if not all(a <= b for a, b in zip(sub_counts, counts)):
                            continue
                        rest_counts = self.minus(counts, sub_counts)
                        rest_mask = mask & ~sub_mask
                        for node, carrier in self.roots(sub_counts, sub_mask):
                            vertex = self._intersect(ray, carrier) if self.geometric else None
                            if self.geometric and vertex is None:
                                continue
                            for rest in self.paths(vertex, rest_counts, rest_mask):
                                results.append(_PathMerge(node, rest, d))

        self._paths[key] = results
        return results

    def path_splits(self, counts, mask, k: int, lower: Key | None = None) -> Iterator[tuple[Key, ...]]:
        """Unordered splits of (counts, mask) into k path keys, as nondecreasing key tuples."""
        if k == 1:
            key = (counts, mask)
            if self.is_path_key(counts, mask) and (lower is None or key >= lower):
                yield (key,)
            return
        for sub_mask in _submasks(mask):
            for sub_counts in self.sub_vectors(counts):
                first = (sub_counts, sub_mask)
                if not self.is_path_key(sub_counts, sub_mask) or (lower is not None and first < lower):
                    continue
                rest = (self.minus(counts, sub_counts), mask & ~sub_mask)
                for tail in self.path_splits(rest[0], rest[1], k - 1, first):
                    yield (first,) + tail

    def branch_choices(self, start, counts, mask, k: int) -> Iterator[tuple[tuple, int]]:
        """
        All ways to hang k path branches at one marking.

        Yields:
            (branches, symmetry) where symmetry counts label swaps of identical branches
        """
        for keys in self.path_splits(counts, mask, k):
            groups: list[tuple[Key, int]] = []
            for key in keys:
                if groups and groups[-1][0] == key:
                    groups[-1] = (key, groups[-1][1] + 1)
                else:
                    groups.append((key, 1))
            options = []
            for key, multiplicity in groups:
                found = self.paths(start, key[0], key[1])
                choices = []
                for picked in combinations_with_replacement(range(len(found)), multiplicity):
                    symmetry = 1
                    for count in Counter(picked).values():
                        for j in range(2, count + 1):
                            symmetry *= j
                    choices.append((tuple(found[i] for i in picked), symmetry))
                options.append(choices)
            for combo in product(*options):
                branches = tuple(node for part, _ in combo for node in part)
                symmetry = 1
                for _, sym in combo:
                    symmetry *= sym
                yield branches, symmetry

    # --- Top level ---

    def curves(self) -> Iterator[tuple[object, int]]:
        """Yield (top node, symmetry) for every curve structure."""
        if self.marking_count:
            label = 1
            point = self.cfg.point(label) if self.geometric else None
            k = 2 if self.kind(label) is MarkingKind.REAL else 3
            rest = ((1 << self.marking_count) - 1) & ~1
            for branches, symmetry in self.branch_choices(point, self.total, rest, k):
                yield ("marking", label, branches), symmetry
            return
        sinks = [i for i, fixed in enumerate(self.class_fixed) if not fixed]
        sink = sinks[0]
        fixed_counts = tuple(0 if i == sink else c for i, c in enumerate(self.total))
        for node, _ in self.roots(fixed_counts, 0):
            if isinstance(node, _MergeRoot):
                yield ("sink", sink, node), 1


class _TypeBuilder:
    """Turns a search structure into a naturally oriented CombType."""

    def __init__(self, search: _ConditionSearch):
        self.search = search
        self.vertex_count = 0
        self.edges: list[Edge] = []
        self.ends: list[End] = []
        self.markings: list[Marking] = []
        self.pending = [list(labels) for labels in search.classes]

    def _vertex(self) -> int:
        self.vertex_count += 1
        return self.vertex_count - 1

    def _end(self, vertex: int, cls: int, inward: bool = False) -> None:
        label = self.pending[cls].pop(0)
        self.ends.append(End(vertex, label, self.search.degree.direction(label), inward))

    def _marking(self, vertex: int, label: int) -> None:
        self.markings.append(Marking(vertex, label, self.search.kind(label)))

    def path(self, source: int, node) -> None:
        if isinstance(node, _Terminal):
            self._end(source, node.end_class)
            return
        vertex = self._vertex()
        self.edges.append(Edge(source, vertex, node.direction))
        self.root(node.root, vertex)
        self.path(vertex, node.rest)

    def root(self, node, into: int) -> None:
        if isinstance(node, _FixedRoot):
            self._end(into, node.end_class, inward=True)
            return
        vertex = self._vertex()
        self.edges.append(Edge(vertex, into, node.direction))
        self.attach(node, vertex)

    def attach(self, node, vertex: int) -> None:
        if isinstance(node, _MergeRoot):
            self.root(node.left, vertex)
            self.root(node.right, vertex)
        else:
            self._marking(vertex, node.label)
            for branch in node.branches:
                self.path(vertex, branch)

    def build(self, top) -> CombType:
        vertex = self._vertex()
        if top[0] == "marking":
            _, label, branches = top
            self._marking(vertex, label)
            for branch in branches:
                self.path(vertex, branch)
        else:
            _, sink, node = top
            self._end(vertex, sink)
            self.attach(node, vertex)
        return CombType(
            vertex_count=self.vertex_count,
            edges=tuple(self.edges),
            ends=tuple(sorted(self.ends, key=lambda e: e.label)),
            markings=tuple(sorted(self.markings, key=lambda m: m.label)),
            oriented=True,
        )


def _symmetry_of(node) -> int:
    if isinstance(node, _MarkingRoot):
        total = node.symmetry
        for branch in node.branches:
            total *= _symmetry_of(branch)
        return total
    if isinstance(node, _MergeRoot):
        return _symmetry_of(node.left) * _symmetry_of(node.right)
    if isinstance(node, _PathMerge):
        return _symmetry_of(node.root) * _symmetry_of(node.rest)
    return 1


def _top_symmetry(top, symmetry: int) -> int:
    if top[0] == "marking":
        for branch in top[2]:
            symmetry *= _symmetry_of(branch)
        return symmetry
    return symmetry * _symmetry_of(top[2])


def _prepare(degree: Degree, r: int, s: int) -> None:
    degree.require_balanced()
    degree.check_counts(r, s)
    if r + s == 0 and degree.n < 3:
        raise ConfigurationError("A curve without markings needs at least three ends")


# --- Public operations ---

def enumerate_types(degree: Degree, r: int, s: int) -> list[CombType]:
    """
    All orientable labeled combinatorial types of the given degree.

    Real markings sit at 3-valent vertices, complex markings at 4-valent
    vertices and every other vertex is 3-valent. Types are naturally
    oriented and sorted by their canonical encoding.

    Raises:
        ConfigurationError: If r + 2s + |F| != |degree| - 1
    """
    _prepare(degree, r, s)
    search = _ConditionSearch(degree, r, s, cfg=None, grouped=False)
    types = [_TypeBuilder(search).build(top) for top, _ in search.curves()]
    types.sort(key=lambda comb: comb.encoding())
    logger.info(f"Enumerated {len(types)} combinatorial types for {degree.n} ends, r={r}, s={s}")
    return types


@dataclass
class EnumerationReport:
    """
    Curves through one configuration.

    Attributes:
        curves: Placed curves, one representative per label orbit, canonically ordered
        rejected_types: Rejection counts by reason
        degenerate: True iff some system was singular or some length vanished
        diagnostics: First few degeneracy descriptions
        g_order: Order of the relabeling group of the degree
    """
    curves: list[PlacedCurve]
    rejected_types: dict[str, int] = field(default_factory=dict)
    degenerate: bool = False
    diagnostics: list[str] = field(default_factory=list)
    g_order: int = 1

    @property
    def labeled_count(self) -> int:
        return sum(curve.orbit for curve in self.curves)


def enumerate_through(
    degree: Degree,
    r: int,
    s: int,
    cfg: Config,
    exhaustive: bool = False,
) -> EnumerationReport:
    """
    Every curve of the degree through the configuration.

    Args:
        degree: Degree including its fixed ends
        r: Number of real markings
        s: Number of complex markings
        cfg: Point and line conditions
        exhaustive: Solve every labeled type instead of searching; slow, used as an oracle

    Returns:
        EnumerationReport with curves in canonical order
    """
    _prepare(degree, r, s)
    cfg.validate(degree)

    if exhaustive:
        return _enumerate_exhaustively(degree, r, s, cfg)

    search = _ConditionSearch(degree, r, s, cfg, grouped=True)
    rejected = Counter()
    degenerate = False
    curves: list[PlacedCurve] = []

    for top, symmetry in search.curves():
        comb = _TypeBuilder(search).build(top)
        placed = solve_placement(comb, cfg)
        if isinstance(placed, Rejection):
            rejected[placed.reason.value] += 1
            if placed.degenerate:
                degenerate = True
                search.diagnostics.append(placed.detail)
            else:
                logger.warning(f"Search candidate failed the placement check: {placed.reason.value}")
            continue
        orbit = degree.g_order // _top_symmetry(top, symmetry)
        curves.append(PlacedCurve(placed.comb, placed.anchor, placed.lengths, orbit))

    curves.sort(key=lambda curve: curve.comb.encoding())
    rejected.update(search.rejections)
    report = EnumerationReport(
        curves=curves,
        rejected_types=dict(sorted(rejected.items())),
        degenerate=degenerate or search.degenerate,
        diagnostics=search.diagnostics[:5],
        g_order=degree.g_order,
    )
    logger.info(
        f"Found {len(curves)} curves ({report.labeled_count} labeled) through the configuration"
        f"{' [degenerate]' if report.degenerate else ''}"
    )
    return report


def _enumerate_exhaustively(degree: Degree, r: int, s: int, cfg: Config) -> EnumerationReport:
    rejected = Counter()
    curves: list[PlacedCurve] = []
    diagnostics: list[str] = []
    for comb in enumerate_types(degree, r, s):
        placed = solve_placement(comb, cfg)
        if isinstance(placed, Rejection):
            rejected[placed.reason.value] += 1
            if placed.degenerate and len(diagnostics) < 5:
                diagnostics.append(placed.detail)
            continue
        curves.append(placed)
    return EnumerationReport(
        curves=curves,
        rejected_types=dict(sorted(rejected.items())),
        degenerate=any(reason in rejected for reason in ("singular", "zero_length")),
        diagnostics=diagnostics,
        g_order=degree.g_order,
    )


def _draw_rational(rng: random.Random, spread: int, denominator_bound: int) -> Fraction:
    return Fraction(rng.randint(-spread, spread), rng.randint(1, denominator_bound))


def draw_config(
    degree: Degree,
    r: int,
    s: int,
    rng: random.Random,
    spread: int = DEFAULT_SPREAD,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> Config:
    """One pseudo-random configuration, not yet screened for genericity."""
    points = tuple(
        (_draw_rational(rng, spread, denominator_bound), _draw_rational(rng, spread, denominator_bound))
        for _ in range(r + s)
    )
    lines = tuple(
        LineCondition(j, line_covector(degree.direction(j)), _draw_rational(rng, spread, denominator_bound))
        for j in sorted(degree.fixed)
    )
    return Config(points, lines, r, s, degree.fixed)


def generic_configuration(
    degree: Degree,
    r: int,
    s: int,
    seed: int,
    spread: int = DEFAULT_SPREAD,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> tuple[Config, EnumerationReport]:
    """
    Draw seeded configurations until one is in general position.

    Returns:
        The configuration and its (non-degenerate) enumeration report

    Raises:
        RetryBudgetExhausted: If every attempt was degenerate
    """
    _prepare(degree, r, s)
    rng = random.Random(seed)
    last = ""
    for attempt in range(1, retry_budget + 1):
        cfg = draw_config(degree, r, s, rng, spread, denominator_bound)
        report = enumerate_through(degree, r, s, cfg)
        if not report.degenerate:
            if attempt > 1:
                logger.info(f"Seed {seed}: generic configuration found on attempt {attempt}")
            return cfg, report
        last = "; ".join(report.diagnostics) or "degenerate configuration"
        logger.warning(f"Seed {seed}: attempt {attempt} is degenerate ({last}), retrying")
    raise RetryBudgetExhausted(f"No generic configuration for seed {seed}", retry_budget, last)


def random_config(
    degree: Degree,
    r: int,
    s: int,
    seed: int,
    spread: int = DEFAULT_SPREAD,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> Config:
    """Seeded generic configuration; identical inputs give identical configurations."""
    cfg, _ = generic_configuration(degree, r, s, seed, spread, denominator_bound, retry_budget)
    return cfg
