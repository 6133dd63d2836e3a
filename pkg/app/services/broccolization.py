"""
Broccolization Service

Turns a refined broccoli curve into an old broccoli curve by local surgery
at each forbidden vertex:

- (a) real marking on an even edge: split into two complex-marked vertices
  of type (6), each with two new primitive ends
- (b) unmarked vertex with an outgoing even edge: add a complex marking and
  cut both odd incoming edges into pairs of ends
- (c) complex marking with three even edges: one type (6) vertex per even edge

The result is a formal curve (possibly disconnected) used for the
divisibility bookkeeping; placements are dropped. Every surgery lowers the
broccoli index by exactly 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import logging

from .curve_model import (
    FORBIDDEN_TAGS,
    CombType,
    Edge,
    End,
    Incidence,
    Marking,
    MarkingKind,
    PlacedCurve,
    Vector,
    VertexTag,
    classify_old_vertex,
    neg,
    weight,
)
from .errors import OrientationError

logger = logging.getLogger(__name__)


# --- Lattice decomposition ---

def _bezout(a: int, b: int) -> tuple[int, int]:
    """x, y with a*x + b*y = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def primitive_split(u: Vector) -> tuple[Vector, Vector]:
    """
    Two primitive vectors v1, v2 with v1 + v2 = -u.

    With u = n * (p, q) and a unimodular M sending (1, 0) to (p, q), the
    pair is M(-1, n) and M(1 - n, -n); |det(u, v1)| = n^2.
    """
    n = weight(u)
    p, q = u[0] // n, u[1] // n
    x, y = _bezout(p, q)

    def image(a: int, b: int) -> Vector:
        return (p * a - y * b, q * a + x * b)

    return image(-1, n), image(1 - n, -n)


# --- Surgery ---

@dataclass(frozen=True)
class Surgery:
    """One replaced forbidden vertex."""
    kind: VertexTag
    vertex: int


@dataclass
class BroccolizedCurve:
    """
    Result of broccolization.

    Attributes:
        comb: The old broccoli curve; may be disconnected
        fixed: Fixed end labels (unchanged; new ends are never fixed)
        surgeries: Surgeries in the order applied
    """
    comb: CombType
    fixed: frozenset[int]
    surgeries: list[Surgery] = field(default_factory=list)

    @property
    def index_drop(self) -> int:
        return 2 * len(self.surgeries)


class _Forest:
    """Mutable copy of a curve's structure."""

    def __init__(self, comb: CombType):
        self.vertex_count = comb.vertex_count
        self.edges = list(comb.edges)
        self.ends = list(comb.ends)
        self.markings = list(comb.markings)
        self.next_end = max((end.label for end in comb.ends), default=0) + 1
        self.next_marking = max((m.label for m in comb.markings), default=0) + 1

    def snapshot(self) -> CombType:
        return CombType(
            vertex_count=self.vertex_count,
            edges=tuple(self.edges),
            ends=tuple(self.ends),
            markings=tuple(self.markings),
            oriented=True,
        )

    def new_vertex(self) -> int:
        self.vertex_count += 1
        return self.vertex_count - 1

    def add_end(self, vertex: int, direction: Vector) -> None:
        self.ends.append(End(vertex, self.next_end, direction))
        self.next_end += 1

    def add_split_ends(self, vertex: int, u: Vector) -> None:
        for v in primitive_split(u):
            self.add_end(vertex, v)

    def mark_complex(self, vertex: int) -> None:
        for i, marking in enumerate(self.markings):
            if marking.vertex == vertex:
                self.markings[i] = Marking(vertex, marking.label, MarkingKind.COMPLEX)
                return
        self.markings.append(Marking(vertex, self.next_marking, MarkingKind.COMPLEX))
        self.next_marking += 1

    def move(self, item: Incidence, old: int, new: int) -> None:
        if item.kind == "end":
            end = self.ends[item.index]
            self.ends[item.index] = End(new, end.label, end.direction, end.inward)
            return
        edge = self.edges[item.index]
        tail = new if edge.tail == old else edge.tail
        head = new if edge.head == old else edge.head
        self.edges[item.index] = Edge(tail, head, edge.direction)

    # --- The three surgeries ---

    def split_marked_point(self, vertex: int, items: list[Incidence]) -> None:
        """(a): two type (6) vertices, one on each side of the marked point."""
        keep, moved = items
        self.mark_complex(vertex)
        self.add_split_ends(vertex, keep.outward)
        other = self.new_vertex()
        self.move(moved, vertex, other)
        self.mark_complex(other)
        self.add_split_ends(other, moved.outward)

    def cut_odd_inputs(self, vertex: int, items: list[Incidence]) -> None:
        """(b): mark the vertex and turn its odd edges into ends on both sides."""
        self.mark_complex(vertex)
        cut = sorted((item.index for item in items if item.kind == "edge" and not item.even), reverse=True)
        for index in cut:
            edge = self.edges.pop(index)
            far, outward_at_vertex = (edge.head, edge.direction) if edge.tail == vertex else (edge.tail, neg(edge.direction))
            self.add_end(vertex, outward_at_vertex)
            self.add_end(far, neg(outward_at_vertex))

    def separate_even_edges(self, vertex: int, items: list[Incidence]) -> None:
        """(c): one complex-marked type (6) vertex per even edge."""
        first, *rest = items
        self.add_split_ends(vertex, first.outward)
        for item in rest:
            other = self.new_vertex()
            self.move(item, vertex, other)
            self.mark_complex(other)
            self.add_split_ends(other, item.outward)


def _first_forbidden(comb: CombType) -> tuple[int, VertexTag] | None:
    for vertex in range(comb.vertex_count):
        tag = classify_old_vertex(comb, vertex).tag
        if tag in FORBIDDEN_TAGS:
            return vertex, tag
    return None


def broccolize(curve: PlacedCurve | CombType, fixed: frozenset[int]) -> BroccolizedCurve:
    """
    Replace every forbidden vertex until none remains.

    Args:
        curve: An oriented refined broccoli curve
        fixed: Fixed end labels

    Returns:
        BroccolizedCurve with i_B(result) = i_B(curve) - 2 * len(surgeries)

    Raises:
        OrientationError: If the curve is not oriented
    """
    comb = curve.comb if isinstance(curve, PlacedCurve) else curve
    if not comb.oriented:
        raise OrientationError("Broccolization needs an oriented curve")

    forest = _Forest(comb)
    surgeries: list[Surgery] = []
    found = _first_forbidden(comb)
    while found is not None:
        vertex, tag = found
        items = forest.snapshot().incidences(vertex)
        if tag is VertexTag.FORBIDDEN_A:
            forest.split_marked_point(vertex, items)
        elif tag is VertexTag.FORBIDDEN_B:
            forest.cut_odd_inputs(vertex, items)
        else:
            forest.separate_even_edges(vertex, items)
        surgeries.append(Surgery(tag, vertex))
        logger.debug(f"Surgery ({tag.value}) at vertex {vertex}")
        found = _first_forbidden(forest.snapshot())

    return BroccolizedCurve(forest.snapshot(), frozenset(fixed), surgeries)
