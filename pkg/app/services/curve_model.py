"""
Curve Model Service

Data model for rational marked tropical curves in the plane:

- Degree: labeled end directions plus the set of fixed ends
- CombType: a labeled marked tree with edge directions (a combinatorial type)
- PlacedCurve: a CombType with an anchor point and positive edge lengths

plus vertex classification (refined types I-III and the older parity
types), natural orientation and the curve class predicates.

Markings are contracted legs attached to vertices. A real marking sitting
on an edge of the image is a vertex with one real marking and two opposite
non-marking edges.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from math import factorial, gcd
import json
import logging

from .errors import ConfigurationError, OrientationError

logger = logging.getLogger(__name__)

Vector = tuple[int, int]
Point = tuple[Fraction, Fraction]


# --- Lattice helpers ---

def det(u: Vector, v: Vector) -> int:
    return u[0] * v[1] - u[1] * v[0]


def weight(v: Vector) -> int:
    """Lattice length of a direction vector."""
    if v == (0, 0):
        raise ConfigurationError("The zero vector has no weight")
    return gcd(abs(v[0]), abs(v[1]))


def primitive(v: Vector) -> Vector:
    w = weight(v)
    return (v[0] // w, v[1] // w)


def is_even(v: Vector) -> bool:
    return v[0] % 2 == 0 and v[1] % 2 == 0


def line_covector(v: Vector) -> Vector:
    """
    Primitive covector annihilating v, normalized to be lexicographically positive.

    The line condition on an end with direction v is lambda . h(y) = c.
    """
    p, q = primitive(v)
    candidate = (-q, p)
    if candidate[0] < 0 or (candidate[0] == 0 and candidate[1] < 0):
        candidate = (q, -p)
    return candidate


def add(u: Vector, v: Vector) -> Vector:
    return (u[0] + v[0], u[1] + v[1])


def neg(v: Vector) -> Vector:
    return (-v[0], -v[1])


# --- Degree ---

@dataclass(frozen=True)
class Degree:
    """
    The labeled ends of a curve.

    Attributes:
        ends: Outward direction v(y_i) of end i, for i = 1..n (1-based labels)
        fixed: Labels of the fixed ends
    """
    ends: tuple[Vector, ...]
    fixed: frozenset[int] = frozenset()

    def __post_init__(self):
        ends = tuple((int(a), int(b)) for a, b in self.ends)
        fixed = frozenset(int(j) for j in self.fixed)
        for i, v in enumerate(ends, start=1):
            if v == (0, 0):
                raise ConfigurationError(f"End {i} has the zero direction")
        unknown = sorted(j for j in fixed if not 1 <= j <= len(ends))
        if unknown:
            raise ConfigurationError(f"Fixed ends {unknown} are not end labels 1..{len(ends)}")
        object.__setattr__(self, "ends", ends)
        object.__setattr__(self, "fixed", fixed)

    @classmethod
    def projective_plane(cls, d: int, fixed: frozenset[int] = frozenset()) -> "Degree":
        """Degree d in P^2: d ends each in directions (-1,0), (0,-1), (1,1)."""
        if d < 1:
            raise ConfigurationError(f"Degree must be positive, got {d}")
        ends = [(-1, 0)] * d + [(0, -1)] * d + [(1, 1)] * d
        return cls(tuple(ends), frozenset(fixed))

    @property
    def n(self) -> int:
        return len(self.ends)

    @property
    def labels(self) -> range:
        return range(1, self.n + 1)

    @property
    def non_fixed_labels(self) -> list[int]:
        return [i for i in self.labels if i not in self.fixed]

    def direction(self, label: int) -> Vector:
        return self.ends[label - 1]

    def end_weight(self, label: int) -> int:
        return weight(self.direction(label))

    def with_fixed(self, fixed) -> "Degree":
        return Degree(self.ends, frozenset(fixed))

    @property
    def is_balanced(self) -> bool:
        return (sum(v[0] for v in self.ends), sum(v[1] for v in self.ends)) == (0, 0)

    def require_balanced(self) -> None:
        if not self.is_balanced:
            raise ConfigurationError(f"Degree {list(self.ends)} is not balanced")

    def check_counts(self, r: int, s: int) -> None:
        """
        Raises:
            ConfigurationError: Unless r + 2s + |F| = n - 1
        """
        if r < 0 or s < 0:
            raise ConfigurationError("Marking counts must be nonnegative")
        expected = self.n - 1
        actual = r + 2 * s + len(self.fixed)
        if actual != expected:
            raise ConfigurationError(
                f"Condition count mismatch: r + 2s + |F| = {r} + {2 * s} + {len(self.fixed)} "
                f"= {actual}, but |Degree| - 1 = {expected}"
            )

    @property
    def g_order(self) -> int:
        """Order of the label permutations fixing F and preserving directions."""
        counts = Counter(self.direction(i) for i in self.non_fixed_labels)
        order = 1
        for count in counts.values():
            order *= factorial(count)
        return order

    def to_dict(self) -> dict:
        return {"ends": [list(v) for v in self.ends], "fixed": sorted(self.fixed)}

    @classmethod
    def from_dict(cls, payload: dict) -> "Degree":
        try:
            ends = tuple(tuple(v) for v in payload["ends"])
        except (KeyError, TypeError) as exc:
            raise ConfigurationError(f"Malformed degree payload: {exc}") from exc
        if any(len(v) != 2 for v in ends):
            raise ConfigurationError("Every end direction must have two entries")
        return cls(ends, frozenset(payload.get("fixed", ())))


# --- Combinatorial types ---

class MarkingKind(str, Enum):
    """Real markings impose one point condition, complex markings a conjugate pair."""
    REAL = "real"
    COMPLEX = "complex"

    @property
    def cost(self) -> int:
        return 1 if self is MarkingKind.REAL else 2


@dataclass(frozen=True)
class Edge:
    """Bounded edge; position(head) = position(tail) + length * direction."""
    tail: int
    head: int
    direction: Vector

    @property
    def weight(self) -> int:
        return weight(self.direction)

    def reversed(self) -> "Edge":
        return Edge(self.head, self.tail, neg(self.direction))


@dataclass(frozen=True)
class End:
    """Unbounded end; direction is always the outward one, inward marks a fixed end's orientation."""
    vertex: int
    label: int
    direction: Vector
    inward: bool = False

    @property
    def weight(self) -> int:
        return weight(self.direction)


@dataclass(frozen=True)
class Marking:
    vertex: int
    label: int
    kind: MarkingKind


@dataclass(frozen=True)
class Incidence:
    """A non-marking item at a vertex, seen from that vertex."""
    kind: str            # "edge" or "end"
    index: int           # position in CombType.edges / CombType.ends
    outward: Vector
    outgoing: bool       # orientation, meaningful on oriented types

    @property
    def even(self) -> bool:
        return is_even(self.outward)


@dataclass(frozen=True)
class CombType:
    """
    A labeled rational marked tree with edge directions.

    Attributes:
        vertex_count: Vertices are 0..vertex_count-1; vertex 0 is the anchor
        edges: Bounded edges, stored tail -> head
        ends: Labeled ends
        markings: Labeled markings (at most one per vertex)
        oriented: Whether edge storage order and end flags carry the orientation
    """
    vertex_count: int
    edges: tuple[Edge, ...]
    ends: tuple[End, ...]
    markings: tuple[Marking, ...]
    oriented: bool = False

    # --- Structure ---

    def incidences(self, vertex: int) -> list[Incidence]:
        items: list[Incidence] = []
        for index, edge in enumerate(self.edges):
            if edge.tail == vertex:
                items.append(Incidence("edge", index, edge.direction, True))
            if edge.head == vertex:
                items.append(Incidence("edge", index, neg(edge.direction), False))
        for index, end in enumerate(self.ends):
            if end.vertex == vertex:
                items.append(Incidence("end", index, end.direction, not end.inward))
        return items

    def marking_at(self, vertex: int) -> Marking | None:
        for marking in self.markings:
            if marking.vertex == vertex:
                return marking
        return None

    def valence(self, vertex: int) -> int:
        """Valence in the abstract graph, marking legs included."""
        return len(self.incidences(vertex)) + (1 if self.marking_at(vertex) else 0)

    def end_by_label(self, label: int) -> End:
        for end in self.ends:
            if end.label == label:
                return end
        raise KeyError(label)

    def neighbours(self) -> list[list[tuple[int, int]]]:
        """Adjacency lists of (neighbour, edge index)."""
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for index, edge in enumerate(self.edges):
            adjacency[edge.tail].append((edge.head, index))
            adjacency[edge.head].append((edge.tail, index))
        return adjacency

    def paths_from_anchor(self) -> list[list[tuple[int, int]]]:
        """For each vertex, the (edge index, sign) steps from vertex 0; sign +1 walks tail -> head."""
        paths: list[list[tuple[int, int]] | None] = [None] * self.vertex_count
        if not self.vertex_count:
            return []
        paths[0] = []
        adjacency = self.neighbours()
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for x, index in adjacency[u]:
                if paths[x] is None:
                    sign = 1 if self.edges[index].tail == u else -1
                    paths[x] = paths[u] + [(index, sign)]
                    queue.append(x)
        if any(p is None for p in paths):
            raise ConfigurationError("Combinatorial type is not connected")
        return paths  # type: ignore[return-value]

    def validate(self) -> None:
        """
        Check tree shape, label uniqueness and balancing at every vertex.

        Raises:
            ConfigurationError: On the first violated condition
        """
        if self.vertex_count < 1:
            raise ConfigurationError("A curve needs at least one vertex")
        if len(self.edges) != self.vertex_count - 1:
            raise ConfigurationError("Graph is not a tree (edge count != vertices - 1)")
        self.paths_from_anchor()
        for edge in self.edges:
            if edge.direction == (0, 0):
                raise ConfigurationError("Bounded edges must have nonzero direction")
        end_labels = [end.label for end in self.ends]
        marking_labels = [m.label for m in self.markings]
        if len(set(end_labels)) != len(end_labels):
            raise ConfigurationError("Duplicate end labels")
        if len(set(marking_labels)) != len(marking_labels):
            raise ConfigurationError("Duplicate marking labels")
        marked = Counter(m.vertex for m in self.markings)
        if any(count > 1 for count in marked.values()):
            raise ConfigurationError("At most one marking per vertex")
        for vertex in range(self.vertex_count):
            if not self.is_balanced_at(vertex):
                raise ConfigurationError(f"Balancing fails at vertex {vertex}")

    def is_balanced_at(self, vertex: int) -> bool:
        total = (0, 0)
        for item in self.incidences(vertex):
            total = add(total, item.outward)
        return total == (0, 0)

    # --- Serialization ---

    def to_dict(self) -> dict:
        return {
            "vertices": list(range(self.vertex_count)),
            "edges": [
                {"from": e.tail, "to": e.head, "dir": list(e.direction)} for e in self.edges
            ],
            "ends": [
                {"vertex": e.vertex, "label": e.label, "dir": list(e.direction), "inward": e.inward}
                for e in self.ends
            ],
            "markings": [
                {"vertex": m.vertex, "label": m.label, "kind": m.kind.value} for m in self.markings
            ],
            "oriented": self.oriented,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "CombType":
        try:
            comb = cls(
                vertex_count=len(payload["vertices"]),
                edges=tuple(
                    Edge(int(e["from"]), int(e["to"]), (int(e["dir"][0]), int(e["dir"][1])))
                    for e in payload["edges"]
                ),
                ends=tuple(
                    End(
                        int(e["vertex"]),
                        int(e["label"]),
                        (int(e["dir"][0]), int(e["dir"][1])),
                        bool(e.get("inward", False)),
                    )
                    for e in payload["ends"]
                ),
                markings=tuple(
                    Marking(int(m["vertex"]), int(m["label"]), MarkingKind(m["kind"]))
                    for m in payload["markings"]
                ),
                oriented=bool(payload.get("oriented", False)),
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise ConfigurationError(f"Malformed combinatorial type: {exc}") from exc
        comb.validate()
        return comb

    def encoding(self) -> str:
        """Canonical string used for deterministic ordering."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class PlacedCurve:
    """
    A combinatorial type mapped to the plane.

    Attributes:
        comb: The combinatorial type
        anchor: Image of vertex 0
        lengths: Strictly positive length of each bounded edge
        orbit: Number of labeled curves represented (label permutations of equal ends)
    """
    comb: CombType
    anchor: Point
    lengths: tuple[Fraction, ...]
    orbit: int = 1

    def __post_init__(self):
        if len(self.lengths) != len(self.comb.edges):
            raise ConfigurationError("One length per bounded edge is required")
        if any(length <= 0 for length in self.lengths):
            raise ConfigurationError("Edge lengths must be strictly positive")

    def positions(self) -> list[Point]:
        points: list[Point] = []
        for steps in self.comb.paths_from_anchor():
            x, y = self.anchor
            for index, sign in steps:
                dx, dy = self.comb.edges[index].direction
                x += sign * self.lengths[index] * dx
                y += sign * self.lengths[index] * dy
            points.append((Fraction(x), Fraction(y)))
        return points

    def marking_positions(self) -> dict[int, Point]:
        positions = self.positions()
        return {m.label: positions[m.vertex] for m in self.comb.markings}


# --- Vertex classification ---

class VertexTag(str, Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"
    OLD_1 = "1"
    OLD_2 = "2"
    OLD_3 = "3"
    OLD_4 = "4"
    OLD_5 = "5"
    OLD_6A = "6a"
    OLD_6B = "6b"
    OLD_7 = "7"
    OLD_8 = "8"
    OLD_9 = "9"
    FORBIDDEN_A = "a"
    FORBIDDEN_B = "b"
    FORBIDDEN_C = "c"
    DESCENDANT_HIGHER = "descendant-higher"
    INVALID = "invalid"


REFINED_TAGS = frozenset({VertexTag.TYPE_I, VertexTag.TYPE_II, VertexTag.TYPE_III})
FORBIDDEN_TAGS = frozenset({VertexTag.FORBIDDEN_A, VertexTag.FORBIDDEN_B, VertexTag.FORBIDDEN_C})
WELSCHINGER_TAGS = frozenset({
    VertexTag.OLD_1, VertexTag.OLD_2, VertexTag.OLD_3, VertexTag.OLD_4, VertexTag.OLD_5,
    VertexTag.OLD_6B, VertexTag.OLD_7, VertexTag.OLD_8,
})


@dataclass(frozen=True)
class VertexClass:
    """
    Classification of one vertex.

    Attributes:
        tag: Vertex type
        mikhalkin_a: |det| of two adjacent non-marking directions (0 for real-marked
            2-valent vertices and for parallel pairs)
        complex_marked: Vertex carries a complex marking
        parallel: Two adjacent odd edges are parallel
        parallel_ends: Those parallel odd edges are both ends
    """
    tag: VertexTag
    mikhalkin_a: int = 0
    complex_marked: bool = False
    parallel: bool = False
    parallel_ends: bool = False

    @property
    def even(self) -> bool:
        return self.mikhalkin_a % 2 == 0


def _three_valent_a(directions: list[Vector]) -> int:
    u, v, w = directions
    a = abs(det(u, v))
    # Balanced triple: all pairwise determinants agree up to sign.
    assert a == abs(det(u, w)) == abs(det(v, w)), "unbalanced vertex"
    return a


def classify_vertex(comb: CombType, vertex: int) -> VertexClass:
    """Refined vertex type (I, II, III) with its Mikhalkin multiplicity."""
    items = comb.incidences(vertex)
    marking = comb.marking_at(vertex)
    directions = [item.outward for item in items]

    if marking is not None and marking.kind is MarkingKind.REAL and len(items) == 2:
        return VertexClass(VertexTag.TYPE_I)
    if marking is None and len(items) == 3:
        return VertexClass(VertexTag.TYPE_II, _three_valent_a(directions))
    if marking is not None and marking.kind is MarkingKind.COMPLEX and len(items) == 3:
        a = _three_valent_a(directions)
        return VertexClass(
            VertexTag.TYPE_III, a, complex_marked=True,
            parallel=a == 0, parallel_ends=a == 0 and _parallel_pair_are_ends(items),
        )
    if marking is not None and len(items) >= 4:
        return VertexClass(VertexTag.DESCENDANT_HIGHER, complex_marked=marking.kind is MarkingKind.COMPLEX)
    return VertexClass(VertexTag.INVALID)


def _parallel_pair_are_ends(items: list[Incidence]) -> bool:
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if det(items[i].outward, items[j].outward) == 0 and not items[i].even and not items[j].even:
                return items[i].kind == "end" and items[j].kind == "end"
    return False


def classify_old_vertex(comb: CombType, vertex: int) -> VertexClass:
    """
    Parity/orientation vertex type on an oriented curve.

    Raises:
        OrientationError: If comb carries no orientation
    """
    if not comb.oriented:
        raise OrientationError("Old vertex types need an oriented curve")

    items = comb.incidences(vertex)
    marking = comb.marking_at(vertex)
    even = [item for item in items if item.even]
    odd = [item for item in items if not item.even]

    if marking is not None and marking.kind is MarkingKind.REAL:
        if len(items) == 2:
            return VertexClass(VertexTag.OLD_1 if not even else VertexTag.FORBIDDEN_A)
        if len(items) == 3:
            return VertexClass(VertexTag.OLD_7, _three_valent_a([i.outward for i in items]))
        return VertexClass(VertexTag.INVALID)

    if marking is None and len(items) == 3:
        a = _three_valent_a([i.outward for i in items])
        if not even:
            return VertexClass(VertexTag.OLD_2, a)
        if len(even) == 3:
            return VertexClass(VertexTag.OLD_4, a)
        tag = VertexTag.OLD_3 if not even[0].outgoing else VertexTag.FORBIDDEN_B
        return VertexClass(tag, a)

    if marking is not None and len(items) == 3:
        a = _three_valent_a([i.outward for i in items])
        if not even:
            return VertexClass(VertexTag.OLD_5, a, complex_marked=True)
        if len(even) == 3:
            return VertexClass(VertexTag.FORBIDDEN_C, a, complex_marked=True, parallel=a == 0)
        parallel = det(odd[0].outward, odd[1].outward) == 0
        parallel_ends = parallel and all(item.kind == "end" for item in odd)
        tag = VertexTag.OLD_6B if parallel else VertexTag.OLD_6A
        return VertexClass(tag, a, complex_marked=True, parallel=parallel, parallel_ends=parallel_ends)

    if marking is None and len(items) == 4 and len(even) == 2 and len(odd) == 2:
        a = abs(det(even[0].outward, even[1].outward))
        parallel = det(odd[0].outward, odd[1].outward) == 0
        parallel_ends = parallel and all(item.kind == "end" for item in odd)
        if parallel_ends:
            return VertexClass(VertexTag.OLD_8, a, parallel=True, parallel_ends=True)
        if not parallel:
            return VertexClass(VertexTag.OLD_9, a)

    return VertexClass(VertexTag.INVALID)


# --- Orientation ---

def _components(comb: CombType) -> list[tuple[list[int], list[int]]]:
    """Connected components of the graph minus markings as (edge indices, end indices)."""
    items = [("edge", i) for i in range(len(comb.edges))] + [("end", i) for i in range(len(comb.ends))]
    parent = list(range(len(items)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    at_vertex: dict[int, list[int]] = {}
    for position, (kind, index) in enumerate(items):
        if kind == "edge":
            edge = comb.edges[index]
            at_vertex.setdefault(edge.tail, []).append(position)
            at_vertex.setdefault(edge.head, []).append(position)
        else:
            at_vertex.setdefault(comb.ends[index].vertex, []).append(position)

    marked = {m.vertex for m in comb.markings}
    for vertex, positions in at_vertex.items():
        if vertex in marked:
            continue
        for other in positions[1:]:
            parent[find(other)] = find(positions[0])

    groups: dict[int, tuple[list[int], list[int]]] = {}
    for position, (kind, index) in enumerate(items):
        edges, ends = groups.setdefault(find(position), ([], []))
        (edges if kind == "edge" else ends).append(index)
    return list(groups.values())


def natural_orient(comb: CombType, fixed: frozenset[int] | set[int]) -> CombType:
    """
    Orient every unmarked edge toward the unique non-fixed end of its component.

    Fixed ends point inwards, so markings and fixed ends become sources.

    Raises:
        OrientationError: If a component of the graph minus markings does not
            contain exactly one non-fixed end
    """
    fixed = frozenset(fixed)
    marked = {m.vertex for m in comb.markings}
    edges = list(comb.edges)
    ends = [replace(end, inward=end.label in fixed) for end in comb.ends]
    adjacency = comb.neighbours()

    for edge_indices, end_indices in _components(comb):
        sinks = [i for i in end_indices if comb.ends[i].label not in fixed]
        if len(sinks) != 1:
            raise OrientationError(
                f"A component with {len(edge_indices)} edges has {len(sinks)} non-fixed ends; "
                "exactly one is required"
            )
        start = comb.ends[sinks[0]].vertex
        if start in marked:
            continue
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for x, index in adjacency[u]:
                if x in seen:
                    continue
                seen.add(x)
                edge = comb.edges[index]
                edges[index] = edge if edge.head == u else edge.reversed()
                if x not in marked:
                    queue.append(x)

    return replace(comb, edges=tuple(edges), ends=tuple(ends), oriented=True)


def cell_dimension(comb: CombType) -> int:
    """Dimension of the moduli cell: 2 plus the number of bounded edges."""
    return 2 + len(comb.edges)


# --- Curve classes ---

@dataclass(frozen=True)
class CurveClassFlags:
    is_refined_broccoli: bool
    is_descendant: bool
    is_old_broccoli: bool
    is_welschinger: bool


def vertex_classes(comb: CombType) -> list[VertexClass]:
    return [classify_vertex(comb, v) for v in range(comb.vertex_count)]


def old_vertex_classes(comb: CombType) -> list[VertexClass]:
    return [classify_old_vertex(comb, v) for v in range(comb.vertex_count)]


def is_descendant(comb: CombType) -> bool:
    """Real markings at 3-valent, complex markings at 4-valent, unmarked vertices 3-valent."""
    return all(c.tag in REFINED_TAGS for c in vertex_classes(comb))


def has_broccoli_orientation(comb: CombType) -> bool:
    """
    Marked vertices are sources and every unmarked vertex has exactly one
    outgoing item (edge or end).

    The natural orientation always has this shape, so on naturally oriented
    types the refined broccoli condition reduces to the descendant valence
    profile plus orientability. Hand-oriented types are checked as given.
    """
    for vertex in range(comb.vertex_count):
        outgoing = [item.outgoing for item in comb.incidences(vertex)]
        if comb.marking_at(vertex) is not None:
            if not all(outgoing):
                return False
        elif sum(outgoing) != 1:
            return False
    return True


def curve_class_predicates(comb: CombType, fixed: frozenset[int] | set[int]) -> CurveClassFlags:
    descendant = is_descendant(comb)
    try:
        oriented = comb if comb.oriented else natural_orient(comb, fixed)
    except OrientationError:
        return CurveClassFlags(False, descendant, False, False)

    refined = descendant and has_broccoli_orientation(oriented)
    old = old_vertex_classes(oriented)
    old_broccoli = refined and not any(c.tag in FORBIDDEN_TAGS for c in old)
    welschinger = all(
        c.tag in WELSCHINGER_TAGS and (c.tag is not VertexTag.OLD_6B or c.parallel_ends)
        for c in old
    )
    return CurveClassFlags(refined, descendant, old_broccoli, welschinger)


