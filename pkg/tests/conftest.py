"""
Shared fixtures: handcrafted curves with known multiplicities.
"""

from fractions import Fraction

import pytest
from app.services.curve_model import (
    CombType,
    Degree,
    Edge,
    End,
    Marking,
    MarkingKind,
    PlacedCurve,
)
from app.services.enumeration import Config


def line_comb(w: int) -> CombType:
    """
    A line of weight w through two real points.

    Vertex 0 sits at the origin, the markings at (-w, 0) and (0, -w)
    on the ends of directions (-w, 0) and (0, -w).
    """
    return CombType(
        vertex_count=3,
        edges=(Edge(0, 1, (-w, 0)), Edge(0, 2, (0, -w))),
        ends=(End(1, 1, (-w, 0)), End(2, 2, (0, -w)), End(0, 3, (w, w))),
        markings=(Marking(1, 1, MarkingKind.REAL), Marking(2, 2, MarkingKind.REAL)),
    )


def line_degree(w: int) -> Degree:
    return Degree(((-w, 0), (0, -w), (w, w)))


@pytest.fixture
def make_line():
    """Factory for (degree, placed curve) of the weight-w line."""
    def build(w: int):
        comb = line_comb(w)
        return line_degree(w), PlacedCurve(comb, (Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)))
    return build


@pytest.fixture
def conic_degree():
    return Degree.projective_plane(2)


@pytest.fixture
def mixed_comb():
    """
    A conic through three real points and one complex point.

    The complex point sits at the origin on a double end of direction
    (-1, 0); the unmarked vertex it feeds has Mikhalkin multiplicity 2.
    """
    return CombType(
        vertex_count=7,
        edges=(
            Edge(0, 1, (2, 0)),
            Edge(2, 1, (0, 1)),
            Edge(1, 3, (2, 1)),
            Edge(4, 3, (-1, -1)),
            Edge(3, 5, (1, 0)),
            Edge(6, 5, (0, 1)),
        ),
        ends=(
            End(0, 1, (-1, 0)),
            End(0, 2, (-1, 0)),
            End(2, 3, (0, -1)),
            End(6, 4, (0, -1)),
            End(4, 5, (1, 1)),
            End(5, 6, (1, 1)),
        ),
        markings=(
            Marking(2, 1, MarkingKind.REAL),
            Marking(4, 2, MarkingKind.REAL),
            Marking(6, 3, MarkingKind.REAL),
            Marking(0, 4, MarkingKind.COMPLEX),
        ),
        oriented=True,
    )


@pytest.fixture
def mixed_lengths():
    return tuple(Fraction(x) for x in (1, 3, 1, 3, 5, 3))


@pytest.fixture
def mixed_curve(mixed_comb, mixed_lengths):
    return PlacedCurve(mixed_comb, (Fraction(0), Fraction(0)), mixed_lengths, orbit=4)


@pytest.fixture
def mixed_config():
    points = ((2, -3), (7, 4), (9, -2), (0, 0))
    return Config(
        points=tuple((Fraction(x), Fraction(y)) for x, y in points),
        lines=(),
        r=3,
        s=1,
    )
