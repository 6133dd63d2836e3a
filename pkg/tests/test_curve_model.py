"""
Tests for the curve model service.
"""

from dataclasses import replace
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
    VertexTag,
    cell_dimension,
    classify_old_vertex,
    classify_vertex,
    curve_class_predicates,
    det,
    has_broccoli_orientation,
    is_descendant,
    line_covector,
    natural_orient,
    primitive,
    weight,
)
from app.services.enumeration import enumerate_types
from app.services.errors import ConfigurationError, OrientationError


# --- Lattice Tests ---

class TestLatticeHelpers:
    """Tests for lattice vector helpers."""

    def test_weight(self):
        """Should return the lattice length."""
        assert weight((4, 6)) == 2
        assert weight((0, -3)) == 3

    def test_weight_of_zero_raises(self):
        """Should refuse the zero vector."""
        with pytest.raises(ConfigurationError):
            weight((0, 0))

    def test_primitive(self):
        """Should divide by the weight and keep the sign."""
        assert primitive((4, -6)) == (2, -3)

    def test_det(self):
        """Should be the signed 2x2 determinant."""
        assert det((1, 0), (0, 1)) == 1
        assert det((0, 1), (1, 0)) == -1

    def test_line_covector(self):
        """Should annihilate the direction and be normalized."""
        assert line_covector((1, 1)) == (1, -1)
        assert line_covector((-2, 0)) == (0, 1)
        covector = line_covector((3, 6))
        assert covector[0] * 3 + covector[1] * 6 == 0


# --- Degree Tests ---

class TestDegree:
    """Tests for the Degree dataclass."""

    def test_projective_plane(self):
        """Should have d ends in each of the three directions."""
        degree = Degree.projective_plane(3)
        assert degree.n == 9
        assert degree.is_balanced
        assert degree.direction(1) == (-1, 0)
        assert degree.direction(9) == (1, 1)

    def test_g_order(self):
        """Should count label permutations of equal non-fixed ends."""
        assert Degree.projective_plane(3).g_order == 216
        assert Degree.projective_plane(3, frozenset({1})).g_order == 72

    def test_zero_direction_raises(self):
        """Should refuse a zero end."""
        with pytest.raises(ConfigurationError):
            Degree(((1, 0), (0, 0)))

    def test_unknown_fixed_label_raises(self):
        """Should refuse fixed labels outside 1..n."""
        with pytest.raises(ConfigurationError):
            Degree(((1, 0), (-1, 0)), frozenset({3}))

    def test_unbalanced_degree(self):
        """Should report unbalanced degrees."""
        degree = Degree(((1, 0), (0, 1)))
        assert not degree.is_balanced
        with pytest.raises(ConfigurationError):
            degree.require_balanced()

    def test_check_counts(self):
        """Should require r + 2s + |F| = n - 1."""
        degree = Degree.projective_plane(3)
        degree.check_counts(8, 0)
        degree.check_counts(4, 2)
        with pytest.raises(ConfigurationError, match="Condition count mismatch"):
            degree.check_counts(7, 0)

    def test_fixed_ends_count_as_conditions(self):
        """Should count each fixed end as one condition."""
        Degree.projective_plane(2, frozenset({1, 2})).check_counts(3, 0)

    def test_dict_round_trip(self):
        """Should survive to_dict / from_dict."""
        degree = Degree.projective_plane(2, frozenset({4}))
        assert Degree.from_dict(degree.to_dict()) == degree

    def test_malformed_payload_raises(self):
        """Should refuse ends with three coordinates."""
        with pytest.raises(ConfigurationError):
            Degree.from_dict({"ends": [[1, 2, 3]]})


# --- Combinatorial Type Tests ---

class TestCombType:
    """Tests for combinatorial types."""

    def test_line_validates(self, make_line):
        """Should accept a balanced tree."""
        _, curve = make_line(1)
        curve.comb.validate()

    def test_unbalanced_vertex_raises(self):
        """Should refuse a vertex that is not balanced."""
        comb = CombType(
            vertex_count=1,
            edges=(),
            ends=(End(0, 1, (-1, 0)), End(0, 2, (0, -1)), End(0, 3, (1, 2))),
            markings=(),
        )
        with pytest.raises(ConfigurationError, match="Balancing"):
            comb.validate()

    def test_two_markings_on_one_vertex_raises(self):
        """Should allow at most one marking per vertex."""
        comb = CombType(
            vertex_count=1,
            edges=(),
            ends=(End(0, 1, (-1, 0)), End(0, 2, (1, 0))),
            markings=(Marking(0, 1, MarkingKind.REAL), Marking(0, 2, MarkingKind.REAL)),
        )
        with pytest.raises(ConfigurationError, match="one marking"):
            comb.validate()

    def test_disconnected_raises(self):
        """Should refuse graphs that are not trees."""
        comb = CombType(
            vertex_count=2,
            edges=(Edge(0, 0, (1, 0)),),
            ends=(End(0, 1, (-1, 0)), End(1, 2, (1, 0))),
            markings=(),
        )
        with pytest.raises(ConfigurationError):
            comb.validate()

    def test_valence_counts_marking_leg(self, mixed_comb):
        """Should count the marking leg in the valence."""
        assert mixed_comb.valence(0) == 4
        assert mixed_comb.valence(1) == 3
        assert mixed_comb.valence(2) == 3

    def test_dict_round_trip(self, mixed_comb):
        """Should survive to_dict / from_dict."""
        assert CombType.from_dict(mixed_comb.to_dict()) == mixed_comb

    def test_from_malformed_dict_raises(self):
        """Should wrap missing keys in ConfigurationError."""
        with pytest.raises(ConfigurationError):
            CombType.from_dict({"vertices": [0], "edges": []})

    def test_encoding_is_deterministic(self, mixed_comb):
        """Should encode equal types identically."""
        assert mixed_comb.encoding() == CombType.from_dict(mixed_comb.to_dict()).encoding()

    def test_cell_dimension(self, make_line, mixed_comb):
        """Should be two plus the number of bounded edges."""
        _, curve = make_line(1)
        assert cell_dimension(curve.comb) == 4
        assert cell_dimension(mixed_comb) == 8


# --- Placed Curve Tests ---

class TestPlacedCurve:
    """Tests for curves mapped to the plane."""

    def test_positions(self, make_line):
        """Should walk the tree from the anchor."""
        _, curve = make_line(2)
        assert curve.positions() == [(0, 0), (-2, 0), (0, -2)]

    def test_marking_positions(self, mixed_curve):
        """Should put each marking on its point."""
        assert mixed_curve.marking_positions() == {
            1: (2, -3),
            2: (7, 4),
            3: (9, -2),
            4: (0, 0),
        }

    def test_zero_length_raises(self, make_line):
        """Should refuse non-positive lengths."""
        _, curve = make_line(1)
        with pytest.raises(ConfigurationError):
            PlacedCurve(curve.comb, (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))

    def test_length_count_mismatch_raises(self, make_line):
        """Should require one length per edge."""
        _, curve = make_line(1)
        with pytest.raises(ConfigurationError):
            PlacedCurve(curve.comb, (Fraction(0), Fraction(0)), (Fraction(1),))


# --- Vertex Classification Tests ---

class TestVertexClassification:
    """Tests for refined and old vertex types."""

    def test_refined_types_of_line(self, make_line):
        """Should see one type II vertex and two type I markings."""
        _, curve = make_line(3)
        vertex = classify_vertex(curve.comb, 0)
        assert vertex.tag is VertexTag.TYPE_II
        assert vertex.mikhalkin_a == 9
        assert classify_vertex(curve.comb, 1).tag is VertexTag.TYPE_I

    def test_complex_vertex_with_double_end(self, mixed_comb):
        """Should classify a complex marking on two parallel ends as type III with a = 0."""
        vertex = classify_vertex(mixed_comb, 0)
        assert vertex.tag is VertexTag.TYPE_III
        assert vertex.mikhalkin_a == 0
        assert vertex.parallel and vertex.parallel_ends
        assert vertex.even

    def test_real_marking_at_trivalent_vertex_is_not_refined(self):
        """Should flag a real marking with three edges as invalid."""
        comb = CombType(
            vertex_count=1,
            edges=(),
            ends=(End(0, 1, (-1, 0)), End(0, 2, (0, -1)), End(0, 3, (1, 1))),
            markings=(Marking(0, 1, MarkingKind.REAL),),
        )
        assert classify_vertex(comb, 0).tag is VertexTag.INVALID
        assert not is_descendant(comb)

    def test_old_types_need_orientation(self, make_line):
        """Should raise on an unoriented curve."""
        _, curve = make_line(1)
        with pytest.raises(OrientationError):
            classify_old_vertex(curve.comb, 0)

    def test_old_types_of_mixed_curve(self, mixed_comb):
        """Should find (6b), (3), (2) and (1) vertices."""
        tags = [classify_old_vertex(mixed_comb, v).tag for v in range(mixed_comb.vertex_count)]
        assert tags == [
            VertexTag.OLD_6B,
            VertexTag.OLD_3,
            VertexTag.OLD_1,
            VertexTag.OLD_2,
            VertexTag.OLD_1,
            VertexTag.OLD_2,
            VertexTag.OLD_1,
        ]

    def test_real_marking_on_even_edge_is_forbidden(self, make_line):
        """Should classify a real marking between even edges as forbidden (a)."""
        _, curve = make_line(2)
        oriented = natural_orient(curve.comb, frozenset())
        assert classify_old_vertex(oriented, 1).tag is VertexTag.FORBIDDEN_A
        assert classify_old_vertex(oriented, 0).tag is VertexTag.OLD_4


# --- Orientation Tests ---

class TestNaturalOrientation:
    """Tests for natural orientation."""

    def test_edges_point_to_the_free_end(self, make_line):
        """Should orient both edges toward the unmarked vertex carrying the free end."""
        _, curve = make_line(1)
        oriented = natural_orient(curve.comb, frozenset())
        assert oriented.oriented
        assert all(edge.head == 0 for edge in oriented.edges)

    def test_keeps_an_already_natural_orientation(self, mixed_comb):
        """Should not flip edges that already point to the free end."""
        assert natural_orient(mixed_comb, frozenset()).edges == mixed_comb.edges

    def test_component_without_free_end_raises(self, make_line):
        """Should raise when a component has only fixed ends."""
        _, curve = make_line(1)
        with pytest.raises(OrientationError):
            natural_orient(curve.comb, frozenset({3}))

    def test_fixed_ends_point_inwards(self):
        """Should flag fixed ends as inward."""
        comb = CombType(
            vertex_count=2,
            edges=(Edge(0, 1, (0, -1)),),
            ends=(End(0, 1, (-1, 0)), End(1, 2, (0, -1)), End(0, 3, (1, 1))),
            markings=(Marking(1, 1, MarkingKind.REAL),),
        )
        oriented = natural_orient(comb, frozenset({1}))
        assert oriented.end_by_label(1).inward
        assert not oriented.end_by_label(3).inward
        assert oriented.edges == (Edge(1, 0, (0, 1)),)


# --- Curve Class Tests ---

class TestCurveClasses:
    """Tests for the curve class predicates."""

    def test_line_is_everything(self, make_line):
        """Should accept a primitive line in every class."""
        _, curve = make_line(1)
        flags = curve_class_predicates(curve.comb, frozenset())
        assert flags.is_refined_broccoli
        assert flags.is_descendant
        assert flags.is_old_broccoli
        assert flags.is_welschinger

    def test_even_line_is_not_old_broccoli(self, make_line):
        """Should reject a line with real markings on even ends as old broccoli."""
        _, curve = make_line(2)
        flags = curve_class_predicates(curve.comb, frozenset())
        assert flags.is_refined_broccoli
        assert not flags.is_old_broccoli
        assert not flags.is_welschinger

    def test_unorientable_curve(self, make_line):
        """Should only keep the descendant flag when no orientation exists."""
        _, curve = make_line(1)
        flags = curve_class_predicates(curve.comb, frozenset({3}))
        assert flags.is_descendant
        assert not flags.is_refined_broccoli
        assert not flags.is_old_broccoli

    def test_mixed_curve_is_old_broccoli(self, mixed_comb):
        """Should accept the mixed conic as old broccoli and Welschinger."""
        flags = curve_class_predicates(mixed_comb, frozenset())
        assert flags.is_old_broccoli
        assert flags.is_welschinger

    def test_reversed_edge_is_not_refined_broccoli(self, mixed_comb):
        """Should keep the descendant flag but reject an orientation leaving a marking with an incoming edge."""
        edges = (mixed_comb.edges[0].reversed(),) + mixed_comb.edges[1:]
        flipped = replace(mixed_comb, edges=edges)
        assert has_broccoli_orientation(mixed_comb)
        assert not has_broccoli_orientation(flipped)
        flags = curve_class_predicates(flipped, frozenset())
        assert flags.is_descendant
        assert not flags.is_refined_broccoli
        assert not flags.is_old_broccoli

    def test_enumerated_types_have_broccoli_orientation(self):
        """Should orient every enumerated type with markings as sources."""
        for comb in enumerate_types(Degree.projective_plane(2), 3, 1):
            assert has_broccoli_orientation(comb)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
