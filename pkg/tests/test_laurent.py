"""
Tests for the Laurent algebra service.
"""

from fractions import Fraction
from itertools import product
import random

import pytest
from app.services.errors import DegenerateBracketError, NotLaurentError
from app.services.laurent import (
    Q,
    Q_INV,
    QFraction,
    QLaurent,
    YLaurent,
    bracket_minus,
    bracket_plus,
    double_end_factor,
    end_mult,
    end_mult_simple,
    eval_y,
    format_rational,
    is_symmetric,
    parse_rational,
    plus_divisibility_order,
    to_y,
)


def q_poly(mapping):
    return QLaurent.from_mapping(mapping)


def random_nonzero_poly(rng):
    while True:
        poly = q_poly({
            rng.randint(-4, 4): Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            for _ in range(rng.randint(1, 4))
        })
        if not poly.is_zero:
            return poly


# --- Rational Tests ---

class TestRationals:
    """Tests for rational (de)serialization."""

    def test_format_integral(self):
        """Should drop the denominator of integral values."""
        assert format_rational(Fraction(6, 3)) == "2"

    def test_format_fraction(self):
        """Should write num/den in lowest terms."""
        assert format_rational(Fraction(-2, 4)) == "-1/2"

    def test_parse_fraction(self):
        """Should parse num/den strings exactly."""
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(7) == Fraction(7)

    def test_parse_refuses_floats(self):
        """Should refuse decimal notation."""
        with pytest.raises(ValueError):
            parse_rational("0.5")
        with pytest.raises(ValueError):
            parse_rational("1e3")


# --- Laurent Polynomial Tests ---

class TestLaurentPolynomial:
    """Tests for Laurent polynomial arithmetic."""

    def test_zero_terms_are_dropped(self):
        """Should never store zero coefficients."""
        p = q_poly({2: 1, 0: 0, -2: 1}) - q_poly({2: 1})
        assert p.terms == ((-2, Fraction(1)),)

    def test_square_of_plus(self):
        """Should expand (q + q^-1)^2."""
        assert (Q + Q_INV) ** 2 == q_poly({2: 1, 0: 2, -2: 1})

    def test_negative_power_of_monomial(self):
        """Should invert monomials."""
        assert Q ** -3 == QLaurent.monomial(-3)

    def test_negative_power_of_binomial_raises(self):
        """Should refuse to invert a non-monomial."""
        with pytest.raises(ValueError):
            (Q + 1) ** -1

    def test_divide_exact(self):
        """Should divide q^2 - q^-2 by q - q^-1."""
        quotient = q_poly({2: 1, -2: -1}).divide_exact(q_poly({1: 1, -1: -1}))
        assert quotient == Q + Q_INV

    def test_divide_with_remainder(self):
        """Should return None when the division is not exact."""
        assert q_poly({2: 1, -2: 1}).divide_exact(Q + Q_INV) is None

    def test_divide_by_zero_raises(self):
        """Should raise on a zero divisor."""
        with pytest.raises(ZeroDivisionError):
            Q.divide_exact(QLaurent.zero())

    def test_evaluate(self):
        """Should substitute exact rationals."""
        assert q_poly({1: 1, -1: 1}).evaluate(2) == Fraction(5, 2)

    def test_evaluate_negative_power_at_zero(self):
        """Should refuse to evaluate q^-1 at 0."""
        with pytest.raises(ZeroDivisionError):
            Q_INV.evaluate(0)

    def test_mixing_variables_raises(self):
        """Should not add a q-polynomial to a y-polynomial."""
        with pytest.raises(TypeError):
            Q + YLaurent.monomial(1)

    def test_symmetry(self):
        """Should detect symmetry under q -> q^-1."""
        assert is_symmetric(Q + Q_INV)
        assert not is_symmetric(Q + 1)

    def test_rendering(self):
        """Should render highest exponent first with rational coefficients."""
        assert str(q_poly({1: Fraction(1, 2), -1: -3})) == "1/2*q - 3*q^-1"
        assert str(QLaurent.zero()) == "0"

    def test_integer_coefficients(self):
        """Should tell integral polynomials apart."""
        assert (Q + 2).has_integer_coefficients()
        assert not (Q + Fraction(1, 2)).has_integer_coefficients()


# --- Fraction Tests ---

class TestQFraction:
    """Tests for Laurent fractions."""

    def test_monomials_move_to_numerator(self):
        """Should normalize a monomial denominator away."""
        assert QFraction(q_poly({2: 1, 0: -1}), Q).is_laurent
        assert QFraction(q_poly({2: 1, 0: -1}), Q) == Q - Q_INV

    def test_exact_quotient_collapses(self):
        """Should collapse to a Laurent polynomial when the division is exact."""
        fraction = QFraction(q_poly({3: 1, -3: 1}), Q + Q_INV)
        assert fraction.to_laurent() == q_poly({2: 1, 0: -1, -2: 1})

    def test_not_laurent_raises(self):
        """Should raise when the denominator survives."""
        with pytest.raises(NotLaurentError):
            QFraction(QLaurent.constant(2), Q + Q_INV).to_laurent()

    def test_cross_multiplied_equality(self):
        """Should compare fractions by cross-multiplication."""
        a = QFraction(QLaurent.constant(2), Q + Q_INV)
        b = QFraction(QLaurent.constant(4), (Q + Q_INV) * 2)
        assert a == b

    def test_division_by_zero_fraction(self):
        """Should raise on division by zero."""
        with pytest.raises(ZeroDivisionError):
            QFraction(Q) / QFraction(QLaurent.zero())

    @pytest.mark.parametrize("seed", range(20))
    def test_quotient_times_inverse_is_one(self, seed):
        """Should give (p/r)(r/p) = 1 for random nonzero p and r."""
        rng = random.Random(seed)
        p, r = random_nonzero_poly(rng), random_nonzero_poly(rng)
        assert QFraction(p, r) * QFraction(r, p) == 1

    def test_evaluate(self):
        """Should evaluate numerator and denominator exactly."""
        assert double_end_factor().evaluate(1) == 1


# --- Bracket Tests ---

class TestBrackets:
    """Tests for the quantum brackets."""

    def test_bracket_minus_expansion(self):
        """Should expand [3]_- as q^2 + 1 + q^-2."""
        assert bracket_minus(3) == q_poly({2: 1, 0: 1, -2: 1})

    def test_bracket_minus_zero(self):
        """Should vanish at 0."""
        assert bracket_minus(0).is_zero

    def test_bracket_minus_negative(self):
        """Should be odd in a."""
        assert bracket_minus(-2) == -(Q + Q_INV)

    @pytest.mark.parametrize("a", [1, 2, 3, 4, 7])
    def test_bracket_minus_at_one(self, a):
        """Should specialize to a at q = 1."""
        assert bracket_minus(a).evaluate(1) == a

    def test_bracket_plus_odd_is_laurent(self):
        """Should be a Laurent polynomial for odd a."""
        assert bracket_plus(3).to_laurent() == q_poly({2: 1, 0: -1, -2: 1})

    def test_bracket_plus_even_is_fraction(self):
        """Should keep a denominator for even a."""
        assert not bracket_plus(2).is_laurent
        assert bracket_plus(2).evaluate(1) == 1

    def test_bracket_plus_symmetric_in_a(self):
        """Should not depend on the sign of a."""
        assert bracket_plus(-5) == bracket_plus(5)

    def test_bracket_plus_zero_raises(self):
        """Should refuse the degenerate bracket at 0."""
        with pytest.raises(DegenerateBracketError):
            bracket_plus(0)

    @pytest.mark.parametrize("a,b", list(product(range(1, 13), repeat=2)))
    def test_product_identity(self, a, b):
        """Should satisfy [a]_- [b]_+ (q^2 - q^-2) = (q^(a+b) - q^-(a+b)) + (q^(a-b) - q^(b-a))."""
        lhs = bracket_plus(b) * bracket_minus(a) * q_poly({2: 1, -2: -1})
        rhs = (
            q_poly({a + b: 1, -a - b: -1})
            + q_poly({a - b: 1})
            + q_poly({b - a: -1})
        )
        assert lhs == rhs


# --- End Multiplicity Tests ---

class TestEndMultiplicities:
    """Tests for end multiplicities."""

    def test_weight_one_is_trivial(self):
        """Should be 1 for primitive ends, fixed or not."""
        assert end_mult(1, fixed=True) == 1
        assert end_mult(1, fixed=False) == 1

    def test_non_fixed_weight_two(self):
        """Should be (q + q^-1)/2 for a non-fixed end of weight 2."""
        assert end_mult(2, fixed=False).to_laurent() == (Q + Q_INV).scale(Fraction(1, 2))

    def test_fixed_weight_three(self):
        """Should be [3]_- for a fixed end of weight 3."""
        assert end_mult(3, fixed=True).to_laurent() == bracket_minus(3)

    def test_non_fixed_weight_three(self):
        """Should be [3]_+ / 3 for a non-fixed end of weight 3."""
        assert end_mult(3, fixed=False) == bracket_plus(3) * Fraction(1, 3)

    def test_fixed_even_weight_is_fraction(self):
        """Should keep a denominator for fixed even weights."""
        assert not end_mult(2, fixed=True).is_laurent

    def test_simple_scheme(self):
        """Should ignore parity in the simple scheme."""
        assert end_mult_simple(3, fixed=True) == bracket_plus(3)
        assert end_mult_simple(2, fixed=False).to_laurent() == (Q + Q_INV).scale(Fraction(1, 2))

    def test_non_positive_weight_raises(self):
        """Should refuse weight 0."""
        with pytest.raises(ValueError):
            end_mult(0, fixed=False)

    @pytest.mark.parametrize("w", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("fixed", [True, False])
    def test_classical_limit(self, w, fixed):
        """Should specialize at q = 1 to w or 1 when fixed, 1/w or 1 when not."""
        value = end_mult(w, fixed).evaluate(1)
        if fixed:
            assert value == (w if w % 2 else 1)
        else:
            assert value == (Fraction(1, w) if w % 2 else 1)


# --- y-Variable Tests ---

class TestYPolynomials:
    """Tests for the y-variable view."""

    def test_to_y(self):
        """Should halve even q-exponents."""
        p = to_y(q_poly({2: 1, 0: 10, -2: 1}))
        assert p == YLaurent.from_mapping({1: 1, 0: 10, -1: 1})
        assert str(p) == "y + 10 + y^-1"

    def test_to_y_odd_exponent_raises(self):
        """Should refuse odd q-exponents."""
        with pytest.raises(NotLaurentError):
            to_y(Q)

    def test_eval_y(self):
        """Should evaluate at y = 1 and y = -1."""
        p = YLaurent.from_mapping({1: 1, 0: 10, -1: 1})
        assert eval_y(p, 1) == 12
        assert eval_y(p, -1) == 8

    def test_eval_y_at_zero_raises(self):
        """Should refuse y = 0."""
        with pytest.raises(ValueError):
            eval_y(YLaurent.one(), 0)

    def test_json_keeps_q_exponents(self):
        """Should serialize by q-exponent with the variable marked."""
        p = YLaurent.from_mapping({1: 1, 0: 10, -1: 1})
        assert p.to_json() == {
            "exponents_q": [[-2, "1"], [0, "10"], [2, "1"]],
            "variable": "y",
        }
        assert YLaurent.from_json(p.to_json()) == p

    def test_json_without_variable_raises(self):
        """Should refuse a payload that is not marked as a y-polynomial."""
        with pytest.raises(ValueError):
            YLaurent.from_json({"exponents_q": [[0, "1"]]})


# --- Divisibility Tests ---

class TestDivisibility:
    """Tests for the (q + q^-1)-adic order."""

    def test_power_of_plus(self):
        """Should count every factor of q + q^-1."""
        assert plus_divisibility_order(((Q + Q_INV) ** 3) * 5) == 3

    def test_coprime(self):
        """Should be 0 for [3]_-."""
        assert plus_divisibility_order(bracket_minus(3)) == 0

    def test_zero_raises(self):
        """Should refuse the zero polynomial."""
        with pytest.raises(ValueError):
            plus_divisibility_order(QLaurent.zero())


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
