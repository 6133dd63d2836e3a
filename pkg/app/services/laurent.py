"""
Laurent Algebra Service

Exact Laurent polynomial and Laurent fraction arithmetic in the formal
variable q = y^(1/2). Every vertex and end multiplicity of the engine is
assembled here, so half-integer powers of y never appear: they are simply
odd powers of q.

Coefficients are exact rationals (fractions.Fraction). There is no
floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Iterable, Mapping, Union
import logging

from .errors import DegenerateBracketError, NotLaurentError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


# --- Rational formatting ---

def format_rational(value: Rational) -> str:
    """Serialize an exact rational as "num/den", or "n" when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str | int) -> Fraction:
    """
    Parse a rational written as "num/den" or "n".

    Raises:
        ValueError: If the text is not an exact rational (floats are refused)
    """
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or any(ch in text for ch in ".eE"):
        raise ValueError(f"Expected an exact rational 'num/den', got {text!r}")
    return Fraction(text.strip())


# --- Laurent polynomials ---

def _canonical_terms(
    terms: Mapping[int, Rational] | Iterable[tuple[int, Rational]]
) -> tuple[tuple[int, Fraction], ...]:
    collected: dict[int, Fraction] = {}
    items = terms.items() if isinstance(terms, Mapping) else terms
    for exponent, coefficient in items:
        exponent = int(exponent)
        collected[exponent] = collected.get(exponent, Fraction(0)) + Fraction(coefficient)
    return tuple(sorted((e, c) for e, c in collected.items() if c != 0))


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    """
    A Laurent polynomial with exact rational coefficients.

    The zero polynomial has no terms. Stored terms are sorted by exponent
    and never carry a zero coefficient, so two equal polynomials always
    have identical term tuples.

    Attributes:
        terms: Sorted (exponent, coefficient) pairs
    """
    terms: tuple[tuple[int, Fraction], ...] = field(default=())

    variable: ClassVar[str] = "x"

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical_terms(self.terms))

    # --- Constructors ---

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Rational]):
        return cls(_canonical_terms(mapping))

    @classmethod
    def constant(cls, value: Rational):
        return cls(((0, Fraction(value)),))

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1):
        return cls(((exponent, Fraction(coefficient)),))

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls.constant(1)

    # --- Inspection ---

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exponent(self) -> int:
        if self.is_zero:
            raise ValueError("The zero polynomial has no exponents")
        return self.terms[0][0]

    @property
    def max_exponent(self) -> int:
        if self.is_zero:
            raise ValueError("The zero polynomial has no exponents")
        return self.terms[-1][0]

    def coefficient(self, exponent: int) -> Fraction:
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def is_symmetric(self) -> bool:
        """True iff the coefficient of x^e equals that of x^-e for every e."""
        mapping = self.as_dict()
        return all(mapping.get(-e, Fraction(0)) == c for e, c in mapping.items())

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    # --- Arithmetic ---

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if type(other) is not type(self):
                raise TypeError(
                    f"Cannot combine polynomials in {self.variable} and {other.variable}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return type(self)(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        product: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                product[e1 + e2] = product.get(e1 + e2, Fraction(0)) + c1 * c2
        return type(self).from_mapping(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            if len(self.terms) != 1:
                raise ValueError("Only monomials can be raised to negative powers")
            e, c = self.terms[0]
            return type(self).monomial(e * exponent, c ** exponent)
        result = type(self).one()
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, k: int):
        """Multiply by x^k."""
        return type(self)(tuple((e + k, c) for e, c in self.terms))

    def scale(self, factor: Rational):
        return type(self)(tuple((e, c * Fraction(factor)) for e, c in self.terms))

    def divide_exact(self, divisor: "LaurentPolynomial"):
        """
        Divide exactly by another Laurent polynomial.

        Both operands are shifted to ordinary polynomials with a nonzero
        constant term and divided by long division; since such a divisor is
        coprime to x, the Laurent quotient exists iff the polynomial one does.

        Returns:
            The quotient, or None when the division leaves a remainder

        Raises:
            ZeroDivisionError: If the divisor is zero
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("Division by the zero polynomial")
        if self.is_zero:
            return type(self).zero()

        offset = self.min_exponent - divisor.min_exponent
        remainder = {e - self.min_exponent: c for e, c in self.terms}
        divisor_terms = {e - divisor.min_exponent: c for e, c in divisor.terms}
        lead_exp = max(divisor_terms)
        lead_coeff = divisor_terms[lead_exp]

        quotient: dict[int, Fraction] = {}
        while remainder:
            top = max(remainder)
            if top < lead_exp:
                return None
            factor = remainder[top] / lead_coeff
            step = top - lead_exp
            quotient[step] = factor
            for e, c in divisor_terms.items():
                key = e + step
                value = remainder.get(key, Fraction(0)) - factor * c
                if value == 0:
                    remainder.pop(key, None)
                else:
                    remainder[key] = value

        return type(self).from_mapping(quotient).shift(offset)

    def evaluate(self, value: Rational) -> Fraction:
        """Substitute an exact rational for the variable."""
        value = Fraction(value)
        if value == 0 and self.terms and self.terms[0][0] < 0:
            raise ZeroDivisionError("Negative powers cannot be evaluated at 0")
        return sum((c * value ** e for e, c in self.terms), Fraction(0))

    # --- Comparison ---

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash((self.variable, self.terms))

    # --- Rendering ---

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces: list[str] = []
        for exponent, coefficient in reversed(self.terms):
            negative = coefficient < 0
            magnitude = -coefficient if negative else coefficient
            if exponent == 0:
                body = format_rational(magnitude)
            else:
                power = self.variable if exponent == 1 else f"{self.variable}^{exponent}"
                body = power if magnitude == 1 else f"{format_rational(magnitude)}*{power}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"{type(self).__name__}('{self}')"


class QLaurent(LaurentPolynomial):
    """Laurent polynomial in q = y^(1/2)."""
    variable: ClassVar[str] = "q"

    def to_json(self) -> dict:
        return {"exponents_q": [[e, format_rational(c)] for e, c in self.terms]}

    @classmethod
    def from_json(cls, payload: dict) -> "QLaurent":
        return cls(tuple((int(e), parse_rational(c)) for e, c in payload["exponents_q"]))


class YLaurent(LaurentPolynomial):
    """
    Laurent polynomial in y, the variable in which invariants are reported.

    Serialized through its q-form so the JSON keys stay truthful:
    {"exponents_q": [[2e, c], ...], "variable": "y"}.
    """
    variable: ClassVar[str] = "y"

    def to_q(self) -> QLaurent:
        return QLaurent(tuple((2 * e, c) for e, c in self.terms))

    def to_json(self) -> dict:
        return {**self.to_q().to_json(), "variable": "y"}

    @classmethod
    def from_json(cls, payload: dict) -> "YLaurent":
        if payload.get("variable") != "y":
            raise ValueError("Payload is not a y-polynomial (missing variable='y')")
        return to_y(QLaurent.from_json(payload))


# --- Laurent fractions ---

@dataclass(frozen=True, eq=False)
class QFraction:
    """
    A quotient num/den of q-Laurent polynomials.

    The denominator is normalized so its lowest exponent is 0 and its
    lowest-term coefficient is 1; monomial factors therefore always end up
    in the numerator. Whenever den divides num exactly the fraction collapses
    to den = 1. Equality is tested by cross-multiplication.

    Attributes:
        num: Numerator
        den: Denominator (nonzero)
    """
    num: QLaurent
    den: QLaurent = field(default_factory=QLaurent.one)

    __hash__ = None

    def __post_init__(self):
        num, den = self.num, self.den
        if not isinstance(num, QLaurent):
            num = QLaurent.constant(num)
        if not isinstance(den, QLaurent):
            den = QLaurent.constant(den)
        if den.is_zero:
            raise ZeroDivisionError("QFraction with zero denominator")

        low_exp = den.min_exponent
        low_coeff = den.coefficient(low_exp)
        num = num.shift(-low_exp).scale(1 / low_coeff)
        den = den.shift(-low_exp).scale(1 / low_coeff)

        if num.is_zero:
            den = QLaurent.one()
        elif den != 1:
            quotient = num.divide_exact(den)
            if quotient is not None:
                num, den = quotient, QLaurent.one()

        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def _lift(other) -> "QFraction":
        if isinstance(other, QFraction):
            return other
        if isinstance(other, (QLaurent, int, Fraction)):
            return QFraction(other)
        return NotImplemented

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_laurent(self) -> bool:
        return self.den == 1

    def to_laurent(self) -> QLaurent:
        """
        Raises:
            NotLaurentError: If the denominator does not divide the numerator
        """
        if not self.is_laurent:
            raise NotLaurentError(f"Fraction ({self.num})/({self.den}) is not a Laurent polynomial")
        return self.num

    reduce = to_laurent

    def evaluate(self, value: Rational) -> Fraction:
        den = self.den.evaluate(value)
        if den == 0:
            raise ZeroDivisionError(f"Denominator vanishes at q={value}")
        return self.num.evaluate(value) / den

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return QFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QFraction(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return QFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("Division by a zero fraction")
        return QFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __str__(self) -> str:
        if self.is_laurent:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QFraction('{self}')"


# --- Brackets and multiplicities ---

Q = QLaurent.monomial(1)
Q_INV = QLaurent.monomial(-1)


def bracket_minus(a: int) -> QLaurent:
    """
    Quantum integer (q^a - q^-a)/(q - q^-1), expanded.

    Returns q^(a-1) + q^(a-3) + ... + q^-(a-1) for a > 0, the negated
    expansion for a < 0 and 0 for a = 0.
    """
    if a == 0:
        return QLaurent.zero()
    sign = 1 if a > 0 else -1
    a = abs(a)
    return QLaurent.from_mapping({a - 1 - 2 * k: sign for k in range(a)})


def bracket_plus(a: int) -> QFraction:
    """
    Plus-bracket (q^a + q^-a)/(q + q^-1), symmetric in a.

    Raises:
        DegenerateBracketError: If a == 0
    """
    if a == 0:
        raise DegenerateBracketError("bracket_plus(0) is degenerate")
    a = abs(a)
    return QFraction(QLaurent.from_mapping({a: 1, -a: 1}), Q + Q_INV)


def double_end_factor() -> QFraction:
    """Multiplicity 2/(q + q^-1) of a complex-marked vertex with two parallel odd edges."""
    return QFraction(QLaurent.constant(2), Q + Q_INV)


def end_mult(w: int, fixed: bool) -> QFraction:
    """
    Refined multiplicity of an end of weight w.

    fixed:     (q^w + (-1)^w q^-w) / (q + (-1)^w q^-1)
    non-fixed: (q^w - (-1)^w q^-w) / (w (q - (-1)^w q^-1))
    """
    if w < 1:
        raise ValueError(f"End weight must be positive, got {w}")
    sign = -1 if w % 2 else 1
    if fixed:
        return QFraction(
            QLaurent.from_mapping({w: 1, -w: sign}),
            QLaurent.from_mapping({1: 1, -1: sign}),
        )
    return QFraction(
        QLaurent.from_mapping({w: 1, -w: -sign}),
        QLaurent.from_mapping({1: w, -1: -sign * w}),
    )


def end_mult_simple(w: int, fixed: bool) -> QFraction:
    """
    Alternative end multiplicity without parity signs.

    fixed:     (q^w + q^-w) / (q + q^-1)
    non-fixed: (q^w - q^-w) / (w (q - q^-1))
    """
    if w < 1:
        raise ValueError(f"End weight must be positive, got {w}")
    if fixed:
        return QFraction(QLaurent.from_mapping({w: 1, -w: 1}), Q + Q_INV)
    return QFraction(QLaurent.from_mapping({w: 1, -w: -1}), QLaurent.from_mapping({1: w, -1: -w}))


def to_y(p: QLaurent) -> YLaurent:
    """
    Re-index a q-polynomial with only even exponents as a y-polynomial.

    Raises:
        NotLaurentError: If an odd exponent is present
    """
    odd = [e for e, _ in p.terms if e % 2]
    if odd:
        raise NotLaurentError(f"{p} is not a y-polynomial (odd q-exponents {odd})")
    return YLaurent(tuple((e // 2, c) for e, c in p.terms))


def eval_y(p: YLaurent, value: Rational) -> Fraction:
    """Substitute a nonzero exact rational for y."""
    if Fraction(value) == 0:
        raise ValueError("y must be nonzero")
    return p.evaluate(value)


def plus_divisibility_order(p: QLaurent) -> int:
    """Largest k such that (q + q^-1)^k divides p exactly."""
    if p.is_zero:
        raise ValueError("The divisibility order of 0 is undefined")
    divisor = Q + Q_INV
    order = 0
    quotient = p.divide_exact(divisor)
    while quotient is not None:
        order += 1
        p = quotient
        quotient = p.divide_exact(divisor)
    return order


def is_symmetric(p: QLaurent | YLaurent) -> bool:
    return p.is_symmetric()
