"""Exact rational and quadratic-extension arithmetic.

Every exact value in this package is either a `fractions.Fraction` or a
`QuadraticNumber` a + b*sqrt(d) with rational a, b over a squarefree
radicand d.  Arithmetic between compatible values stays inside Q(sqrt(d));
a result with b == 0 is rational and `normalize_value` collapses it back
to a plain Fraction so rational values always compare equal regardless of
which route produced them.

Values from different radicands never mix: combining 1 + sqrt(2) with
sqrt(3) raises MixedRadicandError.  A rational operand (b == 0) is
compatible with any radicand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union


class InvalidRationalError(ValueError):
    """Raised for a zero denominator or unparseable rational text."""


class MixedRadicandError(ValueError):
    """Raised when two values over different radicands are combined."""


class RadicandError(ValueError):
    """Raised for a radicand that is not a verifiable squarefree positive integer."""


# Trial division bound for the squarefree check.
_SQUAREFREE_TRIAL_LIMIT = 10**6

ExactValue = Union[Fraction, "QuadraticNumber"]
Scalar = Union[int, Fraction, "QuadraticNumber"]


def rat_make(num: int, den: int = 1) -> Fraction:
    """Build a canonical rational: reduced, positive denominator, 0 -> 0/1."""
    if den == 0:
        raise InvalidRationalError(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def rat_parse(text: str) -> Fraction:
    """Parse "p/q", "p", or exact decimal text into a Fraction."""
    try:
        return Fraction(text.strip())
    except ZeroDivisionError as exc:
        raise InvalidRationalError(f"zero denominator in {text!r}") from exc
    except ValueError as exc:
        raise InvalidRationalError(f"not a rational: {text!r}") from exc


def rat_format(value: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@lru_cache(maxsize=256)
def validate_radicand(d: int) -> int:
    """Check that d is a squarefree positive integer; return it unchanged.

    Squarefreeness is established by trial division up to 10^6.  Values too
    large for the check to be conclusive are rejected rather than trusted.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise RadicandError(f"radicand must be a positive integer, got {d!r}")
    rest = d
    p = 2
    while p * p <= rest:
        if p > _SQUAREFREE_TRIAL_LIMIT:
            raise RadicandError(f"radicand {d} too large to verify squarefree")
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise RadicandError(f"radicand {d} is divisible by {p}^2")
        else:
            p += 1
    return d


def _as_fraction(value: int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class QuadraticNumber:
    """The value a + b*sqrt(d) with rational a, b and squarefree d >= 2.

    Construction folds d == 1 into the rational part and validates d.
    Instances are immutable; use `normalize_value` to collapse b == 0
    results back to Fraction where a uniform representation matters.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        a = _as_fraction(self.a)
        b = _as_fraction(self.b)
        d = validate_radicand(self.d)
        if d == 1:
            a, b, d = a + b, Fraction(0), 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- radicand compatibility -------------------------------------------

    def _join(self, other: QuadraticNumber) -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise MixedRadicandError(
            f"cannot combine sqrt({self.d}) with sqrt({other.d})"
        )

    @staticmethod
    def _coerce(value: Scalar) -> "QuadraticNumber | None":
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, Fraction) or (
            isinstance(value, int) and not isinstance(value, bool)
        ):
            return QuadraticNumber(_as_fraction(value), Fraction(0), 1)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Scalar) -> "QuadraticNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join(o)
        return QuadraticNumber(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadraticNumber":
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other: Scalar) -> "QuadraticNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "QuadraticNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Scalar) -> "QuadraticNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join(o)
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        """Multiplicative inverse: conj(x) / (a^2 - d b^2)."""
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero quadratic number")
        return QuadraticNumber(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other: Scalar) -> "QuadraticNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "QuadraticNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "QuadraticNumber":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = QuadraticNumber(Fraction(1), Fraction(0), self.d)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "QuadraticNumber":
        """a + b*sqrt(d)  ->  a - b*sqrt(d)."""
        return QuadraticNumber(self.a, -self.b, self.d)

    # -- comparisons / conversions ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadraticNumber):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return rat_format(self.a)
        if self.a == 0:
            return f"{rat_format(self.b)}*sqrt({self.d})"
        sign = "+" if self.b > 0 else "-"
        return f"{rat_format(self.a)} {sign} {rat_format(abs(self.b))}*sqrt({self.d})"


def quad_make(a: int | Fraction, b: int | Fraction, d: int) -> QuadraticNumber:
    """Convenience constructor for a + b*sqrt(d)."""
    return QuadraticNumber(_as_fraction(a), _as_fraction(b), d)


def quad_mul(x: QuadraticNumber, y: QuadraticNumber) -> QuadraticNumber:
    return x * y


def quad_conjugate(x: QuadraticNumber) -> QuadraticNumber:
    return x.conjugate()


def normalize_value(value: Scalar) -> ExactValue:
    """Collapse rational QuadraticNumbers to Fraction; coerce ints."""
    if isinstance(value, QuadraticNumber):
        return value.a if value.b == 0 else value
    return _as_fraction(value)


def value_to_float(value: Scalar | float) -> float:
    if isinstance(value, float):
        return value
    return float(value)


def radicand_of(value: Scalar) -> int | None:
    """The radicand a value genuinely uses, or None for rational values."""
    if isinstance(value, QuadraticNumber) and value.b != 0:
        return value.d
    return None


def conjugate_value(value: ExactValue) -> ExactValue:
    if isinstance(value, QuadraticNumber):
        return value.conjugate()
    return value
