"""Exact coefficient fields: rationals, Gaussian rationals, prime fields with sqrt(-1).

Every computation in this package is exact.  Three coefficient domains are
supported:

* ``QQ``      -- arbitrary-precision rationals (``fractions.Fraction``),
* ``QI``      -- Gaussian rationals a + b*i,
* ``GF(p)``   -- prime fields with p = 1 (mod 4), so that a square root of -1
                 exists; the distinguished root ``eps`` is the smaller of the
                 two residues and is deterministic given p.

Scalar string grammar: ``a/b`` (rational), ``a/b+c/d*i`` (Gaussian rational),
decimal residues for prime fields.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union


class ScalarError(ValueError):
    """Raised for invalid field constructions or malformed scalar strings."""


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"bad rational literal {text!r}") from exc


class GaussianRational:
    """A Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in QI")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im < 0:
            return f"{self.re}-{-self.im}*i"
        return f"{self.re}+{self.im}*i"

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        t = text.strip().replace(" ", "")
        if "i" not in t:
            return GaussianRational(parse_fraction(t))
        body = t[:-2] if t.endswith("*i") else t[:-1]
        # split into real part and imaginary coefficient at the last +/- that
        # is not inside a fraction sign position 0
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/*":
                re_s, im_s = body[:k], body[k:]
                im_s = im_s[0] + (im_s[1:] or "1")
                return GaussianRational(parse_fraction(re_s), parse_fraction(im_s))
        if body in ("", "+"):
            body = "1"
        elif body == "-":
            body = "-1"
        return GaussianRational(0, parse_fraction(body))


class FpElement:
    """Residue in a fixed prime field."""

    __slots__ = ("field", "value")

    def __init__(self, field: "PrimeField", value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value % field.p)

    def __setattr__(self, *a):
        raise AttributeError("FpElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.field.p != self.field.p:
                raise ScalarError("mixed prime fields")
            return other
        if isinstance(other, int):
            return FpElement(self.field, other)
        if isinstance(other, Fraction):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        return FpElement(self.field, -self.value)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, self.value - o.value)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, self.value * o.value)

    __rmul__ = __mul__

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.field.p})")
        return FpElement(self.field, pow(self.value, self.field.p - 2, self.field.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(self.field, pow(self.value, n, self.field.p))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.value == o.value

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.field.p})({self.value})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, GaussianRational, FpElement]


class RationalField:
    """The field of rationals, with Fraction elements."""

    name = "QQ"
    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, GaussianRational) and x.im == 0:
            return x.re
        raise ScalarError(f"cannot coerce {x!r} into QQ")

    def sqrt_minus_one(self):
        raise ScalarError("QQ contains no square root of -1 (use QI or GF(p))")

    def parse(self, text: str) -> Fraction:
        return parse_fraction(text)

    def __repr__(self):
        return "QQ"


class GaussianRationalField:
    """The field of Gaussian rationals Q(i)."""

    name = "QI"
    char = 0

    def zero(self):
        return GaussianRational(0)

    def one(self):
        return GaussianRational(1)

    def from_int(self, n: int) -> GaussianRational:
        return GaussianRational(n)

    def coerce(self, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise ScalarError(f"cannot coerce {x!r} into QI")

    def sqrt_minus_one(self) -> GaussianRational:
        return GaussianRational(0, 1)

    def parse(self, text: str) -> GaussianRational:
        return GaussianRational.parse(text)

    def __repr__(self):
        return "QI"


class PrimeField:
    """GF(p) for a prime p = 1 (mod 4).

    ``eps`` is the canonical square root of -1: of the two roots r and p-r,
    the smaller residue is chosen, so eps is deterministic given p.
    """

    char_positive = True

    def __init__(self, p: int):
        if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
            raise ScalarError(f"{p} is not prime")
        if p % 4 != 1:
            raise ScalarError(
                f"prime {p} rejected: p = 1 (mod 4) is required so that the "
                f"square root of -1 (eps) exists in GF(p)")
        self.p = p
        self.name = f"GF({p})"
        self.char = p
        self.eps_int = self._find_eps()

    def _find_eps(self) -> int:
        n = 2
        while pow(n, (self.p - 1) // 2, self.p) != self.p - 1:
            n += 1
        r = pow(n, (self.p - 1) // 4, self.p)
        return min(r, self.p - r)

    def zero(self):
        return FpElement(self, 0)

    def one(self):
        return FpElement(self, 1)

    def from_int(self, n: int) -> FpElement:
        return FpElement(self, n)

    def coerce(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.field.p != self.p:
                raise ScalarError("mixed prime fields")
            return x
        if isinstance(x, int):
            return FpElement(self, x)
        if isinstance(x, Fraction):
            return FpElement(self, x.numerator * pow(x.denominator, self.p - 2, self.p))
        if isinstance(x, GaussianRational):
            return self.coerce(x.re) + self.coerce(x.im) * self.sqrt_minus_one()
        raise ScalarError(f"cannot coerce {x!r} into GF({self.p})")

    def sqrt_minus_one(self) -> FpElement:
        return FpElement(self, self.eps_int)

    def parse(self, text: str) -> FpElement:
        try:
            return FpElement(self, int(text.strip()))
        except ValueError as exc:
            raise ScalarError(f"bad residue literal {text!r}") from exc

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()
QI = GaussianRationalField()

_PRIME_FIELDS: dict = {}


def GF(p: int) -> PrimeField:
    """Return the cached GF(p); rejects p != 1 (mod 4)."""
    if p not in _PRIME_FIELDS:
        _PRIME_FIELDS[p] = PrimeField(p)
    return _PRIME_FIELDS[p]
