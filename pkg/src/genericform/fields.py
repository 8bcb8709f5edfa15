"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values.  Elements of
GF(p) are :class:`ModP` instances, which support the arithmetic operators so
that matrix code can stay field-agnostic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from numbers import Rational
from typing import Union


class ModP:
    """An element of the prime field GF(p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            den = other.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(den, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pow__(self, k: int):
        return ModP(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, ModP]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class RationalField:
    """The field of rational numbers, backed by :class:`Fraction`."""

    name = "rational"

    def __call__(self, value) -> Fraction:
        if isinstance(value, ModP):
            raise TypeError("cannot lift a GF(p) element to the rationals")
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def sample(self, rng: random.Random, lo: int, hi: int) -> Fraction:
        return Fraction(rng.randint(lo, hi))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """GF(p) for a prime ``p``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"GF(p) needs a prime modulus, got {p}")
        self.p = p

    @property
    def name(self) -> str:
        return f"gf:{self.p}"

    def __call__(self, value) -> ModP:
        if isinstance(value, ModP):
            if value.p != self.p:
                raise ValueError(f"element of GF({value.p}) used in GF({self.p})")
            return value
        if isinstance(value, int):
            return ModP(value, self.p)
        if isinstance(value, (Rational, str)):
            frac = Fraction(value)
            den = frac.denominator % self.p
            if den == 0:
                raise ValueError(f"{frac} has no image in GF({self.p})")
            return ModP(frac.numerator * pow(den, -1, self.p), self.p)
        raise TypeError(f"cannot convert {value!r} to GF({self.p})")

    @property
    def zero(self) -> ModP:
        return ModP(0, self.p)

    @property
    def one(self) -> ModP:
        return ModP(1, self.p)

    def sample(self, rng: random.Random, lo: int = 0, hi: int = 0) -> ModP:
        # Uniform over the whole field; the integer range does not apply.
        return ModP(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def parse_field(spec: str) -> Field:
    """Parse ``rational`` or ``gf:<p>``."""
    spec = spec.strip().lower()
    if spec in ("rational", "q", "qq"):
        return QQ
    if spec.startswith("gf:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError(f"bad prime in field spec {spec!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field {spec!r}; expected 'rational' or 'gf:<p>'")
