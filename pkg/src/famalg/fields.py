"""Exact scalar fields: the rationals and the prime fields F_2, F_3, F_5.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field elements
are :class:`Fp` instances; mixing moduli, or mixing an :class:`Fp` with a
fraction, raises :class:`FieldMismatch`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

import numpy as np

from .errors import FieldMismatch, SemanticError

SUPPORTED_PRIMES = (2, 3, 5)


@total_ordering
class Fp:
    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported modulus {modulus}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", int(value) % modulus)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.modulus != self.modulus:
                raise FieldMismatch(f"F{self.modulus} vs F{other.modulus}")
            return other.value
        if isinstance(other, (bool, np.bool_)):
            return NotImplemented
        if isinstance(other, (int, np.integer)):
            return int(other)
        if isinstance(other, Fraction):
            raise FieldMismatch(f"cannot mix F{self.modulus} with a rational")
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Fp(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Fp(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Fp(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Fp(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.modulus)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Fp(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * Fp(v, self.modulus).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Fp(v, self.modulus) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.value == int(other) % self.modulus
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, Fp) or other.modulus != self.modulus:
            return NotImplemented
        return self.value < other.value

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


class Field:
    """Common interface of the supported fields.

    ``dtype`` is the numpy dtype used for dense structure tensors: ``object``
    holding fractions for Q, ``int64`` holding canonical residues for F_p.
    """

    tag: str
    characteristic: int
    dtype: object

    def __repr__(self):
        return f"<field {self.tag}>"

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)


class RationalField(Field):
    tag = "Q"
    characteristic = 0
    dtype = object

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, v) -> Fraction:
        if isinstance(v, Fp):
            raise FieldMismatch("cannot use a prime-field element as a rational")
        if isinstance(v, str):
            return self.parse(v)
        if isinstance(v, float):
            raise TypeError("floats are not exact; pass a string or Fraction")
        return Fraction(v)

    def parse(self, text) -> Fraction:
        if isinstance(text, bool):
            raise SemanticError(f"not a rational: {text!r}")
        if isinstance(text, int):
            return Fraction(text)
        if not isinstance(text, str):
            raise SemanticError(f"not a rational: {text!r}")
        s = text.strip()
        num, sep, den = s.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise SemanticError(f"not a rational: {text!r}") from None
        if d == 0:
            raise SemanticError(f"zero denominator in {text!r}")
        return Fraction(n, d)

    def format(self, v) -> str:
        v = self.coerce(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def array(self, values) -> np.ndarray:
        out = np.empty(np.shape(values), dtype=object)
        flat = out.reshape(-1)
        for pos, v in enumerate(np.asarray(values, dtype=object).reshape(-1)):
            flat[pos] = self.coerce(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def reduce(self, arr):
        return arr

    def scalar(self, v) -> Fraction:
        return v if isinstance(v, Fraction) else Fraction(v)

    def elements(self):
        raise TypeError("Q is infinite")


class PrimeField(Field):
    dtype = np.int64

    def __init__(self, p: int):
        if p not in SUPPORTED_PRIMES:
            raise SemanticError(f"unsupported prime field F{p}")
        self.p = self.characteristic = p
        self.tag = f"F{p}"

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def coerce(self, v) -> Fp:
        if isinstance(v, Fp):
            if v.modulus != self.p:
                raise FieldMismatch(f"F{v.modulus} element used in F{self.p}")
            return v
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise FieldMismatch("cannot use a non-integral rational in a prime field")
            v = v.numerator
        if isinstance(v, str):
            return self.parse(v)
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return Fp(int(v), self.p)
        raise TypeError(f"cannot coerce {v!r} into F{self.p}")

    def parse(self, text) -> Fp:
        if isinstance(text, bool):
            raise SemanticError(f"not an F{self.p} element: {text!r}")
        if isinstance(text, str):
            try:
                v = int(text.strip())
            except ValueError:
                raise SemanticError(f"not an F{self.p} element: {text!r}") from None
        elif isinstance(text, int):
            v = text
        else:
            raise SemanticError(f"not an F{self.p} element: {text!r}")
        if not 0 <= v < self.p:
            raise SemanticError(f"F{self.p} element out of range: {v}")
        return Fp(v, self.p)

    def format(self, v) -> int:
        return self.coerce(v).value

    def array(self, values) -> np.ndarray:
        flat = [int(self.coerce(v)) for v in np.asarray(values, dtype=object).reshape(-1)]
        return np.array(flat, dtype=np.int64).reshape(np.shape(values))

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def reduce(self, arr):
        return np.mod(arr, self.p)

    def scalar(self, v) -> Fp:
        return Fp(int(v), self.p)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]


Q = RationalField()
F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
_BY_TAG = {f.tag: f for f in (Q, F2, F3, F5)}


def field_from_tag(tag: str) -> Field:
    try:
        return _BY_TAG[tag]
    except KeyError:
        raise SemanticError(f"unknown field tag {tag!r}") from None
