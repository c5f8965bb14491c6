"""Exact scalar fields: the rationals and prime fields GF(p).

Field elements support the usual Python arithmetic operators, so the linear
algebra routines are written once against operators and a ``Field`` object
that knows how to coerce and print values.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    pass


class Field:
    """Base class; subclasses provide ``coerce``, ``zero``, ``one`` and ``dump``."""

    tag: str = ""

    def coerce(self, value):
        raise NotImplementedError

    def dump(self, value) -> int | str:
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<field {self.tag}>"


class RationalField(Field):
    tag = "rational"

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise FieldError(f"not a rational: {value!r}")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"not a rational: {value!r}") from exc
        # floats are refused on purpose: the engine is exact
        raise FieldError(f"not a rational: {value!r}")

    def dump(self, value) -> int | str:
        value = Fraction(value)
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"


class GFElement:
    __slots__ = ("v",)
    p = 2  # overridden per field

    def __init__(self, v: int):
        self.v = v % self.p

    def _lift(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else type(self)(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else type(self)(self.v - o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else type(self)(o - self.v)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else type(self)(self.v * o)

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.v)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return type(self)(pow(self.v, self.p - 2, self.p))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * type(self)(o).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return type(self)(o) * self.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        return False if o is NotImplemented else self.v == o

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=None)
def _element_class(p: int) -> type:
    return type(f"GF{p}", (GFElement,), {"p": p, "__slots__": ()})


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"GF({p}) is not a field: {p} is not prime")
        self.p = p
        self.tag = f"gf{p}"
        self._cls = _element_class(p)

    def coerce(self, value):
        if isinstance(value, GFElement):
            if value.p != self.p:
                raise FieldError("element from a different prime field")
            return value
        if isinstance(value, bool):
            raise FieldError(f"not an element of GF({self.p}): {value!r}")
        if isinstance(value, int):
            return self._cls(value)
        if isinstance(value, (str, Fraction)):
            q = RationalField().coerce(value)
            if q.denominator % self.p == 0:
                raise FieldError(f"{value!r} has no image in GF({self.p})")
            return self._cls(q.numerator) / self._cls(q.denominator)
        raise FieldError(f"not an element of GF({self.p}): {value!r}")

    def dump(self, value) -> int:
        return self.coerce(value).v


QQ = RationalField()


def field_from_tag(tag: str) -> Field:
    """``"rational"`` (alias ``"QQ"``) or ``"gfP"`` / ``"GF(P)"`` for a prime P."""
    if not isinstance(tag, str):
        raise FieldError(f"unknown field tag {tag!r}")
    t = tag.strip().lower()
    if t in ("rational", "rationals", "qq", "q"):
        return QQ
    if t.startswith("gf(") and t.endswith(")"):
        t = "gf" + t[3:-1]
    if t.startswith("gf") and t[2:].isdigit():
        return PrimeField(int(t[2:]))
    raise FieldError(f"unknown field tag {tag!r}")
