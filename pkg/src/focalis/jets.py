"""First-order jets in two directions: value plus du/dv parts.

A jet carries (f, f_u, f_v) at a point and propagates derivatives through
ring operations, truncating at order one.  Division requires an invertible
value part; square roots go through the scalar field helpers.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import NotSquare
from .fields import field_sqrt


def _lift(x):
    if isinstance(x, Jet):
        return x
    if isinstance(x, int):
        x = Fraction(x)
    return Jet(x, 0, 0)


class Jet:
    __slots__ = ("val", "du", "dv")

    def __init__(self, val, du=0, dv=0):
        self.val = Fraction(val) if isinstance(val, int) else val
        self.du = Fraction(du) if isinstance(du, int) else du
        self.dv = Fraction(dv) if isinstance(dv, int) else dv

    def __repr__(self):
        return f"Jet({self.val}, du={self.du}, dv={self.dv})"

    def __bool__(self):
        return bool(self.val) or bool(self.du) or bool(self.dv)

    def __eq__(self, other):
        o = _lift(other) if isinstance(other, (int, Fraction)) else other
        if not isinstance(o, Jet):
            return NotImplemented
        return self.val == o.val and self.du == o.du and self.dv == o.dv

    def __hash__(self):
        return hash((self.val, self.du, self.dv))

    def __add__(self, other):
        o = _lift(other)
        return Jet(self.val + o.val, self.du + o.du, self.dv + o.dv)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.du, -self.dv)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) + (-self)

    def __mul__(self, other):
        o = _lift(other)
        return Jet(
            self.val * o.val,
            self.du * o.val + self.val * o.du,
            self.dv * o.val + self.val * o.dv,
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self.val:
            raise ZeroDivisionError("jet with zero value part is not a unit")
        iv = 1 / self.val
        return Jet(iv, -self.du * iv * iv, -self.dv * iv * iv)

    def __truediv__(self, other):
        return self * _lift(other).inverse()

    def __rtruediv__(self, other):
        return _lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Jet(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def sqrt(self):
        """A jet square root; the value part must be a nonzero square."""
        if not self.val:
            raise NotSquare("jet square root needs a nonzero value part")
        s = field_sqrt(self.val)
        half = Fraction(1, 2)
        return Jet(s, half * self.du / s, half * self.dv / s)

    def is_unit(self) -> bool:
        return bool(self.val)


def jet_value(x):
    return x.val if isinstance(x, Jet) else x


def jet_du(x):
    return x.du if isinstance(x, Jet) else Fraction(0)


def jet_dv(x):
    return x.dv if isinstance(x, Jet) else Fraction(0)
