"""Exact scalars: rationals and single quadratic extensions Q(sqrt(d)).

The base field is Q, represented by :class:`fractions.Fraction`.  Whenever a
square root of a non-square rational is needed (splitting a rank-2 conic,
irrational characteristic directions) values move into Q(sqrt(d)) with d a
squarefree integer, possibly negative.  No towers: taking a square root of an
already-extended scalar raises :class:`UnsupportedField`.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import UnsupportedField

Rat = Fraction


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s^2 * d with d squarefree.  Returns (s, d); n must be nonzero."""
    if n == 0:
        raise ValueError("0 has no squarefree decomposition")
    from sympy import factorint

    s, d = 1, -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def sqrt_fraction(r: Fraction):
    """Exact square root of a rational.

    Returns a Fraction when r is a perfect square of a rational, otherwise a
    QExt element 0 + b*sqrt(d) with d squarefree.  Negative r allowed (d < 0).
    """
    r = Fraction(r)
    if r == 0:
        return Fraction(0)
    s, d = squarefree_decompose(r.numerator * r.denominator)
    root = Fraction(s, r.denominator)
    if d == 1:
        return root
    return QExt(0, root, d)


class QExt:
    """a + b*sqrt(d) with a, b rational and d a squarefree integer, d != 0, 1.

    Arithmetic coerces rationals and ints freely; combining elements of two
    different extensions is an error unless one of them is actually rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)
        if self.d in (0, 1):
            raise ValueError("d must be a squarefree integer other than 0 and 1")

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QExt):
            if other.b == 0:
                return QExt(other.a, 0, self.d)
            if self.b == 0:
                return other, QExt(self.a, 0, other.d)
            if other.d != self.d:
                raise UnsupportedField(
                    f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QExt(other, 0, self.d)
        return None

    # -- ring ops ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, tuple):  # self was rational, adopt other's d
            o, s = o[0], o[1]
            return QExt(s.a + o.a, o.b, o.d)._demote()
        return QExt(self.a + o.a, self.b + o.b, self.d)._demote()

    __radd__ = __add__

    def __neg__(self):
        return QExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, tuple):
            o, s = o[0], o[1]
            return QExt(s.a - o.a, -o.b, o.d)._demote()
        return QExt(self.a - o.a, self.b - o.b, self.d)._demote()

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, tuple):
            o, s = o[0], o[1]
            return QExt(s.a * o.a, s.a * o.b, o.d)._demote()
        return QExt(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )._demote()

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.d * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, tuple):
            o, s = o[0], o[1]
            return QExt(s.a, 0, o.d) * o.inverse()
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QExt(other, 0, self.d) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QExt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure --------------------------------------------------------

    def _demote(self):
        """Stay a QExt; demotion to Fraction is explicit via as_fraction()."""
        return self

    def conjugate(self):
        return QExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, QExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*sqrt({self.d}))"

    def sort_key(self):
        return (self.a, self.b)


def as_fraction(x):
    """Fraction view of x if it is rational, else None."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, QExt) and x.b == 0:
        return x.a
    return None


def field_sqrt(x):
    """Square root of a rational-valued scalar, staying exact."""
    r = as_fraction(x)
    if r is None:
        raise UnsupportedField("square root of an already-extended scalar")
    return sqrt_fraction(r)


def scalar_sort_key(x):
    """Deterministic ordering key for Fraction/QExt mixtures."""
    if isinstance(x, QExt):
        return (x.a, x.b)
    return (Fraction(x), Fraction(0))


def to_float(x) -> float:
    if isinstance(x, QExt):
        return float(x.a) + float(x.b) * (abs(x.d) ** 0.5) * (1 if x.d > 0 else float("nan"))
    return float(x)


def proportional(v, w) -> bool:
    """Projective equality of two coefficient vectors over Fraction/QExt."""
    if len(v) != len(w):
        return False
    nz_v = any(bool(c) for c in v)
    nz_w = any(bool(c) for c in w)
    if not nz_v or not nz_w:
        return nz_v == nz_w
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] * w[j] != v[j] * w[i]:
                return False
    return True


def primitive_vector(v):
    """Scale a rational vector to coprime integers, first nonzero positive."""
    v = [Fraction(c) for c in v]
    den = 1
    for c in v:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = _int_gcd(g, abs(c))
    if g:
        ints = [c // g for c in ints]
    for c in ints:
        if c:
            if c < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)
