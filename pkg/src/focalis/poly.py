"""Multivariate polynomials and reduced rational functions over Q.

Terms are stored sparsely as exponent-tuple -> coefficient.  The canonical
term order everywhere is graded lexicographic with ties broken by the
variable tuple order, and normal forms are monic in that order.  Variable
names come from the fixed universe ("u", "v", "s", "lam", "mu").
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ExactDivisionError

VAR_UNIVERSE = ("u", "v", "s", "lam", "mu")


def _grlex(e):
    return (sum(e), e)


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        tidy = {}
        for e, c in terms.items():
            if isinstance(c, int):
                c = Fraction(c)
            if c != 0:
                tidy[tuple(e)] = c
        self.terms = tidy

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c):
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars, name):
        i = tuple(vars).index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading(self):
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def leading_coeff(self):
        return self.leading()[1]

    def constant_value(self):
        """The coefficient of the constant term (the whole value if constant)."""
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_constant(self) -> bool:
        return self.total_degree() <= 0

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError("variable sets differ")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            nc = out.get(e, Fraction(0)) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = out.get(e, Fraction(0)) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            inv = Fraction(1) / Fraction(other)
            return MPoly(self.vars, {e: c * inv for e, c in self.terms.items()})
        if isinstance(other, MPoly):
            return self.divexact(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MPoly.const(self.vars, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and evaluation ----------------------------------------------

    def derivative(self, name: str):
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return MPoly(self.vars, out)

    def eval(self, point: dict):
        """Full evaluation; point maps every variable to a scalar."""
        vals = [point[v] for v in self.vars]
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                for _ in range(k):
                    t = t * x
            acc = acc + t
        return acc

    def subs(self, mapping: dict):
        """Substitute polynomials for variables (missing ones stay)."""
        base = MPoly.zero(self.vars)
        images = [
            mapping.get(v, MPoly.variable(self.vars, v)) for v in self.vars
        ]
        acc = base
        for e, c in self.terms.items():
            t = MPoly.const(self.vars, c)
            for img, k in zip(images, e):
                if k:
                    t = t * img**k
            acc = acc + t
        return acc

    # -- division and normal forms ----------------------------------------------

    def divexact(self, g: "MPoly"):
        if not g.terms:
            raise ZeroDivisionError("polynomial division by zero")
        lg_e, lg_c = g.leading()
        r = dict(self.terms)
        q = {}
        while r:
            le = max(r, key=_grlex)
            lc = r[le]
            de = tuple(a - b for a, b in zip(le, lg_e))
            if any(d < 0 for d in de):
                raise ExactDivisionError("inexact polynomial division")
            qc = lc / lg_c
            q[de] = qc
            for e2, c2 in g.terms.items():
                e3 = tuple(a + b for a, b in zip(de, e2))
                nc = r.get(e3, Fraction(0)) - qc * c2
                if nc:
                    r[e3] = nc
                else:
                    r.pop(e3, None)
        return MPoly(self.vars, q)

    def divides(self, other: "MPoly") -> bool:
        try:
            other.divexact(self)
            return True
        except ExactDivisionError:
            return False

    def monic(self):
        if not self.terms:
            return self
        return self / self.leading_coeff()

    # -- univariate views (for gcd) ----------------------------------------------

    def _as_univ(self, i: int):
        """Dense coefficient list in variable index i; coeffs are MPoly."""
        deg = max((e[i] for e in self.terms), default=0)
        coeffs = [dict() for _ in range(deg + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            coeffs[k][tuple(ne)] = c
        return [MPoly(self.vars, t) for t in coeffs]

    @classmethod
    def _from_univ(cls, coeffs, i: int, vars):
        acc = cls.zero(vars)
        x = cls.variable(vars, vars[i])
        for k, c in enumerate(coeffs):
            if c:
                acc = acc + c * x**k
        return acc

    # -- rendering -----------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                term = str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = f"-{mono}"
            else:
                term = f"{c}*{mono}"
            parts.append(term)
        text = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                text += " - " + term[1:]
            else:
                text += " + " + term
        return text

    def __repr__(self):
        return f"MPoly({self.to_text()})"


def differentiate(p: MPoly, name: str) -> MPoly:
    return p.derivative(name)


def _trim(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _prem(f, g):
    """Pseudo-remainder of dense MPoly coefficient lists (univariate view)."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and f:
        df = len(f) - 1
        lf = f[-1]
        shift = df - dg
        nf = [lg * c for c in f]
        for k, c in enumerate(g):
            nf[k + shift] = nf[k + shift] - lf * c
        f = _trim(nf)
    return f


def _content(coeffs):
    acc = None
    for c in coeffs:
        if c.is_zero():
            continue
        acc = c if acc is None else poly_gcd(acc, c)
        if acc.is_constant():
            break
    return acc


def _univ_gcd_const(p_list, q_list):
    """Plain Euclid for univariate polynomials with constant coefficients."""

    def to_frac(lst):
        return [c.constant_value() for c in lst]

    a, b = to_frac(p_list), to_frac(q_list)

    def rem(f, g):
        f = list(f)
        while len(f) >= len(g) and any(f):
            if f[-1] == 0:
                f.pop()
                continue
            q = f[-1] / g[-1]
            shift = len(f) - len(g)
            for k, c in enumerate(g):
                f[k + shift] -= q * c
            f.pop()
        while f and f[-1] == 0:
            f.pop()
        return f

    while b:
        a, b = b, rem(a, b)
    return a


def poly_gcd(p: MPoly, q: MPoly) -> MPoly:
    """Monic gcd of two polynomials over Q (graded-lex leading coefficient 1)."""
    if p.vars != q.vars:
        raise ValueError("variable sets differ")
    if p.is_zero():
        return q.monic() if q else q
    if q.is_zero():
        return p.monic()
    active = [
        i
        for i, name in enumerate(p.vars)
        if p.degree_in(name) > 0 or q.degree_in(name) > 0
    ]
    if not active:
        return MPoly.const(p.vars, 1)
    i = active[0]
    pu, qu = p._as_univ(i), q._as_univ(i)
    if len(active) == 1:
        g = _univ_gcd_const(pu, qu)
        coeffs = [MPoly.const(p.vars, c) for c in g]
        return MPoly._from_univ(coeffs, i, p.vars).monic()
    cp, cq = _content(pu), _content(qu)
    cont = poly_gcd(cp, cq)
    a = [c.divexact(cp) for c in pu]
    b = [c.divexact(cq) for c in qu]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        if r:
            cr = _content(r)
            r = [c.divexact(cr) for c in r]
        a, b = b, r
    if len(a) == 1:
        prim = MPoly.const(p.vars, 1)
    else:
        prim = MPoly._from_univ(a, i, p.vars)
    return (cont * prim).monic()


class RFunc:
    """Reduced fraction of two MPoly: gcd removed, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = MPoly.const(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = MPoly.const(num.vars, 1)
        elif den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num / c
                den = MPoly.const(num.vars, 1)
        else:
            g = poly_gcd(num, den)
            if g.total_degree() > 0:
                num = num.divexact(g)
                den = den.divexact(g)
            lc = den.leading_coeff()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den

    @classmethod
    def from_const(cls, vars, c):
        return cls(MPoly.const(vars, c))

    @property
    def vars(self):
        return self.num.vars

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, RFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RFunc.from_const(self.vars, other)
        if isinstance(other, MPoly):
            return RFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError
        return RFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, name: str):
        n, d = self.num, self.den
        return RFunc(n.derivative(name) * d - n * d.derivative(name), d * d)

    def eval(self, point: dict):
        dv = self.den.eval(point)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at sample point")
        return self.num.eval(point) / dv

    def subs(self, mapping: dict):
        return RFunc(self.num.subs(mapping), self.den.subs(mapping))

    def total_degree(self):
        return self.num.total_degree()

    def to_text(self) -> str:
        if self.is_polynomial():
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __repr__(self):
        return f"RFunc({self.to_text()})"
