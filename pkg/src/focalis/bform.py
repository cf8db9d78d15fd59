"""Binary forms in (lam : mu) with coefficients in an exact field.

A form of degree d is stored as the list [c_0, ..., c_d] where c_i
multiplies lam^(d-i) * mu^i.  The affine chart p(x) = f(1, x) then has the
same list as its coefficient vector (index = power of x), the point (1:0)
corresponds to the chart root x = 0, and (0:1) carries multiplicity
d - deg p.  Projective roots are canonicalized as (a, 1) with a = lam/mu,
or (1, 0) for the root at mu = 0.

Root extraction beyond degree-2 charts leans on sympy's univariate
factorization over Q; everything structural (gcd, distinct-root counts,
multiplicity profiles) is plain Euclid over the coefficient field and also
works with QExt or RFunc coefficients.
"""
from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import UnsupportedField
from .fields import QExt, sqrt_fraction


def _coerce_scalar(c):
    return Fraction(c) if isinstance(c, int) else c


class BForm:
    __slots__ = ("deg", "coeffs")

    def __init__(self, deg: int, coeffs):
        coeffs = [_coerce_scalar(c) for c in coeffs]
        if len(coeffs) != deg + 1:
            raise ValueError("coefficient list does not match the degree")
        self.deg = deg
        self.coeffs = coeffs

    @classmethod
    def zero(cls, deg: int):
        return cls(deg, [Fraction(0)] * (deg + 1))

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, BForm):
            return NotImplemented
        return self.deg == other.deg and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.deg, tuple(self.coeffs)))

    def __add__(self, other):
        if not isinstance(other, BForm):
            return NotImplemented
        if other.deg != self.deg:
            raise ValueError("cannot add forms of different degrees")
        return BForm(self.deg, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BForm(self.deg, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, BForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BForm):
            d = self.deg + other.deg
            out = [Fraction(0)] * (d + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return BForm(d, out)
        return BForm(self.deg, [c * other for c in self.coeffs])

    def __rmul__(self, other):
        return BForm(self.deg, [other * c for c in self.coeffs])

    def eval(self, lam, mu):
        acc = None
        for i, c in enumerate(self.coeffs):
            t = c
            for _ in range(self.deg - i):
                t = t * lam
            for _ in range(i):
                t = t * mu
            acc = t if acc is None else acc + t
        return acc if acc is not None else Fraction(0)

    def deriv_lam(self):
        if self.deg == 0:
            return BForm(0, [self.coeffs[0] - self.coeffs[0]])
        out = [
            self.coeffs[i] * (self.deg - i) for i in range(self.deg)
        ]
        return BForm(self.deg - 1, out)

    def deriv_mu(self):
        if self.deg == 0:
            return BForm(0, [self.coeffs[0] - self.coeffs[0]])
        out = [self.coeffs[i] * i for i in range(1, self.deg + 1)]
        return BForm(self.deg - 1, out)

    def chart(self):
        """Dense chart coefficients, trailing zeros trimmed (index = x power)."""
        p = list(self.coeffs)
        while p and not p[-1]:
            p.pop()
        return p

    def chart_degree(self) -> int:
        return len(self.chart()) - 1

    def lam_multiplicity(self) -> int:
        """Multiplicity of the root (0:1), i.e. of the factor lam."""
        if self.is_zero():
            raise ValueError("the zero form has no root structure")
        return self.deg - self.chart_degree()

    def monic(self):
        """Scale so the highest nonzero chart coefficient is 1."""
        p = self.chart()
        if not p:
            return self
        lead = p[-1]
        return BForm(self.deg, [c / lead for c in self.coeffs])

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            a, b = self.deg - i, i
            factors = []
            if a == 1:
                factors.append("lam")
            elif a > 1:
                factors.append(f"lam^{a}")
            if b == 1:
                factors.append("mu")
            elif b > 1:
                factors.append(f"mu^{b}")
            mono = "*".join(factors)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        text = parts[0]
        for t in parts[1:]:
            text += " - " + t[1:] if t.startswith("-") else " + " + t
        return text

    def __repr__(self):
        return f"BForm({self.to_text()})"


# -- univariate helpers over a generic field ---------------------------------


def _uni_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _uni_rem(f, g):
    f = _uni_trim(f)
    g = _uni_trim(g)
    while len(f) >= len(g):
        q = f[-1] / g[-1]
        shift = len(f) - len(g)
        for k, c in enumerate(g):
            f[k + shift] = f[k + shift] - q * c
        f.pop()
        f = _uni_trim(f)
        if not f:
            break
    return f


def _uni_gcd(f, g):
    """Monic univariate gcd over the coefficient field (dense lists)."""
    a, b = _uni_trim(f), _uni_trim(g)
    while b:
        a, b = b, _uni_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _uni_deriv(p):
    return [c * i for i, c in enumerate(p)][1:]


def _bform_gcd2(f: BForm, g: BForm) -> BForm:
    """Binary gcd core; both inputs nonzero."""
    pf, pg = f.chart(), g.chart()
    h = _uni_gcd(pf, pg)
    m = min(f.deg - (len(pf) - 1), g.deg - (len(pg) - 1))
    deg = (len(h) - 1) + m
    zero = h[0] - h[0]
    return BForm(deg, h + [zero] * m)


def bform_gcd(*forms: BForm) -> BForm:
    """Monic gcd of one or more binary forms, as a binary form.

    Combines the gcd of the affine charts with the shared multiplicity of
    the root (0:1).  Zero inputs are absorbed (gcd(0, f) = f); when every
    input is identically zero the result is the zero form, whose is_zero()
    flag is the whole-component signal.
    """
    if not forms:
        raise ValueError("gcd of an empty list of forms is undefined")
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return BForm.zero(0)
    acc = nonzero[0].monic()
    for f in nonzero[1:]:
        acc = _bform_gcd2(acc, f)
    return acc


def distinct_root_count(f: BForm) -> int:
    """Number of distinct projective roots over the algebraic closure."""
    if f.is_zero():
        raise ValueError("the zero form has no root structure")
    p = f.chart()
    finite = 0
    if len(p) > 1:
        g = _uni_gcd(p, _uni_deriv(p))
        finite = (len(p) - 1) - (len(g) - 1)
    at_infinity = 1 if f.lam_multiplicity() >= 1 else 0
    return finite + at_infinity


def multiplicity_profile(f: BForm):
    """Sorted (descending) multiplicities of the projective roots."""
    if f.is_zero():
        raise ValueError("the zero form has no root structure")
    p = f.chart()
    counts = []
    if len(p) > 1:
        degs = [len(p) - 1]
        cur = p
        while len(cur) > 1:
            cur = _uni_gcd(cur, _uni_deriv(cur))
            degs.append(len(cur) - 1)
        ge = [degs[k] - degs[k + 1] for k in range(len(degs) - 1)]
        for mult in range(len(ge), 0, -1):
            exactly = ge[mult - 1] - (ge[mult] if mult < len(ge) else 0)
            counts.extend([mult] * exactly)
    m = f.lam_multiplicity()
    if m >= 1:
        counts.append(m)
    return sorted(counts, reverse=True)


def squarefree_part(f: BForm) -> BForm:
    """Monic product of the distinct projective linear factors of f."""
    if f.is_zero():
        raise ValueError("the zero form has no root structure")
    p = f.chart()
    if len(p) > 1:
        g = _uni_gcd(p, _uni_deriv(p))
        red = _uni_quot(p, g)
        lead = red[-1]
        red = [c / lead for c in red]
    else:
        red = [p[0] / p[0]]
    m = 1 if f.lam_multiplicity() >= 1 else 0
    zero = red[0] - red[0]
    return BForm(len(red) - 1 + m, red + [zero] * m)


def _uni_quot(f, g):
    """Exact univariate quotient (dense lists over a field)."""
    f = _uni_trim(f)
    g = _uni_trim(g)
    out = [f[0] - f[0]] * (len(f) - len(g) + 1) if len(f) >= len(g) else []
    while len(f) >= len(g):
        q = f[-1] / g[-1]
        shift = len(f) - len(g)
        out[shift] = q
        for k, c in enumerate(g):
            f[k + shift] = f[k + shift] - q * c
        f.pop()
        f = _uni_trim(f)
        if not f:
            break
    return out


def canonical_root(chart_root):
    """Map a chart root x (the point (1:x)) to the canonical pair."""
    if not chart_root:
        return (Fraction(1), Fraction(0))
    inv = 1 / chart_root
    if isinstance(inv, QExt) and not inv.b:
        inv = inv.a
    return (inv, Fraction(1))


def exact_roots(f: BForm):
    """Projective roots with multiplicities; the chart degree must be <= 2.

    Quadratic charts may produce QExt coordinates.  Returns a list of
    ((lam, mu), mult) pairs, the (0:1) root first when present.
    """
    if f.is_zero():
        raise ValueError("the zero form has no root structure")
    out = []
    m = f.lam_multiplicity()
    if m >= 1:
        out.append(((Fraction(0), Fraction(1)), m))
    p = f.chart()
    if len(p) == 1:
        return out
    if len(p) == 2:
        r = -p[0] / p[1]
        out.append((canonical_root(r), 1))
        return out
    if len(p) == 3:
        c0, c1, c2 = p
        disc = c1 * c1 - 4 * c0 * c2
        if not disc:
            r = -c1 / (2 * c2)
            out.append((canonical_root(r), 2))
            return out
        if isinstance(disc, QExt):
            raise UnsupportedField(
                "square root of an already-extended scalar is out of scope"
            )
        s = sqrt_fraction(disc)
        r1 = (-c1 + s) / (2 * c2)
        r2 = (-c1 - s) / (2 * c2)
        roots = sorted(
            [canonical_root(r1), canonical_root(r2)], key=_root_sort_key
        )
        out.extend((r, 1) for r in roots)
        return out
    raise ValueError("exact roots are only extracted from charts of degree <= 2")


def _scalar_key(x):
    if isinstance(x, QExt):
        return (x.a, x.b)
    return (Fraction(x), Fraction(0))


def _root_sort_key(pair):
    a, b = pair
    return (_scalar_key(b), _scalar_key(a))


_X = sympy.Symbol("x")


def roots_summary(f: BForm):
    """Root list over Q-bar for display: Fraction coefficients only.

    Returns a list of dicts with keys lam, mu (exact scalars or complex
    floats), mult, exact.  Uses sympy factorization; irreducible factors of
    degree >= 3 contribute float roots checked to residual < 1e-9.
    """
    if f.is_zero():
        raise ValueError("the zero form has no root structure")
    out = []
    m = f.lam_multiplicity()
    if m >= 1:
        out.append({"lam": Fraction(0), "mu": Fraction(1), "mult": m, "exact": True})
    p = f.chart()
    if len(p) == 1:
        return out
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _X**i for i, c in enumerate(p))
    _, factors = sympy.factor_list(sympy.Poly(expr, _X, domain="QQ"))
    for poly, mult in factors:
        cs = [Fraction(str(c)) for c in reversed(poly.all_coeffs())]
        if len(cs) == 2:
            r = -cs[0] / cs[1]
            lam, mu = canonical_root(r)
            out.append({"lam": lam, "mu": mu, "mult": mult, "exact": True})
        elif len(cs) == 3:
            sub = BForm(2, cs)
            for (lam, mu), _k in exact_roots(sub):
                out.append({"lam": lam, "mu": mu, "mult": mult, "exact": True})
        else:
            sp = sympy.Poly(poly, _X)
            for z in sp.nroots(n=30):
                # verify at full precision; double rounding of a root of a
                # large-coefficient chart can swamp a 1e-9 residual bound
                val = complex(sp.as_expr().evalf(30, subs={_X: z}))
                if abs(val) > 1e-9:
                    raise ArithmeticError("float root did not verify")
                zc = complex(z)
                if zc == 0:
                    lam, mu = complex(1), complex(0)
                else:
                    lam, mu = 1 / zc, complex(1)
                out.append({"lam": lam, "mu": mu, "mult": mult, "exact": False})
    return out
