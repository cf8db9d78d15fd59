"""Multivariate polynomials, gcd, differentiation, rational functions."""

import random
from fractions import Fraction

import pytest

from focalis.errors import ExactDivisionError
from focalis.poly import MPoly, RFunc, differentiate, poly_gcd

UV = ("u", "v")
LM = ("lam", "mu")
U = MPoly.variable(UV, "u")
V = MPoly.variable(UV, "v")
LAM = MPoly.variable(LM, "lam")
MU = MPoly.variable(LM, "mu")


def _random_poly(rng, vars_=(U, V), max_deg=2):
    p = MPoly.const(UV, Fraction(rng.randint(-3, 3)))
    for _ in range(rng.randint(1, 4)):
        term = MPoly.const(UV, Fraction(rng.randint(-3, 3)))
        for x in vars_:
            term = term * x ** rng.randint(0, max_deg)
        p = p + term
    return p


def test_poly_gcd_examples():
    assert poly_gcd(U ** 2, U) == U
    p = MPoly.const(UV, Fraction(3)) * U * V + U ** 2
    assert poly_gcd(p, MPoly.zero(UV)) == p.monic()
    assert poly_gcd(MPoly.zero(UV), p) == p.monic()


def test_poly_gcd_difference_of_squares():
    f = LAM ** 2 - MU ** 2
    g = LAM ** 2 - MPoly.const(LM, Fraction(2)) * LAM * MU + MU ** 2
    got = poly_gcd(f, g)
    assert got == (LAM - MU).monic()
    # division oracle: the gcd divides both inputs exactly and the
    # quotients have no common factor left
    qf = f.divexact(got)
    qg = g.divexact(got)
    assert qf * got == f
    assert qg * got == g
    assert poly_gcd(qf, qg).total_degree() == 0


def test_poly_gcd_divisibility_property():
    rng = random.Random(20240817)
    for _ in range(100):
        g = _random_poly(rng, max_deg=1)
        p = _random_poly(rng, max_deg=1)
        q = _random_poly(rng, max_deg=1)
        if g.is_zero() or (p.is_zero() and q.is_zero()):
            continue
        got = poly_gcd(p * g, q * g)
        assert g.divides(got)
        if not p.is_zero():
            assert got.divides(p * g)
        if not q.is_zero():
            assert got.divides(q * g)


def test_divexact_raises_on_nondivisor():
    with pytest.raises(ExactDivisionError):
        (U ** 2 + V).divexact(U + MPoly.const(UV, Fraction(1)))


def test_differentiate_examples():
    assert differentiate(U ** 2 * V, "u") == MPoly.const(UV, Fraction(2)) * U * V
    assert differentiate(MPoly.const(UV, Fraction(5)), "v").is_zero()
    s = (U + V) ** 2
    assert differentiate(s, "u") == MPoly.const(UV, Fraction(2)) * (U + V)


def test_differentiate_leibniz_and_linearity():
    rng = random.Random(7)
    for _ in range(25):
        p = _random_poly(rng)
        q = _random_poly(rng)
        for name in ("u", "v"):
            dp, dq = differentiate(p, name), differentiate(q, name)
            assert differentiate(p * q, name) == dp * q + p * dq
            assert differentiate(p + q, name) == dp + dq
        a = MPoly.const(UV, Fraction(rng.randint(-5, 5)))
        assert differentiate(a * p, "u") == a * differentiate(p, "u")


def test_mpoly_eval_and_subs():
    p = U ** 2 - MPoly.const(UV, Fraction(3, 2)) * V
    assert p.eval({"u": Fraction(2), "v": Fraction(2)}) == Fraction(1)
    # substituting only one variable keeps the other symbolic
    q = p.subs({"v": MPoly.const(UV, Fraction(0))})
    assert q == U ** 2


def test_mpoly_degrees():
    p = U ** 2 * V + V
    assert p.total_degree() == 3
    assert p.degree_in("u") == 2
    assert p.degree_in("v") == 1
    assert MPoly.zero(UV).total_degree() == -1


def test_rfunc_normalization():
    # common factor cancels and the denominator comes out monic
    r = RFunc(U ** 2 - V ** 2, MPoly.const(UV, Fraction(2)) * (U - V))
    assert r.is_polynomial()
    assert r.num == (MPoly.const(UV, Fraction(1, 2)) * (U + V))
    zero = RFunc(MPoly.zero(UV), U)
    assert zero.num.is_zero()


def test_rfunc_eval():
    r = RFunc(U + V, U - V)
    assert r.eval({"u": Fraction(3), "v": Fraction(1)}) == Fraction(2)
    with pytest.raises(ZeroDivisionError):
        r.eval({"u": Fraction(1), "v": Fraction(1)})


def test_rfunc_derivative_quotient_rule():
    r = RFunc(U, V)
    d = r.derivative("v")
    # d/dv (u/v) = -u/v^2
    pt = {"u": Fraction(3), "v": Fraction(2)}
    assert d.eval(pt) == Fraction(-3, 4)
    rng = random.Random(11)
    for _ in range(10):
        num, den = _random_poly(rng), _random_poly(rng)
        if den.is_zero():
            continue
        f = RFunc(num, den)
        for name in ("u", "v"):
            got = f.derivative(name)
            want = RFunc(
                differentiate(num, name) * den - num * differentiate(den, name),
                den * den,
            )
            assert got.num * want.den == want.num * got.den
