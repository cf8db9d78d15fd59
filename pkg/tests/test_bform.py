"""Binary forms in (lam, mu): gcd, root structure, exact and float roots."""

import random
from fractions import Fraction

import pytest

from focalis.bform import (
    BForm,
    bform_gcd,
    canonical_root,
    distinct_root_count,
    exact_roots,
    multiplicity_profile,
    roots_summary,
    squarefree_part,
)
from focalis.fields import QExt

F = Fraction


def bf(*coeffs):
    return BForm(len(coeffs) - 1, [F(c) for c in coeffs])


def bmul(f, g):
    """Coefficient convolution; BForm itself never needs products."""
    out = [F(0)] * (f.deg + g.deg + 1)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return BForm(f.deg + g.deg, out)


def bdivides(d, f):
    """Exact divisibility of binary forms via chart division."""
    if d.is_zero():
        return f.is_zero()
    if f.is_zero():
        return True
    if d.lam_multiplicity() > f.lam_multiplicity():
        return False
    num, den = list(f.chart()), list(d.chart())
    quot_deg = (len(num) - 1) - (len(den) - 1)
    if quot_deg < 0:
        return False
    for _ in range(quot_deg + 1):
        if len(num) < len(den):
            return not any(num)
        c = num[-1] / den[-1]
        for k in range(len(den)):
            num[len(num) - len(den) + k] -= c * den[k]
        num.pop()
    return not any(num)


LAM = bf(1, 0)          # lam
MU = bf(0, 1)           # mu
LAM_MINUS_MU = bf(1, -1)
LAM_PLUS_MU = bf(1, 1)


def test_bform_gcd_examples():
    lam_mu = bf(0, 1, 0)       # lam*mu
    lam_sq = bf(1, 0, 0)       # lam^2
    assert bform_gcd(lam_mu, lam_sq) == LAM

    z = BForm.zero(2)
    flag = bform_gcd(z, z, z)
    assert flag.is_zero()
    assert not bform_gcd(z, lam_sq, z).is_zero()

    with pytest.raises(ValueError):
        bform_gcd()


def test_bform_gcd_shared_factor():
    # f = (lam - mu)(lam + mu), g = lam (lam - mu)(lam + mu); the gcd is
    # their full shared product, checked against the explicit factorization
    f = bmul(LAM_MINUS_MU, LAM_PLUS_MU)
    g = bmul(LAM, f)
    assert f == bf(1, 0, -1)           # lam^2 - mu^2
    assert g == bf(1, 0, -1, 0)        # lam^3 - lam mu^2
    got = bform_gcd(f, g)
    assert got == f.monic()
    assert bdivides(got, f) and bdivides(got, g)


def test_bform_gcd_divides_inputs_property():
    rng = random.Random(99)
    for _ in range(50):
        mk = lambda d: BForm(d, [F(rng.randint(-4, 4)) for _ in range(d + 1)])
        f, g = mk(rng.randint(1, 4)), mk(rng.randint(1, 4))
        if f.is_zero() and g.is_zero():
            continue
        got = bform_gcd(f, g)
        assert bdivides(got, f)
        assert bdivides(got, g)


def test_distinct_root_count():
    three = bmul(bmul(LAM, MU), LAM_MINUS_MU)       # lam mu (lam - mu)
    assert three == bf(0, 1, -1, 0)
    assert distinct_root_count(three) == 3
    assert distinct_root_count(bf(0, 0, 1)) == 1    # mu^2, double at (1:0)
    assert distinct_root_count(bf(1, 0, -2)) == 2   # lam^2 - 2 mu^2
    with pytest.raises(ValueError):
        distinct_root_count(BForm.zero(2))


def test_exact_roots_rational():
    three = bf(0, 1, -1, 0)
    roots = exact_roots(three)
    assert roots[0] == ((F(0), F(1)), 1)            # (0:1) listed first
    assert {r for r, _m in roots} == {(F(0), F(1)), (F(1), F(0)), (F(1), F(1))}
    assert all(m == 1 for _r, m in roots)
    # back-substitution is exactly zero
    for (lam, mu), _m in roots:
        assert three.eval(lam, mu) == 0


def test_exact_roots_quadratic_extension():
    f = bf(1, 0, -2)                                # lam^2 - 2 mu^2
    roots = exact_roots(f)
    assert len(roots) == 2
    for (lam, mu), m in roots:
        assert m == 1
        assert mu == 1
        assert isinstance(lam, QExt) and lam.d == 2
        assert lam * lam == 2
        assert f.eval(lam, mu) == 0


def test_exact_roots_degree_cap():
    with pytest.raises(ValueError):
        exact_roots(bf(1, 0, 0, -1))                # cubic chart


def test_multiplicity_profile_and_squarefree():
    f = bmul(bmul(LAM_MINUS_MU, LAM_MINUS_MU), LAM_PLUS_MU)
    assert f == bf(1, -1, -1, 1)
    assert multiplicity_profile(f) == [2, 1]
    sf = squarefree_part(f)
    assert sf.deg == 2
    assert sf == bmul(LAM_MINUS_MU, LAM_PLUS_MU).monic()
    # lam^3 mu^2: profile counts the (0:1) root with multiplicity 3
    assert multiplicity_profile(bf(0, 0, 1, 0, 0, 0)) == [3, 2]


def test_canonical_root():
    assert canonical_root(F(0)) == (F(1), F(0))
    assert canonical_root(F(2)) == (F(1, 2), F(1))


def test_chart_and_lam_multiplicity():
    f = bf(0, 1, 0, 0)                              # lam^2 mu
    assert f.chart() == [F(0), F(1)]
    assert f.chart_degree() == 1
    assert f.lam_multiplicity() == 2
    with pytest.raises(ValueError):
        BForm.zero(3).lam_multiplicity()


def test_roots_summary_quintic_float_residuals():
    from focalis.congruence import sample_points
    from focalis.focal import second_order_form_nondeg
    from focalis.gallery import gallery_item

    item = gallery_item("generic5")
    p = sample_points(item.frame, 3, 0)[0]
    g, _locus = second_order_form_nondeg(item.frame, p)
    assert g.deg == 5
    assert multiplicity_profile(g) == [1, 1, 1, 1, 1]

    entries = roots_summary(g)
    assert len(entries) == 5
    assert sum(e["mult"] for e in entries) == 5
    chart = g.chart()
    for e in entries:
        if e["exact"]:
            assert g.eval(e["lam"], e["mu"]) == 0
            continue
        z = complex(e["mu"]) / complex(e["lam"])
        val = sum(float(c) * z ** i for i, c in enumerate(chart))
        scale = sum(abs(float(c)) * abs(z) ** i for i, c in enumerate(chart))
        assert abs(val) / scale < 1e-9


def test_roots_summary_exact_cases():
    entries = roots_summary(bf(0, 1, -1, 0))
    assert all(e["exact"] for e in entries)
    assert sum(e["mult"] for e in entries) == 3
    pairs = {(e["lam"], e["mu"]) for e in entries}
    assert pairs == {(F(0), F(1)), (F(1), F(0)), (F(1), F(1))}
