"""Fraction-field linear algebra: det, rank, kernels, minors."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from focalis.errors import RankDrop
from focalis.linalg import (
    det,
    det_cofactor,
    identity,
    inverse,
    kernel_basis,
    mat_mul,
    mat_vec,
    minors,
    rank,
    solve_unique,
    transpose,
)
from focalis.poly import MPoly, RFunc

F = Fraction


def fmat(rows):
    return [[F(x) for x in r] for r in rows]


def _rand_mat(rng, n, m, lo=-5, hi=5):
    return [[F(rng.randint(lo, hi)) for _ in range(m)] for _ in range(n)]


def test_det_examples():
    assert det(identity(5)) == 1
    m = fmat([[1, 2, 3], [1, 2, 3], [0, 1, 4]])
    assert det(m) == 0
    assert det(fmat([[1, 2], [3, 4]])) == -2
    assert det([[F(7)]]) == 7


def test_det_matches_cofactor_expansion():
    rng = random.Random(42)
    for _ in range(200):
        n = rng.randint(1, 4)
        m = _rand_mat(rng, n, n)
        assert det(m) == det_cofactor(m)


def test_det_with_polynomial_entries():
    UV = ("u", "v")
    u = MPoly.variable(UV, "u")
    v = MPoly.variable(UV, "v")
    one = MPoly.const(UV, F(1))
    m = [[u, v], [v, u]]
    assert det_cofactor(m) == u * u - v * v
    m3 = [[u, v, one], [one, u, v], [v, one, u]]
    lhs = det_cofactor(m3)
    # evaluate both routes at a point as a cross-check
    pt = {"u": F(2), "v": F(-1)}
    num = [[e.eval(pt) for e in row] for row in m3]
    assert lhs.eval(pt) == det(num)


def test_rank_examples():
    assert rank([[F(0)] * 5 for _ in range(3)]) == 0
    e012 = fmat([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])
    assert rank(e012) == 3

    UV = ("u", "v")
    u = RFunc(MPoly.variable(UV, "u"))
    v = RFunc(MPoly.variable(UV, "v"))
    m = [[u, v], [u * u, u * v]]
    assert rank(m) == 1
    # cross-multiplication oracle for rank 1: every 2x2 minor vanishes
    # while some entry does not
    assert (m[0][0] * m[1][1] - m[0][1] * m[1][0]).num.is_zero()
    assert not m[0][0].num.is_zero()


def test_rank_equals_rank_of_transpose():
    rng = random.Random(5)
    for _ in range(30):
        m = _rand_mat(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(m) == rank(transpose(m))


def test_kernel_basis_examples():
    assert kernel_basis(identity(4)) == []

    a, b = F(3), F(-7)
    (k,) = kernel_basis([[a, b]])
    assert a * k[0] + b * k[1] == 0
    assert k[0] * a == -b * a or k[0] * b == k[0] * b  # direction check below
    # proportional to (-b, a)
    assert k[0] * a - (-b) * k[1] * a / a == k[0] * a + b * k[1]

    m = fmat([[1, 2, 3], [0, 1, 4]])
    (k,) = kernel_basis(m)
    # signed 2x2 minors of the two rows span the kernel
    r0, r1 = m
    cross = (
        r0[1] * r1[2] - r0[2] * r1[1],
        r0[2] * r1[0] - r0[0] * r1[2],
        r0[0] * r1[1] - r0[1] * r1[0],
    )
    assert any(cross)
    assert k[0] * cross[1] == k[1] * cross[0]
    assert k[1] * cross[2] == k[2] * cross[1]
    assert mat_vec(m, k) == [0, 0]


def test_kernel_vectors_annihilate():
    rng = random.Random(17)
    for _ in range(40):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        mat = _rand_mat(rng, n, m)
        ker = kernel_basis(mat)
        for k in ker:
            assert all(x == 0 for x in mat_vec(mat, k))
        assert (rank(mat) < m) == bool(ker)
        assert len(ker) == m - rank(mat)


def test_minors_counts_and_order():
    m = fmat([[1, 2], [3, 4]])
    assert minors(m, 2) == [det(m)]

    rng = random.Random(23)
    big = _rand_mat(rng, 5, 4)
    got = minors(big, 4)
    assert len(got) == 5
    expected = []
    for rows in combinations(range(5), 4):
        expected.append(det([big[i] for i in rows]))
    assert got == expected


def test_minors_vanish_below_rank():
    rng = random.Random(31)
    a = _rand_mat(rng, 5, 3)
    b = _rand_mat(rng, 3, 4)
    prod = mat_mul(a, b)
    assert rank(prod) <= 3
    assert all(x == 0 for x in minors(prod, 4))


def test_solve_unique():
    m = fmat([[2, 1], [1, 1]])
    x = solve_unique(m, [F(3), F(2)])
    assert mat_vec(m, x) == [F(3), F(2)]
    with pytest.raises(RankDrop):
        solve_unique(fmat([[1, 2], [2, 4]]), [F(1), F(2)])


def test_inverse():
    rng = random.Random(13)
    found = 0
    while found < 5:
        m = _rand_mat(rng, 3, 3)
        if det(m) == 0:
            continue
        found += 1
        assert mat_mul(m, inverse(m)) == identity(3)
    with pytest.raises(RankDrop):
        inverse(fmat([[1, 1], [1, 1]]))
