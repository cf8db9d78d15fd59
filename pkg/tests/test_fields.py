"""Exact scalar arithmetic: rationals and quadratic extensions."""

from fractions import Fraction

import pytest

from focalis.errors import UnsupportedField
from focalis.fields import (
    QExt,
    as_fraction,
    field_sqrt,
    primitive_vector,
    proportional,
    sqrt_fraction,
    squarefree_decompose,
    to_float,
)


def test_squarefree_decompose():
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(49) == (7, 1)
    assert squarefree_decompose(-18) == (3, -2)
    with pytest.raises(ValueError):
        squarefree_decompose(0)


def test_squarefree_decompose_reassembles():
    for n in (2, 8, 360, 1001, -75, 97):
        s, d = squarefree_decompose(n)
        assert s * s * d == n


def test_sqrt_fraction_perfect_square():
    assert sqrt_fraction(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_fraction(Fraction(0)) == 0
    assert isinstance(sqrt_fraction(Fraction(49)), Fraction)


def test_sqrt_fraction_extension():
    r = sqrt_fraction(Fraction(2))
    assert isinstance(r, QExt)
    assert (r.a, r.b, r.d) == (0, 1, 2)
    assert r * r == 2

    r = sqrt_fraction(Fraction(8, 9))
    assert r * r == Fraction(8, 9)
    assert r.d == 2

    # negative radicand is allowed; d goes negative
    r = sqrt_fraction(Fraction(-3))
    assert r.d == -3
    assert r * r == -3


def test_qext_arithmetic():
    x = QExt(1, 1, 2)          # 1 + sqrt(2)
    y = QExt(1, -1, 2)         # 1 - sqrt(2)
    assert x * y == -1
    assert x + y == 2
    assert x - y == QExt(0, 2, 2)
    assert x.norm() == -1
    assert x.conjugate() == y
    assert x * x.inverse() == 1
    assert (1 / x) * x == 1
    assert x ** 2 == QExt(3, 2, 2)
    assert x ** 0 == 1


def test_qext_rational_demotion():
    # products that land back in Q compare equal to plain Fractions
    r = QExt(0, 1, 5)
    assert r * r == 5
    assert QExt(3, 0, 7) == 3
    assert as_fraction(QExt(3, 0, 7)) == Fraction(3)
    assert as_fraction(QExt(0, 1, 5)) is None


def test_qext_mixing_extensions_rejected():
    with pytest.raises(UnsupportedField):
        QExt(0, 1, 2) + QExt(0, 1, 3)
    with pytest.raises(UnsupportedField):
        QExt(1, 2, 2) * QExt(1, 1, 5)
    # rational-valued elements of another extension are fine
    assert QExt(0, 1, 2) + QExt(4, 0, 3) == QExt(4, 1, 2)


def test_qext_rejects_trivial_d():
    with pytest.raises(ValueError):
        QExt(1, 1, 1)
    with pytest.raises(ValueError):
        QExt(1, 1, 0)


def test_field_sqrt():
    assert field_sqrt(Fraction(25, 16)) == Fraction(5, 4)
    r = field_sqrt(Fraction(3))
    assert r * r == 3
    with pytest.raises(UnsupportedField):
        field_sqrt(QExt(1, 1, 2))


def test_to_float():
    assert to_float(Fraction(3, 2)) == 1.5
    assert abs(to_float(QExt(1, 1, 2)) - 2.414213562) < 1e-8


def test_proportional():
    assert proportional([1, 2, 3], [2, 4, 6])
    assert proportional([0, 0], [0, 0])
    assert not proportional([1, 0], [0, 0])
    assert not proportional([1, 2, 3], [2, 4, 5])
    assert proportional([Fraction(1, 2), Fraction(1, 3)], [3, 2])


def test_primitive_vector():
    assert primitive_vector([Fraction(2, 3), Fraction(4, 3)]) == (1, 2)
    assert primitive_vector([-2, 4, -6]) == (1, -2, 3)
    assert primitive_vector([0, Fraction(-1, 2)]) == (0, 1)
