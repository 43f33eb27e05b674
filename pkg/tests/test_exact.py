from __future__ import annotations

import pytest

from clustervol.exact import RationalFunction, TooLarge


def test_folding_numerator_of_figure_eight():
    # (-1/y)(1 + y)^2 = -1  <=>  y^2 + y + 1 = 0
    y = RationalFunction.variable()
    top = (-1 / y) * (1 + y) * (1 + y) + 1
    assert top.numerator_coeffs() == [1, 1, 1]


def test_arithmetic_and_evaluation():
    y = RationalFunction.variable()
    f = (y * y - 1) / (y - 1)
    assert f == y + 1
    assert f.degree == 1
    assert (1 - y)(3) == -2
    assert ((y + 2) ** 2)(1j) == pytest.approx((2 + 1j) ** 2)
    with pytest.raises(ZeroDivisionError):
        y / (y - y)


def test_squarefree_numerator():
    y = RationalFunction.variable()
    g = (y - 1) ** 2 * (y + 2)
    assert g.numerator_coeffs(squarefree=False) == [1, 0, -3, 2]
    assert g.numerator_coeffs() == [1, 1, -2]


def test_degree_budget():
    y = RationalFunction.variable(max_degree=5)
    with pytest.raises(TooLarge):
        y**6
