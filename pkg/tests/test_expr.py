from fractions import Fraction as F

import pytest

from racahweyl.expr import Atom, Conj, Prod, Scaled, Sum, acomm, as_op, comm, downclose, op_sum
from racahweyl.params import ParamPoly
from racahweyl.weyl import DimensionError, WeylElement as W

x, d = Atom(W.x(2, 1)), Atom(W.d(2, 1))


def test_downclose():
    assert downclose([(2, 1)]) == {(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)}
    assert downclose([]) == frozenset()


def test_tree_building_and_evaluation():
    e = 2 * x * d - d * x + F(1, 3)
    assert e.element == W.x(2, 1) * W.d(2, 1) - 1 + F(1, 3)
    assert comm(d, x).element == 1
    assert acomm(x, d).element == 2 * W.x(2, 1) * W.d(2, 1) + 1
    assert (d ** 3).element == W.d(2, 1, 3)
    assert op_sum([x, x, x]).element == 3 * W.x(2, 1)


def test_parameter_coefficients():
    a = ParamPoly.symbol("a1")
    assert (a * d).element == W.param(2, "a1") * W.d(2, 1)
    assert isinstance(a * d, Scaled)


def test_support_bounds_derivative_orders():
    e = Prod((d, d)) + Sum((x,))
    assert max(v[0] for v in e.support) >= 2
    assert (2, 0) in e.support and (0, 0) in e.support


def test_conj_matches_symbolic_gauge():
    c = [F(1, 2), 0]
    assert Conj(x * d, c).element == W.x(2, 1) * W.d(2, 1) - F(1, 2)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        x + Atom(W.x(3, 1))
    with pytest.raises(DimensionError):
        as_op(W.x(3, 1), 2)
