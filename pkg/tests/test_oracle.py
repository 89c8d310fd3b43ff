"""The oracle never normal-orders; these tests pin its semantics and completeness."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from racahweyl import realizations as R
from racahweyl.expr import Atom, Conj, Prod, comm
from racahweyl.oracle import (
    Action, apply_to_monomial, box_extents, complete_grid, oracle_compare, oracle_equal, oracle_is_zero,
)
from racahweyl.params import ParamPoly
from racahweyl.verify import random_element
from racahweyl.weyl import DimensionError, WeylElement as W

from strategies import elements

x, d = W.x(1, 1), W.d(1, 1)


def one(c):
    return ParamPoly.const(c)


def test_action_examples():
    assert apply_to_monomial(d, [3]) == {(2,): one(3)}
    L12 = R.angular_momentum(2, 1, 2)
    assert apply_to_monomial(L12, [1, 0]) == {(0, 1): one(-1)}
    assert apply_to_monomial(W.x(1, 1, -1) * d, [2]) == {(0,): one(2)}
    assert apply_to_monomial(d, [0]) == {}


def test_action_on_rational_exponents():
    assert apply_to_monomial(x * d, [F(1, 2)]) == {(F(1, 2),): one(F(1, 2))}


def test_zero_and_equality_examples():
    assert oracle_is_zero(Atom(d) * Atom(x) - Atom(x) * Atom(d) - 1)
    assert not oracle_is_zero(Atom(x) * Atom(d) - Atom(d) * Atom(x))
    assert oracle_equal(Prod((Atom(d), Atom(x))), x * d + 1)
    assert oracle_equal(R.metaplectic_casimir((1, 2)), F(-1, 4) * (R.L2(1, 2) + 1))
    assert oracle_equal(Conj(Atom(x * d), [F(1, 2)]), x * d - F(1, 2))


def test_k3_literal_by_oracle():
    assert oracle_is_zero(R.commutant_K3() - R.k3_literal())


def test_mismatch_report():
    out = oracle_compare(Atom(x * d), Atom(d * x))
    assert not out.equal and out.mismatch_count == out.points
    assert out.render_sample()[0].startswith("at x^[0]:")


def test_grid_is_the_lower_set():
    support = frozenset({(0, 0), (1, 0), (0, 1), (2, 0)})
    assert sorted(complete_grid(support, 2)) == sorted(support)
    assert complete_grid(support, 2, base=(5, 5))[0] == (5, 5)
    assert len(complete_grid(support, 2, extents=(2, 1))) == 6


def test_short_box_is_rejected():
    support = frozenset({(0,), (1,), (2,)})
    with pytest.raises(ValueError):
        complete_grid(support, 1, extents=(1,))
    with pytest.raises(DimensionError):
        complete_grid(support, 1, base=(0, 0))


def test_dropping_a_grid_point_loses_completeness():
    # ff(k, 2) vanishes exactly on k in {0, 1}: a smaller grid would miss it
    e = Atom(W.x(1, 1, 2) * W.d(1, 1, 2))
    assert not oracle_is_zero(e)
    act = Action()
    assert all(not act(e, (k,)) for k in (0, 1))
    assert act(e, (2,))


def test_box_extents():
    assert box_extents(x * d ** 3 + W.x(1, 1, -1)) == (3,)


@given(elements(n=2, max_d=2), st.integers(-3, 3), st.integers(-3, 3))
def test_oracle_agrees_with_is_zero(e, b1, b2):
    assert oracle_is_zero(e, base=(b1, b2)) == e.is_zero()


@given(elements(n=2, max_d=1), elements(n=2, max_d=2))
def test_product_action_is_composition(a, b):
    assert oracle_equal(Prod((Atom(a), Atom(b))), a * b)
    assert oracle_is_zero(comm(Atom(a), Atom(b)) - Atom(a * b - b * a))


def test_kernel_and_action_agree_on_500_random_products():
    rng = random.Random(2024)
    for _ in range(500):
        a, b = random_element(rng, 2), random_element(rng, 2)
        perturbed = a * b + W.monomial(2, (rng.randint(-2, 2), 0), (rng.randint(0, 2), 0))
        assert oracle_equal(Prod((Atom(a), Atom(b))), a * b)
        assert not oracle_equal(Prod((Atom(a), Atom(b))), perturbed)
