from fractions import Fraction as F

import pytest

from racahweyl import realizations as R
from racahweyl.expr import comm
from racahweyl.params import ParamPoly
from racahweyl.weyl import WeylElement as W


def el(op):
    return op.element


def test_angular_momentum():
    n = 6
    assert el(R.angular_momentum(n, 1, 2)) == W.x(n, 1) * W.d(n, 2) - W.x(n, 2) * W.d(n, 1)
    assert el(R.angular_momentum(n, 2, 1)) == -el(R.angular_momentum(n, 1, 2))
    assert el(comm(R.L(1, 2), R.L(2, 3))) == el(R.L(1, 3))
    with pytest.raises(ValueError):
        R.angular_momentum(n, 3, 3)


def test_structure_rhs_matches_commutators():
    for p, q in (((1, 2), (2, 3)), ((1, 2), (3, 4)), ((2, 5), (1, 2)), ((1, 3), (1, 3))):
        assert el(comm(R.L(*p), R.L(*q))) == el(R.o_n_structure_rhs(6, *p, *q))


def test_casimir():
    assert el(R.o_n_casimir(2)) == el(R.L2(1, 2, 2))
    assert el(comm(R.o_n_casimir(6), R.L(3, 5))).is_zero()


def test_sp2_oscillator():
    t = R.sp2_oscillator(1, 1)
    assert el(comm(t.jzero, t.jplus)) == el(t.jplus)
    assert el(R.sp2_casimir(t)) == F(-3, 16)
    s = R.sp2_sum((1, 2), 2)
    assert el(comm(s.jplus, s.jminus)) == el(-2 * s.jzero)
    assert el(s.jzero) == el(R.sp2_oscillator(1, 2).jzero + R.sp2_oscillator(2, 2).jzero)


def test_sp2_triple_rejects_broken_relations():
    t = R.sp2_oscillator(1, 1)
    with pytest.raises(ValueError):
        R.Sp2Triple(t.jplus, t.jminus, 2 * t.jzero)


def test_commutant():
    assert el(comm(R.commutant_K(1), R.L(1, 2))).is_zero()
    assert el(comm(R.commutant_K(2), R.L(5, 6))).is_zero()
    assert el(R.metaplectic_casimir((1, 2, 3, 4))) == el(-2 * R.commutant_K(1))
    with pytest.raises(ValueError):
        R.commutant_K(3)


def test_k3_literal():
    assert len(R.k3_literal_summands()) == 20
    assert el(R.commutant_K3()) == el(R.k3_literal())
    assert el(comm(R.k3_literal(), R.L(1, 2))).is_zero()


def test_central_params():
    cp = R.racah_central_params_o6()
    assert el(comm(cp.d, R.commutant_K(1))).is_zero()
    assert el(comm(cp.e1, R.commutant_K(2))).is_zero()
    scalar = R.racah_central_params_su11(F(1), F(2), F(3), F(4), n=1)
    assert el(scalar.d) == F(1, 2) * (1 + 2 + 3 + 4)


def test_metaplectic_e1_vanishes():
    _, _, _, cp = R.metaplectic_racah()
    assert el(cp.e1).is_zero()


def test_reduced_sp2():
    for i in (1, 2, 3):
        t = R.reduced_sp2(i)
        assert el(comm(t.jplus, t.jminus)) == el(-2 * t.jzero)
        assert el(R.sp2_casimir(t)) == W.constant(3, F(-1, 4) * (R.a_param(i) + F(3, 4)))


def _at_zero(e: W) -> W:
    # drop every term carrying a parameter: the specialization a_i = 0
    return W(e.n, {(m.xexp, m.dexp): ParamPoly.const(c.terms.get((), 0)) for m, c in e.terms.items()})


def test_reduced_sp2_at_a_zero_is_the_oscillator():
    for i in (1, 2, 3):
        red, osc = R.reduced_sp2(i), R.sp2_oscillator(i, 3)
        for part in ("jplus", "jminus", "jzero"):
            assert _at_zero(el(getattr(red, part))) == el(getattr(osc, part))
    assert el(R.reduced_sp2(1).jminus) != el(R.sp2_oscillator(1, 3).jminus)


def test_reduced_casimir_closed_form_and_q():
    a1, a2 = R.a_param(1), R.a_param(2)
    x1, x2 = W.x(3, 1), W.x(3, 2)
    J3 = el(R.script_J(3))
    want = F(-1, 4) * (J3 * J3 + a1 * x2 ** 2 * x1 ** -2 + a2 * x1 ** 2 * x2 ** -2 + a1 + a2 + 1)
    assert el(R.reduced_casimir("1234")) == want
    assert el(R.conserved_Q(3) + 4 * R.reduced_casimir("1234")) == W.constant(3, -(a1 + a2 + 1))
    H = R.hamiltonian_surrogate()
    assert el(comm(R.conserved_Q(1), H)).is_zero()
    assert el(comm(R.reduced_casimir("123456"), R.reduced_casimir("1234"))).is_zero()


def test_q_reduces_to_rotation_square_without_parameters():
    for i in (1, 2, 3):
        J = el(R.script_J(i))
        assert _at_zero(el(R.conserved_Q(i))) == J * J


def test_registry_entries_build():
    for name, entry in R.REGISTRY.items():
        assert entry.doc
        assert set(entry.params) <= {"a1", "a2", "a3"}
