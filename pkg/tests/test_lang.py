from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from racahweyl import realizations as R
from racahweyl.lang import (
    MAX_POWER, BinOp, Comm, EvalError, Num, ParseError, Ref, SessionConfig, evaluate, parse_expr, tokenize,
)
from racahweyl.weyl import WeylElement as W

from strategies import elements

O6 = SessionConfig(n=6)
REDUCED = SessionConfig(n=3, params=("a1", "a2", "a3"))

# one sample invocation per registry entry, with the session it needs
SAMPLES = {
    "L": ("L(2,5)", O6),
    "Casimir": ("Casimir(oN) + Casimir(sp2, {1,3})", O6),
    "Jp": ("Jp(12)", O6),
    "Jm": ("Jm({4,5})", O6),
    "J0": ("J0(6)", O6),
    "K1": ("K1", O6),
    "K2": ("K2", O6),
    "K3": ("K3", O6),
    "K3lit": ("K3lit", O6),
    "racah_d": ("racah_d", O6),
    "racah_e1": ("racah_e1", O6),
    "racah_e2": ("racah_e2", O6),
    "Jtp": ("Jtp(1234)", REDUCED),
    "Jtm": ("Jtm(56)", REDUCED),
    "Jt0": ("Jt0(123456)", REDUCED),
    "Ctilde": ("Ctilde(1256)", REDUCED),
    "Jcal": ("Jcal(2)", REDUCED),
    "Q": ("Q(3)", REDUCED),
    "H": ("H", REDUCED),
    "K1t": ("K1t", REDUCED),
    "K2t": ("K2t", REDUCED),
}


def test_parse_examples():
    ast = parse_expr("comm(L(1,2), L(2,3))", O6)
    assert isinstance(ast, Comm) and not ast.anti
    assert isinstance(ast.left, Ref) and ast.left.name == "L"
    ast = parse_expr("K1 + (1/2)*L(3,4)^2", O6)
    assert isinstance(ast, BinOp) and ast.op == "+"
    assert ast.right.left == Num(F(1, 2), line=1, col=7)


def test_index_error_is_located():
    with pytest.raises(ParseError) as err:
        parse_expr("K1 +\n  L(1,1)", O6)
    assert (err.value.line, err.value.col) == (2, 3)
    assert "differ" in err.value.message


@pytest.mark.parametrize("text, where", [
    ("x1 + $", (1, 6)),
    ("x7", (1, 1)),
    ("foo", (1, 1)),
    ("L(1)", (1, 1)),
    ("(x1", (1, 4)),
    ("comm(x1)", (1, 8)),
    ("x1 ^ 1.5", (1, 7)),
])
def test_errors_carry_positions(text, where):
    with pytest.raises(ParseError) as err:
        parse_expr(text, O6)
    assert (err.value.line, err.value.col) == where


def test_eval_examples():
    assert evaluate("comm(d1, x1)", SessionConfig(n=1)) == 1
    assert evaluate("comm(K1,K2) - K3lit", O6).is_zero()
    assert evaluate("J0(12) - J0(1) - J0(2)", O6).is_zero()
    assert evaluate("acomm(x1, d1)", SessionConfig(n=1)) == 2 * W.x(1, 1) * W.d(1, 1) + 1
    assert evaluate("Casimir(sp2, {1,2,3,4}) + 2*K1", O6).is_zero()


def test_parameters_and_negative_powers():
    cfg = SessionConfig(n=1, params=("b",))
    assert evaluate("b*x1^-2 - x1^-1*b*x1^-1", cfg).is_zero()
    with pytest.raises(EvalError):
        evaluate("(x1 + 1)^-1", cfg)
    with pytest.raises(ParseError):
        evaluate("c*x1", cfg)


def test_session_config_validation():
    with pytest.raises(ValueError):
        SessionConfig(n=0)
    with pytest.raises(ValueError):
        SessionConfig(params=("a", "a"))
    with pytest.raises(ValueError):
        SessionConfig(params=("x1",))
    with pytest.raises(ValueError):
        SessionConfig(params=("K1",))


def test_registry_requirements_are_enforced():
    with pytest.raises(ParseError):
        parse_expr("K1", SessionConfig(n=3))
    with pytest.raises(ParseError):
        parse_expr("Q(1)", SessionConfig(n=3))


def test_limits():
    with pytest.raises(ParseError):
        parse_expr(f"x1^{MAX_POWER + 1}", O6)
    with pytest.raises(ParseError):
        parse_expr("(" * 5000 + "x1" + ")" * 5000, O6)
    with pytest.raises(ParseError):
        tokenize("1" * 5000)


def test_every_registry_entry_has_a_sample():
    assert set(SAMPLES) == set(R.REGISTRY)


@pytest.mark.parametrize("name", sorted(SAMPLES))
def test_registry_render_round_trip(name):
    text, cfg = SAMPLES[name]
    value = evaluate(text, cfg)
    assert not value.is_zero()
    assert evaluate(value.render(), cfg) == value


@given(elements(n=3, params=("a1", "a2")))
def test_render_parse_round_trip(e):
    assert evaluate(e.render(), SessionConfig(n=3, params=("a1", "a2"))) == e


@given(st.text(alphabet="x1d2K(),{}+-*^/ 0a\n", max_size=40))
def test_parser_is_total(text):
    # any input either parses or raises a located ParseError
    try:
        evaluate(text, SessionConfig(n=2, params=("a",)))
    except ParseError as exc:
        assert exc.line >= 1 and exc.col >= 1
