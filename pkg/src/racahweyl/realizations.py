"""Oscillator realizations of o(n), sp(2) and the Racah-algebra generators.

Constructors return :class:`~racahweyl.expr.Op` trees; ``.element`` gives the
normal-ordered :class:`~racahweyl.weyl.WeylElement`. Indices are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .expr import Atom, Op, acomm, as_op, comm, op_sum
from .params import ParamPoly
from .weyl import WeylElement

F = Fraction

#: o(2) planes whose commutant is studied in six dimensions
O2_PLANES = ((1, 2), (3, 4), (5, 6))


def _w(n: int, coeff=1, x: dict | None = None, d: dict | None = None) -> WeylElement:
    """Single normal-ordered term ``coeff * x^x d^d`` (1-based sparse exponents)."""
    xe, de = [0] * n, [0] * n
    for i, k in (x or {}).items():
        xe[i - 1] = k
    for i, k in (d or {}).items():
        de[i - 1] = k
    return WeylElement.monomial(n, xe, de, coeff)


# -- o(n) -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _L(n: int, mu: int, nu: int) -> Op:
    return Atom(_w(n, x={mu: 1}, d={nu: 1}) - _w(n, x={nu: 1}, d={mu: 1}), label=f"L({mu},{nu})")


def angular_momentum(n: int, mu: int, nu: int) -> Op:
    """``L_{mu nu} = x_mu d_nu - x_nu d_mu``."""
    if not (1 <= mu <= n and 1 <= nu <= n):
        raise IndexError(f"L({mu},{nu}) out of range for n={n}")
    if mu == nu:
        raise ValueError(f"L({mu},{nu}): indices must differ")
    if mu > nu:
        return (-_L(n, nu, mu)).named(f"L({mu},{nu})")
    return _L(n, mu, nu)


def L(mu: int, nu: int, n: int = 6) -> Op:
    return angular_momentum(n, mu, nu)


def L2(mu: int, nu: int, n: int = 6) -> Op:
    return L(mu, nu, n) ** 2


def o_n_structure_rhs(n: int, mu: int, nu: int, rho: int, sigma: int) -> Op:
    """Kronecker-delta right-hand side of ``[L_{mu nu}, L_{rho sigma}]``."""
    terms = []
    for delta, sign, a, b in ((nu == rho, 1, mu, sigma), (nu == sigma, -1, mu, rho),
                              (mu == rho, -1, nu, sigma), (mu == sigma, 1, nu, rho)):
        if delta and a != b:
            terms.append(sign * angular_momentum(n, a, b))
    if not terms:
        return Atom(WeylElement.zero(n))
    return op_sum(terms)


@lru_cache(maxsize=None)
def o_n_casimir(n: int) -> Op:
    if n < 2:
        raise ValueError("o(n) Casimir needs n >= 2")
    return op_sum([L2(m, v, n) for m, v in combinations(range(1, n + 1), 2)]).named(f"Casimir(o{n})")


# -- sp(2) ----------------------------------------------------------------

@dataclass(frozen=True)
class Sp2Triple:
    """``(J+, J-, J0)`` satisfying the sp(2) ~ su(1,1) relations (checked)."""

    jplus: Op
    jminus: Op
    jzero: Op

    def __post_init__(self):
        jp, jm, j0 = self.jplus.element, self.jminus.element, self.jzero.element
        if j0 * jp - jp * j0 != jp:
            raise ValueError("[J0, J+] != J+")
        if j0 * jm - jm * j0 != -jm:
            raise ValueError("[J0, J-] != -J-")
        if jp * jm - jm * jp != -2 * j0:
            raise ValueError("[J+, J-] != -2 J0")

    def __add__(self, other: "Sp2Triple") -> "Sp2Triple":
        return Sp2Triple(self.jplus + other.jplus, self.jminus + other.jminus, self.jzero + other.jzero)

    @property
    def n(self) -> int:
        return self.jzero.n


@lru_cache(maxsize=None)
def sp2_oscillator(mu: int, n: int = 6) -> Sp2Triple:
    """Metaplectic triple ``J+ = x^2/2, J- = d^2/2, J0 = x d/2 + 1/4`` on variable ``mu``."""
    if not 1 <= mu <= n:
        raise IndexError(f"oscillator index {mu} out of range 1..{n}")
    return Sp2Triple(
        Atom(_w(n, F(1, 2), x={mu: 2}), f"Jp({mu})"),
        Atom(_w(n, F(1, 2), d={mu: 2}), f"Jm({mu})"),
        Atom(_w(n, F(1, 2), x={mu: 1}, d={mu: 1}) + F(1, 4), f"J0({mu})"),
    )


def _index_set(indices: Iterable[int], n: int) -> tuple:
    s = tuple(indices)
    if not s:
        raise ValueError("index set must be nonempty")
    if len(set(s)) != len(s):
        raise ValueError(f"repeated index in {s}")
    for i in s:
        if not 1 <= i <= n:
            raise IndexError(f"index {i} out of range 1..{n}")
    return tuple(sorted(s))


@lru_cache(maxsize=None)
def _sp2_sum(s: tuple, n: int) -> Sp2Triple:
    parts = [sp2_oscillator(mu, n) for mu in s]
    if len(parts) == 1:
        return parts[0]
    tag = "".join(map(str, s))
    return Sp2Triple(
        op_sum([p.jplus for p in parts]).named(f"Jp({tag})"),
        op_sum([p.jminus for p in parts]).named(f"Jm({tag})"),
        op_sum([p.jzero for p in parts]).named(f"J0({tag})"),
    )


def sp2_sum(indices: Iterable[int], n: int = 6) -> Sp2Triple:
    return _sp2_sum(_index_set(indices, n), n)


def sp2_casimir(t: Sp2Triple) -> Op:
    """``C = J0^2 - J+ J- - J0``."""
    return t.jzero * t.jzero - t.jplus * t.jminus - t.jzero


@lru_cache(maxsize=None)
def _metaplectic_casimir(s: tuple, n: int) -> Op:
    return sp2_casimir(_sp2_sum(s, n)).named(f"Casimir(sp2,{{{','.join(map(str, s))}}})")


def metaplectic_casimir(indices: Iterable[int], n: int = 6) -> Op:
    """Casimir of the summed metaplectic triples over ``indices``."""
    return _metaplectic_casimir(_index_set(indices, n), n)


# -- commutant of o(2)+o(2)+o(2) in o(6) ------------------------------------

_K_PAIRS = {
    1: ((1, 2), (3, 4), (1, 3), (2, 3), (1, 4), (2, 4)),
    2: ((3, 4), (5, 6), (3, 5), (3, 6), (4, 5), (4, 6)),
}


@lru_cache(maxsize=None)
def commutant_K(which: int) -> Op:
    """``K1`` or ``K2``: one eighth of a sum of six squared angular momenta."""
    if which not in _K_PAIRS:
        raise ValueError("commutant_K expects 1 or 2")
    return (F(1, 8) * op_sum([L2(*p) for p in _K_PAIRS[which]])).named(f"K{which}")


@lru_cache(maxsize=None)
def commutant_K3() -> Op:
    return comm(commutant_K(1), commutant_K(2)).named("K3")


_K3_SQUARES = [(+1, p) for p in ((3, 5), (3, 6), (4, 5), (4, 6))] + [
    (-1, p) for p in ((1, 3), (1, 4), (2, 3), (2, 4), (1, 5), (1, 6), (2, 5), (2, 6))]
_K3_CUBICS = [
    ((1, 3), (3, 5), (1, 5)), ((1, 3), (3, 6), (1, 6)), ((2, 3), (3, 5), (2, 5)), ((2, 3), (3, 6), (2, 6)),
    ((1, 4), (4, 5), (1, 5)), ((1, 4), (4, 6), (1, 6)), ((2, 4), (4, 5), (2, 5)), ((2, 4), (4, 6), (2, 6)),
]


def k3_literal_summands() -> list:
    """The 20 summands of ``16 * K3`` as written out explicitly."""
    out = [s * L2(*p) for s, p in _K3_SQUARES]
    out += [L(*a) * L(*b) * L(*c) for a, b, c in _K3_CUBICS]
    return out


@lru_cache(maxsize=None)
def k3_literal() -> Op:
    return (F(1, 16) * op_sum(k3_literal_summands())).named("K3lit")


# 128*[K2, K3] written over squares and quartic words in the L's.
_K2K3_ACOMM = """
+ 35 13 | + 35 23 | + 36 13 | + 36 23 | + 45 14 | + 45 24 | + 46 14 | + 46 24
- 35 15 | - 35 25 | - 36 16 | - 36 26 | - 45 15 | - 45 25 | - 46 16 | - 46 26
"""
_K2K3_SQUARES = "13 23 14 24", "15 25 16 26"
_K2K3_QUARTIC = """
-2 15 35 36 16 | -2 13 35 56 16 | -2 25 35 36 26 | -2 23 35 56 26
-2 16 36 35 15 | +2 13 36 56 15 | -2 26 36 35 25 | +2 23 36 56 25
-2 15 45 46 16 | -2 14 45 56 16 | -2 25 45 46 26 | -2 24 45 56 26
-2 16 46 45 15 | +2 14 46 56 15 | -2 26 46 45 25 | +2 24 46 56 25
+2 14 45 35 13 | -2 14 34 35 15 | +2 24 45 35 23 | -2 24 34 35 25
+2 14 46 36 13 | -2 14 34 36 16 | +2 24 46 36 23 | -2 24 34 36 26
+2 13 35 45 14 | +2 13 34 45 15 | +2 23 35 45 24 | +2 23 34 45 25
+2 13 36 46 14 | +2 13 34 46 16 | +2 23 36 46 24 | +2 23 34 46 26
"""


def _pair(token: str) -> tuple:
    return int(token[0]), int(token[1])


def k2k3_literal_summands() -> list:
    out = []
    for entry in _K2K3_ACOMM.replace("\n", "|").split("|"):
        if entry.strip():
            sign, a, b = entry.split()
            term = acomm(L2(*_pair(a)), L2(*_pair(b)))
            out.append(term if sign == "+" else -term)
    plus, minus = _K2K3_SQUARES
    out.append(4 * op_sum([L2(*_pair(t)) for t in plus.split()] + [-L2(*_pair(t)) for t in minus.split()]))
    for entry in _K2K3_QUARTIC.replace("\n", "|").split("|"):
        if entry.strip():
            coeff, *words = entry.split()
            prod = L(*_pair(words[0]))
            for w in words[1:]:
                prod = prod * L(*_pair(w))
            out.append(int(coeff) * prod)
    return out


@lru_cache(maxsize=None)
def k2k3_literal() -> Op:
    """Explicit expansion of ``128 * [K2, K3]``."""
    return op_sum(k2k3_literal_summands()).named("K2K3x128lit")


# -- Racah structure "constants" ------------------------------------------------

@dataclass(frozen=True)
class CentralParams:
    d: Op
    e1: Op
    e2: Op

    def commute_with(self, ops: Sequence[Op]) -> bool:
        for c in (self.d, self.e1, self.e2):
            for k in ops:
                if not comm(c, k).element.is_zero():
                    return False
        return True


@lru_cache(maxsize=None)
def racah_central_params_o6() -> CentralParams:
    cas = o_n_casimir(6)
    l12, l34, l56 = (L2(*p) for p in O2_PLANES)
    d = F(-1, 8) * (cas + l12 + l34 + l56)
    e1 = F(-1, 64) * ((cas - l12 - 4) * (l34 - l56))
    e2 = F(-1, 64) * ((cas - l56 - 4) * (l34 - l12))
    return CentralParams(d.named("racah_d"), e1.named("racah_e1"), e2.named("racah_e2"))


def racah_central_params_su11(l1, l2, l3, l4, n: int | None = None,
                              ks: Sequence[Op] = ()) -> CentralParams:
    """Structure elements from the four Casimir values; each may be a scalar or an operator."""
    ops = [x for x in (l1, l2, l3, l4) if isinstance(x, Op)]
    if n is None:
        if not ops:
            raise ValueError("dimension required when every lambda is a scalar")
        n = ops[0].n
    l1, l2, l3, l4 = (as_op(x, n) for x in (l1, l2, l3, l4))
    lams = (l1, l2, l3, l4)
    pairs = list(combinations(lams, 2)) + [(lam, k) for lam in lams for k in ks]
    for a, b in pairs:
        if not comm(a, b).element.is_zero():
            raise ValueError("lambda inputs must commute pairwise and with the K generators")
    d = F(1, 2) * (l1 + l2 + l3 + l4)
    e1 = F(1, 4) * ((l1 - l4) * (l2 - l3))
    e2 = F(1, 4) * ((l1 - l2) * (l4 - l3))
    return CentralParams(d, e1, e2)


def racah_relations(k1: Op, k2: Op, k3: Op, cp: CentralParams) -> dict:
    """The three defining relations as ``name -> (lhs, rhs)`` pairs."""
    anti = acomm(k1, k2)
    return {
        "first": (comm(k1, k2), k3),
        "second": (comm(k2, k3), k2 * k2 + anti + cp.d * k2 + cp.e1),
        "third": (comm(k3, k1), k1 * k1 + anti + cp.d * k1 + cp.e2),
    }


# -- three-oscillator su(1,1) coupling ------------------------------------------

SINGLE_OSCILLATOR_CASIMIR = F(-3, 16)


def metaplectic_racah(n: int = 3) -> tuple:
    """``(K1, K2, K3, CentralParams)`` from intermediate Casimirs of three metaplectic copies."""
    c12 = metaplectic_casimir((1, 2), n)
    c23 = metaplectic_casimir((2, 3), n)
    c123 = metaplectic_casimir((1, 2, 3), n)
    k1 = (F(-1, 2) * c12).named("K1m")
    k2 = (F(-1, 2) * c23).named("K2m")
    k3 = comm(k1, k2).named("K3m")
    lam = SINGLE_OSCILLATOR_CASIMIR
    return k1, k2, k3, racah_central_params_su11(lam, lam, lam, c123, ks=(k1, k2))


def intermediate_casimir_expanded(i: int, j: int, lam_i, lam_j, n: int = 3) -> Op:
    """``2 J0i J0j - (J+i J-j + J-i J+j) + lam_i + lam_j``."""
    a, b = sp2_oscillator(i, n), sp2_oscillator(j, n)
    return (2 * (a.jzero * b.jzero) - (a.jplus * b.jminus + a.jminus * b.jplus)) + lam_i + lam_j


# -- reduced realization in three variables ------------------------------------

def a_param(i: int) -> ParamPoly:
    return ParamPoly.symbol(f"a{i}")


@lru_cache(maxsize=None)
def reduced_sp2(i: int, n: int = 3) -> Sp2Triple:
    """Reduced triple on variable ``x_i`` with free parameter ``a_i``."""
    if not 1 <= i <= n:
        raise IndexError(f"reduced copy {i} out of range 1..{n}")
    a = a_param(i)
    return Sp2Triple(
        Atom(_w(n, F(1, 2), x={i: 2}), f"Jtp({i})"),
        Atom(_w(n, F(1, 2), d={i: 2}) + _w(n, F(1, 2) * a, x={i: -2}), f"Jtm({i})"),
        Atom(_w(n, F(1, 2), x={i: 1}, d={i: 1}) + F(1, 4), f"Jt0({i})"),
    )


#: pair labels -> reduced copies (the plane (2i-1, 2i) reduces to x_i)
REDUCED_LABELS = {
    "12": (1,), "34": (2,), "56": (3,),
    "1234": (1, 2), "3456": (2, 3), "1256": (1, 3), "123456": (1, 2, 3),
}


def _label(label) -> str:
    label = str(label)
    if label not in REDUCED_LABELS:
        raise ValueError(f"unknown reduced label {label!r}; expected one of {sorted(REDUCED_LABELS)}")
    return label


@lru_cache(maxsize=None)
def reduced_triple(label) -> Sp2Triple:
    parts = [reduced_sp2(i) for i in REDUCED_LABELS[_label(label)]]
    if len(parts) == 1:
        return parts[0]
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


@lru_cache(maxsize=None)
def reduced_casimir(label) -> Op:
    label = _label(label)
    return sp2_casimir(reduced_triple(label)).named(f"Ctilde({label})")


@lru_cache(maxsize=None)
def script_J(k: int) -> Op:
    """Rotation generator ``J_k = eps_kij x_i d_j``."""
    if k not in (1, 2, 3):
        raise IndexError("J_k needs k in 1..3")
    i, j = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[k]
    return angular_momentum(3, i, j).named(f"Jcal({k})")


def _cyclic(i: int) -> tuple:
    return {1: (1, 2, 3), 2: (2, 3, 1), 3: (3, 1, 2)}[i]


def _ratio(num: int, den: int) -> Atom:
    return Atom(_w(3, x={num: 2, den: -2}), f"x{num}^2/x{den}^2")


@lru_cache(maxsize=None)
def conserved_Q(i: int) -> Op:
    """``Q_i = J_i^2 + a_j x_k^2/x_j^2 + a_k x_j^2/x_k^2`` with ``(i, j, k)`` cyclic."""
    if i not in (1, 2, 3):
        raise IndexError("Q_i needs i in 1..3")
    _, j, k = _cyclic(i)
    jc = script_J(i)
    return (jc * jc + a_param(j) * _ratio(k, j) + a_param(k) * _ratio(j, k)).named(f"Q({i})")


#: intermediate label whose closed form involves Q_i
Q_LABEL = {3: "1234", 1: "3456", 2: "1256"}


def reduced_casimir_closed_form(label) -> Op:
    """``-1/4 [J_i^2 + a_j x_k^2/x_j^2 + a_k x_j^2/x_k^2 + a_j + a_k + 1]``."""
    label = _label(label)
    inv = {v: k for k, v in Q_LABEL.items()}
    if label not in inv:
        raise ValueError(f"no closed form for Ctilde({label})")
    i = inv[label]
    _, j, k = _cyclic(i)
    jc = script_J(i)
    bracket = jc * jc + a_param(j) * _ratio(k, j) + a_param(k) * _ratio(j, k) + (a_param(j) + a_param(k) + 1)
    return F(-1, 4) * bracket


def reduced_pair_constant(i: int) -> ParamPoly:
    """Value of the single-copy reduced Casimir: ``-(a_i + 3/4)/4``."""
    return F(-1, 4) * (a_param(i) + F(3, 4))


@lru_cache(maxsize=None)
def hamiltonian_surrogate() -> Op:
    return op_sum([conserved_Q(i) for i in (1, 2, 3)]).named("H")


def reduced_racah() -> tuple:
    """``(K1~, K2~, K3~, CentralParams)`` with ``K1~ = -C~(1234)/2``, ``K2~ = -C~(3456)/2``."""
    k1 = (F(-1, 2) * reduced_casimir("1234")).named("K1t")
    k2 = (F(-1, 2) * reduced_casimir("3456")).named("K2t")
    k3 = comm(k1, k2).named("K3t")
    lams = [reduced_pair_constant(i) for i in (1, 2, 3)]
    cp = racah_central_params_su11(*lams, reduced_casimir("123456"), ks=(k1, k2))
    return k1, k2, k3, cp


def radial_sp2_before_gauge(i: int, n: int = 3) -> Sp2Triple:
    """Radial sp(2) triple of a plane before the half-power gauge.

    ``J- = (d^2 + x^-1 d + (a_i - 1/4) x^-2)/2`` is the planar Laplacian with the
    angular part replaced by ``(a_i - 1/4) / x^2``; ``J0 = x d / 2 + 1/2``.
    """
    a = a_param(i)
    return Sp2Triple(
        Atom(_w(n, F(1, 2), x={i: 2})),
        Atom(_w(n, F(1, 2), d={i: 2}) + _w(n, F(1, 2), x={i: -1}, d={i: 1})
             + _w(n, F(1, 2) * (a - F(1, 4)), x={i: -2})),
        Atom(_w(n, F(1, 2), x={i: 1}, d={i: 1}) + F(1, 2)),
    )


# -- named-operator registry -----------------------------------------------------

@dataclass(frozen=True)
class RegistryEntry:
    """``args`` is a tuple of kinds: ``"int"``, ``"set"`` (index set) or ``"word"``."""

    args: tuple
    build: Callable
    doc: str
    dims: tuple = ()
    params: tuple = ()


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _casimir(n, kind, s=None):
    if kind == "sp2":
        _need(s is not None, "Casimir(sp2, S) needs an index set")
        return metaplectic_casimir(s, n)
    _need(s is None and kind in (f"o{n}", "oN"), f"expected Casimir(o{n}) or Casimir(sp2, S)")
    return o_n_casimir(n)


def _triple_part(part: str) -> Callable:
    return lambda n, s: getattr(sp2_sum(s, n), part)


def _reduced_part(part: str) -> Callable:
    return lambda n, label: getattr(reduced_triple(label), part)


def _set_label(s) -> str:
    return "".join(map(str, s))


REGISTRY: dict[str, RegistryEntry] = {
    "L": RegistryEntry(("int", "int"), lambda n, m, v: angular_momentum(n, m, v), "angular momentum L(mu,nu)"),
    "Casimir": RegistryEntry(("word", "set?"), _casimir, "Casimir(o6) (or oN for the session n), Casimir(sp2, {..})"),
    "Jp": RegistryEntry(("set",), _triple_part("jplus"), "metaplectic J+ summed over an index set"),
    "Jm": RegistryEntry(("set",), _triple_part("jminus"), "metaplectic J- summed over an index set"),
    "J0": RegistryEntry(("set",), _triple_part("jzero"), "metaplectic J0 summed over an index set"),
    "K1": RegistryEntry((), lambda n: commutant_K(1), "o(6) commutant generator K1", dims=(6,)),
    "K2": RegistryEntry((), lambda n: commutant_K(2), "o(6) commutant generator K2", dims=(6,)),
    "K3": RegistryEntry((), lambda n: commutant_K3(), "[K1, K2]", dims=(6,)),
    "K3lit": RegistryEntry((), lambda n: k3_literal(), "explicit 1/16 expansion of K3", dims=(6,)),
    "racah_d": RegistryEntry((), lambda n: racah_central_params_o6().d, "o(6) Racah d", dims=(6,)),
    "racah_e1": RegistryEntry((), lambda n: racah_central_params_o6().e1, "o(6) Racah e1", dims=(6,)),
    "racah_e2": RegistryEntry((), lambda n: racah_central_params_o6().e2, "o(6) Racah e2", dims=(6,)),
    "Jtp": RegistryEntry(("set",), lambda n, s: _reduced_part("jplus")(n, _set_label(s)),
                         "reduced J+ by pair label, e.g. Jtp(1234)", dims=(3,), params=("a1", "a2", "a3")),
    "Jtm": RegistryEntry(("set",), lambda n, s: _reduced_part("jminus")(n, _set_label(s)),
                         "reduced J- by pair label", dims=(3,), params=("a1", "a2", "a3")),
    "Jt0": RegistryEntry(("set",), lambda n, s: _reduced_part("jzero")(n, _set_label(s)),
                         "reduced J0 by pair label", dims=(3,), params=("a1", "a2", "a3")),
    "Ctilde": RegistryEntry(("set",), lambda n, s: reduced_casimir(_set_label(s)),
                            "reduced Casimir by pair label, e.g. Ctilde(1234)", dims=(3,), params=("a1", "a2", "a3")),
    "Jcal": RegistryEntry(("int",), lambda n, k: script_J(k), "rotation generator J_k", dims=(3,)),
    "Q": RegistryEntry(("int",), lambda n, i: conserved_Q(i), "conserved quantity Q_i", dims=(3,),
                       params=("a1", "a2", "a3")),
    "H": RegistryEntry((), lambda n: hamiltonian_surrogate(), "Q1 + Q2 + Q3", dims=(3,), params=("a1", "a2", "a3")),
    "K1t": RegistryEntry((), lambda n: reduced_racah()[0], "-Ctilde(1234)/2", dims=(3,), params=("a1", "a2", "a3")),
    "K2t": RegistryEntry((), lambda n: reduced_racah()[1], "-Ctilde(3456)/2", dims=(3,), params=("a1", "a2", "a3")),
}
