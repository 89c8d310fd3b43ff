"""Independent semantics: operators acting on Laurent monomials.

An expression is applied to ``x^alpha`` by composing the actions of its atoms,
each atom term acting by ``x^a d^b . x^alpha = ff(alpha, b) x^(alpha - b + a)``.
Words are never reordered, so a defect in the normal-ordering kernel cannot hide
here.

Completeness: grouping the action of an operator ``E`` by exponent shift, each
shift carries a polynomial in ``alpha`` spanned by falling factorials
``prod_i ff(alpha_i, b_i)`` with ``b`` in the derivative support of ``E``. That
support is downward closed (:attr:`Op.support` bounds it for any tree), and a
polynomial in the span of a downward-closed exponent set vanishes identically
once it vanishes on ``base + support`` (Newton interpolation on a lower set).
Since falling-factorial products are linearly independent, ``E = 0`` follows.
The box grid ``base + [0, q_1] x ... x [0, q_n]`` contains that lower set and
is also complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Sequence

from .expr import Atom, Conj, Op, Prod, Scaled, Sum, as_op
from .params import ParamPoly, pmon_mul
from .weyl import DimensionError, WeylElement, falling_factorial


def _add(out: dict, key, c) -> None:
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class Action:
    """Memoized action of one or more trees on monomials (flat keyed by ``(exps, pmon)``)."""

    def __init__(self):
        self.cache: dict = {}
        self.keep: list = []  # pins ops so id() keys stay unique

    def __call__(self, op: Op, alpha: tuple) -> dict:
        key = (id(op), alpha)
        hit = self.cache.get(key)
        if hit is None:
            self.keep.append(op)
            hit = self.cache[key] = self._compute(op, alpha)
        return hit

    def _compute(self, op: Op, alpha: tuple) -> dict:
        out: dict = {}
        if isinstance(op, Atom):
            for (xexp, dexp, pmon), c in op.value.raw_items():
                ff = 1
                for al, b in zip(alpha, dexp):
                    if b:
                        ff *= falling_factorial(al, b)
                        if not ff:
                            break
                if ff:
                    _add(out, (tuple(al - b + a for al, a, b in zip(alpha, xexp, dexp)), pmon), c * ff)
        elif isinstance(op, Sum):
            for t in op.terms:
                for key, c in self(t, alpha).items():
                    _add(out, key, c)
        elif isinstance(op, Scaled):
            for (beta, p), c in self(op.op, alpha).items():
                for q, cq in op.coeff.items():
                    _add(out, (beta, pmon_mul(p, q)), c * cq)
        elif isinstance(op, Prod):
            current = {(alpha, ()): Fraction(1)}
            for factor in reversed(op.factors):
                nxt: dict = {}
                for (beta, p), c in current.items():
                    for (gamma, q), c2 in self(factor, beta).items():
                        _add(nxt, (gamma, pmon_mul(p, q)), c * c2)
                current = nxt
            out = current
        elif isinstance(op, Conj):
            shift = op.exponents
            inner = self(op.op, tuple(al - s for al, s in zip(alpha, shift)))
            for (beta, p), c in inner.items():
                _add(out, (tuple(_norm(b + s) for b, s in zip(beta, shift)), p), c)
        else:
            raise TypeError(f"oracle cannot evaluate {type(op).__name__}")
        return out


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def _group(flat: dict) -> dict:
    grouped: dict = {}
    for (beta, pmon), c in flat.items():
        grouped.setdefault(beta, {})[pmon] = c
    return {beta: ParamPoly._raw(g) for beta, g in grouped.items()}


def apply_to_monomial(e, alpha: Sequence) -> dict:
    """Image of ``x^alpha`` under ``e``: map exponent vector -> ParamPoly.

    ``alpha`` may hold integers or rationals.
    """
    op = as_op(e)
    alpha = tuple(_norm(Fraction(a)) for a in alpha)
    if len(alpha) != op.n:
        raise DimensionError(f"monomial of length {len(alpha)} for an operator on {op.n} variables")
    return _group(Action()(op, alpha))


# -- complete grids ---------------------------------------------------------

def max_orders(support: Iterable[tuple], n: int) -> tuple:
    q = [0] * n
    for v in support:
        for i, b in enumerate(v):
            q[i] = max(q[i], b)
    return tuple(q)


def complete_grid(support: frozenset, n: int, base: Sequence | None = None,
                  extents: Sequence[int] | None = None) -> list:
    """Evaluation points certifying zero for any operator with the given derivative support.

    With ``extents`` a box grid is returned; each axis must hold at least
    ``q_i + 1`` points or the grid is rejected. Without ``extents`` the grid is
    the lower set ``base + support`` itself.
    """
    q = max_orders(support, n)
    if base is None:
        base = (0,) * n
    base = tuple(base)
    if len(base) != n:
        raise DimensionError("grid base has wrong length")
    if extents is not None:
        extents = tuple(extents)
        if len(extents) != n:
            raise DimensionError("grid extents have wrong length")
        short = [i + 1 for i in range(n) if extents[i] < q[i]]
        if short:
            raise ValueError(f"grid incomplete along axes {short}: need extents >= {q}")
        return [tuple(b + s for b, s in zip(base, off))
                for off in cartesian(*(range(e + 1) for e in extents))]
    return [tuple(b + s for b, s in zip(base, off)) for off in sorted(support)]


@dataclass
class OracleOutcome:
    equal: bool
    points: int
    mismatches: list = field(default_factory=list)  # (alpha, {beta: ParamPoly}), truncated
    mismatch_count: int = 0

    def render_sample(self, limit: int = 5) -> list[str]:
        out = []
        for alpha, diff in self.mismatches[:limit]:
            body = " + ".join(f"({c})*x^{list(beta)}" for beta, c in sorted(diff.items()))
            out.append(f"at x^{list(alpha)}: {body}")
        return out


def oracle_compare(a, b=None, base: Sequence | None = None, extents: Sequence[int] | None = None,
                   action: "Action | None" = None, max_mismatches: int = 5) -> OracleOutcome:
    """Compare the actions of ``a`` and ``b`` (default zero) on a complete grid."""
    a = as_op(a)
    n = a.n
    b = as_op(b, n) if b is not None else None
    if b is not None and b.n != n:
        raise DimensionError(f"dimension mismatch: {n} vs {b.n}")
    support = a.support | b.support if b is not None else a.support
    points = complete_grid(support, n, base=base, extents=extents)
    act = action or Action()
    mismatches = []
    count = 0
    for alpha in points:
        diff = dict(act(a, alpha))
        if b is not None:
            for key, c in act(b, alpha).items():
                _add(diff, key, -c)
        if diff:
            count += 1
            if len(mismatches) < max_mismatches:
                mismatches.append((alpha, _group(diff)))
    return OracleOutcome(not count, len(points), mismatches, count)


def oracle_is_zero(e, base: Sequence | None = None, extents: Sequence[int] | None = None) -> bool:
    return oracle_compare(e, None, base=base, extents=extents).equal


def oracle_equal(a, b, base: Sequence | None = None, extents: Sequence[int] | None = None) -> bool:
    """Equality decided by applying ``a`` and ``b`` separately and comparing images."""
    return oracle_compare(a, b, base=base, extents=extents).equal


def box_extents(e) -> tuple:
    """Per-axis maximal derivative order ``q`` bounding ``e``."""
    op = as_op(e)
    return max_orders(op.support, op.n)

