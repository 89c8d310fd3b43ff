"""Lazy operator expressions.

Every named operator is built as a small tree of sums, products, scalings and
gauge conjugations over hand-written atoms. The same tree can be evaluated two
ways: symbolically (``.element``, through the normal-ordering kernel) or by the
oracle, which applies it to monomials by composing actions and never reorders
words. Keeping the construction as data is what makes the two routes independent.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .params import ParamPoly
from .weyl import DimensionError, WeylElement, gauge_conjugate, scale

_SCALARS = (int, Fraction, ParamPoly)


def downclose(vectors) -> frozenset:
    """Smallest componentwise-downward-closed set of vectors containing ``vectors``."""
    seen = set()
    stack = list(vectors)
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        for i, e in enumerate(v):
            if e:
                stack.append(v[:i] + (e - 1,) + v[i + 1:])
    return frozenset(seen)


class Op:
    """Base class of expression nodes; immutable."""

    n: int
    label: str | None = None

    @cached_property
    def element(self) -> WeylElement:
        return self._evaluate()

    @cached_property
    def support(self) -> frozenset:
        """Downward-closed set bounding the derivative exponents of the normal form."""
        return self._support()

    def _evaluate(self) -> WeylElement:
        raise NotImplementedError

    def _support(self) -> frozenset:
        raise NotImplementedError

    def children(self) -> tuple:
        return ()

    # -- operator sugar -------------------------------------------------
    def _lift(self, other) -> "Op":
        if isinstance(other, Op):
            if other.n != self.n:
                raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, WeylElement):
            return Atom(other)
        if isinstance(other, _SCALARS):
            return Atom(WeylElement.constant(self.n, other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Sum((self, other))

    def __radd__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Sum((other, self))

    def __neg__(self):
        return Scaled(ParamPoly.const(-1), self)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Sum((self, -other))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Sum((other, -self))

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return Scaled(ParamPoly.coerce(other), self)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Prod((self, other))

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return Scaled(ParamPoly.coerce(other), self)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Prod((other, self))

    def __pow__(self, k: int):
        if k < 0:
            return Atom(self.element.inverse()) ** (-k)
        if k == 0:
            return Atom(WeylElement.one(self.n))
        if k == 1:
            return self
        return Prod((self,) * k)

    def named(self, label: str) -> "Op":
        self.label = label
        return self

    def __repr__(self):
        return f"<{type(self).__name__} {self.label or ''} n={self.n}>"


class Atom(Op):
    """A leaf holding a hand-built element; never the result of a product."""

    def __init__(self, element: WeylElement, label: str | None = None):
        self.n = element.n
        self.value = element
        self.label = label

    def _evaluate(self):
        return self.value

    def _support(self):
        return downclose({key[1] for key, _ in self.value.raw_items()} | {(0,) * self.n})


class Sum(Op):
    def __init__(self, terms: Sequence[Op]):
        terms = tuple(terms)
        if not terms:
            raise ValueError("empty sum")
        _check_dims(terms)
        self.n = terms[0].n
        self.terms = terms

    def children(self):
        return self.terms

    def _evaluate(self):
        out = WeylElement.zero(self.n)
        for t in self.terms:
            out = out + t.element
        return out

    def _support(self):
        out = set()
        for t in self.terms:
            out |= t.support
        return frozenset(out)


class Prod(Op):
    """Ordered product ``factors[0] * factors[1] * ...``."""

    def __init__(self, factors: Sequence[Op]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("empty product")
        _check_dims(factors)
        self.n = factors[0].n
        self.factors = factors

    def children(self):
        return self.factors

    def _evaluate(self):
        out = self.factors[0].element
        for f in self.factors[1:]:
            out = out * f.element
        return out

    def _support(self):
        acc = self.factors[0].support
        for f in self.factors[1:]:
            acc = frozenset(tuple(a + b for a, b in zip(u, v)) for u in acc for v in f.support)
        return acc


class Scaled(Op):
    def __init__(self, coeff: ParamPoly, op: Op):
        self.n = op.n
        self.coeff = ParamPoly.coerce(coeff)
        self.op = op

    def children(self):
        return (self.op,)

    def _evaluate(self):
        return scale(self.coeff, self.op.element)

    def _support(self):
        return self.op.support


class Conj(Op):
    """Gauge conjugation ``x^c * op * x^(-c)`` with rational exponents ``c``."""

    def __init__(self, op: Op, exponents: Sequence):
        if len(exponents) != op.n:
            raise DimensionError("need one gauge exponent per variable")
        self.n = op.n
        self.op = op
        self.exponents = tuple(Fraction(c) for c in exponents)

    def children(self):
        return (self.op,)

    def _evaluate(self):
        return gauge_conjugate(self.op.element, self.exponents)

    def _support(self):
        return self.op.support


def _check_dims(ops: Sequence[Op]) -> None:
    n = ops[0].n
    for op in ops:
        if not isinstance(op, Op):
            raise TypeError(f"expected Op, got {type(op).__name__}")
        if op.n != n:
            raise DimensionError(f"dimension mismatch: {n} vs {op.n}")


def as_op(value, n: int | None = None) -> Op:
    if isinstance(value, (Op, WeylElement)):
        if n is not None and value.n != n:
            raise DimensionError(f"dimension mismatch: {n} vs {value.n}")
        return value if isinstance(value, Op) else Atom(value)
    if isinstance(value, _SCALARS):
        if n is None:
            raise ValueError("dimension required to lift a scalar")
        return Atom(WeylElement.constant(n, value))
    raise TypeError(f"cannot treat {type(value).__name__} as an operator")


def comm(a: Op, b: Op) -> Op:
    return a * b - b * a


def acomm(a: Op, b: Op) -> Op:
    return a * b + b * a


def op_sum(ops: Sequence[Op]) -> Op:
    return Sum(tuple(ops))
