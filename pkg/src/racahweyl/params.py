"""Commutative coefficient ring: polynomials over Q in named parameters.

Parameter monomials are stored sparsely as sorted tuples of ``(name, exponent)``
pairs, so polynomials built over different symbol sets combine without any
re-indexing. The declared ordering only matters for serialization.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

PMon = tuple  # tuple[tuple[str, int], ...], sorted by name

ONE_MON: PMon = ()


def pmon_mul(p: PMon, q: PMon) -> PMon:
    if not p:
        return q
    if not q:
        return p
    acc = dict(p)
    for name, e in q:
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted(acc.items()))


def pmon_render(p: PMon) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in p)


def render_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _maybe(value):
    try:
        return ParamPoly.coerce(value)
    except TypeError:
        return NotImplemented


class ParamPoly:
    """Immutable polynomial in parameter symbols with ``Fraction`` coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[PMon, Rational] | None = None):
        clean = {}
        if terms:
            for mon, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(sorted((n, e) for n, e in mon if e))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ParamPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "ParamPoly":
        c = Fraction(c)
        return cls._raw({ONE_MON: c} if c else {})

    @classmethod
    def symbol(cls, name: str) -> "ParamPoly":
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        if isinstance(value, (int, Fraction, Rational)):
            return cls.const(value)
        raise TypeError(f"cannot use {type(value).__name__} as a coefficient")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def symbols(self) -> set[str]:
        return {name for mon in self._terms for name, _ in mon}

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(mon == ONE_MON for mon in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(ONE_MON, Fraction(0))

    def __add__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mon, c in other._terms.items():
            s = out.get(mon, 0) + c
            if s:
                out[mon] = s
            else:
                out.pop(mon, None)
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = pmon_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return ParamPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomial")
        out = ParamPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def sorted_items(self) -> list:
        # constant first, then by (total degree, symbols)
        return sorted(self._terms.items(), key=lambda kv: (sum(e for _, e in kv[0]), kv[0]))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mon, c in self.sorted_items():
            if not mon:
                body = render_rational(abs(c))
            elif abs(c) == 1:
                body = pmon_render(mon)
            else:
                body = f"{render_rational(abs(c))}*{pmon_render(mon)}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ParamPoly({self.render()!r})"

    def to_records(self, params: Iterable[str]) -> list[dict]:
        """Serialize against a declared symbol order: ``[{params, num, den}]``."""
        params = list(params)
        index = {p: i for i, p in enumerate(params)}
        out = []
        for mon, c in self._terms.items():
            vec = [0] * len(params)
            for name, e in mon:
                if name not in index:
                    raise ValueError(f"parameter {name!r} is not declared")
                vec[index[name]] = e
            out.append({"params": vec, "num": str(c.numerator), "den": str(c.denominator)})
        out.sort(key=lambda r: r["params"])
        return out

    @classmethod
    def from_records(cls, records: Iterable[Mapping], params: Iterable[str]) -> "ParamPoly":
        params = list(params)
        terms = {}
        for r in records:
            vec = r["params"]
            if len(vec) != len(params) or any(e < 0 for e in vec):
                raise ValueError(f"bad parameter exponent vector {vec!r}")
            mon = tuple(sorted((p, e) for p, e in zip(params, vec) if e))
            terms[mon] = terms.get(mon, 0) + Fraction(int(r["num"]), int(r["den"]))
        return cls(terms)
