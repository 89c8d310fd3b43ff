"""Exact arithmetic in the Laurent-Weyl algebra.

Elements are finite sums of normal-ordered words ``c * x^a d^b`` where ``a`` is
an integer vector (negative entries allowed) and ``b`` a nonnegative one, with
all position factors to the left of all derivatives. Coefficients live in
:class:`~racahweyl.params.ParamPoly`. The single rewrite rule is

    d^a x^k = sum_j binom(a, j) * k(k-1)...(k-j+1) * x^(k-j) d^(a-j)

which holds for every integer ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

from .params import ONE_MON, ParamPoly, pmon_mul, render_rational, pmon_render


class DimensionError(ValueError):
    pass


class WeylMonomial(NamedTuple):
    xexp: tuple
    dexp: tuple

    @property
    def n(self) -> int:
        return len(self.xexp)


def falling_factorial(k, j: int):
    out = 1
    for t in range(j):
        out *= k - t
    return out


@lru_cache(maxsize=None)
def _reorder(a: int, k: int) -> tuple:
    """``d^a x^k`` as ``((j, coeff), ...)`` meaning ``coeff * x^(k-j) d^(a-j)``."""
    out = []
    for j in range(a + 1):
        c = comb(a, j) * falling_factorial(k, j)
        if c:
            out.append((j, c))
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _mono_mul(xa: tuple, da: tuple, xb: tuple, db: tuple) -> tuple:
    """Normal-ordered expansion of ``x^xa d^da * x^xb d^db`` with integer coefficients."""
    axes = []
    for i in range(len(xa)):
        a, k = da[i], xb[i]
        if a == 0 or k == 0:
            axes.append(((xa[i] + k, a + db[i], 1),))
        else:
            axes.append(tuple((xa[i] + k - j, a - j + db[i], c) for j, c in _reorder(a, k)))
    if all(len(ax) == 1 for ax in axes):
        return (((tuple(ax[0][0] for ax in axes), tuple(ax[0][1] for ax in axes)),
                 _prod(ax[0][2] for ax in axes)),)
    out = []
    for choice in cartesian(*axes):
        c = 1
        for _, _, ci in choice:
            c *= ci
        out.append(((tuple(t[0] for t in choice), tuple(t[1] for t in choice)), c))
    return tuple(out)


def _prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def _accumulate(out: dict, key, c) -> None:
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class WeylElement:
    """Immutable canonical element of the ``n``-variable Laurent-Weyl algebra.

    Internally a flat map ``(xexp, dexp, parameter monomial) -> Fraction`` with no
    zero entries; two elements are equal iff these maps are identical.
    """

    __slots__ = ("n", "_t", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None):
        if n < 1:
            raise DimensionError("dimension must be at least 1")
        self.n = n
        self._hash = None
        flat: dict = {}
        for mono, coeff in (terms or {}).items():
            xexp, dexp = (tuple(int(v) for v in part) for part in mono)
            if len(xexp) != n or len(dexp) != n:
                raise DimensionError(f"monomial {mono!r} does not have dimension {n}")
            if any(v < 0 for v in dexp):
                raise ValueError("derivative exponents must be nonnegative")
            for pmon, c in ParamPoly.coerce(coeff).items():
                _accumulate(flat, (xexp, dexp, pmon), c)
        self._t = flat

    @classmethod
    def _raw(cls, n: int, flat: dict) -> "WeylElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj._t = flat
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> "WeylElement":
        zero = (0,) * n
        return cls(n, {(zero, zero): c})

    @classmethod
    def one(cls, n: int) -> "WeylElement":
        return cls.constant(n, 1)

    @classmethod
    def monomial(cls, n: int, xexp: Sequence[int], dexp: Sequence[int], coeff=1) -> "WeylElement":
        return cls(n, {(tuple(xexp), tuple(dexp)): coeff})

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> "WeylElement":
        """``x_i^power`` (1-based index; negative powers allowed)."""
        _check_index(n, i)
        e = [0] * n
        e[i - 1] = power
        return cls.monomial(n, e, [0] * n)

    @classmethod
    def d(cls, n: int, i: int, power: int = 1) -> "WeylElement":
        _check_index(n, i)
        if power < 0:
            raise ValueError("derivatives have no inverse")
        e = [0] * n
        e[i - 1] = power
        return cls.monomial(n, [0] * n, e)

    @classmethod
    def param(cls, n: int, name: str) -> "WeylElement":
        zero = (0,) * n
        return cls(n, {(zero, zero): ParamPoly.symbol(name)})

    # -- views ----------------------------------------------------------
    @property
    def terms(self) -> dict:
        """Map ``WeylMonomial -> ParamPoly`` (canonical, no zero coefficients)."""
        grouped: dict = {}
        for (xexp, dexp, pmon), c in self._t.items():
            grouped.setdefault(WeylMonomial(xexp, dexp), {})[pmon] = c
        return {m: ParamPoly._raw(g) for m, g in grouped.items()}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].xexp, kv[0].dexp))

    def raw_items(self):
        """Flat ``((xexp, dexp, pmon), Fraction)`` pairs; read-only."""
        return self._t.items()

    def __len__(self) -> int:
        return len({(x, d) for x, d, _ in self._t})

    def symbols(self) -> set[str]:
        return {name for _, _, pmon in self._t for name, _ in pmon}

    def max_dorder(self) -> tuple:
        q = [0] * self.n
        for _, dexp, _ in self._t:
            for i, b in enumerate(dexp):
                if b > q[i]:
                    q[i] = b
        return tuple(q)

    def is_zero(self) -> bool:
        return not self._t

    def is_scalar(self) -> bool:
        return all(not any(x) and not any(d) for x, d, _ in self._t)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return WeylElement.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._t)
        for key, c in other._t.items():
            _accumulate(out, key, c)
        return WeylElement._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.n, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return scale(other, self)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (xa, da, pa), ca in self._t.items():
            for (xb, db, pb), cb in other._t.items():
                c = ca * cb
                p = pmon_mul(pa, pb)
                for (xm, dm), k in _mono_mul(xa, da, xb, db):
                    _accumulate(out, (xm, dm, p), c * k)
        return WeylElement._raw(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return scale(other, self)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = WeylElement.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self) -> "WeylElement":
        """Inverse of a pure Laurent monomial ``c * x^a`` with rational ``c``."""
        if len(self._t) != 1:
            raise ValueError("only single-term elements can be inverted")
        ((xexp, dexp, pmon), c), = self._t.items()
        if any(dexp) or pmon != ONE_MON:
            raise ValueError(f"{self} is not an invertible Laurent monomial")
        return WeylElement._raw(self.n, {(tuple(-v for v in xexp), dexp, ONE_MON): 1 / c})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = WeylElement.constant(self.n, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._t.items())))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    # -- output ---------------------------------------------------------
    def render(self) -> str:
        return render_terms(self.sorted_terms())

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"WeylElement(n={self.n}, {self.render()!r})"

    def to_records(self, params: Iterable[str] | None = None) -> list[dict]:
        """``[{xexp, dexp, coeff: [{params, num, den}]}]`` in canonical monomial order."""
        params = sorted(self.symbols()) if params is None else list(params)
        return [
            {"xexp": list(m.xexp), "dexp": list(m.dexp), "coeff": c.to_records(params)}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_records(cls, n: int, records: Iterable[Mapping], params: Iterable[str] = ()) -> "WeylElement":
        params = list(params)
        terms = {}
        for r in records:
            key = (tuple(r["xexp"]), tuple(r["dexp"]))
            terms[key] = terms.get(key, ParamPoly()) + ParamPoly.from_records(r["coeff"], params)
        return cls(n, terms)


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"variable index {i} out of range 1..{n}")


def render_monomial(m: WeylMonomial) -> str:
    parts = []
    for prefix, exps in (("x", m.xexp), ("d", m.dexp)):
        for i, e in enumerate(exps, start=1):
            if e == 1:
                parts.append(f"{prefix}{i}")
            elif e:
                parts.append(f"{prefix}{i}^{e}")
    return "*".join(parts)


def render_terms(items: Sequence) -> str:
    if not items:
        return "0"
    pieces = []
    for mono, coeff in items:
        mono_s = render_monomial(mono)
        if len(coeff.terms) == 1:
            ((pmon, c),) = coeff.items()
            sign = "-" if c < 0 else "+"
            factors = []
            if abs(c) != 1 or (not pmon and not mono_s):
                factors.append(render_rational(abs(c)))
            if pmon:
                factors.append(pmon_render(pmon))
            if mono_s:
                factors.append(mono_s)
            body = "*".join(factors)
        else:
            sign = "+"
            body = f"({coeff.render()})" + (f"*{mono_s}" if mono_s else "")
        pieces.append((sign, body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# -- functional surface -----------------------------------------------------

def _same_dim(a: WeylElement, b: WeylElement) -> None:
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


def monomial_product(m1: WeylMonomial, m2: WeylMonomial) -> WeylElement:
    if len(m1.xexp) != len(m2.xexp):
        raise DimensionError("monomials of different dimension")
    n = len(m1.xexp)
    return WeylElement(n, dict(_collect(_mono_mul(tuple(m1.xexp), tuple(m1.dexp),
                                                  tuple(m2.xexp), tuple(m2.dexp)))))


def _collect(pairs):
    out: dict = {}
    for key, c in pairs:
        out[key] = out.get(key, 0) + c
    return out.items()


def add(a: WeylElement, b: WeylElement) -> WeylElement:
    _same_dim(a, b)
    return a + b


def mul(a: WeylElement, b: WeylElement) -> WeylElement:
    _same_dim(a, b)
    return a * b


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    _same_dim(a, b)
    return a * b - b * a


def anticommutator(a: WeylElement, b: WeylElement) -> WeylElement:
    _same_dim(a, b)
    return a * b + b * a


def scale(c, a: WeylElement) -> WeylElement:
    c = ParamPoly.coerce(c)
    out: dict = {}
    for (xexp, dexp, pa), ca in a._t.items():
        for pc, cc in c.items():
            _accumulate(out, (xexp, dexp, pmon_mul(pa, pc)), ca * cc)
    return WeylElement._raw(a.n, out)


def is_zero(e: WeylElement) -> bool:
    return e.is_zero()


def equals(a: WeylElement, b: WeylElement) -> bool:
    _same_dim(a, b)
    return (a - b).is_zero()


# -- generator substitution -------------------------------------------------

@dataclass(frozen=True)
class GeneratorImage:
    """Images of ``x_i`` and ``d_i`` defining an algebra endomorphism.

    The Heisenberg relations among the images are verified on construction.
    """

    n: int
    x_images: tuple
    d_images: tuple

    def __post_init__(self):
        object.__setattr__(self, "x_images", tuple(self.x_images))
        object.__setattr__(self, "d_images", tuple(self.d_images))
        if len(self.x_images) != self.n or len(self.d_images) != self.n:
            raise DimensionError("need one x-image and one d-image per variable")
        for img in self.x_images + self.d_images:
            if img.n != self.n:
                raise DimensionError("generator image of wrong dimension")
        one = WeylElement.one(self.n)
        for i in range(self.n):
            for j in range(self.n):
                expected = one if i == j else WeylElement.zero(self.n)
                if commutator(self.d_images[i], self.x_images[j]) != expected:
                    raise ValueError(f"[phi(d{i + 1}), phi(x{j + 1})] != delta")
                if j > i:
                    if not commutator(self.x_images[i], self.x_images[j]).is_zero():
                        raise ValueError(f"phi(x{i + 1}) and phi(x{j + 1}) do not commute")
                    if not commutator(self.d_images[i], self.d_images[j]).is_zero():
                        raise ValueError(f"phi(d{i + 1}) and phi(d{j + 1}) do not commute")

    @classmethod
    def identity(cls, n: int) -> "GeneratorImage":
        return cls(n, [WeylElement.x(n, i) for i in range(1, n + 1)],
                   [WeylElement.d(n, i) for i in range(1, n + 1)])


def substitute_generators(e: WeylElement, phi: GeneratorImage) -> WeylElement:
    """Image of ``e`` under the endomorphism extending ``phi``."""
    if e.n != phi.n:
        raise DimensionError("element and substitution differ in dimension")
    xcache: dict = {}
    dcache: dict = {}

    def xpow(i, k):
        if (i, k) not in xcache:
            img = phi.x_images[i]
            if k < 0:
                try:
                    img = img.inverse()
                except ValueError:
                    raise ValueError(f"image of x{i + 1} is not an invertible Laurent monomial") from None
            xcache[i, k] = img ** abs(k)
        return xcache[i, k]

    def dpow(i, k):
        if (i, k) not in dcache:
            dcache[i, k] = phi.d_images[i] ** k
        return dcache[i, k]

    out = WeylElement.zero(e.n)
    for mono, coeff in e.terms.items():
        word = WeylElement.one(e.n)
        for i, k in enumerate(mono.xexp):
            if k:
                word = word * xpow(i, k)
        for i, k in enumerate(mono.dexp):
            if k:
                word = word * dpow(i, k)
        out = out + scale(coeff, word)
    return out


def gauge_image(n: int, exponents: Sequence) -> GeneratorImage:
    """Substitution ``x_i -> x_i``, ``d_i -> d_i - c_i / x_i`` (conjugation by prod x_i^c_i)."""
    if len(exponents) != n:
        raise DimensionError("need one gauge exponent per variable")
    xs = [WeylElement.x(n, i) for i in range(1, n + 1)]
    ds = [WeylElement.d(n, i) - scale(Fraction(c), WeylElement.x(n, i, -1)) if c else WeylElement.d(n, i)
          for i, c in zip(range(1, n + 1), exponents)]
    return GeneratorImage(n, xs, ds)


def gauge_conjugate(e: WeylElement, exponents: Sequence) -> WeylElement:
    """``x^c * e * x^(-c)`` for rational per-variable exponents ``c``."""
    if not any(exponents):
        if len(exponents) != e.n:
            raise DimensionError("need one gauge exponent per variable")
        return e
    return substitute_generators(e, gauge_image(e.n, exponents))
