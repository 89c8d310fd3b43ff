"""Exact verification of Racah-algebra identities in Laurent-Weyl algebras."""

from .params import ParamPoly
from .weyl import (
    DimensionError,
    GeneratorImage,
    WeylElement,
    WeylMonomial,
    add,
    anticommutator,
    commutator,
    equals,
    gauge_conjugate,
    is_zero,
    monomial_product,
    mul,
    scale,
    substitute_generators,
)

__version__ = "0.1.0"
