#!/usr/bin/env python3
"""Time the heaviest symbolic products and their oracle counterparts."""

import argparse
import time

from racahweyl import realizations as R
from racahweyl.expr import comm
from racahweyl.oracle import oracle_compare


def timed(label, fn):
    t0 = time.perf_counter()
    value = fn()
    print(f"{label:<36} {time.perf_counter() - t0:8.3f} s")
    return value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--oracle", action="store_true", help="also time the oracle comparison")
    args = ap.parse_args()
    k3 = timed("K3 = [K1, K2]", lambda: R.commutant_K3().element)
    print(f"{'':<36} {len(k3)} monomials")
    lhs = 128 * comm(R.commutant_K(2), R.commutant_K3())
    big = timed("128 [K2, K3]", lambda: lhs.element)
    print(f"{'':<36} {len(big)} monomials")
    rhs = timed("literal expansion", lambda: R.k2k3_literal().element)
    print(f"{'':<36} residual terms: {len(big - rhs)}")
    if args.oracle:
        out = timed("oracle comparison", lambda: oracle_compare(lhs, R.k2k3_literal()))
        print(f"{'':<36} equal={out.equal} on {out.points} points")


if __name__ == "__main__":
    main()
