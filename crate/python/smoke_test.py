#!/usr/bin/env python3
"""Smoke test for the aq14_py extension module.

Builds nothing itself: expects `cargo build -p aq14-py` (or --release) to
have produced the cdylib, which is copied next to this script under the
importable name aq14_py.so.
"""

import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
REPO = HERE.parent


def locate_extension():
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libaq14_py.so", "libaq14_py.dylib", "aq14_py.dll")
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("extension not built; run `cargo build -p aq14-py` first")


def main():
    src = locate_extension()
    dst = HERE / "aq14_py.so"
    if not dst.exists() or src.stat().st_mtime > dst.stat().st_mtime:
        shutil.copy2(src, dst)
    sys.path.insert(0, str(HERE))
    import aq14_py

    alg = aq14_py.Algebra(frame=1)

    # generators and a couple of displayed expansions
    x1 = alg.cluster_var(1)
    x2 = alg.cluster_var(2)
    assert x1.terms() == [(1, 0, [(0, "1")])]
    assert x2.terms() == [(0, 1, [(0, "1")])]
    x3 = alg.cluster_var(3)
    assert x3.num_terms() == 2
    assert str(x3) == "(-1,0) + (-1,4)"

    # exchange relation X_0 X_2 = q^{1/2} X_1 + 1
    lhs = alg.cluster_var(0) * x2
    rhs = aq14_py.monomial(1, 0, half_exponent=1) + aq14_py.monomial(0, 0)
    assert lhs == rhs

    # X_1 X_2 = q^{1/2} X^(1,1) in the normalized monomials,
    # and the generators q-commute
    assert x1 * x2 == aq14_py.monomial(1, 1, half_exponent=1)
    assert x1 * x2 == aq14_py.monomial(0, 0, half_exponent=2) * (x2 * x1)

    # X_delta is bar invariant and positive, and F_2 = delta^2 - 2
    delta = alg.x_delta()
    assert delta.is_bar_invariant() and delta.is_positive()
    two = aq14_py.monomial(0, 0) + aq14_py.monomial(0, 0)
    assert alg.chebyshev("F", 2) == delta ** 2 - two

    # basis expansion of a worked product: X_2 X_6 = q X_4^2 + q^{-1/2} F_1
    expansion = alg.expand_in_basis(alg.cluster_var(2) * alg.cluster_var(6), "B")
    assert expansion == [("X[4]^2", "q^(1)"), ("F[1]", "q^(-1/2)")], expansion

    # triangular basis: C_(-1,-2) realizes to X_delta
    c, e_terms = alg.triangular_c(-1, -2)
    assert c == delta
    assert e_terms[0] == (-1, -2, "1")

    # standard monomial expansion round-trip at a mixed-sign index
    e = alg.standard_monomial(-2, 3)
    assert alg.expand_in_standard(e) == [(-2, 3, "1")]

    # closed-form product rules on a small window
    total, failures = aq14_py.verify_theorem2(-2, 3, 1, 3, [1, 2])
    assert total > 0 and not failures, failures

    print(f"smoke test passed ({total} product-rule cases verified)")


if __name__ == "__main__":
    main()
