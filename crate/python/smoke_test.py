"""Smoke test for the kclosure extension module.

Build and install first:
    pip install maturin && cd crates/python && maturin develop --release
"""

import json
import math
import sys

import kclosure


def main() -> int:
    agl = kclosure.load_corpus("agl(3,2)")
    assert agl.degree == 8 and agl.order() == 1344
    assert agl.closure(3).order() == math.factorial(8)
    assert agl.closure(4) == agl
    assert agl.is_k_equivalent(kclosure.Group.symmetric(8), 3)
    witness = agl.equivalence_witness(kclosure.Group.symmetric(8), 4)
    assert witness is not None and witness[2] == 1

    m24 = kclosure.load_corpus("m24")
    assert m24.transitivity_degree() == 5
    assert m24.order() == 244823040

    d5 = kclosure.Group(5, [[1, 2, 3, 4, 0], [0, 4, 3, 2, 1]])
    assert d5.order() == 10 and d5.is_solvable()
    assert kclosure.Group.parse(d5.to_text()) == d5
    assert kclosure.Group.parse(d5.to_json()) == d5

    try:
        m24.closure(3, engine="backtracking", budget=10)
    except kclosure.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget was not enforced")

    w = kclosure.wreath_product(kclosure.Group.symmetric(2), kclosure.Group.symmetric(3))
    assert w.order() == 48 and len(w.block_systems()) == 1

    audit = json.loads(kclosure.audit_c6())
    assert audit["solutions"] == [[2, 12], [2, 13], [2, 14]]
    report = json.loads(kclosure.verify("audit"))
    assert report["checks"][0]["outcome"] == "pass"

    print("kclosure smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
