"""Ext between simple modules against a brute-force bar complex computation."""
import pytest

from laurentia.exactlin import QQ
from laurentia.galgebra import QuiverPresentation, from_quiver
from laurentia.gmodule import simple
from laurentia.strat import ext_against_finite

from oracles import bar_ext

# (vertices, arrows (name, src, dst, degree), monomial relations as arrow tuples)
FINITE = {
    "a2_path": (["1", "2"], [("a", "1", "2", 1)], []),
    "dual_numbers": (["o"], [("x", "o", "o", 1)], [("x", "x")]),
    "cycle_zero": (["1", "2"], [("a", "1", "2", 1), ("b", "2", "1", 1)], [("a", "b")]),
    "a3_zero": (["1", "2", "3"], [("a", "1", "2", 1), ("b", "2", "3", 2)], [("a", "b")]),
}


@pytest.mark.parametrize("name", sorted(FINITE))
@pytest.mark.parametrize("i", [0, 1, 2, 3])
def test_ext_matches_bar_complex(name, i):
    vertices, arrows, zero = FINITE[name]
    rels = [[(1, z)] for z in zero]
    A = from_quiver(QuiverPresentation.build(vertices, arrows, rels), 12, QQ)
    assert A.finite
    for p in vertices:
        for s in vertices:
            got = ext_against_finite(simple(A, p), simple(A, s), i)
            want = bar_ext(vertices, arrows, zero, i, target=s, source=p)
            assert dict(got.coeffs) == want, (p, s, got, want)
