import pytest

from laurentia.corpus import EXPECTED, UnknownExample, example_names, example_text, load_example
from laurentia.laurent import LaurentPoly

from oracles import count_partitions, count_paths


@pytest.mark.parametrize("name", example_names())
def test_example_reproduces(name):
    e = load_example(name)
    assert e.expected
    assert e.mismatches() == []


def test_every_expected_value_has_a_note():
    for name, (desc, exp) in EXPECTED.items():
        assert desc
        assert all(v.note for v in exp.values()), name


def test_unknown_example():
    with pytest.raises(UnknownExample):
        load_example("no_such_algebra")
    with pytest.raises(LookupError):
        example_text("no_such_algebra")


def test_cartan_matrices_against_path_count():
    cases = {
        "a2_path": (["1", "2"], [("a", "1", "2", 1)], []),
        "skew_c2": (["-", "+"], [("alpha", "+", "-", 2), ("beta", "-", "+", 2)], []),
        "cycle_zero": (["1", "2"], [("a", "1", "2", 1), ("b", "2", "1", 1)], [("a", "b")]),
        "dual_numbers": (["o"], [("x", "o", "o", 1)], [("x", "x")]),
        "poly_line": (["o"], [("x", "o", "o", 2)], []),
    }
    for name, (V, arrows, zero) in cases.items():
        A = load_example(name).algebra()
        want = count_paths(V, arrows, zero, max_degree=int(min(A.horizon, 8)))
        got = A.peirce_dims()
        for s in V:
            for p in V:
                assert got[(s, p)].agrees_with(LaurentPoly(want.get((s, p), {}))), (name, s, p)


def test_nilhecke_B_against_partition_count():
    e = load_example("nilhecke2")
    B = e.stratification().endo_algebra("1").dims()
    assert B.valid_to == 12
    assert dict(B.coeffs) == count_partitions([2, 4], 12)
