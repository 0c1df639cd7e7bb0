import pytest

from laurentia.corpus import load_example
from laurentia.exactlin import Field, QQ
from laurentia.galgebra import (Arrow, QuiverPresentation, TableAlgebra, from_quiver, from_table,
                               involution_from_generators)
from laurentia.laurent import LaurentPoly
from laurentia.strat import (CharacteristicTwo, NotBalanced, OrderError, OrderSpec, Stratification,
                             ext_against_finite, minimal_resolution)


def strat(vertices, arrows, relations, covers, window=8, char=0):
    A = from_quiver(QuiverPresentation.build(vertices, arrows, relations), window, Field(char))
    return A, Stratification(A, OrderSpec(vertices, covers))


def test_order_rejects_cycles_and_unknown_labels():
    with pytest.raises(OrderError):
        OrderSpec(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(OrderError):
        OrderSpec(["a"], [("a", "z")])
    with pytest.raises(OrderError):
        OrderSpec(["a"], [("a", "a")])


def test_order_queries():
    o = OrderSpec(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("a", "d")])
    assert o.lt("a", "c") and not o.lt("c", "a") and not o.lt("d", "c")
    assert o.length(o.labels) == 2
    assert o.length(o.above("b")) == 1
    lin = o.linear_extension()
    assert all(lin.index(x) < lin.index(y) for x, y in o.covers)


def test_order_must_match_algebra_labels():
    A, _ = strat(["1", "2"], [("a", "1", "2", 1)], [], [("1", "2")])
    with pytest.raises(OrderError):
        Stratification(A, OrderSpec(["1", "3"]))


def test_incomparable_labels():
    # no arrows between 1 and 2: every order works, the discrete one too
    _, S = strat(["1", "2"], [("x", "1", "1", 2)], [], [])
    r = S.check_axioms("polynomial")
    assert r.passed and not r.weak


def test_weak_verdict_and_chain():
    # loop a0 at 3 killed by a1: Delta(3) is not free over B_3, though finitely generated
    arrows = [Arrow("a0", "3", "3", 2), Arrow("a1", "3", "1", 2)]
    _, S = strat(["1", "2", "3"], arrows, [[(1, ("a0", "a1"))]], [("1", "2"), ("2", "3")])
    r = S.check_axioms("any")
    assert r.passed and r.weak
    assert r.verdict.startswith("weakly Laurentian highest weight")
    assert any(w.startswith("HWC fails") for w in r.witnesses)
    assert not S.heredity_chain("any").passed


def test_cycle_zero_fails_sc1():
    S = load_example("cycle_zero").stratification()
    r = S.check_axioms("any")
    assert not r.passed
    assert r.witnesses[0].startswith("SC1 fails at π = 1")
    ch = S.heredity_chain("any")
    assert not ch.passed


def test_decomposition_is_triangular_and_unitriangular_up_to_B():
    S = load_example("skew_c2").stratification()
    r = S.check_axioms("polynomial")
    labels = r.labels
    for i, p in enumerate(labels):
        for j, s in enumerate(labels):
            x = r.decomposition[i][j]
            if p == s:
                assert x.agrees_with(r.per_pi[p]["dim_q_B"])
            elif not S.order.lt(s, p):
                assert x.is_zero()


def test_bgg_with_and_without_involution():
    e = load_example("skew_c2")
    A = e.algebra()
    S = Stratification(A, e.problem.order(A))
    assert S.bgg_check(None)["passed"]
    res = S.bgg_check(A.involution)
    assert res["passed"] and res["duality"].passed


def test_bgg_without_involution_on_path_algebra():
    S = load_example("a2_path").stratification()
    res = S.bgg_check(None)
    assert res["passed"]
    assert res["table"][("1", "2")][0] == LaurentPoly({1: 1})


def test_involution_not_balanced():
    # F x F with the two factors in different classes; swapping them is an antiinvolution
    t = TableAlgebra([("e1", 0, "e1", "e1"), ("e2", 0, "e2", "e2")],
                     {("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1}},
                     [("e1", "x"), ("e2", "y")], [], 0, 0, True)
    A = from_table(t, QQ)
    tau = involution_from_generators(A, {"e1": "e2", "e2": "e1"})
    tau.verify()
    with pytest.raises(NotBalanced):
        Stratification(A, OrderSpec(A.labels)).check_balanced(tau)


def test_cellularize_needs_odd_characteristic():
    e = load_example("skew_c2")
    A = e.problem.build(characteristic=2)
    S = Stratification(A, e.problem.order(A), A.involution)
    ch = S.heredity_chain("polynomial")
    with pytest.raises(CharacteristicTwo):
        S.cellularize(ch, A.involution)


def test_resolution_of_standard_modules():
    S = load_example("a2_path").stratification()
    res = S.resolution_checks()
    assert res["passed"]
    assert res["gldim"]["value"] == 1 and res["gldim"]["bound"] == 2
    D, _ = S.standard_module("1")
    R = minimal_resolution(D, 3)
    assert R.length == 1


def test_koszul_complex_for_polynomial_B():
    S = load_example("poly_line").stratification()
    res = S.resolution_checks()
    assert res["koszul"]["o"]["passed"] and res["koszul"]["o"]["length"] == 1


def test_ext_of_simples_over_dual_numbers():
    S = load_example("dual_numbers").stratification()
    from laurentia.gmodule import simple
    L = simple(S.A, "o")
    for i in range(4):
        assert ext_against_finite(L, L, i) == LaurentPoly({-i: 1})


def test_prime_field_gives_same_verdict():
    e = load_example("skew_c2")
    for char in (3, 5):
        A = e.problem.build(characteristic=char)
        r = Stratification(A, e.problem.order(A)).check_axioms("polynomial")
        assert r.verdict == "polynomial highest weight, verified to degree 8"
