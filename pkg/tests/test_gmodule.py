import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from laurentia.exactlin import QQ
from laurentia.galgebra import QuiverPresentation, from_quiver, involution_from_generators, path_element
from laurentia.gmodule import (FreeModule, HorizonTooLow, QuotientModule, dual, equivariant_maps, gen_top,
                               head_multiplicities, hom_all, hom_space, map_image, map_kernel, projective,
                               projective_cover, radical_submodule, simple, socle, submodule_generated,
                               truncate_sigma)
from laurentia.laurent import LaurentPoly

from strategies import random_quivers


def quiver(vertices, arrows, relations=(), window=8):
    return from_quiver(QuiverPresentation.build(vertices, arrows, relations), window, QQ)


A2 = (["1", "2"], [("a", "1", "2", 1)])
DUAL = (["o"], [("x", "o", "o", 1)], [[(1, ("x", "x"))]])
SKEW = (["-", "+"], [("alpha", "+", "-", 2), ("beta", "-", "+", 2)])


def test_projective_is_a_peirce_column():
    A = quiver(*SKEW)
    P = projective(A, "+")
    pd = A.peirce_dims()
    assert P.dim_q().agrees_with(pd[("+", "+")] + pd[("-", "+")])


def test_simple_module():
    A = quiver(*SKEW)
    L = simple(A, "+", 3)
    assert L.finite
    assert L.dim_q() == LaurentPoly({3: 1})


def test_head_of_projective():
    A = quiver(*SKEW)
    gens, _ = gen_top(projective(A, "-", 2))
    assert [(g.degree, g.label) for g in gens] == [(2, "-")]
    hm = head_multiplicities(projective(A, "+"))
    assert hm["+"].coeffs == {0: 1} and hm["-"].coeffs == {}


def test_submodule_is_closed():
    A = quiver(*SKEW)
    P = projective(A, "+")
    n, v = P.element_vector(0, path_element(A, "alpha"))
    S = submodule_generated(P, [(n, v)])
    assert S.verify()
    # alpha H e_+ = paths starting with alpha: alpha, alpha*beta, ...
    assert S.dim_q().coeffs == {2: 1, 4: 1, 6: 1, 8: 1}


def test_quotient_dimensions():
    A = quiver(*SKEW)
    P = projective(A, "+")
    n, v = P.element_vector(0, path_element(A, "alpha"))
    Q = QuotientModule(P, submodule_generated(P, [(n, v)]))
    assert Q.dim_q() == LaurentPoly({0: 1})
    assert Q.finite


def test_kernel_image_rank_nullity():
    A = quiver(*A2, window=4)
    P, f, gens, _ = projective_cover(simple(A, "1"))
    K, I = map_kernel(f), map_image(f)
    for n in P.degrees():
        assert K.dim(n) + I.dim(n + f.shift) == P.dim(n)
    assert K.dim_q() == LaurentPoly({1: 1})


@pytest.mark.parametrize("quiver_data", [A2, DUAL, SKEW])
def test_hom_matches_brute_force(quiver_data):
    A = quiver(*quiver_data, window=6)
    mods = []
    for p in A.labels:
        mods.append(simple(A, p))
        L = simple(A, p, 1)
        mods.append(L)
        K, D = truncate_sigma(projective(A, p), [p])
        if D.finite:
            mods.append(D)
    for V in mods:
        for W in mods:
            H = hom_all(V, W)
            for deg in range(-4, 5):
                if H.dims.get(deg) is None:
                    continue
                assert H.dims[deg] == equivariant_maps(V, W, deg), (deg,)


def test_hom_space_maps_are_module_maps():
    A = quiver(*DUAL, window=4)
    P = projective(A, "o")
    L = simple(A, "o")
    maps = hom_space(P, L, 0)
    assert len(maps) == 1
    f = maps[0]
    assert not f.is_zero()


def test_hom_into_infinite_target_is_truncated():
    A = quiver(*SKEW)
    H = hom_all(projective(A, "+"), projective(A, "+"))
    assert H.dims.valid_to is not None
    assert H.dims.agrees_with(LaurentPoly({0: 1, 4: 1, 8: 1}))


def test_dual_and_socle():
    A = quiver(*SKEW)
    tau = involution_from_generators(A, {"alpha": "beta", "beta": "alpha"})
    P = projective(A, "+")
    n, v = P.element_vector(0, path_element(A, "alpha*beta"))
    Dbar = QuotientModule(P, submodule_generated(P, [(n, v)]))
    assert Dbar.dim_q() == LaurentPoly({0: 1, 2: 1})
    N = dual(Dbar, tau)
    assert N.dim_q() == Dbar.dim_q().bar()
    soc = socle(N)
    assert soc.dim_q() == LaurentPoly({0: 1})
    assert soc.idem_image("+", 0).dim == 1


def test_socle_needs_finite_module():
    A = quiver(*SKEW)
    with pytest.raises(HorizonTooLow):
        socle(projective(A, "+"))


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(random_quivers(max_arrows=3))
def test_radical_and_head_add_up(data):
    pres, _ = data
    A = from_quiver(pres, 4, QQ)
    for p in A.labels:
        P = projective(A, p)
        R = radical_submodule(P)
        gens, hz = gen_top(P)
        assert [(g.degree, g.label) for g in gens] == [(0, p)]
        top = min(R.complete_to, P.last)
        for n in range(P.lo, int(top) + 1):
            assert R.dim(n) + (1 if n == 0 else 0) == P.dim(n)
