import random

import pytest

from catalogue import F2, circle, quiver_catalogue, triangle
from hhkit.algebra import (
    Module, corner_modules, ideal_generated_by, idempotent_ideal, make_incidence, make_monogenic,
    make_path_algebra_quotient, quotient_algebra, regular_module,
)
from hhkit.cochain import (
    Cochain, HochschildComplex, OneSidedExtComplex, cup, gerstenhaber_bracket, hochschild_cohomology,
    hochschild_complex, induced_coefficient_map, is_coboundary, onesided_ext, pullback_map, tor_dims,
    tor_via_relative_bar,
)
from hhkit.errors import DimensionCap, NotACocycle
from hhkit.exactmath import QQ, SparseMatrix, parse_poly, rank
from hhkit.monogenic import derivation_cochain, element_cochain, presentation


def mono(text, field=QQ):
    return make_monogenic(parse_poly(text, field))


def tri():
    return make_path_algebra_quotient(triangle())


def random_cocycle(cx, p, rng):
    out = {}
    for rep in cx.representatives(p):
        c = rng.randint(-2, 2)
        for k, x in rep.items():
            out[k] = cx.field.norm(out.get(k, 0) + c * x)
    return Cochain(cx, p, {k: x for k, x in out.items() if x != 0})


# dimensions

def test_field_has_trivial_cohomology():
    assert hochschild_cohomology(mono("X"), p_max=3).dims == [1, 0, 0, 0]


def test_triangle_dims():
    assert hochschild_cohomology(tri(), p_max=4).dims == [2, 1, 0, 0, 0]


def test_dual_numbers_in_characteristic_two():
    assert hochschild_cohomology(mono("X^2", F2), p_max=3).dims == [2, 2, 2, 2]


@pytest.mark.parametrize("name", ["A3 zero relation", "Kronecker", "triangle", "2-cycle rad^2", "arrow into loop"])
def test_vertex_relative_complex_matches_bar_complex(name):
    A = make_path_algebra_quotient(quiver_catalogue()[name])
    rel = hochschild_complex(A).dims(3)
    full = hochschild_complex(A, use_vertices=False).dims(3)
    assert rel == full


def test_incidence_of_circle():
    assert HochschildComplex(make_incidence(circle())).dims(3) == [1, 1, 0, 0]


def test_dimension_cap():
    cx = HochschildComplex(mono("X^4"), cap=50)
    with pytest.raises(DimensionCap):
        cx.dims(6)


# differentials

@pytest.mark.parametrize("name", sorted(quiver_catalogue()))
def test_d_squared_vanishes(name):
    A = make_path_algebra_quotient(quiver_catalogue()[name])
    for cx in (HochschildComplex(A), hochschild_complex(A, use_vertices=False)):
        for p in range(3):
            assert cx.d(p + 1).matmul(cx.d(p)).is_zero()


def test_d_squared_vanishes_with_coefficients():
    A = tri()
    I = idempotent_ideal(A, 0)
    B, phi, _ = quotient_algebra(A, I)
    for M in (I.as_bimodule(), B.regular_bimodule().restrict(phi, A)):
        cx = HochschildComplex(A, M)
        for p in range(3):
            assert cx.d(p + 1).matmul(cx.d(p)).is_zero()


def test_d_squared_vanishes_for_ext_and_tor():
    A = tri()
    Ae, eA, DeA = corner_modules(A, 0)
    cx = OneSidedExtComplex(A, DeA, Ae)
    for p in range(3):
        assert cx.d(p + 1).matmul(cx.d(p)).is_zero()
    from hhkit.cochain import _TorDual

    R = regular_module(A, "right")
    L = regular_module(A, "left")
    tx = _TorDual(A, R, L)
    for p in range(3):
        assert tx.d(p + 1).matmul(tx.d(p)).is_zero()


# coboundaries

def test_coboundary_examples():
    A = mono("X^2")
    cx = HochschildComplex(A)
    zero = Cochain(cx, 1, {})
    ok, w = is_coboundary(zero)
    assert ok and w.is_zero()
    t = derivation_cochain(cx, presentation(parse_poly("X^2")))
    assert t.is_cocycle() and not is_coboundary(t)[0]


def test_inner_derivation_is_a_coboundary():
    A = make_path_algebra_quotient(quiver_catalogue()["A2"])
    cx = HochschildComplex(A)
    # the 0-cochain e1 gives the inner derivation a -> a e1 - e1 a
    b = Cochain.from_function(cx, 0, lambda t: {0: 1} if t == (0,) else {})
    db = b.differential()
    assert not db.is_zero() and is_coboundary(db)[0]


def test_coboundary_witness_really_cobounds():
    cx = HochschildComplex(mono("X^3"))
    rng = random.Random(3)
    b = Cochain(cx, 1, {j: rng.randint(-2, 2) for j in range(cx.space_dim(1))})
    b = Cochain(cx, 1, {k: v for k, v in b.vec.items() if v})
    c = b.differential()
    ok, w = is_coboundary(c)
    assert ok and w.differential().vec == c.vec


def test_non_cocycle_is_rejected():
    cx = HochschildComplex(mono("X^2"))
    # t(x) = 1 fails the derivation rule: d t (x, x) = 2x
    c = Cochain.from_function(cx, 1, lambda t: {0: 1})
    assert not c.is_cocycle()
    with pytest.raises(NotACocycle):
        is_coboundary(c)


# products

def test_cup_of_degree_zero_cochains_is_the_product():
    A = mono("X^3")
    cx = HochschildComplex(A)
    a = element_cochain(cx, parse_poly("X"), parse_poly("X^3"))
    b = element_cochain(cx, parse_poly("X + 1"), parse_poly("X^3"))
    assert cup(a, b).zero_0() == A.sparse_product({1: 1}, {0: 1, 1: 1})


def test_bracket_with_the_unit_vanishes():
    cx = HochschildComplex(mono("X^3"))
    one = element_cochain(cx, parse_poly("1"), parse_poly("X^3"))
    rng = random.Random(5)
    for p in (1, 2):
        f = random_cocycle(cx, p, rng)
        assert gerstenhaber_bracket(f, one).is_zero()


@pytest.mark.parametrize("text", ["X^3", "X^2 - 1", "X^4 - X^3"])
def test_graded_commutativity_and_antisymmetry(text):
    cx = HochschildComplex(mono(text))
    rng = random.Random(11)
    for p, q in ((1, 1), (1, 2), (2, 2), (0, 1)):
        a, b = random_cocycle(cx, p, rng), random_cocycle(cx, q, rng)
        s = -1 if p * q % 2 else 1
        assert cx.is_coboundary(p + q, (cup(a, b) - cup(b, a).scale(s)).vec)
        s = -1 if (p - 1) * (q - 1) % 2 else 1
        br = gerstenhaber_bracket(a, b) + gerstenhaber_bracket(b, a).scale(s)
        assert cx.is_coboundary(p + q - 1, br.vec)


def test_cup_of_cocycles_is_a_cocycle_on_quiver_algebra():
    A = make_path_algebra_quotient(quiver_catalogue()["2-cycle rad^2"])
    cx = HochschildComplex(A)
    rng = random.Random(2)
    a, b = random_cocycle(cx, 1, rng), random_cocycle(cx, 2, rng)
    assert cup(a, b).is_cocycle()
    assert gerstenhaber_bracket(a, b).is_cocycle()


# induced maps

def test_identity_and_zero_coefficient_maps():
    A = tri()
    R = A.regular_bimodule()
    for p in range(2):
        Id = induced_coefficient_map(A, SparseMatrix.identity(A.dim, QQ), R, R, p)
        assert Id.to_dense() == SparseMatrix.identity(Id.nrows, QQ).to_dense()
        Z = induced_coefficient_map(A, SparseMatrix(A.dim, A.dim, QQ), R, R, p)
        assert Z.is_zero()


def test_inclusion_of_ideal_in_degree_zero():
    A = tri()
    I = idempotent_ideal(A, 0)
    M = induced_coefficient_map(A, I.inclusion(), I.as_bimodule(), A.regular_bimodule(), 0)
    assert M.shape[1] == 1 and rank(M) == 1


def test_pullback_along_quotient():
    A = mono("X^4")
    I = ideal_generated_by(A, [{2: 1}])
    B, phi, _ = quotient_algebra(A, I)
    M = B.regular_bimodule()
    P0 = pullback_map(A, B, phi, M, 0)
    assert rank(P0) == B.dim   # H^0(B,B) = B injects into H^0(A,B)


# one-sided Ext and Tor

def test_ext_from_free_module():
    A = tri()
    N = regular_module(A)
    assert onesided_ext(A, regular_module(A), N, 3) == [A.dim, 0, 0, 0]


def test_ext_of_triangle_corner_modules():
    A = tri()
    Ae, _, DeA = corner_modules(A, 0)
    assert onesided_ext(A, DeA, Ae, 4)[:4] == [1, 1, 0, 0]


def test_ext_of_simple_over_dual_numbers():
    A = mono("X^2")
    k = Module.from_matrices(A, [[[1]], [[0]]])
    assert onesided_ext(A, k, k, 5) == [1] * 6


def test_tor_of_quotients():
    A = mono("X^2")
    assert tor_via_relative_bar(A, ideal_generated_by(A, [{1: 1}]), 4) == [1] * 5
    T = tri()
    assert tor_via_relative_bar(T, idempotent_ideal(T, 0), 4) == [3, 0, 0, 0, 0]


def test_tor_with_free_module():
    A = tri()
    R = regular_module(A, "right")
    k_left = regular_module(A, "left")
    assert tor_dims(A, R, k_left, 3) == [A.dim, 0, 0, 0]
