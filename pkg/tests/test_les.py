import json

import pytest

from catalogue import circle, quiver_catalogue, triangle
from hhkit.algebra import (
    Module, SubBimodule, ideal_generated_by, idempotent_ideal, make_monogenic, make_path_algebra_quotient,
)
from hhkit.combinat import Poset
from hhkit.errors import FlatnessNotEstablished, NotHomological
from hhkit.exactmath import QQ, parse_poly
from hhkit.les import (
    ExactSequenceReport, coefficient_sequence, crown_check, exactness_consistency, five_term_report,
    flat_ideal_report, happel_report, one_point_happel, pair_report,
)


def tri():
    return make_path_algebra_quotient(triangle())


def zero_ideal(A):
    return SubBimodule(A.regular_bimodule(), [], check=False)


# bookkeeping

def test_exactness_consistency_examples():
    assert exactness_consistency([0, 1, 1, 0]) == (True, [0, 1, 0])
    assert exactness_consistency([0, 1, 0, 1, 0])[0] is False
    assert exactness_consistency([0, 2, 3, 1, 0]) == (True, [0, 2, 1, 0])


def test_truncated_sequences_allow_a_nonzero_tail():
    assert exactness_consistency([1, 2], truncated=True)[0]
    assert not exactness_consistency([1, 2])[0]


def test_report_status_without_maps():
    r = ExactSequenceReport("demo", ["A", "B", "C"], [1, 2, 1], [None, None], truncated=False)
    assert r.status == "consistent" and r.ok
    r = ExactSequenceReport("demo", ["A", "B", "C"], [1, 0, 1], [None, None], truncated=False)
    assert r.status == "inconsistent" and not r.ok


def test_report_json_is_plain():
    A = tri()
    rep = happel_report(A, 1, 3)
    text = json.dumps(rep.as_dict(), sort_keys=True)
    assert json.loads(text)["extras"]["hh_A"] == [2, 1, 0, 0]
    assert "exact" in rep.to_text()


# coefficient sequences

def test_coefficient_sequence_is_exact_on_truncated_polynomials():
    A = make_monogenic(parse_poly("X^3"))
    I = ideal_generated_by(A, [{2: 1}])
    rep, _ = coefficient_sequence(A, I, 3)
    assert rep.exact and rep.composites_zero


def test_coefficient_sequence_degenerate_ideals():
    A = tri()
    rep, _ = coefficient_sequence(A, zero_ideal(A), 2)
    assert rep.exact
    one = idempotent_ideal(A, {v: 1 for v in A.vertices})
    rep, _ = coefficient_sequence(A, one, 2)
    assert rep.exact


# Happel sequences

def test_triangle_happel():
    rep = happel_report(tri(), 1, 4)
    x = rep.extras
    assert rep.exact and rep.status == "exact"
    assert x["hh_A"] == [2, 1, 0, 0, 0] and x["hh_B"] == [1, 0, 0, 0, 0]
    assert x["ext_DeA_Ae"] == [1, 1, 0, 0, 0] and x["center_cap_I"] == 1
    assert x["side_table_matches"] and x["H_A_B_matches_hh_B"] and x["H0_matches_center_cap_I"]


def test_happel_refuses_non_homological_ideal():
    with pytest.raises(NotHomological):
        happel_report(tri(), 2, 3)


@pytest.mark.parametrize("name,vertex", [("A3 linear", 2), ("D4", 4), ("Kronecker", 1), ("A3 zero relation", 1)])
def test_happel_on_catalogue(name, vertex):
    A = make_path_algebra_quotient(quiver_catalogue()[name])
    rep = happel_report(A, vertex, 3)
    assert rep.exact
    assert rep.extras["side_table_matches"] and rep.extras["H_A_B_matches_hh_B"]


def test_one_point_extension_identifications():
    k = make_path_algebra_quotient(quiver_catalogue()["loop x^2"])
    S = Module.from_matrices(k, [[[1]], [[0]]])
    rep = one_point_happel(k, S, 4)
    assert rep.ok and rep.extras["identifications_hold"]
    assert rep.extras["hh_B"] == [2, 1, 1, 1, 1]


def test_one_point_extension_of_semisimple():
    kk = make_path_algebra_quotient(quiver_catalogue()["A2"].__class__(
        quiver_catalogue()["A2"].quiver.__class__([1, 2], []), [], QQ))
    S = Module.from_matrices(kk, [[[1]], [[0]]])
    rep = one_point_happel(kk, S, 3)
    assert rep.ok and rep.extras["identifications_hold"]


# five-term sequences

def test_five_term_truncated_polynomials():
    A = make_monogenic(parse_poly("X^4"))
    rep = five_term_report(A, ideal_generated_by(A, [{2: 1}]))
    assert rep.term_dims == [1, 2, 2, 1, 2]
    assert all(m is not None for m in rep.maps)
    assert all(rep.exact_at[1:4]) and rep.composites_zero
    assert rep.extras["alpha_is_cocycle"] and rep.extras["dim_I_mod_I2"] == 2


def test_five_term_triangle():
    A = tri()
    rep = five_term_report(A, idempotent_ideal(A, 0))
    assert rep.term_dims == [0, 0, 0, 0, 0] and rep.exact


def test_five_term_zero_ideal():
    A = make_monogenic(parse_poly("X^3"))
    rep = five_term_report(A, zero_ideal(A))
    assert rep.exact
    # H^1(B, M) -> H^1(A, M) is the identity when B = A
    assert rep.term_dims[0] == rep.term_dims[1]


# flat ideals

def test_flat_ideal_sequences():
    A = tri()
    assert flat_ideal_report(A, idempotent_ideal(A, 0), p_max=3, e=0).exact
    assert flat_ideal_report(A, zero_ideal(A), p_max=3).exact


def test_flatness_must_be_established():
    A = make_monogenic(parse_poly("X^3"))
    with pytest.raises(FlatnessNotEstablished):
        flat_ideal_report(A, ideal_generated_by(A, [{1: 1}]), p_max=2)


# pairs of posets

def test_circle_pair():
    rep = pair_report(circle(), ["a", "b"], 3)
    x = rep.extras
    assert x["relative"] == [0, 2, 0, 0]
    assert x["hh_X_matches"] and x["hh_Y_matches"] and x["H_kX_IY_matches_relative"]
    assert x["algebra_sequence_exact"] and rep.ok


def test_degenerate_pairs():
    X = circle()
    full = pair_report(X, list("abcd"), 3)
    assert full.extras["relative"] == [0, 0, 0, 0] and full.ok
    empty = pair_report(X, [], 3)
    assert empty.extras["relative"] == empty.extras["H_X"] and empty.ok


def test_alternating_sum_vanishes():
    X = Poset(list("abcde"), [("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")])
    rep = pair_report(X, ["a", "b"], 3)
    assert rep.extras["alternating_sum_applies"] and rep.extras["alternating_sum"] == 0


# truncated cycles

def test_crown_with_length_divisible_by_n():
    # with l = nm the normal element t^l commutes with every vertex
    for n, m, p_max in ((2, 2, 5), (3, 1, 5), (3, 2, 4)):
        r = crown_check(n, m, p_max, length=n * m)
        assert r.alpha_is_identity and r.passed, r.as_dict()
        assert r.dims[0] == r.dims[2]


def test_crown_default_length_is_nm_minus_one():
    r = crown_check(2, 2, 3)
    assert r.length == 3 and not r.alpha_is_identity
    assert r.odd_products_vanish
