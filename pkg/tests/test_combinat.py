import json
from pathlib import Path

import pytest

from catalogue import circle, named_posets, quiver_catalogue, small_posets, triangle
from hhkit.algebra import make_truncated_cycle
from hhkit.combinat import (
    Poset, Quiver, QuiverPresentation, chain_poset, circuit_free_at, homological_ideal_report,
    internal_vertex_criterion, is_order_ideal, order_complex, order_complex_pair, simplicial_cohomology,
)
from hhkit.errors import BadStructure, MalformedPath, NotAnOrderIdeal, UnknownVertex

DATA = Path(__file__).parent / "data"


# quivers

def test_quiver_json_round_trip():
    pres = QuiverPresentation.from_json(json.loads((DATA / "triangle.json").read_text()))
    assert pres.quiver.vertices == [1, 2, 3]
    assert pres.relations == [(0, 1)]


def test_bad_quivers():
    with pytest.raises(UnknownVertex):
        Quiver([1], [("a", 1, 2)])
    with pytest.raises(BadStructure):
        Quiver([1, 2], [("a", 1, 2), ("a", 2, 1)])
    Q = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    with pytest.raises(MalformedPath):
        QuiverPresentation(Q, [["b", "a"]])
    with pytest.raises(MalformedPath):
        QuiverPresentation(Q, [["a"]])


def test_minimal_relations_drop_consequences():
    Q = Quiver([1], [("x", 1, 1)])
    pres = QuiverPresentation(Q, [["x", "x", "x"], ["x", "x"]])
    assert pres.minimal_relations() == [(0, 0)]


def test_internal_vertex_criterion():
    pres = triangle()
    assert internal_vertex_criterion(pres, 1)
    assert not internal_vertex_criterion(pres, 2)
    free = QuiverPresentation(Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)]), [])
    assert all(internal_vertex_criterion(free, v) for v in (1, 2, 3))


def test_circuit_freeness():
    assert not any(circuit_free_at(triangle().quiver, v) for v in (1, 2, 3))
    A2 = Quiver([1, 2], [("a", 1, 2)])
    assert circuit_free_at(A2, 1) and circuit_free_at(A2, 2)
    crown = Quiver([0, 1], [("a0", 0, 1), ("a1", 1, 0)])
    assert not circuit_free_at(crown, 0)


# homological ideals

def test_triangle_vertex_one_is_homological():
    r = homological_ideal_report(triangle(), 1, 4)
    assert r.verdict == "homological (proved)"
    assert r.tor[1:] == [0, 0, 0, 0]


def test_triangle_vertex_two_is_not():
    r = homological_ideal_report(triangle(), 2, 4)
    assert not r.internal_vertex and not r.projective_test
    assert r.verdict == "not homological"
    # AeA is idempotent, so Tor_1 = I/I^2 = 0; the obstruction sits in Tor_2
    assert r.dim_I_mod_I2 == 0 and r.tor[1] == 0
    assert r.tor[2] == 4


def test_source_of_a2_is_projective():
    pres = quiver_catalogue()["A2"]
    r = homological_ideal_report(pres, 1, 4)
    assert r.projective_test and r.dim_Ae * r.dim_eA == r.dim_I
    assert r.verdict == "homological (proved)"


@pytest.mark.parametrize("name", sorted(quiver_catalogue()))
def test_circuit_free_criterion_matches_tor(name):
    pres = quiver_catalogue()[name]
    for v in pres.quiver.vertices:
        r = homological_ideal_report(pres, v, 4)
        if r.circuit_free:
            assert r.mu_iso == (not any(r.tor[1:3]))
            if r.mu_iso:
                assert not any(r.tor[1:])


# posets

def test_order_ideals():
    X = circle()
    assert is_order_ideal(X, [])
    assert is_order_ideal(X, list("abcd"))
    assert is_order_ideal(X, ["a", "b"])
    assert not is_order_ideal(X, ["a", "c"])


def test_chain_counts():
    assert len(Poset(["a", "b"]).chains()) == 2
    assert len(Poset(["a", "b"], [("a", "b")]).chains()) == 3
    assert len(circle().chains()) == 8


def test_chain_poset_of_chain():
    C = chain_poset(Poset(["a", "b"], [("a", "b")]))
    assert len(C) == 3
    # {a} < {a,b} and {b} < {a,b}
    assert len(C.chains()) == 5


def test_cyclic_covers_are_rejected():
    with pytest.raises(BadStructure):
        Poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_simplicial_examples():
    assert simplicial_cohomology(order_complex(Poset([1, 2, 3], [(1, 2), (2, 3)])), None, 3) == [1, 0, 0, 0]
    assert simplicial_cohomology(order_complex(circle()), None, 3) == [1, 1, 0, 0]
    K, L = order_complex_pair(circle(), ["a", "b"])
    assert simplicial_cohomology(K, L, 3) == [0, 2, 0, 0]


def test_named_poset_topology():
    dims = {k: simplicial_cohomology(order_complex(X), None, 3) for k, X in named_posets().items()}
    assert dims["sphere"] == [1, 0, 1, 0]
    assert dims["two holes"] == [1, 2, 0, 0]
    assert dims["two points"] == [2, 0, 0, 0]


def test_exhaustive_catalogue_size():
    # isomorphism classes of posets on 1..5 points
    assert [sum(1 for X in small_posets(5) if len(X) == n) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_euler_characteristic_is_subdivision_invariant():
    for X in small_posets(4):
        K, C = order_complex(X), order_complex(chain_poset(X))
        assert K.euler_characteristic() == C.euler_characteristic()


def test_pair_requires_order_ideal():
    from hhkit.les import pair_report

    with pytest.raises(NotAnOrderIdeal):
        pair_report(circle(), ["c"], 2)


def test_crown_quiver_has_circuits():
    A = make_truncated_cycle(2, 2)
    pres = A.presentation
    assert not circuit_free_at(pres.quiver, 0)
