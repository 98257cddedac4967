from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhkit.errors import BothZero, ParseError, ZeroDivisor
from hhkit.exactmath import (
    QQ, FieldSpec, Poly, Scalar, SparseMatrix, kernel_rank, parse_poly, poly_divmod, poly_gcd_monic, quot_f,
    rank, rem_f, solve,
)
from hhkit.exactmath import linalg

F2 = FieldSpec.prime(2)
F5 = FieldSpec.prime(5)


def P(text, field=QQ):
    return parse_poly(text, field)


# fields and scalars

def test_field_parse_spellings():
    for text in ("Q", "QQ"):
        assert FieldSpec.parse(text) == QQ
    for text in ("F5", "F_5", "GF(5)"):
        assert FieldSpec.parse(text) == F5


def test_field_rejects_composite_characteristic():
    with pytest.raises(Exception):
        FieldSpec.prime(6)


def test_scalar_arithmetic_mod_p():
    a = Scalar(3, F5)
    assert a * a == Scalar(4, F5)
    assert a.inverse() * a == Scalar(1, F5)
    assert Scalar(Fraction(1, 2), F5) == Scalar(3, F5)


def test_fraction_with_vanishing_denominator():
    with pytest.raises(ZeroDivisor):
        F5.elem(Fraction(1, 5))


def test_floats_are_rejected():
    with pytest.raises(ParseError):
        QQ.elem(0.5)


# polynomials

def test_long_division_examples():
    assert poly_divmod(P("X^2 + 1"), P("X")) == (P("X"), P("1"))
    f = P("X^3 - X^2")
    assert poly_divmod(f, f) == (P("1"), Poly([], QQ))
    assert poly_divmod(P("2*X^3 - 2*X^2"), f) == (P("2"), Poly([], QQ))


def test_monic_gcd_examples():
    assert poly_gcd_monic(P("X^3 - 1"), P("3*X^2")) == P("1")
    assert poly_gcd_monic(P("X^2", F2), Poly([], F2)) == P("X^2", F2)
    assert poly_gcd_monic(P("X^3 - X^2"), P("3*X^2 - 2*X")) == P("X")


def test_quot_and_rem():
    f = P("X^2 - 1")
    h = P("X^3 + 2")
    assert quot_f(h, f) * f + rem_f(h, f) == h
    assert rem_f(h, f).degree < f.degree


def test_parse_and_print_round_trip():
    for text in ("X^3 - X^2", "X^4 - 2*X^2 + 1", "X", "1"):
        f = P(text)
        assert P(str(f)) == f


def test_derivative_in_characteristic_two():
    assert P("X^2", F2).derivative().is_zero()


def test_parse_errors():
    with pytest.raises(ParseError):
        P("X^^2")


small_coeffs = st.lists(st.integers(-4, 4), min_size=1, max_size=6)


@given(small_coeffs, small_coeffs)
@settings(max_examples=60, deadline=None)
def test_division_identity(a, b):
    h, f = Poly(a, QQ), Poly(b + [1], QQ)
    q, r = poly_divmod(h, f)
    assert q * f + r == h
    assert r.is_zero() or r.degree < f.degree


@given(small_coeffs, small_coeffs)
@settings(max_examples=60, deadline=None)
def test_gcd_divides_both(a, b):
    f, g = Poly(a, F5), Poly(b, F5)
    if f.is_zero() and g.is_zero():
        with pytest.raises(BothZero):
            poly_gcd_monic(f, g)
        return
    d = poly_gcd_monic(f, g)
    assert d.is_monic()
    assert rem_f(f, d).is_zero() and rem_f(g, d).is_zero()


# linear algebra

def test_rank_kernel_examples():
    I3 = SparseMatrix.identity(3, QQ)
    assert kernel_rank(I3) == (3, [])
    Z = SparseMatrix.from_dense([[0] * 4, [0] * 4], QQ)
    r, K = kernel_rank(Z)
    assert r == 0 and sorted(map(tuple, K)) == sorted(tuple(int(i == j) for i in range(4)) for j in range(4))
    J = SparseMatrix.from_dense([[1, 1], [1, 1]], F2)
    assert kernel_rank(J) == (1, [[1, 1]])


def test_solve_consistent_and_inconsistent():
    M = SparseMatrix.from_dense([[1, 2], [2, 4]], QQ)
    x = solve(M, [1, 2])
    assert x is not None and M.matvec(x) == [1, 2]
    assert solve(M, [1, 3]) is None


def _random_matrix(rng, m, n, field, rank_bound):
    # product of two random factors gives a prescribed maximal rank
    L = [[rng.randint(-3, 3) for _ in range(rank_bound)] for _ in range(m)]
    R = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rank_bound)]
    data = [[sum(L[i][k] * R[k][j] for k in range(rank_bound)) for j in range(n)] for i in range(m)]
    return SparseMatrix.from_dense(data, field)


@pytest.mark.parametrize("field", [QQ, F2, F5])
def test_modular_path_agrees_with_exact(monkeypatch, field):
    import random

    rng = random.Random(7)
    cases = [_random_matrix(rng, m, n, field, r) for m, n, r in ((12, 15, 5), (20, 9, 9), (30, 30, 17), (8, 40, 3))]
    exact = [linalg._analyze_exact(M) for M in cases]
    monkeypatch.setattr(linalg, "EXACT_WORK_LIMIT", 0)
    for M, e in zip(cases, exact):
        a = linalg.analyze(M)
        assert a.rank == e.rank
        assert a.pivots == e.pivots
        assert sorted(map(tuple, a.kernel)) == sorted(map(tuple, e.kernel))
        for v in a.kernel:
            assert not any(M.matvec(v))


def test_modular_path_with_large_rationals(monkeypatch):
    data = [[Fraction(7 ** (i + j), 3 ** i + j + 1) for j in range(7)] for i in range(6)]
    M = SparseMatrix.from_dense(data, QQ)
    e = linalg._analyze_exact(M)
    monkeypatch.setattr(linalg, "EXACT_WORK_LIMIT", 0)
    a = linalg.analyze(M)
    assert a.rank == e.rank
    assert [list(map(Fraction, v)) for v in a.kernel] == [list(map(Fraction, v)) for v in e.kernel]


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    M = SparseMatrix.from_dense(rows, QQ)
    r, K = kernel_rank(M)
    assert r + len(K) == 4
    assert r == rank(M.transpose())
    for v in K:
        assert not any(M.matvec(v))
