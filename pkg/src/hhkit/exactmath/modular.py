"""Dense linear algebra modulo a prime on top of float64 BLAS.

Residues are stored as float64 integers, in the signed range |x| < p
while a computation is running and normalised into ``[0, p)`` on output.  Every product is
organised so that no intermediate value exceeds 2^53, which keeps the
floating point computation exact; reductions happen after each GEMM.
Inner dimensions are chunked and, for primes above ~2^23, the right factor
is split into 16-bit limbs.

This module is only a fast path: results computed here are always
certified (or redone) by the exact layer in ``linalg``.
"""

from __future__ import annotations

import numpy as np

_EXACT = float(2**53)
_LIMB = 65536.0


def mod_inplace(X: np.ndarray, p: int) -> np.ndarray:
    """Reduce exact integers (|x| < 2^53) into [0, p)."""
    pf = float(p)
    q = np.floor(X * (1.0 / pf))
    q *= pf
    X -= q
    np.add(X, pf, out=X, where=X < 0)
    np.subtract(X, pf, out=X, where=X >= pf)
    return X


def symmod_inplace(X: np.ndarray, p: int) -> np.ndarray:
    """Reduce exact integers into the signed range |x| < p (cheap)."""
    pf = float(p)
    q = np.rint(X * (1.0 / pf))
    q *= pf
    X -= q
    return X


def _chunk(bound_x: float, bound_y: float) -> int:
    per = bound_x * bound_y
    if per <= 0:
        return 1 << 30
    return int(_EXACT // per)


def _mm_bounded(X, Y, p, ymax):
    k = X.shape[1]
    ch = _chunk(float(p), ymax)
    if ch >= k:
        return symmod_inplace(X @ Y, p)
    acc = np.zeros((X.shape[0], Y.shape[1]))
    for s in range(0, k, ch):
        acc += symmod_inplace(X[:, s:s + ch] @ Y[s:s + ch], p)
    return symmod_inplace(acc, p)


def _split(Y):
    # limbs of a signed residue matrix: Y = hi * 2^16 + lo, |hi|, |lo| < 2^16
    hi = np.rint(Y / _LIMB)
    lo = Y - hi * _LIMB
    return hi, lo


def mulmod(X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """X @ Y mod p for signed residue matrices; result has |x| < p."""
    if X.shape[1] == 0 or X.shape[0] == 0 or Y.shape[1] == 0:
        return np.zeros((X.shape[0], Y.shape[1]))
    pf = float(p)
    if _chunk(pf, pf) >= 64:
        return _mm_bounded(X, Y, p, pf)
    hi, lo = _split(Y)
    out = _mm_bounded(X, hi, p, _LIMB)
    out *= _LIMB
    symmod_inplace(out, p)
    out += _mm_bounded(X, lo, p, _LIMB)
    return symmod_inplace(out, p)


def spmm_mod(S, Y: np.ndarray, p: int) -> np.ndarray:
    """S @ Y mod p with S a scipy CSR matrix of residues, Y dense residues."""
    if S.shape[0] == 0 or S.shape[1] == 0 or Y.shape[1] == 0:
        return np.zeros((S.shape[0], Y.shape[1]))
    pf = float(p)
    split = _chunk(pf, pf) < 64
    ymax = _LIMB if split else pf
    width = max(1, _chunk(pf, ymax))
    per_row = np.diff(S.indptr)
    if per_row.max(initial=0) <= width:
        pieces = None
    else:
        csc = S.tocsc()
        pieces = [(csc[:, s:s + width].tocsr(), s) for s in range(0, S.shape[1], width)]

    def product(Yp):
        if pieces is None:
            return symmod_inplace(np.asarray(S @ Yp, dtype=float), p)
        acc = np.zeros((S.shape[0], Y.shape[1]))
        for blk, s in pieces:
            acc += symmod_inplace(np.asarray(blk @ Yp[s:s + blk.shape[1]], dtype=float), p)
        return symmod_inplace(acc, p)

    if not split:
        return product(Y)
    hi, lo = _split(Y)
    out = product(hi)
    out *= _LIMB
    symmod_inplace(out, p)
    out += product(lo)
    return symmod_inplace(out, p)


def _rref_base(A, p):
    # A has a single row
    row = A[0]
    nz = np.flatnonzero(row)
    if nz.size == 0:
        return np.zeros((0, A.shape[1])), []
    j = int(nz[0])
    inv = float(pow(int(row[j]) % p, -1, p))
    out = mulmod(row[:, None], np.array([[inv]]), p)[:, 0]
    out[j] = 1.0
    return out[None, :], [j]


def _rref_rec(A, p):
    m = A.shape[0]
    if m == 1:
        return _rref_base(A, p)
    h = m // 2
    R1, P1 = _rref_rec(A[:h], p)
    B = A[h:]
    if P1:
        B = symmod_inplace(B - mulmod(B[:, P1], R1, p), p)
        if len(P1) == A.shape[1]:
            return R1, P1
    R2, P2 = _rref_rec(B, p)
    if not P1:
        return R2, P2
    if not P2:
        return R1, P1
    R1 = symmod_inplace(R1 - mulmod(R1[:, P2], R2, p), p)
    return np.vstack([R1, R2]), P1 + P2


def rref_modp(A: np.ndarray, p: int):
    """Reduced row echelon form of a residue matrix.

    Returns ``(R, pivots)`` with R the nonzero rows sorted by pivot column,
    entries normalised into [0, p).  The input is not modified.
    """
    A = np.ascontiguousarray(A, dtype=float)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return np.zeros((0, A.shape[1])), []
    R, piv = _rref_rec(A, p)
    if not piv:
        return np.zeros((0, A.shape[1])), []
    order = np.argsort(piv, kind="stable")
    return mod_inplace(R[order], p), [int(piv[i]) for i in order]


def kernel_from_rref(R: np.ndarray, piv: list, n: int, p: int) -> tuple[np.ndarray, list]:
    """Kernel basis rows (one per free column, 1 there) of a matrix in RREF."""
    pset = set(piv)
    free = [j for j in range(n) if j not in pset]
    K = np.zeros((len(free), n))
    if free:
        K[np.arange(len(free)), free] = 1.0
        if piv:
            sub = R[:, free]
            K[:, piv] = np.where(sub > 0, float(p) - sub, 0.0).T
    return K, free
