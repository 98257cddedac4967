"""Sparse exact linear algebra.

Small problems are solved by exact Gaussian elimination on sparse rows.
Large problems go through a certified multimodular path:

1. reduce the matrix modulo primes below 2^20 and run a BLAS-backed dense
   RREF (``modular``), optionally after compressing the rows with a random
   matrix;
2. lift the modular kernel back to the field (CRT plus rational
   reconstruction over Q);
3. verify the lifted kernel exactly.  Verified kernel vectors bound the
   rank from above, while any modular rank bounds it from below, so the
   result is exact.  If certification fails after a few primes, the exact
   eliminator is used instead.

Results are identical to exact elimination: the RREF of a matrix and the
kernel basis derived from it are unique.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import scipy.sparse as sps

from . import modular
from .field import FieldSpec, Scalar

# below this amount of estimated dense work the exact eliminator is used
EXACT_WORK_LIMIT = 150_000
# largest dense float64 working matrix (entries) the modular path may allocate
DENSE_ENTRY_LIMIT = 60_000_000
_PRIME_TOP = 2**20


class _Unlucky(Exception):
    pass


def _primes_below(n: int):
    from .field import is_prime

    x = n - 1
    while x > 2:
        if is_prime(x):
            yield x
        x -= 1


_PRIMES: list[int] = []


def _prime(i: int) -> int:
    gen = None
    while len(_PRIMES) <= i:
        if gen is None:
            start = _PRIMES[-1] if _PRIMES else _PRIME_TOP
            gen = _primes_below(start)
        _PRIMES.append(next(gen))
    return _PRIMES[i]


class SparseMatrix:
    """A rows x cols matrix stored as one ``{col: raw value}`` dict per row."""

    __slots__ = ("nrows", "ncols", "field", "rows")

    def __init__(self, nrows: int, ncols: int, field: FieldSpec, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if rows is None:
            rows = [{} for _ in range(nrows)]
        self.rows = rows

    @classmethod
    def from_dense(cls, data, field: FieldSpec, ncols: int | None = None):
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: field.elem(v) for j, v in enumerate(r) if field.elem(v) != 0})
        return cls(len(data), ncols, field, rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: dict, field: FieldSpec):
        M = cls(nrows, ncols, field)
        for (i, j), v in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError((i, j))
            v = field.elem(v)
            if v != 0:
                M.rows[i][j] = v
        return M

    @classmethod
    def identity(cls, n: int, field: FieldSpec):
        return cls(n, n, field, [{i: 1} for i in range(n)])

    def add(self, i: int, j: int, v):
        r = self.rows[i]
        r[j] = r.get(j, 0) + v

    def prune(self) -> "SparseMatrix":
        """Normalise stored values and drop zeros (after raw accumulation)."""
        F = self.field
        for idx, r in enumerate(self.rows):
            self.rows[idx] = {j: F.norm(v) for j, v in r.items() if F.norm(v) != 0}
        return self

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> dict:
        return {(i, j): Scalar._raw(v, self.field) for i, r in enumerate(self.rows) for j, v in r.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def get(self, i, j):
        return self.rows[i].get(j, 0)

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        T = SparseMatrix(self.ncols, self.nrows, self.field)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                T.rows[j][i] = v
        return T

    def select_columns(self, cols) -> "SparseMatrix":
        pos = {c: k for k, c in enumerate(cols)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self.rows]
        return SparseMatrix(self.nrows, len(cols), self.field, rows)

    def matvec(self, v) -> list:
        F = self.field
        out = []
        for r in self.rows:
            acc = 0
            for j, a in r.items():
                x = v[j]
                if x != 0:
                    acc += a * x
            out.append(F.norm(acc))
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.nrows, other.ncols, self.field)
        for i, r in enumerate(self.rows):
            acc: dict = {}
            for k, a in r.items():
                for j, b in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.rows[i] = acc
        return out.prune()

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.shape == other.shape
            and self.field == other.field
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()}, {self.field!r})"


# ---------------------------------------------------------------- exact path

def rref_exact(M: SparseMatrix):
    """Exact RREF. Returns (pivot columns ascending, rows as dicts)."""
    F = M.field
    piv: dict[int, dict] = {}
    for row in M.rows:
        r = dict(row)
        while r:
            c = min(r)
            prow = piv.get(c)
            if prow is None:
                inv = F.inv(r[c])
                piv[c] = {j: F.norm(v * inv) for j, v in r.items()}
                break
            a = r[c]
            for j, v in prow.items():
                nv = F.norm(r.get(j, 0) - a * v)
                if nv == 0:
                    r.pop(j, None)
                else:
                    r[j] = nv
    cols = sorted(piv)
    for c in reversed(cols):
        row = piv[c]
        for c2 in [k for k in row if k != c and k in piv]:
            if c2 < c:
                continue
            a = row.get(c2, 0)
            if a == 0:
                continue
            for j, v in piv[c2].items():
                nv = F.norm(row.get(j, 0) - a * v)
                if nv == 0:
                    row.pop(j, None)
                else:
                    row[j] = nv
    return cols, [piv[c] for c in cols]


def _kernel_from_exact(cols, rrows, n, F):
    pset = set(cols)
    free = [j for j in range(n) if j not in pset]
    kern = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for c, row in zip(cols, rrows):
            a = row.get(f, 0)
            if a != 0:
                v[c] = F.neg(a)
        kern.append(v)
    return kern


def _small(M: SparseMatrix) -> bool:
    m, n = M.shape
    return m * n * max(1, min(m, n)) <= EXACT_WORK_LIMIT or m == 0 or n == 0


# ---------------------------------------------------------------- modular path

def _residue_csr(M: SparseMatrix, p: int):
    data, ind, ptr = [], [], [0]
    for r in M.rows:
        for j, v in r.items():
            if type(v) is Fraction:
                den = v.denominator % p
                if den == 0:
                    raise _Unlucky
                x = v.numerator * pow(den, -1, p) % p
            else:
                x = v % p
            if x:
                ind.append(j)
                data.append(float(x))
        ptr.append(len(ind))
    return sps.csr_matrix(
        (np.array(data, dtype=float), np.array(ind, dtype=np.int64), np.array(ptr, dtype=np.int64)),
        shape=M.shape,
    )


def _modular_rref(S, p: int, rng, compress: bool):
    m, n = S.shape
    rows = min(m, n + 8) if compress else m
    if rows * n > DENSE_ENTRY_LIMIT:
        from ..errors import DimensionCap

        raise DimensionCap(f"a {m} x {n} elimination exceeds the dense working-memory limit")
    if compress and m > n + 16:
        s = n + 8
        R = np.floor(rng.random((m, s)) * p)
        A = modular.spmm_mod(S.T.tocsr(), R, p).T
    else:
        A = S.toarray()
    return modular.rref_modp(A, p)


def _ratrecon(a: int, m: int):
    """Rational reconstruction of a mod m with |num|, den <= sqrt(m/2)."""
    bound = math.isqrt(m // 2)
    if a <= bound:
        return a
    if m - a <= bound:
        return a - m
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1) if s1 != 1 else r1


def _lift_rows(res_list, primes):
    """CRT-combine integer residue arrays and rationally reconstruct."""
    if len(primes) == 1:
        comb = [[int(x) for x in row] for row in res_list[0]]
        mod = primes[0]
    else:
        mod = 1
        comb = None
        for arr, p in zip(res_list, primes):
            rows = [[int(x) for x in row] for row in arr]
            if comb is None:
                comb, mod = rows, p
                continue
            inv = pow(mod, -1, p)
            new = []
            for ra, rb in zip(comb, rows):
                new.append([a + mod * ((b - a) * inv % p) for a, b in zip(ra, rb)])
            comb = new
            mod *= p
    out = []
    for row in comb:
        lifted = []
        for a in row:
            x = _ratrecon(a, mod)
            if x is None:
                return None
            lifted.append(x)
        out.append(lifted)
    return out


def _verify_zero_product(M: SparseMatrix, vecs) -> bool:
    """Exactly check M v = 0 for all v, via enough primes to exceed the bound."""
    if not vecs:
        return True
    n = M.ncols
    F = M.field
    if F.p is not None:
        V = np.array(vecs, dtype=float).T
        S = _residue_csr(M, F.p)
        return not modular.spmm_mod(S, V, F.p).any()
    # integer scaling of rows and vectors
    ivecs = []
    vmax = 0
    for v in vecs:
        den = 1
        for x in v:
            if type(x) is Fraction:
                den = den * x.denominator // math.gcd(den, x.denominator)
        iv = [int(x * den) for x in v]
        ivecs.append(iv)
        vmax = max(vmax, max((abs(x) for x in iv), default=0))
    irows = []
    rmax = 0
    for r in M.rows:
        den = 1
        for x in r.values():
            if type(x) is Fraction:
                den = den * x.denominator // math.gcd(den, x.denominator)
        ir = {j: int(x * den) for j, x in r.items()}
        irows.append(ir)
        rmax = max(rmax, sum(abs(x) for x in ir.values()))
    bound = rmax * vmax
    IM = SparseMatrix(M.nrows, n, F, irows)
    prod = 1
    i = 0
    while prod <= bound:
        p = _prime(40 + i)
        i += 1
        prod *= p
        V = np.array([[x % p for x in iv] for iv in ivecs], dtype=float).T
        S = _residue_csr(IM, p)
        if modular.spmm_mod(S, V, p).any():
            return False
    return True


class _Analysis:
    __slots__ = ("rank", "pivots", "kernel", "free")

    def __init__(self, rank, pivots, kernel, free):
        self.rank = rank
        self.pivots = pivots
        self.kernel = kernel
        self.free = free


def _analyze_exact(M: SparseMatrix) -> _Analysis:
    cols, rrows = rref_exact(M)
    kern = _kernel_from_exact(cols, rrows, M.ncols, M.field)
    pset = set(cols)
    return _Analysis(len(cols), cols, kern, [j for j in range(M.ncols) if j not in pset])


def _analyze_modular(M: SparseMatrix, seed: int = 0) -> _Analysis:
    F = M.field
    rng = np.random.default_rng(seed)
    n = M.ncols
    if F.p is not None:
        p = F.p
        S = _residue_csr(M, p)
        for attempt in range(4):
            R, piv = _modular_rref(S, p, rng, compress=attempt < 3)
            K, free = modular.kernel_from_rref(R, piv, n, p)
            kern = [[int(x) for x in row] for row in K]
            if attempt == 3 or _verify_zero_product(M, kern):
                return _Analysis(len(piv), piv, kern, free)
        raise AssertionError("unreachable")
    best = None
    residues, primes = [], []
    for attempt in range(10):
        p = _prime(attempt)
        try:
            S = _residue_csr(M, p)
        except _Unlucky:
            continue
        R, piv = _modular_rref(S, p, rng, compress=True)
        key = (-len(piv), piv)
        if best is None or key < best:
            best = key
            residues, primes = [], []
        elif key != best:
            continue
        K, free = modular.kernel_from_rref(R, piv, n, p)
        residues.append(K)
        primes.append(p)
        lifted = _lift_rows(residues, primes)
        if lifted is None:
            continue
        if _verify_zero_product(M, lifted):
            return _Analysis(len(piv), piv, lifted, free)
    return _analyze_exact(M)


def analyze(M: SparseMatrix, seed: int = 0) -> _Analysis:
    """Rank, RREF pivot columns, free columns and the RREF kernel basis."""
    if _small(M):
        return _analyze_exact(M)
    return _analyze_modular(M, seed)


def kernel_rank(M: SparseMatrix):
    """Exact rank and kernel basis (one vector per free column, raw values).

    Kernel vectors have a 1 in their free column, 0 in the other free
    columns, so the basis is in reduced echelon form.
    """
    a = analyze(M)
    return a.rank, a.kernel


def rank(M: SparseMatrix) -> int:
    return analyze(M).rank


def row_space_pivots(M: SparseMatrix, expected_rank: int | None = None, seed: int = 1):
    """Pivot columns of the RREF of M (the lexicographically first
    independent columns).  When ``expected_rank`` is known exactly the
    modular answer is accepted once it reaches that rank."""
    if _small(M) or expected_rank is None:
        return rref_exact(M)[0] if _small(M) else analyze(M).pivots
    F = M.field
    rng = np.random.default_rng(seed)
    for attempt in range(10):
        p = F.p if F.p is not None else _prime(attempt)
        try:
            S = _residue_csr(M, p)
        except _Unlucky:
            continue
        _, piv = _modular_rref(S, p, rng, compress=False)
        if len(piv) == expected_rank:
            return piv
        if F.p is not None:
            break
    return rref_exact(M)[0]


def rref(M: SparseMatrix):
    """Exact RREF as (pivot columns, list of dict rows)."""
    if M.field.p is not None and not _small(M):
        R, piv = modular.rref_modp(_residue_csr(M, M.field.p).toarray(), M.field.p)
        return piv, [{j: int(x) for j, x in enumerate(row) if x} for row in R]
    return rref_exact(M)


def solve(M: SparseMatrix, b) -> list | None:
    """Return one exact solution x of M x = b, or None if inconsistent."""
    F = M.field
    aug = SparseMatrix(M.nrows, M.ncols + 1, F, [dict(r) for r in M.rows])
    for i, v in enumerate(b):
        v = F.elem(v) if not isinstance(v, (int, Fraction)) else F.norm(v)
        if v != 0:
            aug.rows[i][M.ncols] = v
    if _small(aug):
        cols, rrows = rref_exact(aug)
        if cols and cols[-1] == M.ncols:
            return None
        x = [0] * M.ncols
        for c, row in zip(cols, rrows):
            x[c] = row.get(M.ncols, 0)
        return x
    # kernel of the augmented matrix: a solution exists iff some kernel
    # vector has a nonzero last coordinate
    a = analyze(aug)
    if M.ncols not in a.free:
        return None
    vec = a.kernel[a.free.index(M.ncols)]
    # vec = (y, 1) with M y + b = 0
    return [F.neg(v) for v in vec[:-1]]
