"""Cochain complexes computing Hochschild cohomology, Ext and Tor.

All complexes are E-relative normalized bar complexes: cochains of degree
p are E-bimodule maps r^{(x)_E p} -> M, where r is the complement of E
(the radical for quiver and incidence algebras, A/k.1 when E = k.1).
A degree-p coordinate is a pair (composable tuple of r-basis elements,
basis vector of M in the matching corner).

Cohomology is computed degree by degree.  With S_p the pivot coordinates
of im d^{p-1} (an echelon basis of the image is the identity on S_p), the
coordinates W_p outside S_p span a complement of the image, and

    H^p  =  ker(d^p restricted to W_p)

so each degree needs one kernel computation and one pivot computation.
"""

from __future__ import annotations

from itertools import product as _iproduct

from .algebra import Bimodule, FinDimAlgebra, Module, SubBimodule, _Coordinates
from .errors import BadParameters, DimensionCap, NotABimoduleMap, NotACocycle
from .exactmath import SparseMatrix, analyze, solve
from .exactmath.linalg import row_space_pivots

DEFAULT_CAP = 2_000_000


# ---------------------------------------------------------------- generic core

class LinearComplex:
    """A cochain complex C^0 -> C^1 -> ... given by its differentials.

    Subclasses provide ``space_dim(p)`` and ``_build(p)``, the matrix of
    d^p : C^p -> C^{p+1} (rows indexed by C^{p+1}).
    """

    def __init__(self, field, cap: int = DEFAULT_CAP):
        self.field = field
        self.cap = cap
        self._d: dict[int, SparseMatrix] = {}
        self._steps: dict[int, tuple] = {}

    def space_dim(self, p: int) -> int:
        raise NotImplementedError

    def _build(self, p: int) -> SparseMatrix:
        raise NotImplementedError

    def _guard(self, p: int):
        n = self.space_dim(p)
        if n > self.cap:
            raise DimensionCap(f"cochain space in degree {p} has dimension {n} > cap {self.cap}")

    def d(self, p: int) -> SparseMatrix:
        """The differential d^p as a matrix (zero map out of negative degrees)."""
        if p not in self._d:
            if p < 0:
                return SparseMatrix(self.space_dim(0), 0, self.field)
            self._guard(p)
            self._guard(p + 1)
            self._d[p] = self._build(p)
        return self._d[p]

    def _step(self, p: int):
        """(W_p, analysis of d^p on W_p)."""
        if p not in self._steps:
            n = self.space_dim(p)
            if p == 0:
                W = list(range(n))
            else:
                Wprev, aprev = self._step(p - 1)
                D = self.d(p - 1).select_columns(Wprev)
                S = set(row_space_pivots(D.transpose(), expected_rank=aprev.rank))
                W = [j for j in range(n) if j not in S]
            a = analyze(self.d(p).select_columns(W))
            self._steps[p] = (W, a)
        return self._steps[p]

    def h_dim(self, p: int) -> int:
        W, a = self._step(p)
        return len(W) - a.rank

    def rank_d(self, p: int) -> int:
        if p < 0:
            return 0
        return self._step(p)[1].rank

    def representatives(self, p: int) -> list:
        """Cocycles (sparse dicts over C^p) forming a basis of H^p."""
        W, a = self._step(p)
        reps = []
        for v in a.kernel:
            reps.append({W[j]: x for j, x in enumerate(v) if x != 0})
        return reps

    def dims(self, p_max: int) -> list:
        return [self.h_dim(p) for p in range(p_max + 1)]

    # class-level questions

    def apply_d(self, p: int, vec: dict) -> dict:
        D = self.d(p)
        F = self.field
        out = {}
        for i, row in enumerate(D.rows):
            acc = 0
            for j, a in row.items():
                x = vec.get(j)
                if x is not None:
                    acc += a * x
            acc = F.norm(acc)
            if acc != 0:
                out[i] = acc
        return out

    def is_cocycle(self, p: int, vec: dict) -> bool:
        return not self.apply_d(p, vec)

    def coboundary_witness(self, p: int, vec: dict):
        """A cochain b with d b = vec, or None.  Raises if vec is not a cocycle."""
        if not self.is_cocycle(p, vec):
            raise NotACocycle(f"cochain of degree {p} is not a cocycle")
        if not vec:
            return {}
        if p == 0:
            return None
        D = self.d(p - 1)
        b = [0] * D.nrows
        for j, x in vec.items():
            b[j] = x
        x = solve(D, b)
        if x is None:
            return None
        return {j: v for j, v in enumerate(x) if v != 0}

    def is_coboundary(self, p: int, vec: dict) -> bool:
        return self.coboundary_witness(p, vec) is not None

    def class_coords(self, p: int, vec: dict) -> list:
        """Coordinates of the class of a cocycle in the representative basis."""
        if not self.is_cocycle(p, vec):
            raise NotACocycle(f"cochain of degree {p} is not a cocycle")
        reps = self.representatives(p)
        if not reps:
            return []
        n = self.space_dim(p)
        F = self.field
        prev = self.d(p - 1) if p > 0 else SparseMatrix(n, 0, F)
        k = prev.ncols
        rows = [dict(r) for r in prev.rows]
        for t, rep in enumerate(reps):
            for j, x in rep.items():
                rows[j][k + t] = x
        M = SparseMatrix(n, k + len(reps), F, rows)
        b = [0] * n
        for j, x in vec.items():
            b[j] = x
        sol = solve(M, b)
        if sol is None:
            raise NotACocycle("cocycle is not in the span of the representatives")
        return sol[k:]


def _compose_ok(M, N, F) -> bool:
    return M.matmul(N).is_zero()


# ---------------------------------------------------------------- tuples

class _Tuples:
    """Composable tuples of r-basis elements, level by level."""

    def __init__(self, A: FinDimAlgebra):
        self.A = A
        self.nr = len(A.rbasis)
        self.rl = [A.lvert[i] for i in A.rbasis]
        self.rr = [A.rvert[i] for i in A.rbasis]
        self.starting = [[] for _ in range(A.nvert)]
        for b in range(self.nr):
            self.starting[self.rl[b]].append(b)
        self.levels = [[(v,) for v in range(A.nvert)]]
        self.index = [{t: k for k, t in enumerate(self.levels[0])}]

    def level(self, p: int) -> list:
        while len(self.levels) <= p:
            q = len(self.levels)
            if q == 1:
                new = [(b,) for b in range(self.nr)]
            else:
                new = []
                rr, starting = self.rr, self.starting
                for t in self.levels[q - 1]:
                    for b in starting[rr[t[-1]]]:
                        new.append(t + (b,))
            self.levels.append(new)
            self.index.append({t: k for k, t in enumerate(new)})
        return self.levels[p]

    def ends(self, p: int, t) -> tuple:
        if p == 0:
            return t[0], t[0]
        return self.rl[t[0]], self.rr[t[-1]]

    def head(self, p: int, t):
        """t without its last entry (degree p-1 key)."""
        return t[:-1] if p > 1 else (self.rl[t[0]],)

    def tail(self, p: int, t):
        return t[1:] if p > 1 else (self.rr[t[0]],)


def tuples_for(A: FinDimAlgebra) -> _Tuples:
    T = getattr(A, "_tuples", None)
    if T is None:
        T = _Tuples(A)
        A._tuples = T
    return T


def _corners(A: FinDimAlgebra, left_cols, right_cols, dim):
    """Vertex pair of every basis vector of a bimodule, assuming adaptedness."""
    if A.vertices is None:
        return [0] * dim, [0] * dim
    lv, rv = [None] * dim, [None] * dim
    for t, a in enumerate(A.vertices):
        if left_cols is not None:
            for s in range(dim):
                if left_cols[a][s].get(s) == 1:
                    lv[s] = t
        if right_cols is not None:
            for s in range(dim):
                if right_cols[a][s].get(s) == 1:
                    rv[s] = t
    return lv, rv


def _side_vertices(A: FinDimAlgebra, cols, dim):
    if A.vertices is None:
        return [0] * dim
    out = [None] * dim
    for t, a in enumerate(A.vertices):
        for s in range(dim):
            if cols[a][s].get(s) == 1:
                out[s] = t
    return out


# ---------------------------------------------------------------- Hochschild

class HochschildComplex(LinearComplex):
    """E-relative cochain complex of A with coefficients in a bimodule M."""

    def __init__(self, A: FinDimAlgebra, M: Bimodule | None = None, cap: int = DEFAULT_CAP):
        super().__init__(A.field, cap)
        self.A = A
        if M is None:
            M = A.regular_bimodule()
        self.M_original = M
        if A.vertices is not None and M.algebra.vertices is not None and len(A.vertices) > 1:
            Mad, T = M.adapted()
        else:
            Mad, T = M, None
        self.M = Mad
        self._T = T
        self._Tcoords = None
        if T is not None and not _is_identity(T):
            cols = T.transpose().rows
            self._Tcoords = _Coordinates(cols, M.dim, A.field)
            self._Tcols = cols
        else:
            self._T = None
        self.tup = tuples_for(A)
        lv, rv = _corners(A, Mad.left, Mad.right, Mad.dim)
        self.corner: dict = {}
        for s in range(Mad.dim):
            self.corner.setdefault((lv[s], rv[s]), []).append(s)
        self.cpos = {}
        for lst in self.corner.values():
            for k, s in enumerate(lst):
                self.cpos[s] = k
        self._offsets: dict[int, list] = {}
        self._dims: dict[int, int] = {}

    # coordinates

    def _layout(self, p: int):
        if p not in self._offsets:
            lev = self.tup.level(p)
            offs = []
            acc = 0
            for t in lev:
                offs.append(acc)
                acc += len(self.corner.get(self.tup.ends(p, t), ()))
            self._offsets[p] = offs
            self._dims[p] = acc
        return self._offsets[p]

    def space_dim(self, p: int) -> int:
        self._layout(p)
        return self._dims[p]

    def coordinate(self, p: int, t, s) -> int:
        k = self.tup.index[p][t] if len(self.tup.index) > p else None
        if k is None:
            self.tup.level(p)
            k = self.tup.index[p][t]
        return self._layout(p)[k] + self.cpos[s]

    def value(self, p: int, vec: dict, t) -> dict:
        """Value of a cochain on a tuple, in the internal basis of M."""
        self.tup.level(p)
        k = self.tup.index[p].get(t)
        if k is None:
            return {}
        off = self._layout(p)[k]
        lst = self.corner.get(self.tup.ends(p, t), ())
        out = {}
        for j, s in enumerate(lst):
            x = vec.get(off + j)
            if x is not None and x != 0:
                out[s] = x
        return out

    def from_function(self, p: int, fn) -> dict:
        """Cochain vector from fn(tuple) -> internal M vector (dict)."""
        F = self.field
        offs = self._layout(p)
        vec = {}
        for k, t in enumerate(self.tup.level(p)):
            lst = self.corner.get(self.tup.ends(p, t), ())
            if not lst:
                continue
            val = fn(t)
            for j, s in enumerate(lst):
                x = F.norm(val.get(s, 0))
                if x != 0:
                    vec[offs[k] + j] = x
        return vec

    # conversion between the given basis of M and the internal one

    def to_internal(self, v: dict) -> dict:
        if self._T is None or not v:
            return v
        return self._Tcoords.of(v)

    def to_original(self, v: dict) -> dict:
        if self._T is None or not v:
            return v
        acc: dict = {}
        for j, x in v.items():
            for k, y in self._Tcols[j].items():
                acc[k] = acc.get(k, 0) + x * y
        F = self.field
        return {k: F.norm(x) for k, x in acc.items() if F.norm(x) != 0}

    # the differential

    def _build(self, p: int) -> SparseMatrix:
        F = self.field
        A, tup, M = self.A, self.tup, self.M
        rb = A.rbasis
        rmul = A.rmul()
        src_off = self._layout(p)
        dst_off = self._layout(p + 1)
        src_idx = tup.index[p]
        corner, cpos = self.corner, self.cpos
        nrows = self.space_dim(p + 1)
        rows = [dict() for _ in range(nrows)]
        sign_last = -1 if (p + 1) % 2 else 1
        for k, T in enumerate(tup.level(p + 1)):
            out_corner = corner.get(tup.ends(p + 1, T))
            if not out_corner:
                continue
            base = dst_off[k]
            b1, bl = rb[T[0]], rb[T[-1]]
            # b1 . f(T[1:])
            tl = tup.tail(p + 1, T)
            j = src_off[src_idx[tl]]
            for s in corner.get(tup.ends(p, tl), ()):
                col = j + cpos[s]
                for kk, c in M.left[b1][s].items():
                    r = rows[base + cpos[kk]]
                    r[col] = r.get(col, 0) + c
            # (-1)^{p+1} f(T[:-1]) . b_{p+1}
            hd = tup.head(p + 1, T)
            j = src_off[src_idx[hd]]
            for s in corner.get(tup.ends(p, hd), ()):
                col = j + cpos[s]
                for kk, c in M.right[bl][s].items():
                    r = rows[base + cpos[kk]]
                    r[col] = r.get(col, 0) + sign_last * c
            # middle terms
            for i in range(p):
                prod = rmul.get((T[i], T[i + 1]))
                if not prod:
                    continue
                sg = -1 if i % 2 == 0 else 1  # (-1)^{i+1}, positions counted from 1
                for c, g in prod.items():
                    t2 = T[:i] + (c,) + T[i + 2:]
                    j = src_off[src_idx[t2]]
                    for s in out_corner:
                        col = j + cpos[s]
                        r = rows[base + cpos[s]]
                        r[col] = r.get(col, 0) + sg * g
        D = SparseMatrix(nrows, self.space_dim(p), F, rows)
        return D.prune()


def _is_identity(T: SparseMatrix) -> bool:
    return all(r == {i: 1} for i, r in enumerate(T.rows))


class Cochain:
    """A cochain of a given degree in a HochschildComplex."""

    def __init__(self, cx: HochschildComplex, degree: int, vec: dict):
        self.complex = cx
        self.degree = degree
        self.vec = vec

    @classmethod
    def from_function(cls, cx, degree, fn, original_basis=True):
        if original_basis:
            return cls(cx, degree, cx.from_function(degree, lambda t: cx.to_internal(fn(t))))
        return cls(cx, degree, cx.from_function(degree, fn))

    def value(self, t) -> dict:
        """Value on a tuple of r-indices (or (v,) in degree 0), original basis."""
        cx = self.complex
        return cx.to_original(cx.value(self.degree, self.vec, tuple(t)))

    def zero_0(self) -> dict:
        """For degree 0: the element sum_v f(v) of M (original basis)."""
        acc: dict = {}
        for v in range(self.complex.A.nvert):
            for k, x in self.value((v,)).items():
                acc[k] = acc.get(k, 0) + x
        F = self.complex.field
        return {k: F.norm(x) for k, x in acc.items() if F.norm(x) != 0}

    def __add__(self, other):
        return Cochain(self.complex, self.degree, _vadd(self.complex.field, self.vec, other.vec, 1))

    def __sub__(self, other):
        return Cochain(self.complex, self.degree, _vadd(self.complex.field, self.vec, other.vec, -1))

    def scale(self, a) -> "Cochain":
        F = self.complex.field
        a = F.elem(a) if not isinstance(a, int) else F.norm(a)
        return Cochain(self.complex, self.degree, {k: F.norm(a * x) for k, x in self.vec.items() if F.norm(a * x)})

    def is_zero(self) -> bool:
        return not self.vec

    def is_cocycle(self) -> bool:
        return self.complex.is_cocycle(self.degree, self.vec)

    def differential(self) -> "Cochain":
        return Cochain(self.complex, self.degree + 1, self.complex.apply_d(self.degree, self.vec))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, nnz={len(self.vec)})"


def _vadd(F, u: dict, v: dict, c) -> dict:
    out = dict(u)
    for k, x in v.items():
        y = F.norm(out.get(k, 0) + c * x)
        if y == 0:
            out.pop(k, None)
        else:
            out[k] = y
    return out


class CohomologyResult:
    def __init__(self, complex_, dims, representatives):
        self.complex = complex_
        self.dims = dims
        self.representatives = representatives

    def __repr__(self):
        return f"CohomologyResult(dims={self.dims})"


def hochschild_complex(A: FinDimAlgebra, M: Bimodule | None = None, use_vertices=True,
                       cap: int = DEFAULT_CAP) -> HochschildComplex:
    if M is not None and M.algebra is not A and M.algebra.dim != A.dim:
        raise BadParameters("bimodule belongs to another algebra")
    if not use_vertices:
        B = A.bar_version()
        if M is None:
            M = A.regular_bimodule()
        return HochschildComplex(B, M, cap)
    return HochschildComplex(A, M, cap)


def hochschild_cohomology(A: FinDimAlgebra, M: Bimodule | None = None, p_max: int = 4,
                          use_vertices=True, cap: int = DEFAULT_CAP, representatives=True) -> CohomologyResult:
    """Dimensions (and representative cocycles) of H^p(A, M), 0 <= p <= p_max."""
    if p_max < 0:
        raise BadParameters("p_max must be >= 0")
    cx = hochschild_complex(A, M, use_vertices, cap)
    dims = cx.dims(p_max)
    reps = None
    if representatives:
        reps = [[Cochain(cx, p, v) for v in cx.representatives(p)] for p in range(p_max + 1)]
    return CohomologyResult(cx, dims, reps)


def is_coboundary(c: Cochain):
    """(True, witness Cochain) if c is a coboundary, else (False, None)."""
    w = c.complex.coboundary_witness(c.degree, c.vec)
    if w is None:
        return False, None
    return True, Cochain(c.complex, c.degree - 1, w)


def class_coordinates(c: Cochain) -> list:
    return c.complex.class_coords(c.degree, c.vec)


# ---------------------------------------------------------------- cup product

def cup(f: Cochain, g: Cochain) -> Cochain:
    """(f cup g)(b1..b_{p+q}) = f(b1..bp) g(b_{p+1}..b_{p+q}), coefficients in A."""
    cx = f.complex
    if g.complex is not cx:
        raise BadParameters("cochains live in different complexes")
    A = cx.A
    if cx.M.dim != A.dim or cx._T is not None:
        raise BadParameters("cup product needs coefficients in A")
    p, q = f.degree, g.degree
    tup = cx.tup

    def fn(t):
        if p + q == 0:
            return A.sparse_product(cx.value(0, f.vec, t), cx.value(0, g.vec, t))
        if p == 0:
            left = (tup.rl[t[0]],)
        else:
            left = t[:p]
        if q == 0:
            right = (tup.rr[t[-1]],)
        else:
            right = t[p:]
        a = cx.value(p, f.vec, left)
        if not a:
            return {}
        b = cx.value(q, g.vec, right)
        if not b:
            return {}
        return A.sparse_product(a, b)

    return Cochain(cx, p + q, cx.from_function(p + q, fn))


# ---------------------------------------------------------------- bracket

def inflate(f: Cochain, target: HochschildComplex | None = None) -> Cochain:
    """Pull an E-relative cochain back to the normalized bar complex over k.1."""
    cx = f.complex
    A = cx.A
    if A.vertices is None or len(A.vertices) == 1:
        return f
    B = A.bar_version()
    if target is None:
        target = getattr(cx, "_bar_complex", None)
        if target is None:
            target = HochschildComplex(B, cx.M_original, cx.cap)
            cx._bar_complex = target
    p = f.degree
    rpos = A.rpos
    tupA = cx.tup
    brb = B.rbasis

    if p == 0:
        m0 = f.zero_0()
        return Cochain(target, 0, target.from_function(0, lambda t: target.to_internal(m0)))

    def fn(t):
        idx = []
        for b in t:
            a = brb[b]
            if a not in rpos:
                return {}
            idx.append(rpos[a])
        for x, y in zip(idx, idx[1:]):
            if tupA.rr[x] != tupA.rl[y]:
                return {}
        return target.to_internal(cx.to_original(cx.value(p, f.vec, tuple(idx))))

    return Cochain(target, p, target.from_function(p, fn))


def _circ_i(cx: HochschildComplex, f: Cochain, g: Cochain, i: int) -> dict:
    """Vector of f o_i g (positions from 1) in degree p + q - 1."""
    A = cx.A
    F = cx.field
    p, q = f.degree, g.degree
    n = p + q - 1
    g0 = g.zero_0() if q == 0 else None

    def fn(t):
        if q == 0:
            inner = A.project_r(g0)
        else:
            inner = A.project_r(cx.value(q, g.vec, tuple(t[i - 1:i - 1 + q])))
        acc: dict = {}
        for c, x in inner.items():
            tt = tuple(t[:i - 1]) + (c,) + tuple(t[i - 1 + q:])
            for k, y in cx.value(p, f.vec, tt).items():
                acc[k] = acc.get(k, 0) + x * y
        return {k: F.norm(v) for k, v in acc.items() if F.norm(v) != 0}

    if n == 0:
        # only possible for p = 1, q = 0: f(g0)
        val = fn(())
        return cx.from_function(0, lambda t: val)
    return cx.from_function(n, fn)


def gerstenhaber_bracket(f: Cochain, g: Cochain) -> Cochain:
    """[f,g] = f o g - (-1)^{(|f|-1)(|g|-1)} g o f on the normalized bar complex."""
    if f.complex is not g.complex:
        raise BadParameters("cochains live in different complexes")
    f, g = inflate(f), inflate(g)
    cx = f.complex
    A = cx.A
    if cx.M.dim != A.dim or cx._T is not None:
        raise BadParameters("the bracket needs coefficients in A")
    F = cx.field
    p, q = f.degree, g.degree
    n = p + q - 1
    if n < 0:
        return Cochain(cx, 0, {})

    def circ(a, b):
        acc: dict = {}
        for i in range(1, a.degree + 1):
            sg = -1 if ((i - 1) * (b.degree - 1)) % 2 else 1
            acc = _vadd(F, acc, _circ_i(cx, a, b, i), sg)
        return acc

    fg = circ(f, g)
    gf = circ(g, f)
    sg = -1 if ((p - 1) * (q - 1)) % 2 else 1
    return Cochain(cx, n, _vadd(F, fg, gf, -sg))


# ---------------------------------------------------------------- coefficient maps

def _check_bimodule_map(M: Bimodule, N: Bimodule, theta: SparseMatrix):
    A = M.algebra
    cols = theta.transpose().rows  # theta(m_s)
    for i in range(A.dim):
        for s in range(M.dim):
            lhs = _apply_cols(cols, M.act_left(i, {s: 1}), A.field)
            rhs = N.act_left_vec({i: 1}, cols[s])
            if lhs != rhs:
                raise NotABimoduleMap("map does not commute with the left action")
            lhs = _apply_cols(cols, M.act_right(i, {s: 1}), A.field)
            rhs = N.act_right_vec(cols[s], {i: 1})
            if lhs != rhs:
                raise NotABimoduleMap("map does not commute with the right action")


def _apply_cols(cols, v: dict, F) -> dict:
    acc: dict = {}
    for s, x in v.items():
        for k, y in cols[s].items():
            acc[k] = acc.get(k, 0) + x * y
    return {k: F.norm(a) for k, a in acc.items() if F.norm(a) != 0}


def transport(c: Cochain, target: HochschildComplex, linear) -> Cochain:
    """Apply a linear map (function on original-basis dicts) to the values."""
    cx = c.complex
    p = c.degree

    def fn(t):
        return target.to_internal(linear(cx.to_original(cx.value(p, c.vec, t))))

    return Cochain(target, p, target.from_function(p, fn))


def matrix_map(theta: SparseMatrix):
    cols = theta.transpose().rows
    F = theta.field
    return lambda v: _apply_cols(cols, v, F)


def map_matrix(source: HochschildComplex, target: HochschildComplex, p: int, linear) -> SparseMatrix:
    """Matrix of the induced map H^p(source) -> H^p(target) in representative bases."""
    reps = source.representatives(p)
    nt = target.h_dim(p)
    F = source.field
    M = SparseMatrix(nt, len(reps), F)
    for j, r in enumerate(reps):
        img = transport(Cochain(source, p, r), target, linear)
        coords = target.class_coords(p, img.vec)
        for i, x in enumerate(coords):
            if x != 0:
                M.rows[i][j] = x
    return M


def induced_coefficient_map(A: FinDimAlgebra, theta: SparseMatrix, M: Bimodule, N: Bimodule, p: int,
                            complexes=None) -> SparseMatrix:
    """H^p(A, M) -> H^p(A, N) induced by a bimodule map theta (dim N x dim M)."""
    if theta.shape != (N.dim, M.dim):
        raise NotABimoduleMap("map has the wrong shape")
    _check_bimodule_map(M, N, theta)
    if complexes is None:
        complexes = (HochschildComplex(A, M), HochschildComplex(A, N))
    return map_matrix(complexes[0], complexes[1], p, matrix_map(theta))


def pullback_cochain(c: Cochain, phi: SparseMatrix, target: HochschildComplex) -> Cochain:
    """(phi^* f)(a1..ap) = f(phi a1, ..., phi ap), f a cochain over B."""
    cxB = c.complex
    B = cxB.A
    A = target.A
    F = A.field
    p = c.degree
    phicols = phi.transpose().rows  # phi(b_i) in B coordinates
    tupB = cxB.tup
    images = [B.project_r(phicols[i]) for i in A.rbasis]

    if p == 0:
        m0 = c.zero_0()
        return Cochain(target, 0, target.from_function(0, lambda t: target.to_internal(m0)))

    def fn(t):
        supports = [images[a] for a in t]
        if any(not s for s in supports):
            return {}
        acc: dict = {}
        for combo in _iproduct(*[list(s.items()) for s in supports]):
            idx = tuple(b for b, _ in combo)
            ok = all(tupB.rr[x] == tupB.rl[y] for x, y in zip(idx, idx[1:]))
            if not ok:
                continue
            coef = 1
            for _, x in combo:
                coef *= x
            for k, y in cxB.to_original(cxB.value(p, c.vec, idx)).items():
                acc[k] = acc.get(k, 0) + coef * y
        return target.to_internal({k: F.norm(v) for k, v in acc.items() if F.norm(v) != 0})

    return Cochain(target, p, target.from_function(p, fn))


def _check_phi_compatible(A: FinDimAlgebra, B: FinDimAlgebra, phi: SparseMatrix):
    cols = phi.transpose().rows
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = _apply_cols(cols, A.mult[i][j], A.field)
            rhs = B.sparse_product(cols[i], cols[j])
            if lhs != rhs:
                raise BadParameters("phi is not multiplicative")
    if A.vertices is not None and len(A.vertices) > 1:
        allowed = set(B.vertices or [])
        for v in A.vertices:
            img = cols[v]
            if B.vertices is None:
                if img and img != {k: x for k, x in enumerate(B.unit) if x}:
                    raise BadParameters("phi does not map E_A into E_B")
            elif any(k not in allowed for k in img):
                raise BadParameters("phi does not map E_A into E_B")


def pullback_map(A: FinDimAlgebra, B: FinDimAlgebra, phi: SparseMatrix, M: Bimodule, p: int,
                 complexes=None) -> SparseMatrix:
    """H^p(B, M) -> H^p(A, M) for a surjection phi: A -> B (dim B x dim A)."""
    _check_phi_compatible(A, B, phi)
    if complexes is None:
        complexes = (HochschildComplex(B, M), HochschildComplex(A, M.restrict(phi, A)))
    cxB, cxA = complexes
    reps = cxB.representatives(p)
    out = SparseMatrix(cxA.h_dim(p), len(reps), A.field)
    for j, r in enumerate(reps):
        img = pullback_cochain(Cochain(cxB, p, r), phi, cxA)
        for i, x in enumerate(cxA.class_coords(p, img.vec)):
            if x != 0:
                out.rows[i][j] = x
    return out


# ---------------------------------------------------------------- one-sided Ext

class OneSidedExtComplex(LinearComplex):
    """Hom_A(A (x)_E r^{(x)_E p} (x)_E M, N) for left A-modules M, N."""

    def __init__(self, A: FinDimAlgebra, M: Module, N: Module, cap: int = DEFAULT_CAP):
        super().__init__(A.field, cap)
        if M.side != "left" or N.side != "left":
            raise BadParameters("Ext is computed between left modules")
        self.A = A
        self.M = M.adapted() if A.vertices is not None else M
        self.N = N.adapted() if A.vertices is not None else N
        self.tup = tuples_for(A)
        self.vm = _side_vertices(A, self.M.action, self.M.dim)
        self.vn = _side_vertices(A, self.N.action, self.N.dim)
        self.corner: dict = {}
        for s in range(self.M.dim):
            for n in range(self.N.dim):
                self.corner.setdefault((self.vn[n], self.vm[s]), []).append((s, n))
        self.cpos = {}
        for lst in self.corner.values():
            for k, sn in enumerate(lst):
                self.cpos[sn] = k
        self._offsets: dict = {}
        self._dims: dict = {}

    def _layout(self, p):
        if p not in self._offsets:
            offs, acc = [], 0
            for t in self.tup.level(p):
                offs.append(acc)
                acc += len(self.corner.get(self.tup.ends(p, t), ()))
            self._offsets[p] = offs
            self._dims[p] = acc
        return self._offsets[p]

    def space_dim(self, p):
        self._layout(p)
        return self._dims[p]

    def _build(self, p):
        A, tup = self.A, self.tup
        rb = A.rbasis
        rmul = A.rmul()
        src_off, dst_off = self._layout(p), self._layout(p + 1)
        src_idx = tup.index[p]
        corner, cpos = self.corner, self.cpos
        Macts, Nacts = self.M.action, self.N.action
        rows = [dict() for _ in range(self.space_dim(p + 1))]
        sign_last = -1 if (p + 1) % 2 else 1
        for k, T in enumerate(tup.level(p + 1)):
            oc = corner.get(tup.ends(p + 1, T))
            if not oc:
                continue
            base = dst_off[k]
            b1, bl = rb[T[0]], rb[T[-1]]
            tl = tup.tail(p + 1, T)
            j = src_off[src_idx[tl]]
            # b1 . f(T[1:] (x) m)
            for (s, n) in corner.get(tup.ends(p, tl), ()):
                col = j + cpos[(s, n)]
                for n2, c in Nacts[b1][n].items():
                    r = rows[base + cpos[(s, n2)]]
                    r[col] = r.get(col, 0) + c
            # (-1)^{p+1} f(T[:-1] (x) b_{p+1} m)
            hd = tup.head(p + 1, T)
            j = src_off[src_idx[hd]]
            hc = corner.get(tup.ends(p, hd), ())
            hpos = {sn: t for t, sn in enumerate(hc)}
            for (s, n) in oc:
                for s2, c in Macts[bl][s].items():
                    t = hpos.get((s2, n))
                    if t is None:
                        continue
                    r = rows[base + cpos[(s, n)]]
                    r[j + t] = r.get(j + t, 0) + sign_last * c
            for i in range(p):
                prod = rmul.get((T[i], T[i + 1]))
                if not prod:
                    continue
                sg = -1 if i % 2 == 0 else 1
                for c, g in prod.items():
                    t2 = T[:i] + (c,) + T[i + 2:]
                    j = src_off[src_idx[t2]]
                    for sn in oc:
                        col = j + cpos[sn]
                        r = rows[base + cpos[sn]]
                        r[col] = r.get(col, 0) + sg * g
        return SparseMatrix(len(rows), self.space_dim(p), self.field, rows).prune()


def onesided_ext(A: FinDimAlgebra, M: Module, N: Module, p_max: int = 4, cap: int = DEFAULT_CAP) -> list:
    """dim Ext_A^p(M, N) for 0 <= p <= p_max (left modules)."""
    return OneSidedExtComplex(A, M, N, cap).dims(p_max)


# ---------------------------------------------------------------- Tor

class _TorDual(LinearComplex):
    """Dual of the chain complex X (x)_E r^{(x)_E q} (x)_E Y computing Tor^A(X, Y).

    X is a right and Y a left A-module.  The coboundary in degree q is the
    transpose of the boundary
    x a1..aq y -> xa1 a2..aq y + sum (-1)^i ..a_i a_{i+1}.. + (-1)^q ..a_{q-1} a_q y.
    """

    def __init__(self, A: FinDimAlgebra, X: Module, Y: Module, cap: int = DEFAULT_CAP):
        super().__init__(A.field, cap)
        if X.side != "right" or Y.side != "left":
            raise BadParameters("Tor needs a right module and a left module")
        self.A = A
        self.X = X.adapted() if A.vertices is not None else X
        self.Y = Y.adapted() if A.vertices is not None else Y
        self.tup = tuples_for(A)
        vx = _side_vertices(A, self.X.action, self.X.dim)
        vy = _side_vertices(A, self.Y.action, self.Y.dim)
        self.corner: dict = {}
        for x in range(self.X.dim):
            for y in range(self.Y.dim):
                self.corner.setdefault((vx[x], vy[y]), []).append((x, y))
        self.cpos = {}
        for lst in self.corner.values():
            for k, xy in enumerate(lst):
                self.cpos[xy] = k
        self._offsets: dict = {}
        self._dims: dict = {}

    def _layout(self, p):
        if p not in self._offsets:
            offs, acc = [], 0
            for t in self.tup.level(p):
                offs.append(acc)
                acc += len(self.corner.get(self.tup.ends(p, t), ()))
            self._offsets[p] = offs
            self._dims[p] = acc
        return self._offsets[p]

    def space_dim(self, p):
        self._layout(p)
        return self._dims[p]

    def _build(self, p):
        # rows: chains of degree p+1; entries: their boundary in degree p
        A, tup = self.A, self.tup
        rb = A.rbasis
        rmul = A.rmul()
        src_off, dst_off = self._layout(p), self._layout(p + 1)
        src_idx = tup.index[p]
        corner, cpos = self.corner, self.cpos
        Xa, Ya = self.X.action, self.Y.action
        rows = [dict() for _ in range(self.space_dim(p + 1))]
        sign_last = -1 if (p + 1) % 2 else 1
        for k, T in enumerate(tup.level(p + 1)):
            oc = corner.get(tup.ends(p + 1, T))
            if not oc:
                continue
            base = dst_off[k]
            b1, bl = rb[T[0]], rb[T[-1]]
            tl = tup.tail(p + 1, T)
            j = src_off[src_idx[tl]]
            tc = {xy: t for t, xy in enumerate(corner.get(tup.ends(p, tl), ()))}
            hd = tup.head(p + 1, T)
            jh = src_off[src_idx[hd]]
            hc = {xy: t for t, xy in enumerate(corner.get(tup.ends(p, hd), ()))}
            for (x, y) in oc:
                r = rows[base + cpos[(x, y)]]
                for x2, c in Xa[b1][x].items():
                    t = tc.get((x2, y))
                    if t is not None:
                        r[j + t] = r.get(j + t, 0) + c
                for y2, c in Ya[bl][y].items():
                    t = hc.get((x, y2))
                    if t is not None:
                        r[jh + t] = r.get(jh + t, 0) + sign_last * c
            for i in range(p):
                prod = rmul.get((T[i], T[i + 1]))
                if not prod:
                    continue
                sg = -1 if i % 2 == 0 else 1
                for c, g in prod.items():
                    t2 = T[:i] + (c,) + T[i + 2:]
                    j2 = src_off[src_idx[t2]]
                    for xy in oc:
                        r = rows[base + cpos[xy]]
                        col = j2 + cpos[xy]
                        r[col] = r.get(col, 0) + sg * g
        return SparseMatrix(len(rows), self.space_dim(p), self.field, rows).prune()


def tor_dims(A: FinDimAlgebra, X: Module, Y: Module, q_max: int = 4, cap: int = DEFAULT_CAP) -> list:
    """dim Tor_q^A(X, Y) for 0 <= q <= q_max."""
    return _TorDual(A, X, Y, cap).dims(q_max)


def tor_via_relative_bar(A: FinDimAlgebra, I: SubBimodule, q_max: int = 4, cap: int = DEFAULT_CAP) -> list:
    """dim Tor_q^A(B, B) with B = A/I, for 0 <= q <= q_max."""
    from .algebra import quotient_algebra, bimodule_as_module

    B, phi, _ = quotient_algebra(A, I)
    BA = B.regular_bimodule().restrict(phi, A)
    return tor_dims(A, bimodule_as_module(BA, "right"), bimodule_as_module(BA, "left"), q_max, cap)
