"""Finite-dimensional algebras by structure constants, and their modules.

Conventions
-----------
* Vectors are dense lists of raw field values (see ``exactmath.field``).
* ``mult[i][j]`` is the product of basis elements i and j as a sparse dict.
* Action matrices act on column vectors and are stored column-wise:
  ``left[i][s]`` is the sparse vector ``b_i . m_s``.
* The marked separable subalgebra E is either spanned by orthogonal
  idempotent basis elements ("vertices"), or is k.1.  When the unit is
  itself a basis element, k.1 is stored as a single vertex.
"""

from __future__ import annotations

from .errors import BadBimodule, BadParameters, BadStructure, NotAnIdeal, NotIdempotent
from .exactmath import FieldSpec, Poly, SparseMatrix, analyze, rref
from .exactmath.poly import poly_divmod


def _vec_add(acc: dict, v: dict, c=1):
    for k, x in v.items():
        acc[k] = acc.get(k, 0) + c * x


def _clean(F, d: dict) -> dict:
    out = {}
    for k, x in d.items():
        x = F.norm(x)
        if x != 0:
            out[k] = x
    return out


def _dense(d: dict, n: int) -> list:
    v = [0] * n
    for k, x in d.items():
        v[k] = x
    return v


def _sparse(v) -> dict:
    return {k: x for k, x in enumerate(v) if x != 0}


class FinDimAlgebra:
    """A unital associative algebra given by structure constants."""

    def __init__(self, field: FieldSpec, mult, unit, labels=None, e_idempotents=None, check=True,
                 unit_only=False):
        self.field = field
        F = field
        self.dim = n = len(mult)
        self.mult = [[_clean(F, mult[i][j]) for j in range(n)] for i in range(n)]
        self.unit = [F.elem(x) if not isinstance(x, int) else F.norm(x) for x in unit]
        if len(self.unit) != n:
            raise BadStructure("unit has the wrong length")
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(n)]
        if e_idempotents is None and not unit_only:
            nz = [i for i, x in enumerate(self.unit) if x != 0]
            if len(nz) == 1 and self.unit[nz[0]] == 1:
                e_idempotents = [nz[0]]
        self.vertices = list(e_idempotents) if e_idempotents is not None else None
        if check:
            self.check()
        self._setup_e()

    # ------------------------------------------------------------ structure

    def product(self, u, v) -> list:
        """Product of two dense vectors."""
        F = self.field
        acc: dict = {}
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.mult[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                _vec_add(acc, row[j], a * b)
        return _dense(_clean(F, acc), self.dim)

    def sparse_product(self, u: dict, v: dict) -> dict:
        acc: dict = {}
        for i, a in u.items():
            row = self.mult[i]
            for j, b in v.items():
                _vec_add(acc, row[j], a * b)
        return _clean(self.field, acc)

    def basis_vector(self, i) -> list:
        v = [0] * self.dim
        v[i] = 1
        return v

    def check(self):
        n, F = self.dim, self.field
        u = _sparse(self.unit)
        for i in range(n):
            e = {i: 1}
            if self.sparse_product(u, e) != e or self.sparse_product(e, u) != e:
                raise BadStructure(f"unit law fails on basis element {self.labels[i]}")
        for i in range(n):
            for j in range(n):
                ij = self.mult[i][j]
                for k in range(n):
                    left = self.sparse_product(ij, {k: 1})
                    right = self.sparse_product({i: 1}, self.mult[j][k])
                    if left != right:
                        raise BadStructure(f"associativity fails on ({i},{j},{k})")
        if self.vertices is not None:
            acc: dict = {}
            for a in self.vertices:
                for b in self.vertices:
                    expect = {a: 1} if a == b else {}
                    if self.mult[a][b] != expect:
                        raise BadStructure("marked idempotents are not orthogonal idempotents")
                acc[a] = 1
            if _clean(F, acc) != u:
                raise BadStructure("marked idempotents do not sum to 1")
            for i in range(n):
                ls = [a for a in self.vertices if self.mult[a][i] == {i: 1}]
                rs = [a for a in self.vertices if self.mult[i][a] == {i: 1}]
                lz = all(self.mult[a][i] == {} for a in self.vertices if a not in ls)
                rz = all(self.mult[i][a] == {} for a in self.vertices if a not in rs)
                if len(ls) != 1 or len(rs) != 1 or not lz or not rz:
                    raise BadStructure(f"basis element {self.labels[i]} is not homogeneous for E")

    def _setup_e(self):
        n = self.dim
        if self.vertices is not None:
            vpos = {a: t for t, a in enumerate(self.vertices)}
            self.nvert = len(self.vertices)
            self.lvert = [0] * n
            self.rvert = [0] * n
            for i in range(n):
                for a in self.vertices:
                    if self.mult[a][i].get(i) == 1:
                        self.lvert[i] = vpos[a]
                    if self.mult[i][a].get(i) == 1:
                        self.rvert[i] = vpos[a]
            vset = set(self.vertices)
            self.rbasis = [i for i in range(n) if i not in vset]
            self.unit_pivot = None
        else:
            self.nvert = 1
            self.lvert = [0] * n
            self.rvert = [0] * n
            self.unit_pivot = max(i for i, x in enumerate(self.unit) if x != 0)
            self.rbasis = [i for i in range(n) if i != self.unit_pivot]
        self.rpos = {b: t for t, b in enumerate(self.rbasis)}
        self._rmul = None

    def bar_version(self) -> "FinDimAlgebra":
        """The same algebra with E = k.1 (normalized bar complex)."""
        if self.vertices is None or len(self.vertices) == 1:
            return self
        if getattr(self, "_bar", None) is None:
            self._bar = FinDimAlgebra(self.field, self.mult, self.unit, self.labels, check=False, unit_only=True)
        return self._bar

    @property
    def e_idempotents(self):
        return self.vertices

    def project_r(self, v: dict) -> dict:
        """Projection A -> r along E, in r coordinates."""
        F = self.field
        if self.unit_pivot is None:
            return {self.rpos[k]: x for k, x in v.items() if k in self.rpos}
        j0 = self.unit_pivot
        c = v.get(j0, 0)
        if c == 0:
            return {self.rpos[k]: x for k, x in v.items() if k != j0}
        s = F.div(c, self.unit[j0])
        out = {}
        for k in self.rbasis:
            x = F.norm(v.get(k, 0) - s * self.unit[k])
            if x != 0:
                out[self.rpos[k]] = x
        return out

    def rmul(self):
        """Table of pi(r_a r_b) in r coordinates, for composable pairs."""
        if self._rmul is None:
            tab = {}
            rb = self.rbasis
            for a, i in enumerate(rb):
                for b, j in enumerate(rb):
                    if self.rvert[i] != self.lvert[j]:
                        continue
                    pr = self.project_r(self.mult[i][j])
                    if pr:
                        tab[(a, b)] = pr
            self._rmul = tab
        return self._rmul

    def vertex_vector(self, t: int) -> list:
        """The t-th idempotent of E as a vector (the unit when E = k.1)."""
        if self.vertices is None:
            return list(self.unit)
        return self.basis_vector(self.vertices[t])

    def regular_bimodule(self) -> "Bimodule":
        n = self.dim
        left = [[self.mult[i][s] for s in range(n)] for i in range(n)]
        right = [[self.mult[s][i] for s in range(n)] for i in range(n)]
        return Bimodule(self, n, left, right, check=False, labels=self.labels)

    def __repr__(self):
        return f"FinDimAlgebra(dim={self.dim}, {self.field!r})"


# ---------------------------------------------------------------- modules

class Bimodule:
    """An A-bimodule given by left and right action matrices (column dicts)."""

    def __init__(self, algebra: FinDimAlgebra, dim: int, left, right, check=True, labels=None):
        self.algebra = algebra
        self.dim = dim
        F = algebra.field
        self.left = [[_clean(F, c) for c in mat] for mat in left]
        self.right = [[_clean(F, c) for c in mat] for mat in right]
        self.labels = labels
        if check:
            self.check()
        self._corner = None

    @classmethod
    def from_matrices(cls, algebra, L, R, check=True):
        """Build from dense matrices L[i], R[i] acting on column vectors."""
        F = algebra.field
        dim = len(L[0]) if L else 0

        def cols(M):
            return [{r: F.elem(M[r][c]) for r in range(dim) if F.elem(M[r][c]) != 0} for c in range(dim)]

        return cls(algebra, dim, [cols(M) for M in L], [cols(M) for M in R], check=check)

    def act_left(self, i: int, v: dict) -> dict:
        acc: dict = {}
        col = self.left[i]
        for s, x in v.items():
            _vec_add(acc, col[s], x)
        return _clean(self.algebra.field, acc)

    def act_right(self, i: int, v: dict) -> dict:
        acc: dict = {}
        col = self.right[i]
        for s, x in v.items():
            _vec_add(acc, col[s], x)
        return _clean(self.algebra.field, acc)

    def act_left_vec(self, a: dict, v: dict) -> dict:
        acc: dict = {}
        for i, c in a.items():
            _vec_add(acc, self.act_left(i, v), c)
        return _clean(self.algebra.field, acc)

    def act_right_vec(self, v: dict, a: dict) -> dict:
        acc: dict = {}
        for i, c in a.items():
            _vec_add(acc, self.act_right(i, v), c)
        return _clean(self.algebra.field, acc)

    def left_matrix(self, i) -> SparseMatrix:
        return _cols_to_matrix(self.left[i], self.dim, self.algebra.field)

    def right_matrix(self, i) -> SparseMatrix:
        return _cols_to_matrix(self.right[i], self.dim, self.algebra.field)

    def check(self):
        A = self.algebra
        n = A.dim
        u = _sparse(A.unit)
        for s in range(self.dim):
            e = {s: 1}
            if self.act_left_vec(u, e) != e or self.act_right_vec(e, u) != e:
                raise BadBimodule("unit does not act as the identity")
        for i in range(n):
            for j in range(n):
                ij = A.mult[i][j]
                for s in range(self.dim):
                    e = {s: 1}
                    if self.act_left_vec(ij, e) != self.act_left(i, self.act_left(j, e)):
                        raise BadBimodule("left action is not associative")
                    if self.act_right_vec(e, ij) != self.act_right(j, self.act_right(i, e)):
                        raise BadBimodule("right action is not associative")
                    if self.act_right(j, self.act_left(i, e)) != self.act_left(i, self.act_right(j, e)):
                        raise BadBimodule("left and right actions do not commute")

    # E-adapted basis: every basis vector lies in some e_a M e_b

    def corners(self):
        """(lv, rv) vertex of each basis vector, or None if not adapted."""
        if self._corner is None:
            A = self.algebra
            if A.vertices is None:
                self._corner = ([0] * self.dim, [0] * self.dim)
            else:
                lv, rv = [None] * self.dim, [None] * self.dim
                ok = True
                for s in range(self.dim):
                    e = {s: 1}
                    for t, a in enumerate(A.vertices):
                        x = self.act_left(a, e)
                        if x == e:
                            if lv[s] is not None:
                                ok = False
                            lv[s] = t
                        elif x:
                            ok = False
                        y = self.act_right(a, e)
                        if y == e:
                            if rv[s] is not None:
                                ok = False
                            rv[s] = t
                        elif y:
                            ok = False
                    if lv[s] is None or rv[s] is None:
                        ok = False
                self._corner = (lv, rv) if ok else False
        return self._corner or None

    def adapted(self):
        """Return (M', T): M' isomorphic with an E-adapted basis, T the basis
        change (column j of T is the j-th new basis vector in old coordinates)."""
        if self.corners() is not None:
            return self, SparseMatrix.identity(self.dim, self.algebra.field)
        A = self.algebra
        F = A.field
        newbasis = []
        for a in A.vertices:
            for b in A.vertices:
                # image of m -> e_a m e_b
                cols = [self.act_right(b, self.act_left(a, {s: 1})) for s in range(self.dim)]
                M = SparseMatrix(self.dim, self.dim, F, [dict() for _ in range(self.dim)])
                for s, c in enumerate(cols):
                    for k, x in c.items():
                        M.rows[s][k] = x
                _, rows = rref(M)
                newbasis.extend(rows)
        return self.change_basis(newbasis)

    def change_basis(self, newbasis: list):
        """Rewrite the module in a new basis (list of sparse vectors)."""
        A = self.algebra
        F = A.field
        n = self.dim
        if len(newbasis) != n:
            raise BadBimodule("basis change has the wrong size")
        T = SparseMatrix(n, n, F)
        for j, v in enumerate(newbasis):
            for k, x in v.items():
                T.rows[k][j] = x
        coords = _Coordinates(newbasis, n, F)

        def conj(cols):
            return [coords.of(self._apply(cols, v)) for v in newbasis]

        left = [conj(self.left[i]) for i in range(A.dim)]
        right = [conj(self.right[i]) for i in range(A.dim)]
        return Bimodule(A, n, left, right, check=False), T

    def _apply(self, cols, v: dict) -> dict:
        acc: dict = {}
        for s, x in v.items():
            _vec_add(acc, cols[s], x)
        return _clean(self.algebra.field, acc)

    def restrict(self, phi: SparseMatrix, source: FinDimAlgebra) -> "Bimodule":
        """View as a bimodule over ``source`` through the algebra map phi
        (phi given as a dim(target) x dim(source) matrix)."""
        cols = phi.transpose().rows  # cols[i] = phi(b_i)
        left = [[self.act_left_vec(cols[i], {s: 1}) for s in range(self.dim)] for i in range(source.dim)]
        right = [[self.act_right_vec({s: 1}, cols[i]) for s in range(self.dim)] for i in range(source.dim)]
        return Bimodule(source, self.dim, left, right, check=False)

    def __repr__(self):
        return f"Bimodule(dim={self.dim} over {self.algebra!r})"


class Module:
    """A one-sided module: ``side`` is "left" or "right"."""

    def __init__(self, algebra: FinDimAlgebra, dim: int, action, side: str = "left", check=True):
        if side not in ("left", "right"):
            raise BadParameters("side must be 'left' or 'right'")
        self.algebra = algebra
        self.dim = dim
        self.side = side
        F = algebra.field
        self.action = [[_clean(F, c) for c in mat] for mat in action]
        if check:
            self.check()

    @classmethod
    def from_matrices(cls, algebra, mats, side="left", check=True):
        F = algebra.field
        dim = len(mats[0]) if mats else 0
        cols = [
            [{r: F.elem(M[r][c]) for r in range(dim) if F.elem(M[r][c]) != 0} for c in range(dim)]
            for M in mats
        ]
        return cls(algebra, dim, cols, side, check)

    def act(self, i: int, v: dict) -> dict:
        acc: dict = {}
        col = self.action[i]
        for s, x in v.items():
            _vec_add(acc, col[s], x)
        return _clean(self.algebra.field, acc)

    def act_vec(self, a: dict, v: dict) -> dict:
        acc: dict = {}
        for i, c in a.items():
            _vec_add(acc, self.act(i, v), c)
        return _clean(self.algebra.field, acc)

    def check(self):
        A = self.algebra
        u = _sparse(A.unit)
        for s in range(self.dim):
            if self.act_vec(u, {s: 1}) != {s: 1}:
                raise BadBimodule("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                ij = A.mult[i][j]
                for s in range(self.dim):
                    e = {s: 1}
                    if self.side == "left":
                        ok = self.act_vec(ij, e) == self.act(i, self.act(j, e))
                    else:
                        ok = self.act_vec(ij, e) == self.act(j, self.act(i, e))
                    if not ok:
                        raise BadBimodule(f"{self.side} action is not associative")

    def vertex_of(self):
        """Vertex of each basis vector (side-appropriate), or None."""
        A = self.algebra
        if A.vertices is None:
            return [0] * self.dim
        out = []
        for s in range(self.dim):
            hit = None
            for t, a in enumerate(A.vertices):
                x = self.act(a, {s: 1})
                if x == {s: 1}:
                    if hit is not None:
                        return None
                    hit = t
                elif x:
                    return None
            if hit is None:
                return None
            out.append(hit)
        return out

    def adapted(self) -> "Module":
        if self.vertex_of() is not None:
            return self
        A = self.algebra
        F = A.field
        newbasis = []
        for a in A.vertices:
            M = SparseMatrix(self.dim, self.dim, F)
            for s in range(self.dim):
                for k, x in self.act(a, {s: 1}).items():
                    M.rows[s][k] = x
            newbasis.extend(rref(M)[1])
        coords = _Coordinates(newbasis, self.dim, F)
        acts = []
        for i in range(A.dim):
            acts.append([coords.of(self.act_vec({i: 1}, v)) for v in newbasis])
        return Module(A, self.dim, acts, self.side, check=False)

    def dual(self) -> "Module":
        """D(M) = Hom_k(M, k), with the opposite side action."""
        F = self.algebra.field
        acts = []
        for mat in self.action:
            cols = [dict() for _ in range(self.dim)]
            for s, col in enumerate(mat):
                for k, x in col.items():
                    cols[k][s] = x
            acts.append(cols)
        side = "right" if self.side == "left" else "left"
        del F
        return Module(self.algebra, self.dim, acts, side, check=False)

    def __repr__(self):
        return f"Module({self.side}, dim={self.dim} over {self.algebra!r})"


class _Coordinates:
    """Coordinates with respect to a basis of a subspace (exact)."""

    def __init__(self, basis: list, n: int, F: FieldSpec):
        self.F = F
        self.n = n
        self.k = len(basis)
        # RREF of the basis, remembering the transformation
        rows = []
        for t, v in enumerate(basis):
            r = dict(v)
            for j in range(self.k):
                r[n + j] = 1 if j == t else 0
            rows.append({a: b for a, b in r.items() if b != 0})
        M = SparseMatrix(self.k, n + self.k, F, rows)
        cols, rrows = rref(M)
        self.piv = [c for c in cols if c < n]
        if len(self.piv) != self.k:
            raise BadBimodule("basis vectors are linearly dependent")
        self.rows = rrows[: self.k]

    def of(self, v: dict) -> dict:
        """Coordinates of v in the basis; raises if v is outside the span."""
        F = self.F
        n = self.n
        acc: dict = {}
        for c, row in zip(self.piv, self.rows):
            x = v.get(c, 0)
            if x == 0:
                continue
            for j, y in row.items():
                acc[j] = acc.get(j, 0) + x * y
        resid = {j: F.norm(v.get(j, 0) - acc.get(j, 0)) for j in set(v) | {j for j in acc if j < n}}
        if any(x != 0 for j, x in resid.items() if j < n):
            raise NotAnIdeal("vector is not in the span")
        return {j - n: F.norm(x) for j, x in acc.items() if j >= n and F.norm(x) != 0}

    def contains(self, v: dict) -> bool:
        try:
            self.of(v)
            return True
        except NotAnIdeal:
            return False


def _cols_to_matrix(cols, dim, F) -> SparseMatrix:
    M = SparseMatrix(dim, dim, F)
    for c, col in enumerate(cols):
        for r, x in col.items():
            M.rows[r][c] = x
    return M


class SubBimodule:
    """A sub-bimodule of ``parent`` spanned by RREF basis vectors."""

    def __init__(self, parent: Bimodule, vectors, check=True):
        self.parent = parent
        F = parent.algebra.field
        M = SparseMatrix(len(vectors), parent.dim, F, [dict(v) for v in vectors])
        self.pivots, self.basis = rref(M)
        self._coords = _Coordinates(self.basis, parent.dim, F) if self.basis else None
        if check:
            for v in self.basis:
                for i in range(parent.algebra.dim):
                    for w in (parent.act_left(i, v), parent.act_right(i, v)):
                        if w and not self.contains(w):
                            raise NotAnIdeal("subspace is not closed under the actions")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: dict) -> bool:
        if not v:
            return True
        return self._coords is not None and self._coords.contains(v)

    def coords(self, v: dict) -> dict:
        if not v:
            return {}
        return self._coords.of(v)

    def as_bimodule(self) -> Bimodule:
        P = self.parent
        A = P.algebra
        left = [[self.coords(P.act_left(i, v)) for v in self.basis] for i in range(A.dim)]
        right = [[self.coords(P.act_right(i, v)) for v in self.basis] for i in range(A.dim)]
        return Bimodule(A, self.dim, left, right, check=False)

    def inclusion(self) -> SparseMatrix:
        """parent.dim x dim matrix of the inclusion."""
        F = self.parent.algebra.field
        M = SparseMatrix(self.parent.dim, self.dim, F)
        for j, v in enumerate(self.basis):
            for k, x in v.items():
                M.rows[k][j] = x
        return M

    def __repr__(self):
        return f"SubBimodule(dim={self.dim} in {self.parent!r})"


# ---------------------------------------------------------------- constructors

def make_monogenic(f: Poly) -> FinDimAlgebra:
    from .errors import NotMonic

    if not f.is_monic() or f.degree < 1:
        raise NotMonic(f"{f} is not monic of degree >= 1")
    F = f.field
    N = f.degree
    mult = []
    for i in range(N):
        row = []
        for j in range(N):
            r = poly_divmod(Poly.x(F, i + j), f)[1]
            row.append({k: a for k, a in enumerate(r.c) if a != 0})
        mult.append(row)
    labels = ["1", "x"] + [f"x^{i}" for i in range(2, N)]
    return FinDimAlgebra(F, mult, [1] + [0] * (N - 1), labels[:N], check=False)


def center(A: FinDimAlgebra) -> SubBimodule:
    """Z(A) as a sub-bimodule of the regular bimodule."""
    n, F = A.dim, A.field
    # unknown z = sum z_s b_s; equations (z b_i - b_i z)_k = 0
    rows = []
    for i in range(n):
        eqs: dict = {}
        for s in range(n):
            for k, x in A.mult[s][i].items():
                eqs.setdefault(k, {})
                eqs[k][s] = eqs[k].get(s, 0) + x
            for k, x in A.mult[i][s].items():
                eqs.setdefault(k, {})
                eqs[k][s] = eqs[k].get(s, 0) - x
        for k in sorted(eqs):
            rows.append(_clean(F, eqs[k]))
    M = SparseMatrix(len(rows), n, F, rows)
    kern = analyze(M).kernel
    return SubBimodule(A.regular_bimodule(), [_sparse(v) for v in kern], check=False)


def _as_vector(A: FinDimAlgebra, e) -> dict:
    if isinstance(e, int):
        return {e: 1}
    if isinstance(e, dict):
        return _clean(A.field, e)
    return _clean(A.field, {k: A.field.elem(x) for k, x in enumerate(e)})


def idempotent_ideal(A: FinDimAlgebra, e) -> SubBimodule:
    """I = AeA for an idempotent e (basis index, dict or dense vector)."""
    ev = _as_vector(A, e)
    if A.sparse_product(ev, ev) != ev:
        raise NotIdempotent("e*e != e")
    vecs = []
    for i in range(A.dim):
        ie = A.sparse_product({i: 1}, ev)
        if not ie:
            continue
        for j in range(A.dim):
            v = A.sparse_product(ie, {j: 1})
            if v:
                vecs.append(v)
    return SubBimodule(A.regular_bimodule(), vecs, check=False)


def ideal_from_vectors(A: FinDimAlgebra, vectors) -> SubBimodule:
    """Two-sided ideal spanned by the given vectors (closure is checked)."""
    return SubBimodule(A.regular_bimodule(), [_as_vector(A, v) for v in vectors], check=True)


def ideal_generated_by(A: FinDimAlgebra, vectors) -> SubBimodule:
    """The two-sided ideal A g A generated by the given elements."""
    vecs = []
    for g in vectors:
        g = _as_vector(A, g)
        for i in range(A.dim):
            ig = A.sparse_product({i: 1}, g)
            if not ig:
                continue
            for j in range(A.dim):
                v = A.sparse_product(ig, {j: 1})
                if v:
                    vecs.append(v)
    return SubBimodule(A.regular_bimodule(), vecs, check=False)


def quotient_algebra(A: FinDimAlgebra, I: SubBimodule):
    """B = A/I with basis the images of the non-pivot basis elements.

    Returns (B, phi, kept) where phi is the dim B x dim A projection matrix
    and kept[j] is the A-basis index lifting the j-th basis element of B.
    """
    if I.parent.algebra is not A:
        raise NotAnIdeal("ideal belongs to another algebra")
    F = A.field
    pset = set(I.pivots)
    kept = [i for i in range(A.dim) if i not in pset]
    kpos = {i: t for t, i in enumerate(kept)}
    # phi(b_i): for kept i the basis vector; for pivot i minus the kept part of the RREF row
    rowof = dict(zip(I.pivots, I.basis))

    def phi_vec(v: dict) -> dict:
        acc: dict = {}
        for i, x in v.items():
            if i in kpos:
                acc[kpos[i]] = acc.get(kpos[i], 0) + x
            else:
                for k, y in rowof[i].items():
                    if k in kpos:
                        acc[kpos[k]] = acc.get(kpos[k], 0) - x * y
        return _clean(F, acc)

    m = len(kept)
    mult = [[phi_vec(A.mult[a][b]) for b in kept] for a in kept]
    unit = _dense(phi_vec(_sparse(A.unit)), m)
    verts = None
    if A.vertices is not None:
        verts = [kpos[a] for a in A.vertices if a in kpos]
        dropped = [a for a in A.vertices if a not in kpos]
        if any(phi_vec({a: 1}) for a in dropped):
            verts = None
    labels = [A.labels[i] for i in kept]
    try:
        B = FinDimAlgebra(F, mult, unit, labels, e_idempotents=verts, check=False)
        if verts is not None:
            _check_vertices(B)
    except BadStructure:
        B = FinDimAlgebra(F, mult, unit, labels, e_idempotents=None, check=False)
    phi = SparseMatrix(m, A.dim, F)
    for i in range(A.dim):
        for k, x in phi_vec({i: 1}).items():
            phi.rows[k][i] = x
    return B, phi, kept


def _check_vertices(B: FinDimAlgebra):
    # homogeneity of every basis element with respect to the vertices
    for i in range(B.dim):
        ls = [a for a in B.vertices if B.mult[a][i] == {i: 1}]
        rs = [a for a in B.vertices if B.mult[i][a] == {i: 1}]
        if len(ls) != 1 or len(rs) != 1:
            raise BadStructure("quotient basis is not homogeneous")
        if any(B.mult[a][i] for a in B.vertices if a not in ls):
            raise BadStructure("quotient basis is not homogeneous")
        if any(B.mult[i][a] for a in B.vertices if a not in rs):
            raise BadStructure("quotient basis is not homogeneous")


def quotient_bimodule_of_algebra(B: FinDimAlgebra, phi: SparseMatrix, A: FinDimAlgebra) -> Bimodule:
    """B regarded as an A-bimodule through phi."""
    return B.regular_bimodule().restrict(phi, A)


def dual_bimodule(M: Bimodule) -> Bimodule:
    """D(M): transposed actions with the sides swapped."""

    def transpose(cols):
        out = [dict() for _ in range(M.dim)]
        for s, col in enumerate(cols):
            for k, x in col.items():
                out[k][s] = x
        return out

    A = M.algebra
    left = [transpose(M.right[i]) for i in range(A.dim)]
    right = [transpose(M.left[i]) for i in range(A.dim)]
    return Bimodule(A, M.dim, left, right, check=False)


def corner_modules(A: FinDimAlgebra, e):
    """(Ae, eA, D(eA)): a left module, a right module and a left module."""
    ev = _as_vector(A, e)
    if A.sparse_product(ev, ev) != ev:
        raise NotIdempotent("e*e != e")
    F = A.field
    # Ae = span of b_i e
    M = SparseMatrix(A.dim, A.dim, F, [A.sparse_product({i: 1}, ev) for i in range(A.dim)])
    _, Ae_basis = rref(M)
    M = SparseMatrix(A.dim, A.dim, F, [A.sparse_product(ev, {i: 1}) for i in range(A.dim)])
    _, eA_basis = rref(M)
    Ae = _submodule(A, Ae_basis, "left")
    eA = _submodule(A, eA_basis, "right")
    return Ae, eA, eA.dual()


def _submodule(A: FinDimAlgebra, basis, side) -> Module:
    F = A.field
    if not basis:
        out = Module(A, 0, [[] for _ in range(A.dim)], side, check=False)
        out.basis_vectors = []
        return out
    coords = _Coordinates(basis, A.dim, F)
    acts = []
    for i in range(A.dim):
        if side == "left":
            acts.append([coords.of(A.sparse_product({i: 1}, v)) for v in basis])
        else:
            acts.append([coords.of(A.sparse_product(v, {i: 1})) for v in basis])
    out = Module(A, len(basis), acts, side, check=False)
    out.basis_vectors = list(basis)
    return out


def regular_module(A: FinDimAlgebra, side="left") -> Module:
    return _submodule(A, [{i: 1} for i in range(A.dim)], side)


def bimodule_as_module(M: Bimodule, side: str) -> Module:
    acts = M.left if side == "left" else M.right
    return Module(M.algebra, M.dim, acts, side, check=False)


def make_one_point_extension(B: FinDimAlgebra, M: Module):
    """A = (B M; 0 k) for a left B-module M. Returns (A, index of e)."""
    if M.side != "left" or M.algebra is not B:
        raise BadParameters("M must be a left module over B")
    F = B.field
    if B.vertices is not None:
        M = M.adapted()
    dB, dM = B.dim, M.dim
    n = dB + dM + 1
    E = n - 1
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(dB):
        for j in range(dB):
            mult[i][j] = dict(B.mult[i][j])
        for s in range(dM):
            mult[i][dB + s] = {dB + k: x for k, x in M.act(i, {s: 1}).items()}
    for s in range(dM):
        mult[dB + s][E] = {dB + s: 1}
    mult[E][E] = {E: 1}
    unit = list(B.unit) + [0] * dM + [1]
    verts = None
    if B.vertices is not None:
        verts = list(B.vertices) + [E]
    labels = list(B.labels) + [f"m{s}" for s in range(dM)] + ["e"]
    A = FinDimAlgebra(F, mult, unit, labels, e_idempotents=verts, check=False)
    return A, E


def make_path_algebra_quotient(pres, cap: int = 10_000) -> FinDimAlgebra:
    """Path algebra of a quiver modulo a monomial ideal (see combinat)."""
    from .combinat import path_basis

    return path_basis(pres, cap).algebra


def make_incidence(X) -> FinDimAlgebra:
    """Incidence algebra: basis f_xy (x <= y), f_xy f_zw = f_xw if y = z."""
    F = X.field
    pairs = [(x, y) for x in range(len(X.elements)) for y in range(len(X.elements)) if X.leq(x, y)]
    pos = {p: t for t, p in enumerate(pairs)}
    n = len(pairs)
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for a, (x, y) in enumerate(pairs):
        for b, (z, w) in enumerate(pairs):
            if y == z:
                mult[a][b] = {pos[(x, w)]: 1}
    verts = [pos[(x, x)] for x in range(len(X.elements))]
    unit = [0] * n
    for v in verts:
        unit[v] = 1
    labels = [f"f[{X.elements[x]},{X.elements[y]}]" for x, y in pairs]
    A = FinDimAlgebra(F, mult, unit, labels, e_idempotents=verts, check=False)
    A.pairs = pairs
    return A


def make_truncated_cycle(n: int, m: int, field: FieldSpec | None = None, length: int | None = None) -> FinDimAlgebra:
    """Crown quiver on Z_n (arrows i -> i+1) modulo all paths of length l.

    l defaults to nm - 1; basis: the paths of length < l.
    """
    from .combinat import Quiver, QuiverPresentation, path_basis

    l = n * m - 1 if length is None else length
    if n < 2 or m < 1 or l < 1:
        raise BadParameters("need n >= 2, m >= 1 and l >= 1")
    field = field or FieldSpec.rationals()
    Q = Quiver(list(range(n)), [(f"a{i}", i, (i + 1) % n) for i in range(n)])
    pres = QuiverPresentation(Q, [], field)
    A = path_basis(pres, max_length=l - 1).algebra
    A.truncation = l
    return A


class TensorOverA:
    """(M (x) N) / span{ma (x) n - m (x) an} for a right module M and a left module N."""

    def __init__(self, M, N):
        right = M.right if isinstance(M, Bimodule) else M.action
        left = N.left if isinstance(N, Bimodule) else N.action
        if isinstance(M, Module) and M.side != "right":
            raise BadParameters("first factor must be a right module")
        if isinstance(N, Module) and N.side != "left":
            raise BadParameters("second factor must be a left module")
        A = M.algebra
        if N.algebra is not A:
            raise BadParameters("factors are modules over different algebras")
        F = A.field
        self.algebra = A
        self.m, self.n = M.dim, N.dim
        rows = []
        for i in range(A.dim):
            for s in range(self.m):
                ms = right[i][s]
                for t in range(self.n):
                    r: dict = {}
                    for k, x in ms.items():
                        r[k * self.n + t] = r.get(k * self.n + t, 0) + x
                    for k, x in left[i][t].items():
                        r[s * self.n + k] = r.get(s * self.n + k, 0) - x
                    r = _clean(F, r)
                    if r:
                        rows.append(r)
        self.relations = SparseMatrix(len(rows), self.m * self.n, F, rows)
        self.relation_rank = analyze(self.relations).rank if rows else 0
        self.dim = self.m * self.n - self.relation_rank

    def induced_matrix(self, bilinear) -> SparseMatrix:
        """Matrix (target x generators) of m_s (x) n_t -> f(s, t); checks balancedness."""
        f, tdim = bilinear
        F = self.algebra.field
        T = SparseMatrix(tdim, self.m * self.n, F)
        for s in range(self.m):
            for t in range(self.n):
                for k, x in f(s, t).items():
                    T.rows[k][s * self.n + t] = x
        if not T.matmul(self.relations.transpose()).is_zero():
            raise BadParameters("the bilinear map is not A-balanced")
        return T

    def map_rank(self, bilinear) -> int:
        return analyze(self.induced_matrix(bilinear)).rank


def tensor_over_A(M, N) -> TensorOverA:
    return TensorOverA(M, N)


# ---------------------------------------------------------------- singular extensions

class SingularExtension:
    """The B-bimodule N = I/I^2 and the cocycle alpha: B (x) B -> N.

    alpha(b, b') = sigma(bb') - sigma(b) sigma(b') mod I^2, where the
    section sigma lifts the j-th basis vector of B to the A-basis vector
    ``kept[j]`` (the echelon-complement lift of ``quotient_algebra``).
    """

    def __init__(self, A, I, B, phi, kept, N, alpha, to_N, N_lifts):
        self.A, self.I, self.B, self.phi, self.kept = A, I, B, phi, kept
        self.N = N
        self.alpha = alpha
        self.to_N = to_N
        self.N_lifts = N_lifts

    def value(self, j: int, k: int) -> dict:
        return self.alpha.get((j, k), {})

    def is_cocycle(self) -> bool:
        """b.alpha(b', b'') - alpha(bb', b'') + alpha(b, b'b'') - alpha(b, b').b'' = 0."""
        B, N, F = self.B, self.N, self.B.field
        n = B.dim

        def alpha_lin(u: dict, k: int, left: bool) -> dict:
            acc: dict = {}
            for j, x in u.items():
                v = self.value(j, k) if left else self.value(k, j)
                _vec_add(acc, v, x)
            return acc

        for a in range(n):
            for b in range(n):
                ab = B.mult[a][b]
                for c in range(n):
                    acc: dict = {}
                    _vec_add(acc, N.act_left(a, self.value(b, c)), 1)
                    _vec_add(acc, alpha_lin(ab, c, True), -1)
                    _vec_add(acc, alpha_lin(B.mult[b][c], a, False), 1)
                    _vec_add(acc, N.act_right(c, self.value(a, b)), -1)
                    if _clean(F, acc):
                        return False
        return True


def singular_extension_cocycle(A: FinDimAlgebra, I: SubBimodule, B=None, phi=None, kept=None) -> SingularExtension:
    """The class of 0 -> I/I^2 -> A/I^2 -> B -> 0 as a 2-cocycle on B."""
    if B is None:
        B, phi, kept = quotient_algebra(A, I)
    F = A.field
    k = I.dim
    # I^2 inside I, in I-coordinates
    sq = []
    for u in I.basis:
        for v in I.basis:
            w = A.sparse_product(u, v)
            if w:
                sq.append(I.coords(w))
    piv, rows = rref(SparseMatrix(len(sq), k, F, sq)) if sq else ([], [])
    comp = [j for j in range(k) if j not in set(piv)]
    cpos = {j: t for t, j in enumerate(comp)}

    def to_N(v: dict) -> dict:
        """A-vector in I -> coordinates in N = I/I^2."""
        y = dict(I.coords(v))
        for c, r in zip(piv, rows):
            x = y.get(c, 0)
            if x:
                _vec_add(y, r, -x)
        y = _clean(F, y)
        return {cpos[j]: x for j, x in y.items() if j in cpos}

    # lifts of the N basis to A
    lifts = []
    for j in comp:
        acc: dict = {}
        _vec_add(acc, I.basis[j], 1)
        lifts.append(_clean(F, acc))
    m = len(comp)
    left, right = [], []
    for j in range(B.dim):
        a = kept[j]
        left.append([to_N(A.sparse_product({a: 1}, lifts[s])) for s in range(m)])
        right.append([to_N(A.sparse_product(lifts[s], {a: 1})) for s in range(m)])
    N = Bimodule(B, m, left, right, check=False)
    alpha = {}
    if m:
        for j in range(B.dim):
            for t in range(B.dim):
                lift_prod = {kept[s]: x for s, x in B.mult[j][t].items()}
                acc = dict(lift_prod)
                _vec_add(acc, A.mult[kept[j]][kept[t]], -1)
                acc = _clean(F, acc)
                if acc:
                    v = to_N(acc)
                    if v:
                        alpha[(j, t)] = v
    return SingularExtension(A, I, B, phi, kept, N, alpha, to_N, lifts)


def hom_bimodules(N: Bimodule, M: Bimodule) -> list:
    """Basis of Hom_{B^e}(N, M); each map is a list of column dicts (images of N's basis)."""
    B = N.algebra
    F = B.field
    n, m = N.dim, M.dim
    if n == 0 or m == 0:
        return []

    def var(t, s):  # coefficient of m_t in h(n_s)
        return t * n + s

    eqs = []
    for i in range(B.dim):
        for side in ("l", "r"):
            for s in range(n):
                acc: dict = {}
                img = N.act_left(i, {s: 1}) if side == "l" else N.act_right(i, {s: 1})
                for s2, x in img.items():
                    for t in range(m):
                        acc.setdefault(t, {})
                        acc[t][var(t, s2)] = acc[t].get(var(t, s2), 0) + x
                for t in range(m):
                    w = M.act_left(i, {t: 1}) if side == "l" else M.act_right(i, {t: 1})
                    for t2, y in w.items():
                        acc.setdefault(t2, {})
                        acc[t2][var(t, s)] = acc[t2].get(var(t, s), 0) - y
                for row in acc.values():
                    row = _clean(F, row)
                    if row:
                        eqs.append(row)
    S = SparseMatrix(len(eqs), n * m, F, eqs)
    out = []
    for v in analyze(S).kernel:
        out.append([{t: v[var(t, s)] for t in range(m) if v[var(t, s)] != 0} for s in range(n)])
    return out
