"""Quivers, posets, simplicial complexes and homological-ideal criteria."""

from __future__ import annotations

from itertools import combinations

from .errors import (
    InfiniteDimensional,
    MalformedPath,
    NotASubcomplex,
    NotASubset,
    BadStructure,
    UnknownVertex,
)
from .exactmath import QQ, FieldSpec, SparseMatrix, rank


# ---------------------------------------------------------------- quivers

class Quiver:
    """Vertices (labels) and arrows (name, source, target)."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise BadStructure("duplicate vertex labels")
        self.vpos = {v: k for k, v in enumerate(self.vertices)}
        self.arrows = []
        for a in arrows:
            if isinstance(a, dict):
                a = (a["name"], a["src"], a["tgt"])
            name, s, t = a
            if s not in self.vpos or t not in self.vpos:
                raise UnknownVertex(f"arrow {name} has an unknown endpoint")
            self.arrows.append((name, s, t))
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise BadStructure("duplicate arrow names")
        self.apos = {a[0]: k for k, a in enumerate(self.arrows)}
        self.src = [self.vpos[a[1]] for a in self.arrows]
        self.tgt = [self.vpos[a[2]] for a in self.arrows]

    def vertex_index(self, v) -> int:
        if v in self.vpos:
            return self.vpos[v]
        for k, w in enumerate(self.vertices):
            if str(w) == str(v):
                return k
        raise UnknownVertex(f"unknown vertex {v!r}")

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class QuiverPresentation:
    """A quiver with monomial relations (arrow names in traversal order)."""

    def __init__(self, quiver: Quiver, relations, field: FieldSpec = QQ):
        self.quiver = quiver
        self.field = field
        rels = []
        for r in relations:
            r = list(r)
            if len(r) < 2:
                raise MalformedPath(f"relation {r} has length < 2")
            idx = []
            for name in r:
                if name not in quiver.apos:
                    raise MalformedPath(f"unknown arrow {name!r}")
                idx.append(quiver.apos[name])
            for a, b in zip(idx, idx[1:]):
                if quiver.tgt[a] != quiver.src[b]:
                    raise MalformedPath(f"relation {r} is not a path")
            rels.append(tuple(idx))
        self.relations = rels

    def minimal_relations(self) -> list:
        """Relations with those containing another relation removed."""
        uniq = sorted(set(self.relations), key=lambda r: (len(r), r))
        keep = []
        for r in uniq:
            if not any(_contains(r, s) for s in keep):
                keep.append(r)
        return keep

    @classmethod
    def from_json(cls, doc: dict) -> "QuiverPresentation":
        Q = Quiver(doc["vertices"], doc.get("arrows", []))
        return cls(Q, doc.get("relations", []), parse_field_json(doc.get("field", "Q")))


def parse_field_json(x) -> FieldSpec:
    if isinstance(x, dict):
        if "Fp" in x:
            return FieldSpec.prime(int(x["Fp"]))
        raise BadStructure(f"bad field {x!r}")
    return FieldSpec.parse(str(x))


def _contains(path, sub) -> bool:
    n, k = len(path), len(sub)
    return any(path[i:i + k] == sub for i in range(n - k + 1))


class PathBasis:
    """Relation-free paths of a presentation and the resulting algebra."""

    def __init__(self, pres: QuiverPresentation, cap: int = 10_000, max_length: int | None = None):
        from .algebra import FinDimAlgebra

        Q = pres.quiver
        rels = set(pres.minimal_relations())
        rel_lengths = sorted({len(r) for r in rels})
        nv = len(Q.vertices)
        paths = [()] * 0
        # vertices first (as empty paths at a vertex), then by length
        self.vertex_paths = [("v", k) for k in range(nv)]
        levels = [[(a,) for a in range(len(Q.arrows))]]
        if max_length is not None and max_length < 1:
            levels = []
        total = nv + (len(levels[0]) if levels else 0)
        while levels and levels[-1]:
            if max_length is not None and len(levels[-1][0]) >= max_length:
                break
            new = []
            for t in levels[-1]:
                end = Q.tgt[t[-1]]
                for a in range(len(Q.arrows)):
                    if Q.src[a] != end:
                        continue
                    u = t + (a,)
                    if any(len(u) >= L and u[-L:] in rels for L in rel_lengths):
                        continue
                    new.append(u)
            total += len(new)
            if total > cap:
                raise InfiniteDimensional(f"more than {cap} surviving paths")
            levels.append(new)
        paths = [p for lev in levels for p in lev]
        paths.sort(key=lambda t: (len(t), t))
        self.paths = paths
        self.quiver = Q
        n = nv + len(paths)
        pos = {t: nv + k for k, t in enumerate(paths)}
        self.pos = pos
        src = list(range(nv)) + [Q.src[t[0]] for t in paths]
        tgt = list(range(nv)) + [Q.tgt[t[-1]] for t in paths]
        seq = [()] * nv + paths
        mult = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                # b_i . b_j : first traverse b_j, then b_i
                if src[i] != tgt[j]:
                    continue
                if i < nv:
                    mult[i][j] = {j: 1}
                    continue
                if j < nv:
                    mult[i][j] = {i: 1}
                    continue
                u = seq[j] + seq[i]
                k = pos.get(u)
                if k is not None:
                    mult[i][j] = {k: 1}
        unit = [1] * nv + [0] * len(paths)
        labels = [f"e{v}" for v in Q.vertices] + [self.label(t) for t in paths]
        self.algebra = FinDimAlgebra(pres.field, mult, unit, labels, e_idempotents=list(range(nv)), check=False)
        self.algebra.presentation = pres
        self.algebra.path_of = seq
        self.src, self.tgt = src, tgt

    def label(self, t) -> str:
        names = [self.quiver.arrows[a][0] for a in reversed(t)]
        sep = "" if all(len(x) == 1 for x in names) else "*"
        return sep.join(names)


def path_basis(pres: QuiverPresentation, cap: int = 10_000, max_length: int | None = None) -> PathBasis:
    return PathBasis(pres, cap, max_length)


def internal_vertex_criterion(pres: QuiverPresentation, e) -> bool:
    """True iff no minimal relation passes through e as an internal vertex."""
    Q = pres.quiver
    v = Q.vertex_index(e)
    for r in pres.minimal_relations():
        inner = {Q.tgt[a] for a in r[:-1]}
        if v in inner:
            return False
    return True


def circuit_free_at(Q: Quiver, e) -> bool:
    """True iff no oriented cycle starts (and ends) at e."""
    v = Q.vertex_index(e)
    seen = set()
    stack = [Q.tgt[a] for a in range(len(Q.arrows)) if Q.src[a] == v]
    while stack:
        w = stack.pop()
        if w == v:
            return False
        if w in seen:
            continue
        seen.add(w)
        stack.extend(Q.tgt[a] for a in range(len(Q.arrows)) if Q.src[a] == w)
    return True


# ---------------------------------------------------------------- posets

class Poset:
    """Finite poset given by cover pairs (a, b) meaning a < b."""

    def __init__(self, elements, covers=(), field: FieldSpec = QQ):
        self.elements = list(elements)
        if len(set(self.elements)) != len(self.elements):
            raise BadStructure("duplicate poset elements")
        self.field = field
        self.pos = {x: k for k, x in enumerate(self.elements)}
        n = len(self.elements)
        up = [set() for _ in range(n)]
        self.covers = []
        for a, b in covers:
            if a not in self.pos or b not in self.pos:
                raise NotASubset(f"cover ({a}, {b}) uses an unknown element")
            i, j = self.pos[a], self.pos[b]
            if i == j:
                raise BadStructure("a cover relates an element to itself")
            up[i].add(j)
            self.covers.append((i, j))
        # closure by depth-first search
        self._above = []
        for i in range(n):
            seen = set()
            stack = list(up[i])
            while stack:
                j = stack.pop()
                if j in seen:
                    continue
                seen.add(j)
                stack.extend(up[j])
            if i in seen:
                raise BadStructure("cover relations contain a cycle")
            self._above.append(seen | {i})

    @classmethod
    def from_json(cls, doc: dict) -> "Poset":
        return cls(doc["elements"], [tuple(c) for c in doc.get("covers", [])], parse_field_json(doc.get("field", "Q")))

    def __len__(self):
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return j in self._above[i]

    def less(self, i: int, j: int) -> bool:
        return i != j and j in self._above[i]

    def indices(self, subset) -> list:
        out = []
        for y in subset:
            if y in self.pos:
                out.append(self.pos[y])
                continue
            hit = [k for k, x in enumerate(self.elements) if str(x) == str(y)]
            if not hit:
                raise NotASubset(f"{y!r} is not an element of the poset")
            out.append(hit[0])
        return sorted(set(out))

    def subposet(self, idx) -> "Poset":
        idx = sorted(idx)
        els = [self.elements[i] for i in idx]
        covers = [(self.elements[i], self.elements[j]) for i in idx for j in idx if self.less(i, j)]
        return Poset(els, covers, self.field)

    def chains(self) -> list:
        """All nonempty chains, as increasing tuples of indices."""
        n = len(self.elements)
        order = sorted(range(n), key=lambda i: (len(self._above[i]) * -1, i))
        # extend chains upward
        out = []

        def grow(ch):
            out.append(tuple(ch))
            top = ch[-1]
            for j in range(n):
                if self.less(top, j):
                    grow(ch + [j])

        for i in range(n):
            grow([i])
        del order
        return sorted(out, key=lambda c: (len(c), c))

    def __repr__(self):
        return f"Poset({len(self.elements)} elements)"


def is_order_ideal(X: Poset, Y) -> bool:
    idx = set(X.indices(Y))
    for y in idx:
        for x in range(len(X)):
            if X.leq(x, y) and x not in idx:
                return False
    return True


def chain_poset(X: Poset) -> Poset:
    """Nonempty chains of X ordered by inclusion."""
    chains = X.chains()
    labels = [tuple(X.elements[i] for i in c) for c in chains]
    pos = {c: k for k, c in enumerate(chains)}
    covers = []
    for c in chains:
        s = set(c)
        for d in chains:
            if len(d) == len(c) + 1 and s.issubset(d):
                covers.append((labels[pos[c]], labels[pos[d]]))
    return Poset(labels, covers, X.field)


# ---------------------------------------------------------------- simplicial complexes

class SimplicialComplex:
    """A finite simplicial complex: all faces as sorted vertex tuples."""

    def __init__(self, simplices):
        faces = set()
        for s in simplices:
            s = tuple(sorted(set(s)))
            if not s:
                continue
            for k in range(1, len(s) + 1):
                faces.update(combinations(s, k))
        self.simplices = sorted(faces, key=lambda s: (len(s), s))
        self.by_dim: dict[int, list] = {}
        for s in self.simplices:
            self.by_dim.setdefault(len(s) - 1, []).append(s)
        self.vertices = sorted({v for s in self.simplices for v in s})

    def __contains__(self, s):
        return tuple(sorted(s)) in self._set()

    def _set(self):
        if not hasattr(self, "_faces"):
            self._faces = set(self.simplices)
        return self._faces

    @property
    def dimension(self) -> int:
        return max(self.by_dim, default=-1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(s) for d, s in self.by_dim.items())

    def is_subcomplex_of(self, K: "SimplicialComplex") -> bool:
        return self._set() <= K._set()


def order_complex(X: Poset) -> SimplicialComplex:
    return SimplicialComplex(X.chains())


def coboundary_matrix(K: SimplicialComplex, p: int, L: SimplicialComplex | None, field: FieldSpec) -> SparseMatrix:
    """delta: C^p(K, L) -> C^{p+1}(K, L), cochains vanishing on L."""
    Lset = L._set() if L is not None else set()
    src = [s for s in K.by_dim.get(p, []) if s not in Lset]
    dst = [s for s in K.by_dim.get(p + 1, []) if s not in Lset]
    spos = {s: k for k, s in enumerate(src)}
    M = SparseMatrix(len(dst), len(src), field)
    for r, s in enumerate(dst):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            k = spos.get(face)
            if k is not None:
                M.rows[r][k] = field.norm(-1 if i % 2 else 1)
    return M


def simplicial_cohomology(K: SimplicialComplex, L: SimplicialComplex | None = None, p_max: int = 3,
                          field: FieldSpec = QQ) -> list:
    """dim H^p(|K|) or H^p(|K|, |L|) for 0 <= p <= p_max."""
    if L is not None and not L.is_subcomplex_of(K):
        raise NotASubcomplex("L is not a subcomplex of K")
    Lset = L._set() if L is not None else set()
    ranks = {}

    def rk(p):
        if p < 0:
            return 0
        if p not in ranks:
            ranks[p] = rank(coboundary_matrix(K, p, L, field))
        return ranks[p]

    out = []
    for p in range(p_max + 1):
        c = sum(1 for s in K.by_dim.get(p, []) if s not in Lset)
        out.append(c - rk(p) - rk(p - 1))
    return out


def order_complex_pair(X: Poset, Y) -> tuple:
    """(|X|, |Y|) as simplicial complexes on the indices of X."""
    K = order_complex(X)
    yset = set(X.indices(Y))
    L = SimplicialComplex([c for c in X.chains() if set(c) <= yset])
    return K, L


# ---------------------------------------------------------------- homological ideals

class HomologicalIdealReport:
    def __init__(self, **kw):
        self.__dict__.update(kw)

    def as_dict(self) -> dict:
        return dict(self.__dict__)

    def __repr__(self):
        return f"HomologicalIdealReport(verdict={self.verdict!r})"


def homological_ideal_report(pres_or_algebra, e, q_max: int = 4) -> HomologicalIdealReport:
    """Combinatorial criteria and bounded Tor computation for I = AeA."""
    from .algebra import corner_modules, idempotent_ideal, make_path_algebra_quotient, tensor_over_A
    from .cochain import tor_via_relative_bar

    if isinstance(pres_or_algebra, QuiverPresentation):
        pres = pres_or_algebra
        A = make_path_algebra_quotient(pres)
    else:
        A = pres_or_algebra
        pres = getattr(A, "presentation", None)
    if pres is not None and not isinstance(e, (dict, list)):
        v = pres.quiver.vertex_index(e)
        internal = internal_vertex_criterion(pres, e)
        circuit_free = circuit_free_at(pres.quiver, e)
        evec = {A.vertices[v]: 1}
    else:
        internal = None
        circuit_free = None
        evec = e
    I = idempotent_ideal(A, evec)
    Ae, eA, _ = corner_modules(A, evec)
    projective = Ae.dim * eA.dim == I.dim
    if projective:
        # the multiplication Ae (x) eA -> AeA must also be injective
        projective = _ae_ea_rank(A, Ae, eA, I) == I.dim
    Iprod = _square_dim(A, I)
    tens = tensor_over_A(I.as_bimodule(), I.as_bimodule())
    mu_rank = tens.map_rank(_mult_into(A, I))
    mu_iso = tens.dim == I.dim and mu_rank == I.dim
    tor = tor_via_relative_bar(A, I, q_max)
    tor_zero = all(t == 0 for t in tor[1:])
    proved = []
    if internal:
        proved.append("internal-vertex criterion")
    if projective:
        proved.append("Ae(x)eA -> AeA is an isomorphism")
    if circuit_free and mu_iso:
        proved.append("circuit-free and I(x)_A I -> I is an isomorphism")
    if proved:
        verdict = "homological (proved)"
    elif tor_zero:
        verdict = f"Tor vanishes up to q_max = {q_max}"
    else:
        verdict = "not homological"
    return HomologicalIdealReport(
        vertex=str(e),
        internal_vertex=internal,
        circuit_free=circuit_free,
        dim_Ae=Ae.dim,
        dim_eA=eA.dim,
        dim_I=I.dim,
        projective_test=projective,
        dim_I_squared=Iprod,
        dim_I_mod_I2=I.dim - Iprod,
        dim_I_tensor_I=tens.dim,
        mu_rank=mu_rank,
        mu_iso=mu_iso,
        tor=tor,
        q_max=q_max,
        proved_by=proved,
        verdict=verdict,
    )


def _ae_ea_rank(A, Ae, eA, I) -> int:
    from .exactmath import analyze

    # images of basis(Ae) x basis(eA) under multiplication, inside A
    aeb = Ae.basis_vectors
    eab = eA.basis_vectors
    rows = []
    for u in aeb:
        for v in eab:
            rows.append(A.sparse_product(u, v))
    M = SparseMatrix(len(rows), A.dim, A.field, rows)
    return analyze(M).rank if rows else 0


def _square_dim(A, I) -> int:
    rows = []
    for u in I.basis:
        for v in I.basis:
            w = A.sparse_product(u, v)
            if w:
                rows.append(w)
    if not rows:
        return 0
    return rank(SparseMatrix(len(rows), A.dim, A.field, rows))


def _mult_into(A, I):
    def f(s, t):
        return I.coords(A.sparse_product(I.basis[s], I.basis[t]))

    return f, I.dim
