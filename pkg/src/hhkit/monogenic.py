"""Closed-form Hochschild theory of A = k[X]/(f).

HH*(A) is generated by x (degree 0), tau (degree 1) and zeta (degree 2)
subject to f(x) = 0, d(x) tau = 0, f'(x) zeta = 0 and tau^2 = u(x) zeta,
where d = gcd(f, f') and f = q d.  A homogeneous element is stored as a
coefficient polynomial times tau^eps zeta^j; the coefficient is reduced
mod f in degree 0 and mod d otherwise.

The bracket is generated by [tau, x] = q and [zeta, tau] = w zeta (all
other brackets of generators vanish) and extended by graded antisymmetry
and the biderivation rule.  The orientation signs of the two nonzero
generator brackets are recorded in the presentation; the defaults are
the ones realized by the cochain-level bracket in ``cochain``.
"""

from __future__ import annotations

from .errors import BadBimodule, NotMonic, PresentationMismatch
from .exactmath import FieldSpec, Poly, SparseMatrix, analyze
from .exactmath.poly import poly_divmod, poly_gcd_monic, quot_f, rem_f


class MonogenicPresentation:
    def __init__(self, f: Poly, tau_x_sign: int = 1, zeta_tau_sign: int = 1):
        if f.is_zero() or not f.is_monic() or f.degree < 1:
            raise NotMonic(f"{f} is not monic of degree >= 1")
        self.f = f
        self.field = F = f.field
        self.N = f.degree
        self.d = poly_gcd_monic(f, f.derivative())
        self.q, r = poly_divmod(f, self.d)
        assert r.is_zero()
        alpha = f.c
        # u = q^2 sum alpha_i i(i-1)/2 X^{i-2}, binomials evaluated in Z
        s = Poly._raw([F.norm(alpha[i] * (i * (i - 1) // 2)) for i in range(2, self.N + 1)], F)
        self.u = rem_f(self.q * self.q * s, self.d)
        self.w = rem_f(_w_sum(f, self.q, corrected=True), self.d)
        self.w_uncorrected = rem_f(_w_sum(f, self.q, corrected=False), self.d)
        self.tau_x_sign = tau_x_sign
        self.zeta_tau_sign = zeta_tau_sign

    def as_dict(self) -> dict:
        return {
            "f": str(self.f),
            "field": repr(self.field),
            "d": str(self.d),
            "q": str(self.q),
            "u": str(self.u),
            "w": str(self.w),
            "w_uncorrected": str(self.w_uncorrected),
            "tau_x_sign": self.tau_x_sign,
            "zeta_tau_sign": self.zeta_tau_sign,
        }

    def __repr__(self):
        return f"MonogenicPresentation(f={self.f}, d={self.d}, q={self.q}, u={self.u}, w={self.w})"

    # generators
    def x(self) -> "HHElement":
        return HHElement(0, Poly.x(self.field), self)

    def one(self) -> "HHElement":
        return HHElement(0, Poly.const(1, self.field), self)

    def tau(self) -> "HHElement":
        return HHElement(1, Poly.const(1, self.field), self)

    def zeta(self) -> "HHElement":
        return HHElement(2, Poly.const(1, self.field), self)


def _w_sum(f: Poly, q: Poly, corrected: bool = True) -> Poly:
    """sum_i alpha_i sum_{s+t+1=i} W_s x^t with W_s the value of [t, z] on (x^s, x).

    Evaluating z(t(x^s), x) needs t(x^s) = rem_f(s x^{s-1} q), and
    quot_f(X rem_f(h)) = quot_f(X h) - X quot_f(h).  Dropping that last
    term gives W_s = quot_f((s+1) x^s q), which is only right when
    deg(x^{s-1} q) < deg f; ``corrected=False`` returns that shorter sum.
    """
    F = f.field
    acc = Poly._raw([], F)
    for i, a in enumerate(f.c):
        if a == 0:
            continue
        for s in range(i):
            W = quot_f(Poly.x(F, s) * q * (s + 1), f)
            if corrected and s > 0:
                W = W - Poly.x(F) * quot_f(Poly.x(F, s - 1) * q, f) * s
            acc = acc + (W * Poly.x(F, i - 1 - s)).scale(a)
    return acc


def presentation(f: Poly, **signs) -> MonogenicPresentation:
    return MonogenicPresentation(f, **signs)


class HHElement:
    """coeff * (1 | tau zeta^{(n-1)/2} | zeta^{n/2}) in degree n."""

    __slots__ = ("degree", "coeff", "pres")

    def __init__(self, degree: int, coeff: Poly, pres: MonogenicPresentation):
        if degree < 0:
            raise ValueError("negative degree")
        self.degree = degree
        self.pres = pres
        self.coeff = rem_f(coeff, pres.f if degree == 0 else pres.d)

    @property
    def eps(self) -> int:
        return self.degree % 2 if self.degree > 0 else 0

    @property
    def zpow(self) -> int:
        return self.degree // 2

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, HHElement)
            and other.pres is self.pres
            and (self.degree == other.degree or (self.is_zero() and other.is_zero()))
            and self.coeff == other.coeff
        )

    def __add__(self, other):
        _same(self, other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("sum of elements of different degrees")
        return HHElement(self.degree, self.coeff + other.coeff, self.pres)

    def __neg__(self):
        return HHElement(self.degree, -self.coeff, self.pres)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HHElement":
        return HHElement(self.degree, self.coeff * c, self.pres)

    def __mul__(self, other):
        return cup_normal_form(self, other)

    def __repr__(self):
        n = self.degree
        if n == 0:
            g = ""
        elif n % 2:
            g = "tau" + (f" zeta^{(n - 1) // 2}" if n > 1 else "")
        else:
            g = f"zeta^{n // 2}" if n > 2 else "zeta"
        return f"({self.coeff}){(' ' + g) if g else ''}"


def _same(a: HHElement, b: HHElement):
    if a.pres is not b.pres:
        raise PresentationMismatch("elements belong to different presentations")


def cup_normal_form(a: HHElement, b: HHElement) -> HHElement:
    _same(a, b)
    P = a.pres
    c = a.coeff * b.coeff
    if a.degree % 2 == 1 and b.degree % 2 == 1:
        c = c * P.u
    return HHElement(a.degree + b.degree, c, P)


# ---------------------------------------------------------------- bracket

def _gen_bracket(g: str, h: str, P: MonogenicPresentation) -> HHElement:
    """Bracket of two generators among 'x', 't' (tau), 'z' (zeta)."""
    F = P.field
    if (g, h) == ("t", "x"):
        return HHElement(0, P.q.scale(F.norm(P.tau_x_sign)), P)
    if (g, h) == ("x", "t"):
        return HHElement(0, P.q.scale(F.norm(-P.tau_x_sign)), P)
    if (g, h) == ("z", "t"):
        return HHElement(2, P.w.scale(F.norm(P.zeta_tau_sign)), P)
    if (g, h) == ("t", "z"):
        return HHElement(2, P.w.scale(F.norm(-P.zeta_tau_sign)), P)
    deg = _DEG[g] + _DEG[h] - 1
    return HHElement(max(deg, 0), Poly._raw([], F), P)


_DEG = {"x": 0, "t": 1, "z": 2}


def _word(el: HHElement) -> list:
    """Expand into (scalar, generator list) terms."""
    gens = (["t"] if el.eps else []) + ["z"] * el.zpow
    return [(c, ["x"] * k + gens) for k, c in enumerate(el.coeff.c) if c != 0]


def _prod(P, word) -> HHElement:
    out = P.one()
    for g in word:
        out = cup_normal_form(out, {"x": P.x, "t": P.tau, "z": P.zeta}[g]())
    return out


def _wdeg(word) -> int:
    return sum(_DEG[g] for g in word)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _bracket_gen_word(g: str, word: list, P) -> HHElement | None:
    """[g, w1 w2 ... wk] by the right biderivation rule."""
    total = None
    for i, h in enumerate(word):
        inner = _gen_bracket(g, h, P)
        if inner.is_zero():
            continue
        left = word[:i]
        s = _sign((_DEG[g] - 1) * _wdeg(left))
        term = cup_normal_form(cup_normal_form(_prod(P, left), inner), _prod(P, word[i + 1:]))
        term = term.scale(P.field.norm(s))
        total = term if total is None else total + term
    return total


def _bracket_words(w1: list, w2: list, P) -> HHElement | None:
    """[w1, w2] for generator words: expand the right word, then flip."""
    total = None
    a = _wdeg(w1)
    for i, h in enumerate(w2):
        # [W1, h] = -(-1)^{(|W1|-1)(|h|-1)} [h, W1]
        inner = _bracket_gen_word(h, w1, P)
        if inner is None or inner.is_zero():
            continue
        inner = inner.scale(P.field.norm(-_sign((a - 1) * (_DEG[h] - 1))))
        left = w2[:i]
        s = _sign((a - 1) * _wdeg(left))
        term = cup_normal_form(cup_normal_form(_prod(P, left), inner), _prod(P, w2[i + 1:]))
        term = term.scale(P.field.norm(s))
        total = term if total is None else total + term
    return total


def bracket_normal_form(a: HHElement, b: HHElement) -> HHElement:
    _same(a, b)
    P = a.pres
    deg = a.degree + b.degree - 1
    total = HHElement(max(deg, 0), Poly._raw([], P.field), P)
    if deg < 0:
        return total
    for c1, w1 in _word(a):
        for c2, w2 in _word(b):
            t = _bracket_words(w1, w2, P)
            if t is None or t.is_zero():
                continue
            total = total + t.scale(P.field.norm(c1 * c2))
    return total


def bracket_table(P: MonogenicPresentation) -> dict:
    gens = {"x": P.x(), "tau": P.tau(), "zeta": P.zeta()}
    out = {}
    for n1, g1 in gens.items():
        for n2, g2 in gens.items():
            out[f"[{n1},{n2}]"] = repr(bracket_normal_form(g1, g2))
    return out


# ---------------------------------------------------------------- dimensions

def hh_dims(P: MonogenicPresentation, n: int) -> int:
    return P.N if n == 0 else (P.d.degree or 0)


def hh_dims_list(P: MonogenicPresentation, p_max: int) -> list:
    return [hh_dims(P, n) for n in range(p_max + 1)]


def _as_matrix(X, F) -> SparseMatrix:
    if isinstance(X, SparseMatrix):
        return X
    return SparseMatrix.from_dense([[F.elem(v) for v in row] for row in X], F, ncols=len(X))


def _poly_at(f: Poly, X: SparseMatrix) -> SparseMatrix:
    n = X.nrows
    F = X.field
    acc = SparseMatrix(n, n, F)
    for c in reversed(f.c):
        acc = acc.matmul(X)
        for i in range(n):
            acc.add(i, i, c)
        acc.prune()
    return acc


def _lin(F, *terms) -> SparseMatrix:
    n = terms[0][1].nrows
    out = SparseMatrix(n, n, F)
    for c, M in terms:
        for i, r in enumerate(M.rows):
            for j, v in r.items():
                out.add(i, j, c * v)
    return out.prune()


def coefficient_maps(f: Poly, XL, XR):
    """(Delta, E) for a bimodule given by the actions of x on both sides."""
    F = f.field
    L = _as_matrix(XL, F)
    R = _as_matrix(XR, F)
    if L.shape != R.shape or L.nrows != L.ncols:
        raise BadBimodule("action matrices must be square of equal size")
    if L.matmul(R) != R.matmul(L):
        raise BadBimodule("left and right actions of x do not commute")
    if not _poly_at(f, L).is_zero() or not _poly_at(f, R).is_zero():
        raise BadBimodule("f does not annihilate the module")
    n = L.nrows
    delta = _lin(F, (1, L), (-1, R))
    powL = [SparseMatrix.identity(n, F)]
    powR = [SparseMatrix.identity(n, F)]
    for _ in range(f.degree):
        powL.append(powL[-1].matmul(L))
        powR.append(powR[-1].matmul(R))
    terms = []
    for i, a in enumerate(f.c):
        if a == 0:
            continue
        for s in range(i):
            t = i - 1 - s
            terms.append((a, powL[s].matmul(powR[t])))
    E = _lin(F, *terms) if terms else SparseMatrix(n, n, F)
    return delta, E


def hh_with_coefficients(f: Poly, XL, XR, p_max: int = 4) -> list:
    """dims of H^p(A, M) from H^0 = M^x and e-bar : M_x -> M^x."""
    delta, E = coefficient_maps(f, XL, XR)
    n = delta.nrows
    rd = analyze(delta).rank if n else 0
    re = analyze(E).rank if n else 0
    h0 = n - rd
    h1 = (n - rd) - re          # ker of e-bar on M / im Delta
    h2 = (n - rd) - re          # coker of e-bar inside ker Delta
    out = [h0]
    for p in range(1, p_max + 1):
        out.append(h1 if p % 2 else h2)
    return out


def periodic_complex_dims(f: Poly, XL, XR, p_max: int = 4) -> list:
    """Cohomology of M -Delta-> M -E-> M -Delta-> M -> ... computed directly."""
    delta, E = coefficient_maps(f, XL, XR)
    if not E.matmul(delta).is_zero() or not delta.matmul(E).is_zero():
        raise BadBimodule("periodic complex does not square to zero")
    n = delta.nrows
    maps = [delta if p % 2 == 0 else E for p in range(p_max + 1)]
    out = []
    for p in range(p_max + 1):
        a = analyze(maps[p]) if n else None
        ker = len(a.kernel) if a else 0
        im_prev = analyze(maps[p - 1]).rank if p > 0 and n else 0
        out.append(ker - im_prev)
    return out


def regular_actions(f: Poly):
    """Companion matrix of f: the action of x on A = k[X]/(f)."""
    F = f.field
    N = f.degree
    M = SparseMatrix(N, N, F)
    for j in range(N):
        v = rem_f(Poly.x(F, j + 1), f)
        for i, c in enumerate(v.c):
            if c:
                M.rows[i][j] = c
    return M, M


# ---------------------------------------------------------------- cochain-level representatives

def derivation_cochain(cx, P: MonogenicPresentation):
    """t(x^i) = i x^{i-1} q mod f, as a 1-cochain of the bar complex."""
    from .cochain import Cochain

    A = cx.A
    F = P.field
    rb = A.rbasis

    def fn(t):
        i = rb[t[0]]
        v = rem_f(Poly.x(F, i - 1) * P.q * i if i > 0 else Poly._raw([], F), P.f)
        return {k: c for k, c in enumerate(v.c) if c != 0}

    return Cochain.from_function(cx, 1, fn)


def zeta_cochain(cx, P: MonogenicPresentation):
    """z(x^i, x^j) = -quot_f(X^{i+j}), the 2-cocycle representing zeta."""
    from .cochain import Cochain

    A = cx.A
    F = P.field
    rb = A.rbasis

    def fn(t):
        v = rem_f(-quot_f(Poly.x(F, rb[t[0]] + rb[t[1]]), P.f), P.f)
        return {k: c for k, c in enumerate(v.c) if c != 0}

    return Cochain.from_function(cx, 2, fn)


def element_cochain(cx, a: Poly, f: Poly):
    """The 0-cochain given by the class of a(X) in k[X]/(f)."""
    from .cochain import Cochain

    v = rem_f(a, f)
    return Cochain.from_function(cx, 0, lambda t: {k: c for k, c in enumerate(v.c) if c != 0})


def _times_poly(c, a: Poly, P):
    """Multiply every value of a cochain by a(x)."""
    from .cochain import Cochain

    cx = c.complex
    A = cx.A
    av = {k: x for k, x in enumerate(rem_f(a, P.f).c) if x != 0}

    def fn(t):
        return A.sparse_product(av, c.value(t))

    return Cochain.from_function(cx, c.degree, fn)


def hh_element_cochain(cx, el: HHElement, t=None, z=None):
    """A cocycle representing a normal-form element: coeff(x) tau^eps zeta^j."""
    from .cochain import cup

    P = el.pres
    t = t or derivation_cochain(cx, P)
    z = z or zeta_cochain(cx, P)
    out = element_cochain(cx, el.coeff, P.f)
    if el.eps:
        out = cup(out, t)
    for _ in range(el.zpow):
        out = cup(out, z)
    return out


class OracleReport:
    def __init__(self, **kw):
        self.__dict__.update(kw)

    @property
    def passed(self) -> bool:
        return (
            self.dims_match
            and self.periodic_match
            and self.ring_relation
            and self.bracket_orientation is not None
            and self.tau_x_orientation is not None
            and self.zeta_zeta_vanishes
            and self.tau_tau_vanishes
        )

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def verify_presentation_in_oracle(f: Poly, p_max: int = 4, cap: int | None = None) -> OracleReport:
    """Compare the closed form with the bar-complex oracle."""
    from .algebra import make_monogenic
    from .cochain import DEFAULT_CAP, cup, gerstenhaber_bracket, hochschild_complex

    P = presentation(f)
    A = make_monogenic(f)
    cx = hochschild_complex(A, cap=cap or DEFAULT_CAP)
    oracle = cx.dims(p_max)
    closed = hh_dims_list(P, p_max)
    XL, XR = regular_actions(f)
    periodic = periodic_complex_dims(f, XL, XR, p_max)
    coeff = hh_with_coefficients(f, XL, XR, p_max)
    t = derivation_cochain(cx, P)
    z = zeta_cochain(cx, P)
    t_ok, z_ok = t.is_cocycle(), z.is_cocycle()
    tt = cup(t, t)
    ring = tt - _times_poly(z, P.u, P)
    ring_ok = cx.is_coboundary(2, ring.vec)
    # [t, x] is a 0-cochain; compare exactly with +-q
    xc = element_cochain(cx, Poly.x(P.field), f)
    tx = gerstenhaber_bracket(t, xc)
    qv = {k: c for k, c in enumerate(rem_f(P.q, f).c) if c != 0}
    tx_val = tx.value((0,))
    neg_q = {k: P.field.neg(c) for k, c in qv.items()}
    if tx_val == qv:
        tx_orient = 1
    elif tx_val == neg_q:
        tx_orient = -1
    else:
        tx_orient = None
    if not qv:
        tx_orient = 1 if not tx_val else None
    zt = gerstenhaber_bracket(z, t)
    wz = _times_poly(z, P.w, P)
    plus = cx.is_coboundary(2, (zt - wz).vec)
    minus = cx.is_coboundary(2, (zt + wz).vec)
    if plus and minus:
        orient = "both"     # w z is itself a coboundary
    elif plus:
        orient = 1
    elif minus:
        orient = -1
    else:
        orient = None
    wz0 = _times_poly(z, P.w_uncorrected, P)
    uncorrected_ok = cx.is_coboundary(2, (zt - wz0).vec) or cx.is_coboundary(2, (zt + wz0).vec)
    zz = gerstenhaber_bracket(z, z)
    ttb = gerstenhaber_bracket(t, t)
    return OracleReport(
        f=str(f),
        field=repr(f.field),
        presentation=P.as_dict(),
        oracle_dims=oracle,
        closed_form_dims=closed,
        periodic_dims=periodic,
        coefficient_dims=coeff,
        dims_match=oracle == closed == coeff,
        periodic_match=periodic == closed,
        t_is_cocycle=t_ok,
        z_is_cocycle=z_ok,
        ring_relation=ring_ok and t_ok and z_ok,
        u_vanishes_mod_d=P.u.is_zero(),
        tau_x_orientation=tx_orient,
        bracket_orientation=orient,
        uncorrected_w_realized=uncorrected_ok,
        zeta_zeta_vanishes=cx.is_coboundary(3, zz.vec),
        tau_tau_vanishes=cx.is_coboundary(1, ttb.vec),
    )
