"""Structure, derivation and conformal algebras of a Jordan algebra.

co(V) = V + str(V) + V is built over the rational real form V0 with the
bracket

    [(u1,T1,v1),(u2,T2,v2)] = (T1 u2 - T2 u1,
                               [T1,T2] + 2 u1[]v2 - 2 u2[]v1,
                               -T1^# v2 + T2^# v1),   u[]v = L(uv) + [L(u),L(v)],

and realified for complex models. Subspaces are expressed in the
coordinates of the real Lie algebra ``ConformalAlgebra.lie``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from flint import fmpq, fmpq_mat

from . import jordan as jd
from . import linalg as la
from .liealg import (LieAlgebra, Subspace, ad_squared_eigenspaces, bracket_space, centralizer,
                     close_under_bracket, induced_algebra, realify, span)
from .scalars import ExactScalar, format_scalar


@dataclass
class Report:
    ok: bool
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @classmethod
    def of(cls, checks: dict, **details) -> "Report":
        return cls(all(checks.values()), checks, details)


# ---------------------------------------------------------------------------


class ConformalAlgebra:
    """co(V) with str(V), aut(V) and the grading identifications."""

    def __init__(self, V: jd.JordanAlgebra):
        self.V = V
        self.R = V.real
        n = self.n0 = V.n
        L0 = V.Lmats
        ders = la.row_space((la.flatten(la.commutator(L0[a], L0[b]))
                             for a, b in combinations(range(n), 2)), n * n)
        self.der0 = [la.reshape(row, n) for row in la.rows_of(ders)]
        self.S = list(L0) + self.der0
        m = self.m0 = len(self.S)
        self.nder0 = len(self.der0)
        self._str_solver = la.CoordinateSolver(la.mat([la.flatten(s) for s in self.S], n * n))
        self.G0 = V.trace_gram
        self.G0inv = self.G0.inv()
        self.dim0 = 2 * n + m
        self.co0 = self._build_co0()
        self.delta = V.delta
        if V.field == "R":
            self.lie = self.co0
        else:
            self.lie = realify(self.co0, name=f"co({V.name})")
        self.lie.name = f"co({V.name})"
        self.dim = self.lie.dim

    # index helpers at the rational-form level
    def iu(self, a):
        return a

    def iT(self, k):
        return self.n0 + k

    def iv(self, a):
        return self.n0 + self.m0 + a

    def sharp0(self, T: fmpq_mat) -> fmpq_mat:
        return self.G0inv * T.transpose() * self.G0

    def str_coords0(self, T: fmpq_mat) -> list:
        return self._str_solver.coords(la.flatten(T), check=True)

    def _build_co0(self) -> LieAlgebra:
        n, m, V = self.n0, self.m0, self.V
        pairs = {}

        def put(a, b, vec):
            if a == b or not vec:
                return
            if a < b:
                pairs[(a, b)] = vec
            else:
                pairs[(b, a)] = {g: -c for g, c in vec.items()}

        sharps = [self.sharp0(S) for S in self.S]
        for k, S in enumerate(self.S):
            for b in range(n):
                col = {self.iu(g): S[g, b] for g in range(n) if S[g, b] != 0}
                put(self.iT(k), self.iu(b), col)
                colv = {self.iv(g): -sharps[k][g, b] for g in range(n) if sharps[k][g, b] != 0}
                put(self.iT(k), self.iv(b), colv)
        # [L_a, L_b] coordinates (derivation part)
        comm = {}
        for a, b in combinations(range(n), 2):
            c = self.str_coords0(la.commutator(V.Lmats[a], V.Lmats[b]))
            comm[(a, b)] = c
        zero = [fmpq(0)] * m
        for a in range(n):
            for b in range(n):
                # 2 (L(e_a e_b) + [L_a, L_b])
                coords = list(zero)
                for g in range(n):
                    x = V.Lmats[a][g, b]
                    if x:
                        coords[g] += x
                if a < b:
                    coords = la.vadd(coords, comm[(a, b)])
                elif b < a:
                    coords = la.vsub(coords, comm[(b, a)])
                vec = {self.iT(k): 2 * c for k, c in enumerate(coords) if c}
                put(self.iu(a), self.iv(b), vec)
        for k, l in combinations(range(m), 2):
            C = la.commutator(self.S[k], self.S[l])
            if la.is_zero_mat(C):
                continue
            c = self.str_coords0(C)
            put(self.iT(k), self.iT(l), {self.iT(g): x for g, x in enumerate(c) if x})
        labels = ([f"u:{b}" for b in V.basis] + [f"T:L({b})" for b in V.basis]
                  + [f"T:D{k}" for k in range(self.nder0)] + [f"v:{b}" for b in V.basis])
        return LieAlgebra.from_pairs(labels, pairs, name=f"co0({V.name})")

    # ------------------------------------------------------------------
    # translation between Lie coordinates and (u, T, v) on the real view

    def _halves(self, x):
        if self.V.field == "R":
            return [list(x)]
        d = self.dim0
        return [list(x[:d]), list(x[d:])]

    def _T0(self, coords) -> fmpq_mat:
        n = self.n0
        T = fmpq_mat(n, n)
        for k, c in enumerate(coords):
            if c:
                T += c * self.S[k]
        return T

    def parts(self, x: Sequence):
        """(u, T, v) of a Lie vector, with u, v real-view vectors and T a real matrix."""
        n, m = self.n0, self.m0
        hs = self._halves(x)
        us = [h[:n] for h in hs]
        Ts = [self._T0(h[n:n + m]) for h in hs]
        vs = [h[n + m:] for h in hs]
        if len(hs) == 1:
            return us[0], Ts[0], vs[0]
        return us[0] + us[1], jd._blocks(Ts[0], -Ts[1], Ts[1], Ts[0]), vs[0] + vs[1]

    def element(self, u: Optional[Sequence] = None, T: Optional[fmpq_mat] = None,
                v: Optional[Sequence] = None) -> list:
        """Lie coordinates of (u, T, v); T must lie in str(V) (real view)."""
        n, m, N = self.n0, self.m0, self.R.N
        u = list(u) if u is not None else [fmpq(0)] * N
        v = list(v) if v is not None else [fmpq(0)] * N
        if self.V.field == "R":
            tc = self.str_coords0(T) if T is not None else [fmpq(0)] * m
            return [la.q(a) for a in u] + tc + [la.q(a) for a in v]
        if T is None:
            A = B = fmpq_mat(n, n)
        else:
            A = _sub(T, 0, 0, n)
            B = _sub(T, n, 0, n)
            if _sub(T, n, n, n) != A or _sub(T, 0, n, n) != -B:
                raise ValueError("operator is not complex linear")
        re = [la.q(a) for a in u[:n]] + self.str_coords0(A) + [la.q(a) for a in v[:n]]
        im = [la.q(a) for a in u[n:]] + self.str_coords0(B) + [la.q(a) for a in v[n:]]
        return re + im

    def theta_matrix(self) -> fmpq_mat:
        """Cartan involution theta(u,T,v) = (-vartheta v, -T*, -vartheta u)."""
        if hasattr(self, "_theta"):
            return self._theta
        n, m, d = self.n0, self.m0, self.dim0
        th0 = self.V.theta0
        M = fmpq_mat(d, d)
        for b in range(n):
            for g in range(n):
                x = th0[g, b]
                if x:
                    M[self.iv(g), self.iu(b)] = -x
                    M[self.iu(g), self.iv(b)] = -x
        for k, S in enumerate(self.S):
            star = th0 * self.sharp0(S) * th0
            for g, c in enumerate(self.str_coords0(star)):
                if c:
                    M[self.iT(g), self.iT(k)] = -c
        if self.V.field == "C":
            M = la.block_diag(M, -M)
        self._theta = M
        return M

    # distinguished elements and subspaces
    def sl2(self):
        e = self.R.unit
        E = self.element(u=e)
        F = self.element(v=e)
        H = self.element(T=2 * self.R.mult(e))
        return E, H, F

    def gprime(self) -> Subspace:
        E, H, F = self.sl2()
        vecs = [E, H, F]
        if self.lie.J is not None:
            vecs += [la.matvec(self.lie.J, x) for x in (E, H, F)]
        return span(self.lie, vecs)

    def aut_subspace(self) -> Subspace:
        """aut(V) as the derivation part of str(V) (both real halves for F = C)."""
        idx = [self.iT(k) for k in range(self.n0, self.m0)]
        if self.V.field == "C":
            idx += [self.dim0 + i for i in idx]
        return Subspace(self.lie, la.mat([la.unit(self.dim, i) for i in idx], self.dim))

    def str_subspace(self) -> Subspace:
        idx = [self.iT(k) for k in range(self.m0)]
        if self.V.field == "C":
            idx += [self.dim0 + i for i in idx]
        return Subspace(self.lie, la.mat([la.unit(self.dim, i) for i in idx], self.dim))

    def operator(self, x: Sequence) -> fmpq_mat:
        """T-part of a Lie vector as a real matrix (for elements of str)."""
        return self.parts(x)[1]

    def op_element(self, T: fmpq_mat) -> list:
        return self.element(T=T)


def _sub(M: fmpq_mat, r0: int, c0: int, n: int) -> fmpq_mat:
    out = fmpq_mat(n, n)
    for i in range(n):
        for j in range(n):
            x = M[r0 + i, c0 + j]
            if x:
                out[i, j] = x
    return out


_CO_CACHE: dict = {}


def conformal_algebra(V: jd.JordanAlgebra) -> ConformalAlgebra:
    key = (V.name, id(V))
    if key not in _CO_CACHE:
        _CO_CACHE[key] = ConformalAlgebra(V)
    return _CO_CACHE[key]


# ---------------------------------------------------------------------------
# str(V) and aut(V)


def structure_algebra(V: jd.JordanAlgebra) -> Report:
    """Dimensions of str and aut, and the characterizations of aut inside str."""
    C = conformal_algebra(V)
    n, m = C.n0, C.m0
    S = C.S
    # X in aut  <=>  X e = 0  <=>  X^# = -X, as subspaces of str (rational form)
    e = list(V.unit)
    kill_e = la.kernel_of_rows(
        [[la.matvec(S[k], e)[g] for k in range(m)] for g in range(n)], m)
    rows = []
    sharps = [C.sharp0(s) + s for s in S]
    for i in range(n * n):
        rows.append([la.flatten(sh)[i] for sh in sharps])
    kill_sharp = la.kernel_of_rows(rows, m)
    der = la.mat([la.unit(m, k) for k in range(n, m)], m)
    traces = [sum((D[i, i] for i in range(n)), fmpq(0)) for D in C.der0]
    # closure of the generated derivation algebra: commutators of derivations stay derivations
    closed = all(
        all(c == 0 for c in C.str_coords0(la.commutator(C.der0[a], C.der0[b]))[:n])
        for a, b in combinations(range(C.nder0), 2))
    direct = la.vstack(la.mat([la.flatten(x) for x in V.Lmats], n * n),
                       la.mat([la.flatten(x) for x in C.der0], n * n)).rank() == m
    checks = {
        "aut = ker(X -> Xe)": la.same_span(kill_e, der),
        "aut = ker(X -> X^# + X)": la.same_span(kill_sharp, der),
        "derivations are traceless": all(t == 0 for t in traces),
        "aut closed under bracket": closed,
        "str = L(V) + aut direct": direct,
    }
    return Report.of(checks, dim_str=m * V.delta, dim_aut=C.nder0 * V.delta, n_real=n * V.delta)


def aut_algebra(V: jd.JordanAlgebra) -> LieAlgebra:
    """aut(V) with structure constants, as a real Lie algebra."""
    C = conformal_algebra(V)
    if not hasattr(C, "_aut"):
        A = C.aut_subspace()
        C._aut = induced_algebra(A.rows, C.lie.bracket, parent=C.lie, name=f"aut({V.name})")
    return C._aut


def aut_by_closure(V: jd.JordanAlgebra) -> LieAlgebra:
    """aut(V) recomputed independently as the commutator closure of [L(x), L(y)] in gl(V)."""
    R = V.real
    gens = [la.commutator(R.L[a], R.L[b]) for a, b in combinations(range(R.N), 2)]
    return close_under_bracket(None, gens, name=f"aut({V.name})")


# ---------------------------------------------------------------------------
# co(V): Jacobi, grading, Cartan involution, sl2 triple, dual pair


def jacobi(V: jd.JordanAlgebra, samples: int = 5000, seed: int = 0, limit: int = 60) -> Report:
    C = conformal_algebra(V)
    res = C.lie.jacobi_check("auto", samples=samples, seed=seed, limit=limit)
    return Report.of({"jacobi": res.ok, "antisymmetry": C.lie.antisymmetry_ok()}, dim=C.dim, **res.details)


def grading_check(V: jd.JordanAlgebra) -> Report:
    """[H, (u,T,v)] = (2u, 0, -2v) on every basis vector."""
    C = conformal_algebra(V)
    _, H, _ = C.sl2()
    adH = C.lie.ad(H)
    ok = True
    counts = {2: 0, 0: 0, -2: 0}
    for a in range(C.dim):
        x = la.unit(C.dim, a)
        u, T, v = C.parts(x)
        col = [adH[g, a] for g in range(C.dim)]
        target = C.element(u=la.vscale(2, u), v=la.vscale(-2, v))
        if col != target:
            ok = False
        if not la.is_zero_vec(u):
            counts[2] += 1
        elif not la.is_zero_vec(v):
            counts[-2] += 1
        else:
            counts[0] += 1
    return Report.of({"grading": ok}, multiplicities=counts)


def sl2_triple(V: jd.JordanAlgebra) -> Report:
    C = conformal_algebra(V)
    E, H, F = C.sl2()
    br = C.lie.bracket
    checks = {
        "[H,E]=2E": br(H, E) == la.vscale(2, E),
        "[H,F]=-2F": br(H, F) == la.vscale(-2, F),
        "[E,F]=H": br(E, F) == H,
    }
    if C.lie.J is not None:
        g1 = C.gprime()
        checks["g' is i-stable"] = g1.contains([la.matvec(C.lie.J, x) for x in g1.vectors()])
    return Report.of(checks)


def cartan_decomposition(V: jd.JordanAlgebra, samples: int = 400, seed: int = 0,
                         definiteness: bool = True):
    """(k, p, report) for theta(u,T,v) = (-vartheta v, -T*, -vartheta u)."""
    import random
    C = conformal_algebra(V)
    L = C.lie
    Th = C.theta_matrix()
    I = la.identity(L.dim)
    checks = {"theta^2 = id": Th * Th == I}
    rng = random.Random(seed)
    pairs = list(combinations(range(L.dim), 2)) if L.dim <= 40 else [
        tuple(rng.sample(range(L.dim), 2)) for _ in range(samples)]
    cols = {}

    def th(a):
        if a not in cols:
            cols[a] = [Th[g, a] for g in range(L.dim)]
        return cols[a]

    auto = True
    for a, b in pairs:
        lhs = la.matvec(Th, L.bracket(la.unit(L.dim, a), la.unit(L.dim, b)))
        rhs = L.bracket(th(a), th(b))
        if lhs != rhs:
            auto = False
            break
    checks["theta automorphism"] = auto
    k = Subspace(L, la.nullspace_rows(Th - I))
    p = Subspace(L, la.nullspace_rows(Th + I))
    checks["k + p = co"] = k.dim + p.dim == L.dim
    kk = _sampled_bracket_space(L, k, k, rng, samples)
    kp = _sampled_bracket_space(L, k, p, rng, samples)
    pp = _sampled_bracket_space(L, p, p, rng, samples)
    checks["[k,k] in k"] = k.contains(kk)
    checks["[k,p] in p"] = p.contains(kp)
    checks["[p,p] in k"] = k.contains(pp)
    details = {"dim_k": k.dim, "dim_p": p.dim}
    if definiteness:
        K = L.killing_form()
        gk = la.gram(k.vectors(), K)
        gp = la.gram(p.vectors(), K)
        checks["killing negative definite on k"] = la.is_positive_definite(-gk)
        checks["killing positive definite on p"] = la.is_positive_definite(gp)
    return k, p, Report.of(checks, **details)


def _sampled_bracket_space(L, A: Subspace, B: Subspace, rng, samples: int) -> Subspace:
    av, bv = A.vectors(), B.vectors()
    if len(av) * len(bv) <= samples:
        return bracket_space(L, A, B)
    vecs = [L.bracket(rng.choice(av), rng.choice(bv)) for _ in range(samples)]
    return Subspace(L, la.row_space(vecs, L.dim))


def dual_pair_check(V: jd.JordanAlgebra) -> Report:
    """Z(g') = aut(V) and Z(aut(V)) = g' in co(V) (realified)."""
    C = conformal_algebra(V)
    gp = C.gprime()
    g = C.aut_subspace()
    zg1 = centralizer(C.lie, gp)
    zg = centralizer(C.lie, g)
    checks = {
        "Z(g') = aut(V)": zg1 == g,
        "Z(aut(V)) = g'": zg == gp,
    }
    zz = centralizer(C.lie, zg)
    checks["Z(Z(aut)) = aut"] = zz == g
    return Report.of(checks, dim_Z_gprime=zg1.dim, dim_Z_aut=zg.dim, dim_aut=g.dim, dim_gprime=gp.dim)


# ---------------------------------------------------------------------------
# Peirce decomposition of aut(V)


@dataclass
class AutDecomposition:
    g0: Subspace
    blocks: dict  # (i, j) -> g_ij, 0-based i < j
    report: Report


def aut_decomposition(V: jd.JordanAlgebra, frame: Optional[jd.JordanFrame] = None) -> AutDecomposition:
    C = conformal_algebra(V)
    R = C.R
    P = jd.peirce_decompose(V, frame)
    cs = [R.realify_vector(c) for c in P.frame.idempotents]
    r = len(cs)
    g = C.aut_subspace()
    gv = g.vectors()
    # g0 = {D in g : D c_i = 0 for all i}
    ops = [C.operator(x) for x in gv]
    rows = []
    for c in cs:
        imgs = [la.matvec(T, c) for T in ops]
        rows.extend([[im[t] for im in imgs] for t in range(R.N)])
    ker = la.kernel_of_rows(rows, len(gv))
    g0_vecs = [_combine(gv, k) for k in la.rows_of(ker)]
    g0 = Subspace(C.lie, la.mat(g0_vecs, C.dim)) if g0_vecs else Subspace(C.lie, fmpq_mat(0, C.dim))
    blocks = {}
    for i in range(r):
        Lc = R.mult(cs[i])
        for j in range(i + 1, r):
            vecs = [C.element(T=la.commutator(Lc, R.mult(x)))
                    for x in la.rows_of(P.real_blocks[(i, j)])]
            blocks[(i, j)] = span(C.lie, vecs)
    L = C.lie
    dims = [g0.dim] + [b.dim for b in blocks.values()]
    allrows = la.vstack(g0.rows, *[b.rows for b in blocks.values()])
    checks = {
        "direct sum": sum(dims) == g.dim and allrows.rank() == g.dim,
        "blocks inside aut": all(g.contains(b) for b in blocks.values()) and g.contains(g0),
        "dim g_ij = d*delta": all(b.dim == V.d * V.delta for b in blocks.values()),
    }
    blk = lambda a, b: blocks[(min(a, b), max(a, b))]
    inc_ik = inc_zero = inc_0 = True
    for i, j, k in ((i, j, k) for i in range(r) for j in range(r) for k in range(r)
                    if len({i, j, k}) == 3):
        if not blk(i, k).contains(bracket_space(L, blk(i, j), blk(j, k))):
            inc_ik = False
    for i, j, k, l in ((i, j, k, l) for i, j in combinations(range(r), 2)
                       for k, l in combinations(range(r), 2) if len({i, j, k, l}) == 4):
        if bracket_space(L, blocks[(i, j)], blocks[(k, l)]).dim:
            inc_zero = False
    for b in blocks.values():
        if not g0.contains(bracket_space(L, b, b)):
            inc_0 = False
        if g0.dim and not b.contains(bracket_space(L, g0, b)):
            inc_0 = False
    if g0.dim and not g0.contains(bracket_space(L, g0, g0)):
        inc_0 = False
    checks["[g_ij,g_jk] in g_ik"] = inc_ik
    checks["[g_ij,g_kl] = 0"] = inc_zero
    checks["g0 relations"] = inc_0
    rep = Report.of(checks, dim_g0=g0.dim, dim_blocks={f"{i + 1}{j + 1}": b.dim for (i, j), b in blocks.items()})
    return AutDecomposition(g0, blocks, rep)


def _combine(vectors, coeffs):
    out = [fmpq(0)] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c:
            out = la.vadd(out, la.vscale(c, v))
    return out


# ---------------------------------------------------------------------------
# symmetric pair (g, g^sigma)


@dataclass
class SymmetricPairData:
    sigma_plus: Subspace
    sigma_minus: Subspace
    stabilizer: Subspace
    report: Report


def symmetric_pair(V: jd.JordanAlgebra) -> SymmetricPairData:
    """sigma from Peirce parity, cross-checked against ad((c,0,-c))^2."""
    C = conformal_algebra(V)
    R = C.R
    L = C.lie
    dec = aut_decomposition(V)
    r = V.r
    plus = dec.g0
    for (i, j), b in dec.blocks.items():
        if i >= 1:
            plus = plus + b
    minus = Subspace(L, fmpq_mat(0, L.dim))
    for (i, j), b in dec.blocks.items():
        if i == 0:
            minus = minus + b
    g = C.aut_subspace()
    c = R.frame[0]
    gv = g.vectors()
    imgs = [la.matvec(C.operator(x), c) for x in gv]
    ker = la.kernel_of_rows([[im[t] for im in imgs] for t in range(R.N)], len(gv))
    stab = span(L, [_combine(gv, k) for k in la.rows_of(ker)]) if ker.nrows() else Subspace(L, fmpq_mat(0, L.dim))
    P = jd.peirce_decompose(V)
    half = la.vstack(*[P.real_blocks[(0, j)] for j in range(1, r)])
    Lc = R.mult(c)
    lcv = span(L, [C.element(T=la.commutator(Lc, R.mult(y))) for y in la.rows_of(half)])
    # w = exp(pi ad Z), Z = (c, 0, -c): sigma = +1 on ad(Z)^2 eigenvalues 0, -4; -1 on eigenvalue -1
    Z = C.element(u=c, v=la.vscale(-1, c))
    eig = ad_squared_eigenspaces(L, Z)
    eigvals = sorted((lam for lam, _ in eig), reverse=True)
    spaces = {lam: sp for lam, sp in eig}
    neg1 = spaces.get(fmpq(-1), Subspace(L, fmpq_mat(0, L.dim)))
    even = Subspace(L, fmpq_mat(0, L.dim))
    for lam in (fmpq(0), fmpq(-4)):
        if lam in spaces:
            even = even + spaces[lam]
    w_minus = g.intersect(neg1)
    w_plus = g.intersect(even)
    # (-1)-eigenvectors, projected to the top grade, span V(c, 1/2)
    tops = [C.parts(x)[0] for x in neg1.vectors()]
    top_span = la.row_space(tops, R.N) if tops else fmpq_mat(0, R.N)
    checks = {
        "g = g^sigma + g^-sigma": plus.dim + minus.dim == g.dim and (plus + minus) == g,
        "g^-sigma = [L(c),L(V(c,1/2))]": minus == lcv,
        "g^sigma = g_c": plus == stab,
        "ad(Z)^2 spectrum in {0,-1,-4}": set(eigvals) <= {fmpq(0), fmpq(-1), fmpq(-4)},
        "sigma from w matches Peirce parity": w_minus == minus and w_plus == plus,
        "(-1)-eigenspace projects onto V(c,1/2)": la.same_span(top_span, half),
        "[g^s,g^s] in g^s": plus.contains(bracket_space(L, plus, plus)),
        "[g^s,g^-s] in g^-s": minus.contains(bracket_space(L, plus, minus)),
        "[g^-s,g^-s] in g^s": plus.contains(bracket_space(L, minus, minus)),
    }
    rep = Report.of(checks, dim_sigma_plus=plus.dim, dim_sigma_minus=minus.dim, dim_stabilizer=stab.dim,
                    ad_Z_squared_eigenvalues=[str(e) for e in eigvals])
    return SymmetricPairData(plus, minus, stab, rep)


# ---------------------------------------------------------------------------
# D0 commutator identities, root data, T0 rotation


def _brk(A: fmpq_mat, B: fmpq_mat) -> fmpq_mat:
    return A * B - B * A


def _vector_with_zero_tauF(R, x, candidates):
    """Combinations of candidates y with tau_F(x, y) = 0 (real and imaginary parts)."""
    conds = [[R.tau(x, y) for y in candidates]]
    if R.J is not None:
        Jx = la.matvec(R.J, x)
        conds.append([R.tau(Jx, y) for y in candidates])
    ker = la.kernel_of_rows(conds, len(candidates))
    return [_combine(candidates, k) for k in la.rows_of(ker)]


def d0_identities(V: jd.JordanAlgebra, x: Optional[Sequence] = None, sign: Optional[int] = None) -> Report:
    """Commutator identities for D0 = [L(c1), L(x)], x in V_12^+ or V_12^- (real view)."""
    R = V.real
    P = jd.peirce_decompose(V)
    c1, c2 = R.frame[0], R.frame[1]
    Lc1, Lc2 = R.mult(c1), R.mult(c2)
    xs = []
    if x is not None:
        xs = [list(x)]
    else:
        pm = P.signs[(0, 1)]
        for s, rows in ((1, pm[0]), (-1, pm[1])):
            if sign is not None and s != sign:
                continue
            if rows.nrows():
                xs.append(la.rows_of(rows)[0])
    checks = {}
    count = 0
    V12 = la.rows_of(P.real_blocks[(0, 1)])
    for x in xs:
        D0 = _brk(Lc1, R.mult(x))
        Lx = R.mult(x)
        txx = R.tau(x, x)
        ok1 = True
        for y in _vector_with_zero_tauF(R, x, V12):
            Ly = R.mult(y)
            if _brk(D0, _brk(Lc1, Ly)) != fmpq(-1, 4) * _brk(Lx, Ly):
                ok1 = False
            if _brk(D0, _brk(Lx, Ly)) != fmpq(1, 2) * txx * _brk(Lc1, Ly):
                ok1 = False
            count += 2
        ok2 = True
        ok3 = True
        for j in range(2, V.r):
            for y in la.rows_of(P.real_blocks[(0, j)]):
                if _brk(D0, _brk(Lc1, R.mult(y))) != fmpq(-1, 2) * _brk(Lc2, R.mult(R.prod(x, y))):
                    ok2 = False
                count += 1
            for z in la.rows_of(P.real_blocks[(1, j)]):
                if _brk(D0, _brk(Lc2, R.mult(z))) != fmpq(1, 2) * _brk(Lc1, R.mult(R.prod(x, z))):
                    ok2 = False
                count += 1
        cs = R.frame
        for i in range(2, V.r):
            Lci = R.mult(cs[i])
            for j in range(i + 1, V.r):
                for y in la.rows_of(P.real_blocks[(i, j)]):
                    if not la.is_zero_mat(_brk(D0, _brk(Lci, R.mult(y)))):
                        ok3 = False
                    count += 1
        tag = "+" if la.matvec(R.theta, x) == list(x) else "-"
        checks[f"(1) x in V12^{tag}"] = ok1
        checks[f"(2) x in V12^{tag}"] = ok2
        checks[f"(3) x in V12^{tag}"] = ok3
    return Report.of(checks, identities_tested=count)


@dataclass
class RootData:
    kind: str
    generator: list  # h0 or t0 as ExactScalar real-view vector
    ell: fmpq        # lambda^2 with generator = lambda * x
    eigen: dict      # eigenvalue of ad(generator)^2 -> real dimension
    mult_1: int      # multiplicity over F of the root alpha (beta)
    mult_2: int      # multiplicity over F of 2 alpha (2 beta)
    rho_coeff: Fraction
    report: Report


def root_data(V: jd.JordanAlgebra, kind: str = "split") -> RootData:
    """Root space data of (g, a) (kind='split') or (g_C, t_C) (kind='compact')."""
    if kind not in ("split", "compact"):
        raise ValueError("kind must be 'split' or 'compact'")
    C = conformal_algebra(V)
    R = C.R
    P = jd.peirce_decompose(V)
    plus, minus = P.signs[(0, 1)]
    if kind == "split":
        rows = minus
        target = fmpq(-32)
        if not rows.nrows():
            raise ValueError("split root data needs V_12^- != 0 (non-Euclidean or complex model)")
    else:
        if V.field != "R":
            raise ValueError("compact root data is defined for F = R")
        rows = plus
        target = fmpq(32)
        if not rows.nrows():
            raise ValueError("compact root data needs V_12^+ != 0")
    x = la.rows_of(rows)[0]
    txx = R.tau(x, x)
    ell = target / txx  # generator = lambda x with lambda^2 = ell
    lam = ExactScalar.sqrt(la.to_fraction(ell))
    gen = [lam * ExactScalar(la.to_fraction(t)) for t in x]
    c1, c2 = R.frame[0], R.frame[1]
    Lc1, Lc2 = R.mult(c1), R.mult(c2)
    Dx = _brk(Lc1, R.mult(x))
    aut = aut_algebra(V)
    solver = la.CoordinateSolver(aut.embedding)
    Xcoords = solver.coords(C.element(T=Dx))
    eig = ad_squared_eigenspaces(aut, Xcoords)
    # eigenvalues of ad(lambda X)^2 are ell times those of ad(X)^2
    eigen = {ell * lam_: sp.dim for lam_, sp in eig}
    if kind == "split":
        e1, e2 = fmpq(1), fmpq(4)
    else:
        e1, e2 = fmpq(-1), fmpq(-4)
    allowed = {fmpq(0), e1, e2}
    d1 = eigen.get(e1, 0)
    d2 = eigen.get(e2, 0)
    delta = V.delta
    mult_1 = d1 // (2 * delta) if kind == "split" else d1 // 2
    mult_2 = d2 // (2 * delta) if kind == "split" else d2 // 2
    # rho = (dim g^alpha + 2 dim g^{2 alpha}) / 2 with real (split) or complex (compact) dims
    rho = Fraction(d1 // 2 + d2, 2)
    # explicit root vectors, checked componentwise in Q(lambda)
    ok_a = ok_2a = True
    sgn = 1 if kind == "split" else -1
    for j in range(2, V.r):
        for y in la.rows_of(P.real_blocks[(0, j)]):
            A = _brk(Lc1, R.mult(y))
            B = _brk(Lc2, R.mult(R.prod(x, y)))
            if _brk(Dx, A) != fmpq(-1, 2) * B or _brk(Dx, B) != -sgn * 2 / ell * A:
                ok_a = False
    V12 = la.rows_of(P.real_blocks[(0, 1)])
    for y in _vector_with_zero_tauF(R, x, V12):
        A = _brk(Lc1, R.mult(y))
        Cm = _brk(R.mult(x), R.mult(y))
        if _brk(Dx, A) != fmpq(-1, 4) * Cm or _brk(Dx, Cm) != -sgn * 16 / ell * A:
            ok_2a = False
    expected1 = (V.r - 2) * V.d
    expected2 = V.d - 1
    checks = {
        "spectrum": set(eigen) <= allowed,
        "mult alpha": mult_1 == expected1,
        "mult 2alpha": mult_2 == expected2,
        "rho": (rho == Fraction(V.delta * (V.r * V.d - 2), 2) if kind == "split"
                else rho == Fraction(V.r * V.d - 2, 2)),
        "alpha root vectors": ok_a,
        "2alpha root vectors": ok_2a,
    }
    if kind == "split":
        checks["real multiplicities"] = d1 == 2 * expected1 * delta and d2 == 2 * expected2 * delta
    rep = Report.of(checks, eigen={str(k): v for k, v in sorted(eigen.items(), key=lambda t: t[0])},
                    generator=[format_scalar(s) for s in gen], lambda_squared=str(ell))
    return RootData(kind, gen, ell, eigen, mult_1, mult_2, rho, rep)


def t0_rotation_check(V: jd.JordanAlgebra) -> Report:
    """T0 = [L(c1), L(t0)] with tau(t0,t0) = 32 rotates span{c1 - c2, t0}."""
    if V.field != "R":
        raise ValueError("the T0 rotation lemma is stated for F = R")
    P = jd.peirce_decompose(V)
    plus = P.signs[(0, 1)][0]
    if not plus.nrows():
        raise ValueError("the T0 rotation lemma needs V_12^+ != 0")
    x = la.rows_of(plus)[0]
    R = V.real
    ell = fmpq(32) / R.tau(x, x)
    lam = ExactScalar.sqrt(la.to_fraction(ell))
    t0 = [lam * ExactScalar(la.to_fraction(a)) for a in x]
    c1 = [ExactScalar(la.to_fraction(a)) for a in R.frame[0]]
    c2 = [ExactScalar(la.to_fraction(a)) for a in R.frame[1]]

    def T0(v):
        return [p - q for p, q in zip(jd.jordan_product(V, c1, jd.jordan_product(V, t0, v)),
                                      jd.jordan_product(V, t0, jd.jordan_product(V, c1, v)))]

    diff = [a - b for a, b in zip(c1, c2)]
    tot = [a + b for a, b in zip(c1, c2)]
    checks = {
        "tau(t0,t0) = 32": jd.real_trace_form(V, t0, t0) == 32,
        "T0(c1+c2) = 0": all(s.is_zero() for s in T0(tot)),
        "T0(c1-c2) = -t0/2": T0(diff) == [s * Fraction(-1, 2) for s in t0],
        "T0 t0 = 8(c1-c2)": T0(t0) == [s * 8 for s in diff],
        "T0^2 = -4 on span{c1-c2, t0}": T0(T0(diff)) == [s * -4 for s in diff]
        and T0(T0(t0)) == [s * -4 for s in t0],
    }
    return Report.of(checks, t0=[format_scalar(s) for s in t0])
