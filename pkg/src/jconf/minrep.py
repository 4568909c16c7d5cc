"""Infinitesimal minimal representation on polynomials, and the sl2 model.

Functions on V are polynomials in the real coordinates x_0, ..., x_{N-1}
of the real view of V. Operators are finite sums  sum_alpha a_alpha(x) d^alpha
with polynomial coefficients over Q(i); multi-indices and monomials are
sorted tuples of variable indices (with repetition).

    dPi(0,0,u) = -i tau(x, u)
    dPi(0,T,0) = -d_{Tx} - (rd/4n) tr_R(T)
    dPi(v,0,0) = -i tau(B, v)
    B = sum P(e^_a, e^_b) x d_a d_b + (delta d / 2) sum e^_a d_a
"""

from __future__ import annotations

import random
from collections import Counter
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Optional, Sequence

import sympy as sp
from flint import fmpq, fmpq_mat

from . import jordan as jd
from . import linalg as la
from .conformal import ConformalAlgebra, Report, conformal_algebra

Q0 = fmpq(0)


class GQ:
    """Gaussian rational a + b i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = la.q(re)
        self.im = la.q(im)

    @staticmethod
    def of(v) -> "GQ":
        return v if isinstance(v, GQ) else GQ(v)

    def __add__(self, o):
        o = GQ.of(o)
        return GQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GQ.of(o)
        return GQ(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GQ(-self.re, -self.im)

    def __mul__(self, o):
        o = GQ.of(o)
        return GQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, o):
        try:
            o = GQ.of(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return str(self)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


I = GQ(0, 1)

# ---------------------------------------------------------------------------
# polynomials: dict monomial -> GQ


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


def poly_add(p: dict, q: dict, c=1) -> dict:
    out = dict(p)
    c = GQ.of(c)
    for m, v in q.items():
        w = out.get(m, GQ()) + c * v
        if w:
            out[m] = w
        else:
            out.pop(m, None)
    return out


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, a in p.items():
        for m2, b in q.items():
            m = _merge(m1, m2)
            w = out.get(m, GQ()) + a * b
            if w:
                out[m] = w
            else:
                out.pop(m, None)
    return out


def poly_scale(p: dict, c) -> dict:
    c = GQ.of(c)
    if not c:
        return {}
    return {m: c * v for m, v in p.items()}


def _diff_mono(m: tuple, alpha: tuple):
    """d^alpha x^m as (coefficient, monomial) or None."""
    if len(alpha) > len(m):
        return None
    rest = list(m)
    coef = 1
    for v in alpha:
        e = rest.count(v)
        if not e:
            return None
        coef *= e
        rest.remove(v)
    return coef, tuple(rest)


def poly_diff(p: dict, alpha: tuple) -> dict:
    if not alpha:
        return dict(p)
    out: dict = {}
    for m, v in p.items():
        r = _diff_mono(m, alpha)
        if r is None:
            continue
        c, rest = r
        w = out.get(rest, GQ()) + v * c
        if w:
            out[rest] = w
        else:
            out.pop(rest, None)
    return out


def poly_eval(p: dict, x: Sequence) -> GQ:
    s = GQ()
    for m, v in p.items():
        t = fmpq(1)
        for i in m:
            t *= x[i]
            if not t:
                break
        if t:
            s = s + v * t
    return s


def linear_poly(coeffs: Sequence) -> dict:
    return {(i,): GQ.of(c) for i, c in enumerate(coeffs) if c}


def monomials(nvars: int, degree: int) -> list:
    """All monomials of total degree <= degree (constant first)."""
    out = []
    for k in range(degree + 1):
        out.extend(combinations_with_replacement(range(nvars), k))
    return out


def _sub_multisets(alpha: tuple):
    """(gamma, rest, multiplicity) with gamma + rest = alpha as multisets."""
    ca = Counter(alpha)
    items = sorted(ca.items())

    def rec(i):
        if i == len(items):
            yield (), (), 1
            return
        v, k = items[i]
        for j in range(k + 1):
            for g, r, mult in rec(i + 1):
                yield (v,) * j + g, (v,) * (k - j) + r, mult * comb(k, j)

    for g, r, mult in rec(0):
        yield tuple(sorted(g)), tuple(sorted(r)), mult


# ---------------------------------------------------------------------------


class PolyDiffOp:
    """sum_alpha a_alpha(x) d^alpha with Gaussian-rational polynomial coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        self.nvars = nvars
        self.terms = {}
        for a, p in (terms or {}).items():
            p = {m: GQ.of(v) for m, v in p.items() if v}
            if p:
                self.terms[tuple(sorted(a))] = p

    # constructors
    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(): {(): GQ.of(c)}})

    @classmethod
    def multiplication(cls, n, poly: dict):
        return cls(n, {(): poly})

    @classmethod
    def directional(cls, n, v: Sequence):
        """d_v = sum v_g d_g with constant coefficients."""
        return cls(n, {(g,): {(): GQ.of(c)} for g, c in enumerate(v) if c})

    @classmethod
    def vector_field(cls, n, M: fmpq_mat):
        """d_{Mx} = sum_g (Mx)_g d_g."""
        terms = {}
        for g in range(n):
            p = {(k,): GQ(M[g, k]) for k in range(n) if M[g, k]}
            if p:
                terms[(g,)] = p
        return cls(n, terms)

    # algebra
    def _combine(self, other, c):
        out = {a: dict(p) for a, p in self.terms.items()}
        for a, p in other.terms.items():
            q = poly_add(out.get(a, {}), p, c)
            if q:
                out[a] = q
            else:
                out.pop(a, None)
        return PolyDiffOp(self.nvars, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = GQ.of(c)
        return PolyDiffOp(self.nvars, {a: poly_scale(p, c) for a, p in self.terms.items()})

    __rmul__ = scale

    def compose(self, other: "PolyDiffOp") -> "PolyDiffOp":
        """(self o other) via the Leibniz rule."""
        out: dict = {}
        for alpha, a in self.terms.items():
            splits = list(_sub_multisets(alpha))
            for beta, b in other.terms.items():
                for gamma, rest, mult in splits:
                    db = poly_diff(b, gamma)
                    if not db:
                        continue
                    coef = poly_scale(poly_mul(a, db), mult)
                    key = _merge(rest, beta)
                    q = poly_add(out.get(key, {}), coef)
                    if q:
                        out[key] = q
                    else:
                        out.pop(key, None)
        return PolyDiffOp(self.nvars, out)

    __matmul__ = compose

    def commutator(self, other: "PolyDiffOp") -> "PolyDiffOp":
        return self.compose(other) - other.compose(self)

    def apply(self, poly: dict) -> dict:
        # enumerate the derivatives each monomial actually admits
        out: dict = {}
        top = self.order
        for m, v in poly.items():
            for k in range(min(top, len(m)) + 1):
                for alpha in set(combinations(m, k)):
                    a = self.terms.get(alpha)
                    if a is None:
                        continue
                    c, rest = _diff_mono(m, alpha)
                    cv = v * c
                    for am, av in a.items():
                        key = _merge(am, rest)
                        w = out.get(key, GQ()) + av * cv
                        if w:
                            out[key] = w
                        else:
                            out.pop(key, None)
        return out

    def at(self, x: Sequence) -> "Jet":
        """Freeze coefficients at the point x."""
        return Jet({a: v for a, p in self.terms.items() if (v := poly_eval(p, x))}, x)

    @property
    def order(self) -> int:
        return max((len(a) for a in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, PolyDiffOp) and (self - other).is_zero()

    def nnz(self) -> int:
        return sum(len(p) for p in self.terms.values())

    def __repr__(self):
        return f"PolyDiffOp(nvars={self.nvars}, order={self.order}, nnz={self.nnz()})"


class Jet:
    """An operator frozen at a point: f -> sum_alpha c_alpha (d^alpha f)(x)."""

    def __init__(self, coeffs: dict, point: Sequence):
        self.coeffs = {a: GQ.of(c) for a, c in coeffs.items() if c}
        self.point = list(point)

    def __add__(self, other):
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, GQ()) + c
        return Jet(out, self.point)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = GQ.of(c)
        return Jet({a: c * v for a, v in self.coeffs.items()}, self.point)

    def value(self, mono: tuple) -> GQ:
        s = GQ()
        for alpha, c in self.coeffs.items():
            r = _diff_mono(mono, alpha)
            if r is None:
                continue
            k, rest = r
            t = fmpq(k)
            for i in rest:
                t *= self.point[i]
                if not t:
                    break
            if t:
                s = s + c * t
        return s


def jet_directional(point, *vectors) -> Jet:
    """d_{v1} d_{v2} ... frozen at point (constant coefficients)."""
    coeffs = {(): GQ(1)}
    for v in vectors:
        new = {}
        for a, c in coeffs.items():
            for g, x in enumerate(v):
                if x:
                    key = _merge(a, (g,))
                    new[key] = new.get(key, GQ()) + c * x
        coeffs = new
    return Jet(coeffs, point)


def compare_on_monomials(lhs: Jet, rhs: Jet, monos: list, limit: int = 5) -> dict:
    bad = []
    for m in monos:
        a, b = lhs.value(m), rhs.value(m)
        if a != b:
            bad.append({"monomial": list(m), "lhs": str(a), "rhs": str(b)})
            if len(bad) >= limit:
                break
    return {"ok": not bad, "monomials": len(monos), "mismatches": bad}


# ---------------------------------------------------------------------------


class MinRepAction:
    """dPi_min for a model, on polynomials in the real coordinates of V."""

    def __init__(self, V: jd.JordanAlgebra):
        self.V = V
        self.R = V.real
        self.N = self.R.N
        self.co: ConformalAlgebra = conformal_algebra(V)
        self.dual = self.R.dual_basis
        self._Lhat = [self.R.mult(h) for h in self.dual]

    @cached_property
    def trace_coeff(self) -> fmpq:
        V = self.V
        return fmpq(V.r * V.d, 4 * V.n)

    def tau_x(self, u: Sequence) -> dict:
        """The linear polynomial x -> tau(x, u)."""
        return linear_poly(la.matvec(self.R.G, u))

    def bessel_pairing(self, v: Sequence) -> PolyDiffOp:
        """tau(B, v) = sum tau(x, P(e^_a, e^_b) v) d_a d_b + (delta d / 2) d_v."""
        N, R = self.N, self.R
        v = [la.q(t) for t in v]
        Lv = R.mult(v)
        Lh = self._Lhat
        u = [la.matvec(L, v) for L in Lh]
        terms = {}
        for a in range(N):
            for b in range(a, N):
                w = la.vadd(la.matvec(Lh[a], u[b]), la.matvec(Lh[b], u[a]))
                w = la.vsub(w, la.matvec(Lv, la.matvec(Lh[a], self.dual[b])))
                if la.is_zero_vec(w):
                    continue
                coef = la.matvec(R.G, w)
                if a != b:
                    coef = la.vscale(2, coef)
                p = linear_poly(coef)
                if p:
                    terms[(a, b)] = p
        op = PolyDiffOp(N, terms)
        return op + PolyDiffOp.directional(N, la.vscale(fmpq(self.V.delta * self.V.d, 2), v))

    def bessel_components(self) -> list:
        """B = sum_g e_g B^g; component g is tau(B, e^_g)."""
        return [self.bessel_pairing(h) for h in self.dual]

    def of_parts(self, u=None, T: Optional[fmpq_mat] = None, v=None) -> PolyDiffOp:
        N = self.N
        op = PolyDiffOp(N)
        if u is not None and not la.is_zero_vec(u):
            op = op + self.bessel_pairing(u).scale(-I)
        if T is not None and not la.is_zero_mat(T):
            tr = sum((T[k, k] for k in range(N)), Q0)
            op = op - PolyDiffOp.vector_field(N, T) - PolyDiffOp.constant(N, self.trace_coeff * tr)
        if v is not None and not la.is_zero_vec(v):
            op = op + PolyDiffOp.multiplication(N, self.tau_x(v)).scale(-I)
        return op

    def __call__(self, X: Sequence) -> PolyDiffOp:
        """dPi_min of a Lie vector of co(V)."""
        u, T, v = self.co.parts(X)
        return self.of_parts(u, T, v)


_ACTIONS: dict = {}


def min_rep(V: jd.JordanAlgebra) -> MinRepAction:
    key = (V.name, id(V))
    if key not in _ACTIONS:
        _ACTIONS[key] = MinRepAction(V)
    return _ACTIONS[key]


def bessel_operator(V: jd.JordanAlgebra) -> list:
    return min_rep(V).bessel_components()


def dpimin(V: jd.JordanAlgebra, X: Sequence) -> PolyDiffOp:
    return min_rep(V)(X)


def bessel_basis_invariance(V: jd.JordanAlgebra, seed: int = 0, degree: int = 3, points: int = 3,
                            max_monomials: int = 40) -> Report:
    """Recompute tau(B, e) in a random rational basis and compare through the change of variables.

    At most ``max_monomials`` test monomials are used (a seeded sample when there are more).
    """
    rng = random.Random(seed)
    R = V.real
    N = R.N
    while True:
        A = la.mat([[la.q(jd.random_rational(rng)) for _ in range(N)] for _ in range(N)], N)
        if A.det() != 0:
            break
    # new basis f_k = sum_j A[j,k] e_j, coordinates x = A y
    mr = min_rep(V)
    G2 = A.transpose() * R.G * A
    G2inv = G2.inv()
    Ainv = A.inv()
    dual2 = [[G2inv[i, a] for i in range(N)] for a in range(N)]

    def mult2(y):
        # L in the new basis: A^-1 L(A y) A
        return Ainv * R.mult(la.matvec(A, y)) * A

    e_new = la.matvec(Ainv, R.unit)
    Le = mult2(e_new)
    Lh = [mult2(h) for h in dual2]
    terms = {}
    for a in range(N):
        for b in range(a, N):
            w = la.vadd(la.matvec(Lh[a], la.matvec(Lh[b], e_new)), la.matvec(Lh[b], la.matvec(Lh[a], e_new)))
            w = la.vsub(w, la.matvec(Le, la.matvec(Lh[a], dual2[b])))
            coef = la.matvec(G2, w)
            if a != b:
                coef = la.vscale(2, coef)
            p = linear_poly(coef)
            if p:
                terms[(a, b)] = p
    op_new = PolyDiffOp(N, terms) + PolyDiffOp.directional(N, la.vscale(fmpq(V.delta * V.d, 2), e_new))
    op_old = mr.bessel_pairing(R.unit)
    ok = True
    pts = [la.matvec(A, [la.q(jd.random_rational(rng)) for _ in range(N)]) for _ in range(points)]
    monos = monomials(N, degree)
    if len(monos) > max_monomials:
        monos = rng.sample(monos, max_monomials)
    for mono in monos:
        p_old = {mono: GQ(1)}
        # q(y) = p(A y)
        q = {(): GQ(1)}
        for i in mono:
            q = poly_mul(q, linear_poly([A[i, k] for k in range(N)]))
        for x in pts:
            y = la.matvec(Ainv, x)
            if poly_eval(op_old.apply(p_old), x) != poly_eval(op_new.apply(q), y):
                ok = False
                break
        if not ok:
            break
    return Report.of({"basis change invariance": ok}, nvars=N, degree=degree, monomials=len(monos))


# ---------------------------------------------------------------------------
# representation relations


def rep_relation_check(V: jd.JordanAlgebra, X: Sequence, Y: Sequence, degree: int = 3,
                       points: int = 20, seed: int = 0) -> Report:
    """D = [dPi X, dPi Y] - dPi [X, Y]: ambient test, then pointwise on rank-one points."""
    mr = min_rep(V)
    L = mr.co.lie
    D = mr(X).commutator(mr(Y)) - mr(L.bracket(X, Y))
    ambient_zero = D.is_zero()
    monos = monomials(mr.N, degree)
    pts = jd.rank_one_points(V, points, seed=seed, real=True)
    on_orbit = True
    witness = None
    if not ambient_zero:
        for x in pts:
            J = D.at(x)
            for m in monos:
                val = J.value(m)
                if val:
                    on_orbit = False
                    witness = {"point": [str(t) for t in x], "monomial": list(m), "value": str(val)}
                    break
            if not on_orbit:
                break
    rng = random.Random(seed + 7919)
    R = mr.R
    while True:
        g = jd.random_real_vector(R, rng)
        if R.quad(g).det() != 0:
            break
    control = None
    if not ambient_zero:
        J = D.at(g)
        for m in monos:
            val = J.value(m)
            if val:
                control = {"point": [str(t) for t in g], "monomial": list(m), "value": str(val)}
                break
    checks = {"defect vanishes on rank-one points": ambient_zero or on_orbit}
    return Report(checks["defect vanishes on rank-one points"], checks,
                  {"ambient_zero": ambient_zero, "defect_order": D.order, "defect_nnz": D.nnz(),
                   "points": len(pts), "monomials": len(monos), "witness": witness,
                   "control_nonzero": control is not None, "control": control})


def parabolic_relation_check(V: jd.JordanAlgebra, samples: int = 30, seed: int = 0) -> Report:
    """[dPi X, dPi Y] = dPi [X, Y] ambiently for X, Y in {(0, T, v)}."""
    mr = min_rep(V)
    C = mr.co
    rng = random.Random(seed)
    basis = [i for i in range(C.dim) if la.is_zero_vec(C.parts(la.unit(C.dim, i))[0])]
    pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(samples)]
    bad = []
    for a, b in pairs:
        X, Y = la.unit(C.dim, a), la.unit(C.dim, b)
        D = mr(X).commutator(mr(Y)) - mr(C.lie.bracket(X, Y))
        if not D.is_zero():
            bad.append([a, b])
    return Report.of({"parabolic ambient identity": not bad}, pairs=len(pairs), failures=bad[:5])


def linearity_check(V: jd.JordanAlgebra, seed: int = 0) -> Report:
    mr = min_rep(V)
    C = mr.co
    rng = random.Random(seed)
    X = [la.q(jd.random_rational(rng)) for _ in range(C.dim)]
    Y = [la.q(jd.random_rational(rng)) for _ in range(C.dim)]
    a, b = la.q(jd.random_rational(rng)), la.q(jd.random_rational(rng))
    lhs = mr(la.vadd(la.vscale(a, X), la.vscale(b, Y)))
    rhs = mr(X).scale(a) + mr(Y).scale(b)
    return Report.of({"dPi linear": lhs == rhs})


def standard_pairs(V: jd.JordanAlgebra) -> dict:
    """Named Lie-vector pairs used by the verification suite."""
    C = conformal_algebra(V)
    E, H, F = C.sl2()
    R = C.R
    P = jd.peirce_decompose(V)
    w = la.rows_of(P.real_blocks[(0, 1)])[0]
    c1 = R.frame[0]
    return {
        "E,F": (E, F),
        "E,(c1,0,0)": (E, C.element(u=c1)),
        "(w,0,0),(c1,0,0)": (C.element(u=w), C.element(u=c1)),
        "(w,0,0),(0,0,c1)": (C.element(u=w), C.element(v=c1)),
    }


# ---------------------------------------------------------------------------
# Key Lemma at x = c


def key_lemma_at_c(V: jd.JordanAlgebra, degree: int = 3) -> Report:
    """Operator identities at c = c_1, compared on all monomials of degree <= degree."""
    mr = min_rep(V)
    C, R, N = mr.co, mr.R, mr.N
    P = jd.peirce_decompose(V)
    cs = R.frame
    c1 = cs[0]
    r, d, delta = V.r, V.d, V.delta
    rd2 = fmpq(r * d, 2)
    fs = [row for j in range(1, r) for row in la.rows_of(P.real_blocks[(0, j)])]
    Gf = la.mat([[R.tau(a, b) for b in fs] for a in fs], len(fs))
    W = Gf.inv()  # tau^{ab}
    Lc = R.mult(c1)
    Xs = [C.element(T=la.commutator(Lc, R.mult(f))) for f in fs]
    ops = [mr(X) for X in Xs]
    monos = monomials(N, degree)
    zero = Jet({}, c1)

    def dd(*vs):
        return jet_directional(c1, *vs)

    def quad_f(second=None):
        second = second or (lambda f: f)
        j = zero
        for a, fa in enumerate(fs):
            for b, fb in enumerate(fs):
                if W[a, b]:
                    j = j + dd(fa, second(fb)).scale(W[a, b])
        return j

    def casimir(second_ops):
        op = PolyDiffOp(N)
        for a in range(len(fs)):
            for b in range(len(fs)):
                if W[a, b]:
                    op = op + ops[a].compose(second_ops[b]).scale(W[a, b])
        return op

    results = {}
    E = C.element(u=R.unit)
    lhsE = mr(E).scale(I).at(c1)
    rhs_a = quad_f().scale(fmpq(1, 2)) + dd(c1, c1)
    for cj in cs:
        rhs_a = rhs_a + dd(cj).scale(fmpq(delta * d, 2))
    Jv = (lambda v: la.matvec(R.J, v)) if R.J is not None else None
    if Jv:
        rhs_a = rhs_a - dd(Jv(c1), Jv(c1))
    results["(a) Bessel at c"] = compare_on_monomials(lhsE, rhs_a, monos)

    Cp = casimir(ops).at(c1)
    rhs_b = quad_f().scale(fmpq(1, 16))
    for cj in cs[1:]:
        rhs_b = rhs_b - dd(la.vsub(c1, cj)).scale(fmpq(delta * d, 16))
    results["(b) Casimir at c"] = compare_on_monomials(Cp, rhs_b, monos)

    rhs_c = dd(c1, c1) + dd(c1).scale(delta * rd2) + Cp.scale(8)
    if Jv:
        rhs_c = rhs_c - dd(Jv(c1), Jv(c1))
    results["(c) assembled at c"] = compare_on_monomials(lhsE, rhs_c, monos)

    if Jv:
        iops = [mr(C.element(T=la.commutator(Lc, R.mult(Jv(f))))) for f in fs]
        iE = C.element(u=Jv(R.unit))
        lhs_iE = mr(iE).scale(I).at(c1)
        rhs_a2 = dd(c1, Jv(c1)).scale(2) + quad_f(Jv).scale(fmpq(1, 2))
        for cj in cs:
            rhs_a2 = rhs_a2 + dd(Jv(cj)).scale(fmpq(delta * d, 2))
        results["(a') Bessel (ie) at c"] = compare_on_monomials(lhs_iE, rhs_a2, monos)
        Dp = casimir(iops).at(c1)
        rhs_b2 = quad_f(Jv).scale(fmpq(1, 16))
        for cj in cs[1:]:
            rhs_b2 = rhs_b2 - dd(Jv(la.vsub(c1, cj))).scale(fmpq(delta * d, 16))
        results["(b') D' at c"] = compare_on_monomials(Dp, rhs_b2, monos)
        rhs_c2 = dd(c1, Jv(c1)).scale(2) + dd(Jv(c1)).scale(delta * rd2) + Dp.scale(8)
        results["(c') assembled (ie) at c"] = compare_on_monomials(lhs_iE, rhs_c2, monos)
    checks = {k: v["ok"] for k, v in results.items()}
    return Report.of(checks, monomials=len(monos), half_space_dim=len(fs),
                     mismatches={k: v["mismatches"] for k, v in results.items() if not v["ok"]})


# ---------------------------------------------------------------------------
# sl2 model operators (sympy, symbolic in nu and m)

xi, eta = sp.symbols("xi eta", real=True)
nu_sym, m_sym = sp.symbols("nu m")


class SL2Model:
    """d tau_{m,nu} of sl(2,F) acting on functions of zeta = xi (+ i eta).

    Each operator is a callable on sympy expressions in xi (and eta).
    """

    def __init__(self, m, nu, r, d, delta: int):
        if delta not in (1, 2):
            raise ValueError("delta must be 1 or 2")
        self.m, self.nu = sp.sympify(m), sp.sympify(nu)
        self.r, self.d, self.delta = r, d, delta
        self.rd = sp.Integer(r * d)

    def _E_real(self, f):
        kappa = ((self.rd - 2) / 4) ** 2 - self.nu ** 2
        return -sp.I * (xi * sp.diff(f, xi, 2) + self.rd / 2 * sp.diff(f, xi) + kappa / xi * f)

    def _E_complex(self, f, imaginary: bool):
        rd, nu, m = self.rd, self.nu, self.m
        k = ((rd - 2) / 2) ** 2 - nu ** 2 - m ** 2
        den = xi ** 2 + eta ** 2
        fxx, fyy, fxy = sp.diff(f, xi, 2), sp.diff(f, eta, 2), sp.diff(f, xi, eta)
        if not imaginary:
            op = (xi * (fxx - fyy) + 2 * eta * fxy + rd * sp.diff(f, xi)
                  + (k * xi + 2 * sp.I * m * nu * eta) / den * f)
        else:
            op = (2 * xi * fxy - eta * (fxx - fyy) + rd * sp.diff(f, eta)
                  + (k * eta - 2 * sp.I * m * nu * xi) / den * f)
        return -sp.I * op

    def E(self, f):
        return self._E_real(f) if self.delta == 1 else self._E_complex(f, False)

    def F(self, f):
        return -sp.I * xi * f

    def H(self, f):
        out = -self.delta * self.rd / 2 * f - 2 * xi * sp.diff(f, xi)
        if self.delta == 2:
            out -= 2 * eta * sp.diff(f, eta)
        return out

    # i-multiples for F = C
    def iE(self, f):
        return self._E_complex(f, True)

    def iF(self, f):
        return sp.I * eta * f

    def iH(self, f):
        return 2 * eta * sp.diff(f, xi) - 2 * xi * sp.diff(f, eta)

    def ops(self) -> dict:
        base = {"E": self.E, "H": self.H, "F": self.F}
        if self.delta == 2:
            base.update({"iE": self.iE, "iH": self.iH, "iF": self.iF})
        return base


def sl2_model_ops(m, nu, r, d, delta) -> dict:
    return SL2Model(m, nu, r, d, delta).ops()


def _test_function(delta):
    f = sp.Function("f")
    return f(xi) if delta == 1 else f(xi, eta)


def _is_zero(expr) -> bool:
    return sp.simplify(sp.expand(sp.together(expr))) == 0


# brackets of sl(2) in the basis (E, H, F) with i-multiples
_SL2 = {("H", "E"): (2, "E"), ("H", "F"): (-2, "F"), ("E", "F"): (1, "H")}


def sl2_relations_check(m=m_sym, nu=nu_sym, r=3, d=1, delta=1) -> Report:
    """Commutation relations of d tau_{m,nu}, applied to an undetermined function."""
    model = SL2Model(m, nu, r, d, delta)
    ops = model.ops()
    f = _test_function(delta)
    checks = {}
    names = ["E", "H", "F"]
    units = [("", 1), ("i", sp.I)] if delta == 2 else [("", 1)]
    for (a, b), (k, c) in _SL2.items():
        for pa, sa in units:
            for pb, sb in units:
                A, B = ops[pa + a], ops[pb + b]
                lhs = A(B(f)) - B(A(f))
                s = sa * sb
                if s == 1:
                    rhs, label = k * ops[c](f), f"{k}*{c}"
                elif s == -1:
                    rhs, label = -k * ops[c](f), f"{-k}*{c}"
                else:
                    rhs, label = k * ops["i" + c](f), f"{k}*i{c}"
                checks[f"[{pa}{a},{pb}{b}] = {label}"] = _is_zero(lhs - rhs)
    return Report.of(checks, delta=delta, rd=r * d)


def keylemma_vs_sl2_match(r, d, delta) -> Report:
    """Key Lemma radial operator with the Casimir scalars equals i d tau_{m,nu}(E) (and (iE))."""
    rd = sp.Integer(r * d)
    nu, m = nu_sym, m_sym
    model = SL2Model(m, nu, r, d, delta)
    f = _test_function(delta)
    diffs = {}
    if delta == 1:
        cas = -sp.Rational(1, 32) * (4 * nu ** 2 - (rd / 2 - 1) ** 2)
        radial = xi * sp.diff(f, xi, 2) + rd / 2 * sp.diff(f, xi) + 8 * cas / xi * f
        diffs["E"] = sp.simplify(sp.expand(radial - sp.I * model.E(f)))
    else:
        cas = -sp.Rational(1, 8) * (nu ** 2 + m ** 2 - (rd / 2 - 1) ** 2)
        dcas = -sp.Rational(1, 4) * sp.I * m * nu
        den = xi ** 2 + eta ** 2
        fxx, fyy, fxy = sp.diff(f, xi, 2), sp.diff(f, eta, 2), sp.diff(f, xi, eta)
        rad1 = (xi * (fxx - fyy) + 2 * eta * fxy + rd * sp.diff(f, xi)
                + 8 * (cas * xi / den - dcas * eta / den) * f)
        rad2 = (2 * xi * fxy - eta * (fxx - fyy) + rd * sp.diff(f, eta)
                + 8 * (cas * eta / den + dcas * xi / den) * f)
        diffs["E"] = sp.simplify(sp.together(sp.expand(rad1 - sp.I * model.E(f))))
        diffs["iE"] = sp.simplify(sp.together(sp.expand(rad2 - sp.I * model.iE(f))))
    checks = {f"match {k}": v == 0 for k, v in diffs.items()}
    return Report.of(checks, difference={k: str(v) for k, v in diffs.items()})
