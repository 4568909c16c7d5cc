"""Concrete split simple Jordan algebras and their basic structure.

Every model is stored through a rational real form V0: the structure
constants of V over F are rational in all cases. For F = C the algebra is
the complexification V0 (x) C and the Cartan involution is
theta = theta0 o conj (so the stored ``theta0`` acts on conjugated
coordinates). Downstream Lie-algebra and operator code works on the
realification :class:`RealJordan`, with real basis (e_a, i e_a).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

from flint import fmpq, fmpq_mat

from . import linalg as la
from .composition import BY_NAME, CompositionAlgebra, REALS
from .scalars import ExactScalar, format_scalar, parse_scalar

# ---------------------------------------------------------------------------
# catalog

CATALOG = (
    "Sym3R", "Herm3C", "Herm3H", "SpinR1_3", "Herm3O",   # Euclidean
    "M3R", "Skew6R", "SpinR3_1", "Herm3Os",              # non-Euclidean
    "Sym3C", "M3C", "Skew6C", "SpinC4", "Herm3OC",       # complex
)

_ID = re.compile(
    r"^(?:(?P<sym>Sym)(?P<sr>\d+)(?P<sf>[RC])"
    r"|(?P<herm>Herm)(?P<hr>\d+)(?P<ha>C|H)"
    r"|(?P<oct>Herm3O)(?P<ok>s|C)?"
    r"|(?P<mat>M)(?P<mr>\d+)(?P<mf>[RC])"
    r"|(?P<skew>Skew)(?P<kn>\d+)(?P<kf>[RC])"
    r"|SpinR(?P<p>\d+)_(?P<q>\d+)"
    r"|SpinC(?P<cn>\d+))$"
)


class UnknownModel(ValueError):
    pass


@dataclass
class JordanAlgebra:
    """A split simple Jordan algebra over F in {R, C} with rational constants."""

    name: str
    field: str
    n: int
    r: int
    d: int
    basis: list
    Lmats: list  # L(e_a) as fmpq_mat, F-structure constants (rational)
    unit: list
    theta0: fmpq_mat
    euclidean: bool
    frame: Optional[list] = None  # rational F-coordinates of c_1..c_r
    params: dict = field(default_factory=dict)
    has_minrep: bool = True

    @property
    def delta(self) -> int:
        return 1 if self.field == "R" else 2

    def product_sc(self, a: int, b: int) -> list:
        """Coordinates of e_a e_b."""
        return [self.Lmats[a][g, b] for g in range(self.n)]

    @cached_property
    def trace_gram(self) -> fmpq_mat:
        """Gram matrix of tau_F(x, y) = (r/n) tr L(xy); rational since constants are."""
        return _trace_gram(self.Lmats, fmpq(self.r, self.n))

    @cached_property
    def real(self) -> "RealJordan":
        return RealJordan.from_algebra(self)

    def __eq__(self, other):
        if not isinstance(other, JordanAlgebra):
            return NotImplemented
        return to_json(self) == to_json(other)


def _trace_gram(L: list, scale: fmpq) -> fmpq_mat:
    """scale * tr L(e_a e_b), built from the traces of the L(e_g)."""
    n = len(L)
    tr = [sum((m[i, i] for i in range(n)), fmpq(0)) for m in L]
    g = fmpq_mat(n, n)
    for a in range(n):
        La = L[a]
        for b in range(a, n):
            t = fmpq(0)
            for k in range(n):
                c = La[k, b]
                if c and tr[k]:
                    t += c * tr[k]
            t *= scale
            g[a, b] = t
            g[b, a] = t
    return g


# ---------------------------------------------------------------------------
# realification


@dataclass
class RealJordan:
    """Real structure of V: basis (e_a) for F = R, (e_a, i e_a) for F = C."""

    alg: JordanAlgebra
    N: int
    L: list          # real L-matrices, one per real basis vector
    G: fmpq_mat      # Gram matrix of tau = Re tau_F
    theta: fmpq_mat  # Cartan involution as a real matrix
    J: Optional[fmpq_mat]  # multiplication by i (F = C)
    unit: list
    frame: Optional[list]
    labels: list

    @classmethod
    def from_algebra(cls, V: JordanAlgebra) -> "RealJordan":
        n = V.n
        if V.field == "R":
            L = list(V.Lmats)
            theta = V.theta0
            J = None
            unit = list(V.unit)
            frame = [list(c) for c in V.frame] if V.frame else None
            labels = list(V.basis)
        else:
            L = []
            zero = fmpq_mat(n, n)
            for A in V.Lmats:
                L.append(_blocks(A, zero, zero, A))
            for A in V.Lmats:
                L.append(_blocks(zero, -A, A, zero))
            theta = _blocks(V.theta0, zero, zero, -V.theta0)
            I = la.identity(n)
            J = _blocks(zero, -I, I, zero)
            unit = list(V.unit) + [fmpq(0)] * n
            frame = [list(c) + [fmpq(0)] * n for c in V.frame] if V.frame else None
            labels = list(V.basis) + ["i*" + b for b in V.basis]
        N = len(L)
        G = _trace_gram(L, fmpq(V.r, N))
        return cls(V, N, L, G, theta, J, unit, frame, labels)

    # arithmetic on rational real vectors
    def mult(self, x: Sequence) -> fmpq_mat:
        m = fmpq_mat(self.N, self.N)
        for a, xa in enumerate(x):
            if xa:
                m += xa * self.L[a]
        return m

    def prod(self, x: Sequence, y: Sequence) -> list:
        return la.matvec(self.mult(x), y)

    def tau(self, x: Sequence, y: Sequence) -> fmpq:
        return la.dot(x, la.matvec(self.G, y))

    def quad(self, x: Sequence) -> fmpq_mat:
        Lx = self.mult(x)
        return 2 * Lx * Lx - self.mult(self.prod(x, x))

    def quad_bilinear(self, x: Sequence, y: Sequence) -> fmpq_mat:
        Lx, Ly = self.mult(x), self.mult(y)
        return Lx * Ly + Ly * Lx - self.mult(self.prod(x, y))

    @cached_property
    def Ginv(self) -> fmpq_mat:
        return self.G.inv()

    @cached_property
    def dual_basis(self) -> list:
        """Vectors e^_a with tau(e_b, e^_a) = delta_ab (columns of G^-1)."""
        gi = self.Ginv
        return [[gi[i, a] for i in range(self.N)] for a in range(self.N)]

    def adjoint(self, T: fmpq_mat) -> fmpq_mat:
        """tau-adjoint T^# = G^-1 T^t G."""
        return self.Ginv * T.transpose() * self.G

    def realify_vector(self, x: Sequence) -> list:
        """F-coordinates (scalars) to real coordinates."""
        if self.J is None:
            return [la.q(ExactScalar.coerce(v).to_fraction()) if not isinstance(v, fmpq) else v for v in x]
        re_, im_ = [], []
        for v in x:
            if isinstance(v, fmpq):
                re_.append(v)
                im_.append(fmpq(0))
                continue
            s = ExactScalar.coerce(v)
            if s.c or s.d:
                raise ValueError("real view needs Q(i) coordinates")
            re_.append(la.q(s.a))
            im_.append(la.q(s.b))
        return re_ + im_

    def complexify_vector(self, x: Sequence) -> list:
        if self.J is None:
            return [ExactScalar(la.to_fraction(v)) for v in x]
        n = self.N // 2
        return [ExactScalar(la.to_fraction(x[k]), la.to_fraction(x[n + k])) for k in range(n)]


def _blocks(a, b, c, d) -> fmpq_mat:
    n = a.nrows()
    m = fmpq_mat(2 * n, 2 * n)
    for blk, (r0, c0) in ((a, (0, 0)), (b, (0, n)), (c, (n, 0)), (d, (n, n))):
        for i in range(n):
            for j in range(n):
                x = blk[i, j]
                if x:
                    m[r0 + i, c0 + j] = x
    return m


# ---------------------------------------------------------------------------
# model constructors (rational real forms)


def _from_products(n, prod_fn) -> list:
    """Build L-matrices from a function returning coordinates of e_a e_b."""
    L = [fmpq_mat(n, n) for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            v = prod_fn(a, b)
            for g, x in enumerate(v):
                if x:
                    L[a][g, b] = x
                    L[b][g, a] = x
    return L


def _herm_model(A: CompositionAlgebra, r: int):
    """Herm(r, A) with x.y = (xy + yx)/2."""
    basis, elems = [], []
    half = fmpq(1, 2)
    for i in range(r):
        basis.append(f"E{i + 1}{i + 1}")
        elems.append({(i, i): A.unit(0)})
    for i, j in combinations(range(r), 2):
        for k in range(A.dim):
            u = A.unit(k)
            basis.append(f"X{i + 1}{j + 1}" + (f"[{k}]" if A.dim > 1 else ""))
            elems.append({(i, j): u, (j, i): A.conj(u)})
    n = len(basis)
    index = {}
    for idx in range(r):
        index[("d", idx)] = idx
    pos = r
    for i, j in combinations(range(r), 2):
        index[("o", i, j)] = pos
        pos += A.dim

    def coords(m):
        v = [fmpq(0)] * n
        for (i, j), x in m.items():
            if i == j:
                v[index[("d", i)]] += x[0]
            elif i < j:
                base = index[("o", i, j)]
                for k in range(A.dim):
                    v[base + k] += x[k]
        return v

    def mm(X, Y):
        out = {}
        for (i, k), x in X.items():
            for (k2, j), y in Y.items():
                if k2 != k:
                    continue
                p = A.mul(x, y)
                cur = out.get((i, j))
                out[(i, j)] = p if cur is None else [s + t for s, t in zip(cur, p)]
        return out

    def prod(a, b):
        X, Y = elems[a], elems[b]
        s = mm(X, Y)
        for key, val in mm(Y, X).items():
            cur = s.get(key)
            s[key] = val if cur is None else [p + t for p, t in zip(cur, val)]
        return [half * c for c in coords(s)]

    L = _from_products(n, prod)
    unit = [fmpq(1) if k < r else fmpq(0) for k in range(n)]
    if A.split:
        # flip the split half of every off-diagonal octonion entry
        theta = la.identity(n)
        h = A.dim // 2
        for i, j in combinations(range(r), 2):
            base = index[("o", i, j)]
            for k in range(h, A.dim):
                theta[base + k, base + k] = -1
    else:
        theta = la.identity(n)
    frame = [la.unit(n, i) for i in range(r)]
    return basis, L, unit, theta, frame


def _matrix_model(r: int):
    basis = [f"E{i + 1}{j + 1}" for i in range(r) for j in range(r)]
    n = r * r
    half = fmpq(1, 2)

    def prod(a, b):
        i, j = divmod(a, r)
        k, l = divmod(b, r)
        v = [fmpq(0)] * n
        if j == k:
            v[i * r + l] += half
        if l == i:
            v[k * r + j] += half
        return v

    L = _from_products(n, prod)
    unit = [fmpq(1) if i == j else fmpq(0) for i in range(r) for j in range(r)]
    theta = fmpq_mat(n, n)
    for i in range(r):
        for j in range(r):
            theta[j * r + i, i * r + j] = 1
    frame = [la.unit(n, i * r + i) for i in range(r)]
    return basis, L, unit, theta, frame


def _skew_model(r: int):
    """Skew(2r) with x.y = (xJy + yJx)/2, J = diag of [[0,1],[-1,0]] blocks."""
    m = 2 * r
    pairs = list(combinations(range(m), 2))
    basis = [f"S{a + 1}_{b + 1}" for a, b in pairs]
    n = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    J = {}
    for i in range(r):
        J[(2 * i, 2 * i + 1)] = fmpq(1)
        J[(2 * i + 1, 2 * i)] = fmpq(-1)

    def elem(k):
        a, b = pairs[k]
        return {(a, b): fmpq(1), (b, a): fmpq(-1)}

    def mm(X, Y):
        out = {}
        for (i, k), x in X.items():
            for (k2, j), y in Y.items():
                if k == k2:
                    out[(i, j)] = out.get((i, j), fmpq(0)) + x * y
        return out

    def coords(M):
        v = [fmpq(0)] * n
        for (a, b), x in M.items():
            if a < b and x:
                v[index[(a, b)]] += x
        return v

    def prod(a, b):
        X, Y = elem(a), elem(b)
        s1 = mm(mm(X, J), Y)
        s2 = mm(mm(Y, J), X)
        tot = {}
        for d in (s1, s2):
            for key, val in d.items():
                tot[key] = tot.get(key, fmpq(0)) + val
        return [fmpq(1, 2) * c for c in coords(tot)]

    L = _from_products(n, prod)
    unit = [fmpq(0)] * n
    frame = []
    for i in range(r):
        k = index[(2 * i, 2 * i + 1)]
        unit[k] = fmpq(-1)
        frame.append([fmpq(-1) if t == k else fmpq(0) for t in range(n)])
    # theta(x) = J x J^{-1} = -J x J
    theta = fmpq_mat(n, n)
    for k in range(n):
        img = mm(mm(J, elem(k)), J)
        v = coords(img)
        for t, x in enumerate(v):
            if x:
                theta[t, k] = -x
    return basis, L, unit, theta, frame


def _spin_model(p: int, q: int):
    """R + W with (x0, w)(y0, v) = (x0 y0 + beta(w, v), x0 v + y0 w).

    beta has q positive and p - 1 negative directions, so the trace form
    2(x0 y0 + beta) has the Lorentzian signature convention of R^{p,q}.
    """
    n = p + q
    basis = ["e"] + [f"w{k}" for k in range(1, n)]
    beta = [fmpq(1)] * q + [fmpq(-1)] * (p - 1)

    def prod(a, b):
        v = [fmpq(0)] * n
        if a == 0:
            v[b] = fmpq(1)
        elif b == 0:
            v[a] = fmpq(1)
        elif a == b:
            v[0] = beta[a - 1]
        return v

    L = _from_products(n, prod)
    unit = la.unit(n, 0)
    theta = la.identity(n)
    for k in range(1, n):
        if beta[k - 1] < 0:
            theta[k, k] = -1
    half = fmpq(1, 2)
    c1 = [fmpq(0)] * n
    c2 = [fmpq(0)] * n
    c1[0] = c2[0] = half
    c1[1] = half
    c2[1] = -half
    return basis, L, unit, theta, [c1, c2]


def parse_model_id(name: str) -> dict:
    m = _ID.match(name)
    if not m:
        raise UnknownModel(f"unknown model {name!r}")
    g = m.groupdict()
    if g["sym"]:
        return dict(family="Sym", r=int(g["sr"]), field=g["sf"])
    if g["herm"]:
        return dict(family="Herm", r=int(g["hr"]), algebra=g["ha"], field="R")
    if g["oct"]:
        k = g["ok"]
        if k == "s":
            return dict(family="Herm3Os", r=3, field="R")
        if k == "C":
            return dict(family="Herm3O", r=3, field="C")
        return dict(family="Herm3O", r=3, field="R")
    if g["mat"]:
        return dict(family="M", r=int(g["mr"]), field=g["mf"])
    if g["skew"]:
        size = int(g["kn"])
        if size % 2:
            raise UnknownModel("Skew needs an even size")
        return dict(family="Skew", r=size // 2, field=g["kf"])
    if g["p"] is not None:
        return dict(family="SpinR", p=int(g["p"]), q=int(g["q"]), field="R")
    return dict(family="SpinC", n=int(g["cn"]), field="C")


def model_id(family: str, **params) -> str:
    f = params.get("field", "R")
    r = params.get("r")
    if family == "Sym":
        return f"Sym{r}{f}"
    if family == "Herm":
        return f"Herm{r}{params.get('algebra', 'C')}"
    if family in ("Herm3O",):
        return "Herm3OC" if f == "C" else "Herm3O"
    if family == "Herm3Os":
        return "Herm3Os"
    if family == "Herm3OC":
        return "Herm3OC"
    if family == "M":
        return f"M{r}{f}"
    if family == "Skew":
        return f"Skew{2 * r}{f}"
    if family == "SpinR":
        return f"SpinR{params['p']}_{params['q']}"
    if family == "SpinC":
        return f"SpinC{params['n']}"
    raise UnknownModel(f"unknown model family {family!r}")


_CACHE: dict = {}


def build_model(name: str, **params) -> JordanAlgebra:
    """Build a catalog model from an id ('Herm3O', 'SpinR5_3', ...) or a
    family name plus parameters (``build_model('Sym', r=3, field='R')``)."""
    if params:
        name = model_id(name, **params)
    if name in _CACHE:
        return _CACHE[name]
    info = parse_model_id(name)
    fam = info["family"]
    F = info["field"]
    r = info.get("r", 2)
    if fam in ("Sym", "Herm", "M", "Skew") and r < 2:
        raise ValueError("rank must be at least 2")
    euclid = False
    minrep = True
    extra = {}
    if fam == "Sym":
        basis, L, unit, theta, frame = _herm_model(REALS, r)
        euclid = F == "R"
    elif fam == "Herm":
        basis, L, unit, theta, frame = _herm_model(BY_NAME[info["algebra"]], r)
        euclid = True
    elif fam == "Herm3O":
        basis, L, unit, theta, frame = _herm_model(BY_NAME["O"], 3)
        euclid = F == "R"
    elif fam == "Herm3Os":
        basis, L, unit, theta, frame = _herm_model(BY_NAME["Os"], 3)
    elif fam == "M":
        basis, L, unit, theta, frame = _matrix_model(r)
    elif fam == "Skew":
        basis, L, unit, theta, frame = _skew_model(r)
    elif fam == "SpinR":
        p, q = info["p"], info["q"]
        if p < 1 or q < 1 or p + q < 3:
            raise ValueError("spin factor needs p, q >= 1 and p + q >= 3")
        basis, L, unit, theta, frame = _spin_model(p, q)
        euclid = p == 1
        minrep = not (p >= 2 and q >= 2 and (p + q) % 2 == 1)
        extra = dict(p=p, q=q)
    elif fam == "SpinC":
        nn = info["n"]
        if nn < 3:
            raise ValueError("complex spin factor needs n >= 3")
        basis, L, unit, theta, frame = _spin_model(1, nn - 1)
        extra = dict(n=nn)
    else:  # pragma: no cover
        raise UnknownModel(name)
    n = len(basis)
    rank = len(frame)
    V = JordanAlgebra(name=name, field=F, n=n, r=rank, d=0, basis=basis, Lmats=L,
                      unit=unit, theta0=theta, euclidean=euclid, frame=frame,
                      params=extra, has_minrep=minrep)
    V.d = _peirce_d(V)
    _CACHE[name] = V
    return V


def _peirce_d(V: JordanAlgebra) -> int:
    c1, c2 = V.frame[0], V.frame[1]
    half = fmpq(1, 2)
    I = la.identity(V.n)
    a = _mult_rational(V, c1) - half * I
    b = _mult_rational(V, c2) - half * I
    return V.n - la.vstack(a, b).rank()


def _mult_rational(V: JordanAlgebra, x: Sequence) -> fmpq_mat:
    m = fmpq_mat(V.n, V.n)
    for a, xa in enumerate(x):
        if xa:
            m += xa * V.Lmats[a]
    return m


# ---------------------------------------------------------------------------
# scalar-level API (F-coordinates, entries are ExactScalar or rationals)

_UNITS = ("1", "i", "r", "ir")


def _split(x: Sequence):
    """Split a scalar vector into rational components along 1, i, sqrt s, i sqrt s."""
    comps = {k: [] for k in _UNITS}
    s = None
    for v in x:
        e = ExactScalar.coerce(v) if not isinstance(v, fmpq) else ExactScalar(la.to_fraction(v))
        if e.s is not None:
            if s is not None and s != e.s:
                raise ValueError("mixed scalar towers in one vector")
            s = e.s
        comps["1"].append(la.q(e.a))
        comps["i"].append(la.q(e.b))
        comps["r"].append(la.q(e.c))
        comps["ir"].append(la.q(e.d))
    return comps, s


def _unit_scalar(k: str, s) -> ExactScalar:
    if k == "1":
        return ExactScalar(1)
    if k == "i":
        return ExactScalar(0, 1)
    if k == "r":
        return ExactScalar(0, 0, 1, 0, s)
    return ExactScalar(0, 0, 0, 1, s)


def _bilinear(x: Sequence, y: Sequence, fn) -> list:
    """Extend a rational bilinear vector-valued map to scalar vectors."""
    cx, sx = _split(x)
    cy, sy = _split(y)
    s = sx if sx is not None else sy
    if sx is not None and sy is not None and sx != sy:
        raise ValueError("mixed scalar towers")
    out = None
    for kx, vx in cx.items():
        if la.is_zero_vec(vx):
            continue
        for ky, vy in cy.items():
            if la.is_zero_vec(vy):
                continue
            w = fn(vx, vy)
            u = _unit_scalar(kx, s) * _unit_scalar(ky, s)
            term = [u * ExactScalar(la.to_fraction(t)) for t in w]
            out = term if out is None else [p + t for p, t in zip(out, term)]
    if out is None:
        k = len(fn(cx["1"], cy["1"]))
        return [ExactScalar(0)] * k
    return out


def _scalar_bilinear(x, y, fn) -> ExactScalar:
    return _bilinear(x, y, lambda a, b: [fn(a, b)])[0]


def _check_dim(V: JordanAlgebra, *vs):
    for v in vs:
        if len(v) != V.n:
            raise ValueError(f"expected a vector of length {V.n}, got {len(v)}")


def jordan_product(V: JordanAlgebra, x: Sequence, y: Sequence) -> list:
    _check_dim(V, x, y)
    return _bilinear(x, y, lambda a, b: la.matvec(_mult_rational(V, a), b))


def _scalar_matrix(m: fmpq_mat, u: ExactScalar) -> list:
    return [[u * ExactScalar(la.to_fraction(m[i, j])) for j in range(m.ncols())] for i in range(m.nrows())]


def _linear_matrix(x: Sequence, fn) -> list:
    """Matrix-valued linear map extended from rational vectors to scalar vectors."""
    cx, s = _split(x)
    out = None
    for k, v in cx.items():
        if la.is_zero_vec(v) and k != "1":
            continue
        m = _scalar_matrix(fn(v), _unit_scalar(k, s))
        out = m if out is None else [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(out, m)]
    return out


def mult_operator(V: JordanAlgebra, x: Sequence) -> list:
    """L(x) as a matrix of scalars."""
    _check_dim(V, x)
    return _linear_matrix(x, lambda v: _mult_rational(V, v))


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), ExactScalar(0)) for j in range(m)] for i in range(n)]


def _matadd(a, b, ca=1, cb=1):
    return [[ca * x + cb * y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def quadratic_rep(V: JordanAlgebra, x: Sequence) -> list:
    """P(x) = 2 L(x)^2 - L(x^2)."""
    Lx = mult_operator(V, x)
    return _matadd(_matmul(Lx, Lx), mult_operator(V, jordan_product(V, x, x)), 2, -1)


def quadratic_rep_bilinear(V: JordanAlgebra, x: Sequence, y: Sequence) -> list:
    """P(x, y) = L(x)L(y) + L(y)L(x) - L(xy)."""
    Lx, Ly = mult_operator(V, x), mult_operator(V, y)
    s = _matadd(_matmul(Lx, Ly), _matmul(Ly, Lx))
    return _matadd(s, mult_operator(V, jordan_product(V, x, y)), 1, -1)


def apply_matrix(m: list, x: Sequence) -> list:
    xs = [ExactScalar.coerce(v) if not isinstance(v, fmpq) else ExactScalar(la.to_fraction(v)) for v in x]
    return [sum((a * b for a, b in zip(row, xs)), ExactScalar(0)) for row in m]


def trace_form(V: JordanAlgebra, x: Sequence, y: Sequence) -> ExactScalar:
    """tau_F(x, y) = (r/n) tr(L(x) L(y)); F-bilinear."""
    _check_dim(V, x, y)
    G = V.trace_gram
    return _scalar_bilinear(x, y, lambda a, b: la.dot(a, la.matvec(G, b)))


def real_trace_form(V: JordanAlgebra, x: Sequence, y: Sequence) -> ExactScalar:
    return trace_form(V, x, y).re()


def cartan_involution(V: JordanAlgebra, x: Sequence) -> list:
    """theta(x); for F = C this is theta0 applied to conj(x)."""
    xs = [ExactScalar.coerce(v) if not isinstance(v, fmpq) else ExactScalar(la.to_fraction(v)) for v in x]
    if V.field == "C":
        xs = [v.conj() for v in xs]
    return apply_matrix(_scalar_matrix(V.theta0, ExactScalar(1)), xs)


def inner(V: JordanAlgebra, x: Sequence, y: Sequence) -> ExactScalar:
    """(x|y) = tau(x, theta y)."""
    return real_trace_form(V, x, cartan_involution(V, y))


# ---------------------------------------------------------------------------
# frames and Peirce decomposition


@dataclass
class JordanFrame:
    idempotents: list  # rational F-coordinates

    def __len__(self):
        return len(self.idempotents)


def standard_frame(V: JordanAlgebra) -> JordanFrame:
    if not V.frame:
        raise ValueError(f"model {V.name} carries no standard frame")
    return JordanFrame([list(c) for c in V.frame])


def check_frame(V: JordanAlgebra, frame: JordanFrame) -> list:
    """Return a list of violated frame axioms (empty when valid)."""
    bad = []
    cs = frame.idempotents
    for i, c in enumerate(cs):
        if la.matvec(_mult_rational(V, c), c) != list(c):
            bad.append(f"c{i + 1} is not idempotent")
        if la.matvec(V.theta0, c) != list(c):
            bad.append(f"c{i + 1} is not theta-fixed")
        for j in range(i + 1, len(cs)):
            if not la.is_zero_vec(la.matvec(_mult_rational(V, c), cs[j])):
                bad.append(f"c{i + 1} c{j + 1} != 0")
    total = [sum(col, fmpq(0)) for col in zip(*cs)]
    if total != list(V.unit):
        bad.append("sum of frame is not the unit")
    for i, c in enumerate(cs):
        one = la.nullspace_rows(_mult_rational(V, c) - la.identity(V.n))
        if one.nrows() != 1:
            bad.append(f"V(c{i + 1},1) has dimension {one.nrows()} (not split)")
    return bad


class FrameError(ValueError):
    pass


@dataclass
class PeirceDecomposition:
    """Peirce blocks for a frame.

    ``blocks[(i, j)]``: rational F-basis rows of V_ij (i <= j, 0-based).
    ``real_blocks[(i, j)]``: real basis rows in the realification.
    ``signs[(i, j)]``: (V_ij^+, V_ij^-) real bases for i < j.
    ``half_basis``/``half_gram_inverse``: a tau-orthogonal real basis of
    V(c_1, 1/2) (V^+ part first) and the inverse of its Gram matrix.
    """

    frame: JordanFrame
    blocks: dict
    real_blocks: dict
    signs: dict
    eigenspaces: dict
    half_basis: list
    half_gram_inverse: fmpq_mat
    half_signs: list


def peirce_decompose(V: JordanAlgebra, frame: Optional[JordanFrame] = None) -> PeirceDecomposition:
    frame = frame or standard_frame(V)
    R = V.real
    n = V.n
    cs = frame.idempotents
    r = len(cs)
    half = fmpq(1, 2)
    I = la.identity(n)
    eig = {}
    for i, c in enumerate(cs):
        Lc = _mult_rational(V, c)
        spaces = {}
        total = 0
        for lam in (fmpq(0), half, fmpq(1)):
            k = la.nullspace_rows(Lc - lam * I)
            spaces[lam] = k
            total += k.nrows()
        if total != n:
            raise FrameError(f"L(c{i + 1}) has eigenvalues outside {{0, 1/2, 1}}")
        eig[i] = spaces
    blocks = {}
    for i in range(r):
        blocks[(i, i)] = eig[i][fmpq(1)]
        for j in range(i + 1, r):
            blocks[(i, j)] = la.intersect(eig[i][half], eig[j][half])
    real_blocks = {key: _realify_rows(V, b) for key, b in blocks.items()}
    signs = {}
    for (i, j), b in real_blocks.items():
        if i == j:
            continue
        signs[(i, j)] = (_theta_part(R, b, 1), _theta_part(R, b, -1))
    # tau-orthogonal basis of V(c_1, 1/2), V^+ part then V^- part
    plus, minus = [], []
    for j in range(1, r):
        pj, mj = signs[(0, j)]
        plus.extend(la.rows_of(pj))
        minus.extend(la.rows_of(mj))
    hb_plus = la.gram_schmidt(plus, R.G) if plus else []
    hb_minus = la.gram_schmidt(minus, R.G) if minus else []
    half_basis = hb_plus + hb_minus
    gm = la.gram(half_basis, R.G) if half_basis else fmpq_mat(0, 0)
    ginv = gm.inv() if half_basis else gm
    half_signs = [1] * len(hb_plus) + [-1] * len(hb_minus)
    return PeirceDecomposition(frame, blocks, real_blocks, signs, eig, half_basis, ginv, half_signs)


def _realify_rows(V: JordanAlgebra, rows: fmpq_mat) -> fmpq_mat:
    if V.field == "R":
        return rows
    n = V.n
    out = []
    for row in la.rows_of(rows):
        out.append(list(row) + [fmpq(0)] * n)
    for row in la.rows_of(rows):
        out.append([fmpq(0)] * n + list(row))
    return la.mat(out, 2 * n) if out else fmpq_mat(0, 2 * n)


def _theta_part(R: RealJordan, rows: fmpq_mat, sign: int) -> fmpq_mat:
    """Intersection of a real subspace with the sign-eigenspace of theta."""
    eig = la.nullspace_rows(R.theta - sign * la.identity(R.N))
    return la.intersect(rows, eig) if rows.nrows() else rows


def peirce_mult_check(V: JordanAlgebra, P: PeirceDecomposition) -> list:
    """Check V_ij V_jk in V_ik and V_ij V_ij in V_ii + V_jj on block bases."""
    bad = []
    r = len(P.frame)
    blk = lambda i, j: P.blocks[(min(i, j), max(i, j))]
    for i, j, k in ((i, j, k) for i in range(r) for j in range(r) for k in range(r)
                    if len({i, j, k}) == 3):
        target = blk(i, k)
        for x in la.rows_of(blk(i, j)):
            Lx = _mult_rational(V, x)
            imgs = [la.matvec(Lx, y) for y in la.rows_of(blk(j, k))]
            if imgs and not la.contains(target, la.mat(imgs, V.n)):
                bad.append(f"V{i + 1}{j + 1} V{j + 1}{k + 1} not in V{i + 1}{k + 1}")
                break
    for i in range(r):
        for j in range(i + 1, r):
            target = la.vstack(blk(i, i), blk(j, j))
            rows = la.rows_of(blk(i, j))
            imgs = [la.matvec(_mult_rational(V, x), y) for x in rows for y in rows]
            if imgs and not la.contains(target, la.mat(imgs, V.n)):
                bad.append(f"V{i + 1}{j + 1}^2 not in V{i + 1}{i + 1}+V{j + 1}{j + 1}")
    return bad


@dataclass
class CheckReport:
    ok: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def lx_squared_check(V: JordanAlgebra, P: PeirceDecomposition, i: int, j: int, k: int,
                     x: Sequence) -> CheckReport:
    """L(x)^2 y = (1/8) tau_F(x, x) y for y in V_ij and x in V_jk (0-based)."""
    if len({i, j, k}) != 3:
        raise ValueError("i, j, k must be distinct")
    tx = trace_form(V, x, x)
    fails = []
    Vij = la.rows_of(P.blocks[(min(i, j), max(i, j))])
    for y in Vij:
        lhs = jordan_product(V, x, jordan_product(V, x, y))
        rhs = [tx * ExactScalar(1, 0) * ExactScalar(la.to_fraction(c)) / 8 for c in y]
        if lhs != rhs:
            fails.append({"y": [format_scalar(ExactScalar(la.to_fraction(c))) for c in y]})
    details = {"tau_F(x,x)": format_scalar(tx)}
    if not tx.is_zero():
        R = V.real
        xr = R.realify_vector(x)
        Lx = R.mult(xr)
        src = la.rows_of(P.real_blocks[(min(i, j), max(i, j))])
        imgs = [la.matvec(Lx, y) for y in src]
        rank = la.mat(imgs, R.N).rank() if imgs else 0
        details["rank"] = rank
        tgt = P.real_blocks[(min(i, k), max(i, k))]
        inside = la.contains(tgt, la.mat(imgs, R.N)) if imgs else True
        if rank != len(src) or not inside:
            fails.append({"rank": rank, "expected": len(src), "maps_into_V_ik": inside})
    return CheckReport(not fails, fails, details)


# ---------------------------------------------------------------------------
# random elements and rank-one points


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 2)))


def random_element(V: JordanAlgebra, rng: random.Random) -> list:
    """Random F-vector with coefficients in {-3..3}/{1,2} (real and imaginary parts)."""
    if V.field == "R":
        return [ExactScalar(random_rational(rng)) for _ in range(V.n)]
    return [ExactScalar(random_rational(rng), random_rational(rng)) for _ in range(V.n)]


def random_real_vector(R: RealJordan, rng: random.Random) -> list:
    return [la.q(random_rational(rng)) for _ in range(R.N)]


def rank_one_points(V: JordanAlgebra, count: int, seed: int = 0, frame: Optional[JordanFrame] = None,
                    real: bool = False) -> list:
    """Points P(a)c with a random and P(a) invertible.

    Returned as F-coordinate scalar lists, or real coordinates if ``real``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    R = V.real
    c = R.frame[0] if frame is None else R.realify_vector(frame.idempotents[0])
    out = []
    while len(out) < count:
        a = random_real_vector(R, rng)
        Pa = R.quad(a)
        if Pa.det() == 0:
            continue
        x = la.matvec(Pa, c)
        out.append(x if real else R.complexify_vector(x))
    return out


# ---------------------------------------------------------------------------
# structural checks


def jordan_identity_check(V: JordanAlgebra, samples: int = 100, seed: int = 0) -> CheckReport:
    """[L(x), L(x^2)] = 0 for basis vectors, sums of basis pairs, and random x."""
    R = V.real
    fails = []
    N = R.N

    def test(x, tag):
        Lx = R.mult(x)
        x2 = la.matvec(Lx, x)
        if not la.is_zero_mat(la.commutator(Lx, R.mult(x2))):
            fails.append(tag)

    for a in range(N):
        test(la.unit(N, a), f"e{a}")
    for a, b in combinations(range(N), 2):
        x = la.unit(N, a)
        x[b] = fmpq(1)
        test(x, f"e{a}+e{b}")
    rng = random.Random(seed)
    for t in range(samples):
        test(random_real_vector(R, rng), f"random#{t}")
    return CheckReport(not fails, fails, {"pairs": N * (N - 1) // 2, "samples": samples})


def commutativity_check(V: JordanAlgebra) -> bool:
    # L_a e_b = L_b e_a
    for a in range(V.n):
        for b in range(a + 1, V.n):
            for g in range(V.n):
                if V.Lmats[a][g, b] != V.Lmats[b][g, a]:
                    return False
    return True


def unit_check(V: JordanAlgebra) -> bool:
    return _mult_rational(V, V.unit) == la.identity(V.n)


def theta_check(V: JordanAlgebra) -> CheckReport:
    """theta is an order-two automorphism and (x|y) is positive definite."""
    R = V.real
    fails = []
    T = R.theta
    if T * T != la.identity(R.N):
        fails.append("theta^2 != id")
    for a in range(R.N):
        ta = la.matvec(T, la.unit(R.N, a))
        Lta = R.mult(ta)
        # theta L(e_a) = L(theta e_a) theta
        if T * R.L[a] != Lta * T:
            fails.append(f"theta not multiplicative on e{a}")
            break
    inner_gram = R.G * T
    if inner_gram != inner_gram.transpose():
        fails.append("(x|y) not symmetric")
    elif not la.is_positive_definite(inner_gram):
        fails.append("(x|y) not positive definite")
    if V.euclidean and T != la.identity(R.N):
        fails.append("Euclidean model with nontrivial theta")
    return CheckReport(not fails, fails)


def dims_ok(V: JordanAlgebra) -> bool:
    return V.n == V.r + V.d * V.r * (V.r - 1) // 2


# ---------------------------------------------------------------------------
# JSON


def to_json(V: JordanAlgebra) -> dict:
    fs = lambda x: format_scalar(ExactScalar(la.to_fraction(x)))
    product = []
    for a in range(V.n):
        row = []
        for b in range(V.n):
            row.append([[g, fs(V.Lmats[a][g, b])] for g in range(V.n) if V.Lmats[a][g, b] != 0])
        product.append(row)
    return {
        "name": V.name,
        "field": V.field,
        "n": V.n,
        "r": V.r,
        "d": V.d,
        "delta": V.delta,
        "euclidean": V.euclidean,
        "basis": list(V.basis),
        "unit": [fs(x) for x in V.unit],
        "theta": [[fs(V.theta0[i, j]) for j in range(V.n)] for i in range(V.n)],
        "product": product,
    }


JSON_FIELDS = {"name", "field", "n", "r", "d", "delta", "euclidean", "basis", "unit", "theta", "product"}


def _rational_from_str(s: str, where: str) -> fmpq:
    v = parse_scalar(s)
    if not v.is_rational():
        raise ValueError(f"{where}: expected a rational scalar, got {s!r}")
    return la.q(v.a)


def from_json(obj: dict) -> JordanAlgebra:
    keys = set(obj)
    if keys != JSON_FIELDS:
        missing = JSON_FIELDS - keys
        extra = keys - JSON_FIELDS
        raise ValueError(f"bad Jordan algebra JSON: missing {sorted(missing)}, unexpected {sorted(extra)}")
    n = obj["n"]
    L = [fmpq_mat(n, n) for _ in range(n)]
    for a, row in enumerate(obj["product"]):
        for b, terms in enumerate(row):
            for g, s in terms:
                L[a][g, b] = _rational_from_str(s, f"product[{a}][{b}]")
    theta = fmpq_mat(n, n)
    for i, row in enumerate(obj["theta"]):
        for j, s in enumerate(row):
            theta[i, j] = _rational_from_str(s, f"theta[{i}][{j}]")
    unit = [_rational_from_str(s, f"unit[{k}]") for k, s in enumerate(obj["unit"])]
    frame = None
    params = {}
    has_minrep = True
    try:
        ref = build_model(obj["name"])
        if ref.n == n:
            frame = [list(c) for c in ref.frame]
            params = dict(ref.params)
            has_minrep = ref.has_minrep
    except (UnknownModel, ValueError):
        pass
    V = JordanAlgebra(name=obj["name"], field=obj["field"], n=n, r=obj["r"], d=obj["d"],
                      basis=list(obj["basis"]), Lmats=L, unit=unit, theta0=theta,
                      euclidean=bool(obj["euclidean"]), frame=frame, params=params,
                      has_minrep=has_minrep)
    if V.delta != obj["delta"]:
        raise ValueError("delta does not match field")
    return V
