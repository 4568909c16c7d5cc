"""Exact structure-constant Lie algebras over Q.

Structure constants are rational in every algebra this package builds
(complex algebras are handled through their realification), so they are
stored as sparse dictionaries of ``fmpq``:

    sc[a][b] = {g: f_ab^g}   with  [X_a, X_b] = sum_g f_ab^g X_g.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from flint import fmpq, fmpq_mat, fmpq_poly

from . import linalg as la
from .scalars import ExactScalar, format_scalar, parse_scalar


class LieAlgebraError(ValueError):
    pass


class LieAlgebra:
    """Finite-dimensional Lie algebra given by sparse rational structure constants.

    ``embedding`` optionally holds the basis expressed in a parent space
    (rows of a matrix). ``J`` is a complex structure (multiplication by i)
    when the algebra is the realification of a complex one.
    """

    def __init__(self, labels: Sequence[str], sc: dict, form: Optional[fmpq_mat] = None,
                 embedding: Optional[fmpq_mat] = None, parent: Optional["LieAlgebra"] = None,
                 J: Optional[fmpq_mat] = None, name: str = ""):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.sc = sc
        self.form = form
        self.embedding = embedding
        self.parent = parent
        self.J = J
        self.name = name

    # ------------------------------------------------------------------
    @classmethod
    def from_pairs(cls, labels, pairs: dict, **kw) -> "LieAlgebra":
        """Build from {(a, b): {g: c}} given for a < b (antisymmetry is filled in)."""
        n = len(labels)
        sc = {a: {} for a in range(n)}
        for (a, b), vec in pairs.items():
            vec = {g: la.q(c) for g, c in vec.items() if c}
            if not vec:
                continue
            if a == b:
                raise LieAlgebraError("[X, X] must vanish")
            sc[a][b] = vec
            sc[b][a] = {g: -c for g, c in vec.items()}
        return cls(labels, sc, **kw)

    def structure_constant(self, a: int, b: int, g: int) -> fmpq:
        return self.sc[a].get(b, {}).get(g, fmpq(0))

    def basis_bracket(self, a: int, b: int) -> dict:
        return self.sc[a].get(b, {})

    def bracket(self, x: Sequence, y: Sequence) -> list:
        out = [fmpq(0)] * self.dim
        ys = [(b, yb) for b, yb in enumerate(y) if yb]
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.sc[a]
            for b, yb in ys:
                vec = row.get(b)
                if vec:
                    c = xa * yb
                    for g, f in vec.items():
                        out[g] += c * f
        return out

    def ad(self, x: Sequence) -> fmpq_mat:
        """Matrix of ad(x) acting on coordinate columns."""
        m = fmpq_mat(self.dim, self.dim)
        acc = {}
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, vec in self.sc[a].items():
                for g, f in vec.items():
                    acc[(g, b)] = acc.get((g, b), fmpq(0)) + xa * f
        for (g, b), v in acc.items():
            if v:
                m[g, b] = v
        return m

    def ad_basis(self, a: int) -> fmpq_mat:
        return self.ad(la.unit(self.dim, a))

    def basis_vector(self, a: int) -> list:
        return la.unit(self.dim, a)

    def nnz(self) -> int:
        return sum(len(v) for row in self.sc.values() for v in row.values())

    # ------------------------------------------------------------------
    def jacobi_check(self, mode: str = "auto", samples: int = 5000, seed: int = 0,
                     limit: int = 60) -> "CheckResult":
        """Jacobi identity on basis triples, exhaustive or sampled."""
        n = self.dim
        if mode == "auto":
            mode = "exhaustive" if n <= limit else "sample"
        if mode == "exhaustive":
            triples: Iterable = combinations(range(n), 3)
            count = n * (n - 1) * (n - 2) // 6
        else:
            rng = random.Random(seed)
            triples = (tuple(rng.sample(range(n), 3)) for _ in range(samples))
            count = samples
        bad = []
        for a, b, c in triples:
            if not self._jacobi_zero(a, b, c):
                bad.append((a, b, c))
                if len(bad) >= 10:
                    break
        return CheckResult(not bad, {"mode": mode, "triples": count, "violations": bad})

    def _br_vec_basis(self, vec: dict, a: int) -> dict:
        """[sum vec_g X_g, X_a] as a sparse dict."""
        out = {}
        for g, cg in vec.items():
            for h, f in self.sc[g].get(a, {}).items():
                out[h] = out.get(h, fmpq(0)) + cg * f
        return out

    def _jacobi_zero(self, a, b, c) -> bool:
        tot = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            inner = self.sc[y].get(z, {})
            # [X_x, [X_y, X_z]] = -[[X_y, X_z], X_x]
            for h, f in self._br_vec_basis(inner, x).items():
                tot[h] = tot.get(h, fmpq(0)) - f
        return all(v == 0 for v in tot.values())

    def antisymmetry_ok(self) -> bool:
        for a, row in self.sc.items():
            for b, vec in row.items():
                other = self.sc[b].get(a, {})
                if {g: -c for g, c in vec.items()} != other:
                    return False
        return True

    def invariant_form_check(self, B: Optional[fmpq_mat] = None, samples: int = 200,
                             seed: int = 0) -> bool:
        """B([X,Y],Z) + B(Y,[X,Z]) = 0 on sampled basis triples."""
        B = self.form if B is None else B
        if B is None:
            raise LieAlgebraError("no invariant form attached")
        n = self.dim
        rng = random.Random(seed)
        for _ in range(samples):
            a, b, c = (rng.randrange(n) for _ in range(3))
            xy = self.bracket(la.unit(n, a), la.unit(n, b))
            xz = self.bracket(la.unit(n, a), la.unit(n, c))
            lhs = la.dot(xy, [B[i, c] for i in range(n)]) + la.dot(
                [B[b, i] for i in range(n)], xz)
            if lhs != 0:
                return False
        return True

    # ------------------------------------------------------------------
    def killing_form(self) -> fmpq_mat:
        """kappa(X_a, X_b) = sum_{c,d} f_ac^d f_bd^c, grouped by (c, d) for sparsity."""
        n = self.dim
        left = {}   # (c, d) -> [(a, f_ac^d)]
        right = {}  # (c, d) -> [(b, f_bd^c)]
        for a in range(n):
            for c, vec in self.sc[a].items():
                for d, f in vec.items():
                    left.setdefault((c, d), []).append((a, f))
                    right.setdefault((d, c), []).append((a, f))
        acc = {}
        for key, ls in left.items():
            rs = right.get(key)
            if not rs:
                continue
            for a, fa in ls:
                for b, fb in rs:
                    if a <= b:
                        acc[(a, b)] = acc.get((a, b), fmpq(0)) + fa * fb
        K = fmpq_mat(n, n)
        for (a, b), v in acc.items():
            if v:
                K[a, b] = v
                K[b, a] = v
        return K

    def killing(self, x: Sequence, y: Sequence) -> fmpq:
        """tr(ad x ad y) for two vectors."""
        A = self.ad(x)
        B = self.ad(y)
        return _trace_of_product(A, B)

    def gram(self, rows: Sequence[Sequence], B: Optional[fmpq_mat] = None) -> fmpq_mat:
        B = self.form if B is None else B
        if B is None:
            B = self.killing_form()
        return la.gram(rows, B)

    # ------------------------------------------------------------------
    def to_json(self) -> dict:
        fs = lambda x: format_scalar(ExactScalar(la.to_fraction(x)))
        brackets = []
        for a in range(self.dim):
            row = []
            for b in range(self.dim):
                vec = self.sc[a].get(b, {})
                row.append([[g, fs(c)] for g, c in sorted(vec.items())])
            brackets.append(row)
        out = {"name": self.name, "dim": self.dim, "basis": list(self.labels), "brackets": brackets}
        if self.form is not None:
            out["form"] = [[fs(self.form[i, j]) for j in range(self.dim)] for i in range(self.dim)]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LieAlgebra":
        labels = obj["basis"]
        n = len(labels)
        sc = {a: {} for a in range(n)}
        for a, row in enumerate(obj["brackets"]):
            for b, terms in enumerate(row):
                if terms:
                    sc[a][b] = {g: la.q(parse_scalar(s).to_fraction()) for g, s in terms}
        form = None
        if "form" in obj:
            form = la.mat([[parse_scalar(s).to_fraction() for s in r] for r in obj["form"]], n)
        return cls(labels, sc, form=form, name=obj.get("name", ""))


def _trace_of_product(A: fmpq_mat, B: fmpq_mat) -> fmpq:
    n = A.nrows()
    s = fmpq(0)
    for i in range(n):
        for k in range(n):
            x = A[i, k]
            if x:
                y = B[k, i]
                if y:
                    s += x * y
    return s


@dataclass
class CheckResult:
    ok: bool
    details: dict


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of a Lie algebra (or of any coordinate space), kept in RREF."""

    def __init__(self, parent: Optional[LieAlgebra], rows: fmpq_mat):
        self.parent = parent
        self.rows = la.canonical(rows)

    @property
    def dim(self) -> int:
        return self.rows.nrows()

    @property
    def ambient_dim(self) -> int:
        return self.rows.ncols()

    def vectors(self) -> list:
        return la.rows_of(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows.ncols() == other.rows.ncols() and la.same_span(self.rows, other.rows)

    def __hash__(self):  # pragma: no cover - subspaces are not used as keys
        return hash((self.dim, self.ambient_dim))

    def contains(self, other) -> bool:
        rows = other.rows if isinstance(other, Subspace) else la.mat(other, self.ambient_dim)
        return la.contains(self.rows, rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.parent, la.vstack(self.rows, other.rows) if other.dim else self.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace(self.parent, la.intersect(self.rows, other.rows))

    def to_json(self) -> list:
        return [[format_scalar(ExactScalar(la.to_fraction(x))) for x in r] for r in self.vectors()]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(parent: Optional[LieAlgebra], vectors: Sequence[Sequence], ncols: Optional[int] = None) -> Subspace:
    n = ncols if ncols is not None else (parent.dim if parent is not None else len(vectors[0]))
    return Subspace(parent, la.row_space(vectors, n))


def bracket_space(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """Span of [a, b] over basis vectors of A and B."""
    vecs = [L.bracket(x, y) for x in A.vectors() for y in B.vectors()]
    return Subspace(L, la.row_space(vecs, L.dim)) if vecs else Subspace(L, fmpq_mat(0, L.dim))


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return S.contains(bracket_space(L, S, S))


# ---------------------------------------------------------------------------
# closure, subalgebras, centralizers


def close_under_bracket(parent: Optional[LieAlgebra], generators: Sequence, name: str = "") -> LieAlgebra:
    """Smallest bracket-closed subspace containing the generators.

    ``parent`` is a LieAlgebra (generators are coordinate vectors) or None,
    in which case generators are square ``fmpq_mat`` and the bracket is the
    commutator in gl(n). The result carries induced structure constants and
    its basis as ``embedding`` rows (flattened matrices in the gl(n) case).
    """
    if parent is None:
        gens = list(generators)
        if not gens:
            return LieAlgebra([], {}, embedding=fmpq_mat(0, 0), name=name)
        k = gens[0].nrows()
        ncols = k * k
        vec = la.flatten
        br = lambda x, y: la.flatten(la.commutator(la.reshape(x, k), la.reshape(y, k)))
        gen_rows = [vec(g) for g in gens]
    else:
        ncols = parent.dim
        br = parent.bracket
        gen_rows = [list(g) for g in generators]
    basis = la.row_space(gen_rows, ncols) if gen_rows else fmpq_mat(0, ncols)
    if basis.nrows() == 0:
        return LieAlgebra([], {}, embedding=basis, parent=parent, name=name)
    frontier = la.rows_of(basis)
    while True:
        current = la.rows_of(basis)
        new = [br(x, y) for x in frontier for y in current]
        grown = la.row_space(current + new, ncols)
        if grown.nrows() == basis.nrows():
            break
        # the new directions, expressed in the grown echelon basis
        frontier = la.rows_of(la.complement_in(grown, basis))
        basis = grown
    return induced_algebra(basis, br, parent=parent, name=name)


def induced_algebra(basis: fmpq_mat, br, parent=None, name: str = "",
                    labels: Optional[Sequence[str]] = None) -> LieAlgebra:
    """Structure constants of a bracket-closed subspace with the given basis rows."""
    solver = la.CoordinateSolver(basis)
    rows = la.rows_of(basis)
    m = len(rows)
    pairs = {}
    for a in range(m):
        for b in range(a + 1, m):
            z = br(rows[a], rows[b])
            if la.is_zero_vec(z):
                continue
            try:
                c = solver.coords(z, check=True)
            except ValueError:
                raise LieAlgebraError("subspace is not closed under the bracket") from None
            pairs[(a, b)] = {g: x for g, x in enumerate(c) if x}
    labels = list(labels) if labels else [f"{name or 'X'}{a}" for a in range(m)]
    return LieAlgebra.from_pairs(labels, pairs, embedding=basis, parent=parent, name=name)


def subalgebra(L: LieAlgebra, S: Subspace, name: str = "") -> LieAlgebra:
    return induced_algebra(S.rows, L.bracket, parent=L, name=name)


def centralizer(L: LieAlgebra, S) -> Subspace:
    """{x in L : [s, x] = 0 for all s in S}, as an exact kernel."""
    vecs = S.vectors() if isinstance(S, Subspace) else [list(v) for v in S]
    if not vecs:
        return Subspace(L, la.identity(L.dim))
    rows = []
    for s in vecs:
        rows.extend(la.rows_of(L.ad(s)))
    return Subspace(L, la.kernel_of_rows(rows, L.dim))


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, [la.unit(L.dim, a) for a in range(L.dim)])


# ---------------------------------------------------------------------------
# invariant forms, eigenspaces, Casimir


class AnchorInconsistency(LieAlgebraError):
    pass


def normalized_invariant_form(L: LieAlgebra, anchors: Sequence, K: Optional[fmpq_mat] = None):
    """Scale the Killing form so that B(X, Y) = target on every anchor.

    ``anchors`` is a list of (X, Y, target). Returns (s, B) with B = s * kappa.
    Raises AnchorInconsistency if the anchors disagree on s.
    """
    s = None
    for X, Y, target in anchors:
        if K is not None:
            k = la.dot(X, la.matvec(K, Y))
        else:
            k = L.killing(X, Y)
        target = la.q(target)
        if k == 0:
            if target != 0:
                raise AnchorInconsistency("Killing form vanishes on an anchor with nonzero target")
            continue
        t = target / k
        if s is None:
            s = t
        elif s != t:
            raise AnchorInconsistency(f"anchor inconsistency: {s} vs {t}")
    if s is None:
        raise AnchorInconsistency("anchors do not determine the scale")
    B = s * K if K is not None else None
    return s, B


class EigenError(LieAlgebraError):
    pass


def ad_squared_eigenspaces(L: LieAlgebra, X: Sequence, expected: Optional[Sequence] = None) -> list:
    """Eigenspace decomposition of ad(X)^2, returned as [(eigenvalue, Subspace)].

    The minimal polynomial is factored exactly; every factor must be linear
    (rational eigenvalue) and simple (semisimple action).
    """
    A = L.ad(X)
    M = A * A
    mp = M.minpoly()
    _, factors = mp.factor()
    eigs = []
    for f, mult in factors:
        if f.degree() != 1:
            raise EigenError(f"minimal polynomial has the irreducible factor {f}")
        if mult != 1:
            raise EigenError("ad(X)^2 is not semisimple")
        eigs.append(-f[0] / f[1])
    eigs.sort(reverse=True)
    out = []
    total = 0
    I = la.identity(L.dim)
    for lam in eigs:
        K = la.nullspace_rows(M - lam * I)
        out.append((lam, Subspace(L, K)))
        total += K.nrows()
    if total != L.dim:
        raise EigenError("eigenspaces do not fill the algebra")
    if expected is not None:
        exp = sorted((la.q(e) for e in expected), reverse=True)
        if [e for e in eigs] != [e for e in exp if e in eigs] or not set(eigs) <= set(exp):
            raise EigenError(f"eigenvalues {eigs} not within expected {exp}")
    return out


def casimir_pairs(L: LieAlgebra, B: fmpq_mat, basis: Optional[Sequence] = None) -> list:
    """Pairs (X_a, X_a') with B(X_a, X_b') = delta_ab."""
    vecs = [list(v) for v in basis] if basis is not None else [la.unit(L.dim, a) for a in range(L.dim)]
    G = la.gram(vecs, B)
    if G.nrows() and G.det() == 0:
        raise LieAlgebraError("form is singular on the given basis")
    Gi = G.inv() if G.nrows() else G
    k = len(vecs)
    pairs = []
    for a in range(k):
        dual = [fmpq(0)] * L.dim
        for b in range(k):
            c = Gi[b, a]
            if c:
                dual = la.vadd(dual, la.vscale(c, vecs[b]))
        pairs.append((vecs[a], dual))
    return pairs


def complex_casimir_pairs(L: LieAlgebra, B: fmpq_mat, basis: Optional[Sequence] = None) -> list:
    """Second pair list (X_a, i X_a') for a realified complex algebra."""
    if L.J is None:
        raise LieAlgebraError("algebra carries no complex structure")
    return [(x, la.matvec(L.J, y)) for x, y in casimir_pairs(L, B, basis)]


# ---------------------------------------------------------------------------
# realification


def realify(L: LieAlgebra, name: str = "") -> LieAlgebra:
    """Realification of the complexification of a rational (real-form) algebra.

    Basis (X_a, i X_a); [X_a, i X_b] = i [X_a, X_b], [i X_a, i X_b] = -[X_a, X_b].
    """
    m = L.dim
    sc = {a: {} for a in range(2 * m)}
    for a in range(m):
        for b, vec in L.sc[a].items():
            neg = {g: -c for g, c in vec.items()}
            sc[a][b] = dict(vec)
            sc[a][m + b] = {m + g: c for g, c in vec.items()}
            sc[m + a][b] = {m + g: c for g, c in vec.items()}
            sc[m + a][m + b] = neg
    J = fmpq_mat(2 * m, 2 * m)
    for a in range(m):
        J[m + a, a] = 1
        J[a, m + a] = -1
    labels = list(L.labels) + ["i*" + s for s in L.labels]
    return LieAlgebra(labels, sc, J=J, name=name or (L.name + "_R"))
