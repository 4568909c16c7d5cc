"""Exact rational linear algebra on top of python-flint.

Vectors are plain Python lists of ``fmpq``; matrices are ``fmpq_mat``.
Subspaces are kept as reduced row-echelon matrices, so equality of two
subspaces is equality of their canonical forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat, fmpz

Q0 = fmpq(0)
Q1 = fmpq(1)


def q(v) -> fmpq:
    if isinstance(v, fmpq):
        return v
    if isinstance(v, Fraction):
        return fmpq(v.numerator, v.denominator)
    if isinstance(v, int):
        return fmpq(v)
    try:  # ExactScalar
        return q(v.to_fraction())
    except AttributeError:
        raise TypeError(f"not a rational: {v!r}") from None


def to_fraction(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def qvec(values: Iterable) -> list:
    return [q(v) for v in values]


def zeros(n: int) -> list:
    return [Q0] * n


def unit(n: int, k: int) -> list:
    v = [Q0] * n
    v[k] = Q1
    return v


def mat(rows: Sequence[Sequence], ncols: int | None = None) -> fmpq_mat:
    rows = list(rows)
    if not rows:
        return fmpq_mat(0, ncols or 0)
    nc = len(rows[0]) if ncols is None else ncols
    flat = []
    for r in rows:
        if len(r) != nc:
            raise ValueError("ragged rows")
        flat.extend(q(x) for x in r)
    return fmpq_mat(len(rows), nc, flat)


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def col(v: Sequence) -> fmpq_mat:
    return fmpq_mat(len(v), 1, [q(x) for x in v])


def as_list(m: fmpq_mat) -> list:
    """Entries of a row or column matrix as a flat list."""
    return list(m.entries())


def rows_of(m: fmpq_mat) -> list:
    nc = m.ncols()
    e = m.entries()
    return [list(e[i * nc:(i + 1) * nc]) for i in range(m.nrows())]


def matvec(m: fmpq_mat, v: Sequence) -> list:
    return list((m * col(v)).entries())


def dot(a: Sequence, b: Sequence) -> fmpq:
    s = Q0
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def vadd(a, b):
    return [x + y for x, y in zip(a, b)]


def vsub(a, b):
    return [x - y for x, y in zip(a, b)]


def vscale(c, a):
    c = q(c)
    return [c * x for x in a]


def is_zero_vec(v) -> bool:
    return all(x == 0 for x in v)


def is_zero_mat(m: fmpq_mat) -> bool:
    return all(x == 0 for x in m.entries())


def flatten(m: fmpq_mat) -> list:
    return list(m.entries())


def reshape(v: Sequence, n: int, k: int | None = None) -> fmpq_mat:
    k = n if k is None else k
    return fmpq_mat(n, k, list(v))


def commutator(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    return a * b - b * a


def block_diag(*blocks: fmpq_mat) -> fmpq_mat:
    n = sum(b.nrows() for b in blocks)
    k = sum(b.ncols() for b in blocks)
    out = fmpq_mat(n, k)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows()):
            for j in range(b.ncols()):
                x = b[i, j]
                if x:
                    out[r0 + i, c0 + j] = x
        r0 += b.nrows()
        c0 += b.ncols()
    return out


def hstack(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    return mat([ra + rb for ra, rb in zip(rows_of(a), rows_of(b))], a.ncols() + b.ncols())


def vstack(*ms: fmpq_mat) -> fmpq_mat:
    ms = [m for m in ms if m.nrows()]
    if not ms:
        return fmpq_mat(0, 0)
    nc = ms[0].ncols()
    flat = []
    for m in ms:
        flat.extend(m.entries())
    return fmpq_mat(sum(m.nrows() for m in ms), nc, flat)


# ---------------------------------------------------------------------------
# echelon forms, kernels, canonical subspaces


def rref_nonzero(m: fmpq_mat) -> fmpq_mat:
    """Nonzero rows of the reduced row-echelon form."""
    if m.nrows() == 0:
        return m
    r, rank = m.rref()
    nc = m.ncols()
    return fmpq_mat(rank, nc, list(r.entries()[: rank * nc]))


def pivots(echelon: fmpq_mat) -> list:
    piv = []
    nc = echelon.ncols()
    e = echelon.entries()
    for i in range(echelon.nrows()):
        row = e[i * nc:(i + 1) * nc]
        for j, x in enumerate(row):
            if x != 0:
                piv.append(j)
                break
    return piv


def row_space(rows: Iterable[Sequence], ncols: int, chunk: int | None = None) -> fmpq_mat:
    """Canonical (RREF) basis of the span of ``rows``, accumulated in chunks."""
    chunk = chunk or max(ncols, 32)
    basis = fmpq_mat(0, ncols)
    buf = []
    for r in rows:
        if any(x != 0 for x in r):
            buf.append(r)
        if len(buf) >= chunk:
            basis = rref_nonzero(vstack(basis, mat(buf, ncols)) if basis.nrows() else mat(buf, ncols))
            buf = []
            if basis.nrows() == ncols:
                return basis
    if buf:
        basis = rref_nonzero(vstack(basis, mat(buf, ncols)) if basis.nrows() else mat(buf, ncols))
    return basis


def nullspace_rows(m: fmpq_mat) -> fmpq_mat:
    """Basis (as RREF rows) of {x : m x = 0}."""
    nc = m.ncols()
    if m.nrows() == 0:
        return identity(nc)
    r = rref_nonzero(m)
    piv = pivots(r)
    free = [j for j in range(nc) if j not in set(piv)]
    out = []
    rr = rows_of(r)
    for f in free:
        v = [Q0] * nc
        v[f] = Q1
        for i, p in enumerate(piv):
            v[p] = -rr[i][f]
        out.append(v)
    if not out:
        return fmpq_mat(0, nc)
    return rref_nonzero(mat(out, nc))


def kernel_of_rows(rows: Iterable[Sequence], ncols: int) -> fmpq_mat:
    """Kernel of the linear map whose matrix has the given rows."""
    return nullspace_rows(row_space(rows, ncols))


def canonical(m: fmpq_mat) -> fmpq_mat:
    return rref_nonzero(m) if m.nrows() else m


def same_span(a: fmpq_mat, b: fmpq_mat) -> bool:
    ca, cb = canonical(a), canonical(b)
    return ca.nrows() == cb.nrows() and ca == cb


def contains(space: fmpq_mat, vectors: fmpq_mat) -> bool:
    if vectors.nrows() == 0:
        return True
    if space.nrows() == 0:
        return is_zero_mat(vectors)
    return vstack(space, vectors).rank() == space.rank()


def intersect(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    """Intersection of two row spaces."""
    n = a.ncols()
    if a.nrows() == 0 or b.nrows() == 0:
        return fmpq_mat(0, n)
    # x a = y b  <=>  [x, -y] [a; b] = 0
    stacked = vstack(a, -b)
    k = nullspace_rows(stacked.transpose())
    if k.nrows() == 0:
        return fmpq_mat(0, n)
    xs = fmpq_mat(k.nrows(), a.nrows(), [k[i, j] for i in range(k.nrows()) for j in range(a.nrows())])
    return canonical(xs * a)


def complement_in(space: fmpq_mat, sub: fmpq_mat) -> fmpq_mat:
    """Rows of ``space`` extending a basis of ``sub`` to one of ``space``."""
    extra = []
    cur = canonical(sub) if sub.nrows() else fmpq_mat(0, space.ncols())
    for row in rows_of(space):
        trial = vstack(cur, mat([row])) if cur.nrows() else mat([row])
        if trial.rank() > cur.nrows():
            extra.append(row)
            cur = rref_nonzero(trial)
    return mat(extra, space.ncols()) if extra else fmpq_mat(0, space.ncols())


class CoordinateSolver:
    """Coordinates with respect to a fixed list of independent vectors.

    Uses the pivot columns of the row-echelon form so a coordinate lookup
    costs one small matrix-vector product.
    """

    def __init__(self, basis_rows: fmpq_mat):
        self.basis = basis_rows
        self.dim = basis_rows.nrows()
        self.ncols = basis_rows.ncols()
        if self.dim == 0:
            self.pivots = []
            self.inv = fmpq_mat(0, 0)
            return
        ech = rref_nonzero(basis_rows)
        if ech.nrows() != self.dim:
            raise ValueError("basis vectors are linearly dependent")
        self.pivots = pivots(ech)
        sub = fmpq_mat(self.dim, self.dim,
                       [basis_rows[i, p] for i in range(self.dim) for p in self.pivots])
        # coords * sub = v[pivots]
        self.inv = sub.inv()

    def coords(self, v: Sequence, check: bool = True) -> list:
        if self.dim == 0:
            if check and not is_zero_vec(v):
                raise ValueError("vector not in span")
            return []
        pv = fmpq_mat(1, self.dim, [v[p] for p in self.pivots])
        c = list((pv * self.inv).entries())
        if check:
            recon = list((fmpq_mat(1, self.dim, c) * self.basis).entries())
            if any(a != b for a, b in zip(recon, v)):
                raise ValueError("vector not in span")
        return c

    def in_span(self, v: Sequence) -> bool:
        try:
            self.coords(v, check=True)
            return True
        except ValueError:
            return False


def ldl_pivots(g: fmpq_mat) -> list:
    """Pivots of symmetric Gaussian elimination without row exchanges.

    All pivots positive iff all leading principal minors positive.
    Returns the pivot list; a zero pivot ends the list early.
    """
    n = g.nrows()
    a = [[g[i, j] for j in range(n)] for i in range(n)]
    piv = []
    for k in range(n):
        p = a[k][k]
        piv.append(p)
        if p == 0:
            break
        rk = a[k]
        for i in range(k + 1, n):
            f = a[i][k]
            if f == 0:
                continue
            f = f / p
            ri = a[i]
            for j in range(k + 1, n):
                if rk[j]:
                    ri[j] -= f * rk[j]
    return piv


def is_positive_definite(g: fmpq_mat) -> bool:
    piv = ldl_pivots(g)
    return len(piv) == g.nrows() and all(p > 0 for p in piv)


def gram(vectors: Sequence[Sequence], form: fmpq_mat) -> fmpq_mat:
    m = mat(vectors, form.nrows())
    return m * form * m.transpose()


def gram_schmidt(vectors: Sequence[Sequence], form: fmpq_mat) -> list:
    """Orthogonalize without normalizing; fails on isotropic vectors."""
    out = []
    norms = []
    for v in vectors:
        w = list(v)
        for u, nu in zip(out, norms):
            c = dot(u, matvec(form, w)) / nu
            if c:
                w = vsub(w, vscale(c, u))
        nw = dot(w, matvec(form, w))
        if nw == 0:
            raise ValueError("isotropic vector met during Gram-Schmidt")
        out.append(w)
        norms.append(nw)
    return out
