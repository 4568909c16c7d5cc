"""Composition algebras R, C, H, O and split O_s by Cayley-Dickson doubling.

Doubling rule, for pairs over the previous algebra:
    (a, b)(c, d) = (a c + g * conj(d) b,  d a + b conj(c)),
    conj(a, b)   = (conj a, -b),
    N(a, b)      = N(a) - g N(b).
g = -1 at every step gives the division algebras; g = +1 at the last
step of the octonions gives the split octonions.
"""

from __future__ import annotations

from functools import lru_cache

from flint import fmpq


class CompositionAlgebra:
    """A Cayley-Dickson algebra with a precomputed unit multiplication table."""

    def __init__(self, name: str, signs: tuple):
        self.name = name
        self.signs = tuple(signs)
        self.dim = 2 ** len(signs)
        self.table = _table(self.signs)  # table[i][j] = (sign, k): u_i u_j = sign*u_k
        self.split = any(g == 1 for g in self.signs)

    def zero(self):
        return [fmpq(0)] * self.dim

    def unit(self, k: int = 0):
        v = self.zero()
        v[k] = fmpq(1)
        return v

    def mul(self, x, y):
        out = [fmpq(0)] * self.dim
        t = self.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = t[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                s, k = row[j]
                out[k] += s * xi * yj
        return out

    def conj(self, x):
        return [x[0]] + [-c for c in x[1:]]

    def norm(self, x):
        return self.mul(x, self.conj(x))[0]

    def split_flip(self, x):
        """(a + b l) -> (a - b l) for the top doubling; an automorphism."""
        h = self.dim // 2
        return list(x[:h]) + [-c for c in x[h:]]

    def is_associative(self) -> bool:
        return self.dim <= 4


def _cd_mul(signs, x, y):
    if not signs:
        return [x[0] * y[0]]
    g = signs[-1]
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    sub = signs[:-1]
    conj = lambda v: [v[0]] + [-t for t in v[1:]] if len(v) > 1 else list(v)
    left = [p + g * r for p, r in zip(_cd_mul(sub, a, c), _cd_mul(sub, conj(d), b))]
    right = [p + r for p, r in zip(_cd_mul(sub, d, a), _cd_mul(sub, b, conj(c)))]
    return left + right


@lru_cache(maxsize=None)
def _table(signs):
    n = 2 ** len(signs)
    tab = []
    for i in range(n):
        row = []
        for j in range(n):
            ei = [0] * n
            ej = [0] * n
            ei[i] = 1
            ej[j] = 1
            p = _cd_mul(signs, ei, ej)
            nz = [(k, v) for k, v in enumerate(p) if v]
            assert len(nz) == 1 and nz[0][1] in (1, -1)
            row.append((fmpq(nz[0][1]), nz[0][0]))
        tab.append(tuple(row))
    return tuple(tab)


REALS = CompositionAlgebra("R", ())
COMPLEX = CompositionAlgebra("C", (-1,))
QUATERNIONS = CompositionAlgebra("H", (-1, -1))
OCTONIONS = CompositionAlgebra("O", (-1, -1, -1))
SPLIT_OCTONIONS = CompositionAlgebra("Os", (-1, -1, 1))

BY_NAME = {a.name: a for a in (REALS, COMPLEX, QUATERNIONS, OCTONIONS, SPLIT_OCTONIONS)}
