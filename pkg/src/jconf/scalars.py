"""Exact scalars in the tower Q < Q(i) < Q(i, sqrt(s)).

An element is a + b*i + c*sqrt(s) + d*i*sqrt(s) with rational a, b, c, d.
The integer s is square-free and shared by all scalars of one tower; a
scalar with ``s=None`` has c = d = 0 and mixes freely with any tower.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

Number = Union[int, Fraction, "ExactScalar"]


class TowerMismatch(ValueError):
    """Raised when scalars from towers with different s are combined."""


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    # flint.fmpq and friends
    try:
        return Fraction(int(v.p), int(v.q))
    except AttributeError:
        raise TypeError(f"cannot convert {v!r} to a rational") from None


def squarefree_part(n: int) -> tuple[int, int]:
    """Return (s, k) with n = k^2 * s and s square-free (sign kept in s)."""
    if n == 0:
        raise ValueError("zero has no square-free part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    k = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        p += 1
    return sign * n, k


class ExactScalar:
    """Immutable exact scalar a + b i + c sqrt(s) + d i sqrt(s)."""

    __slots__ = ("a", "b", "c", "d", "s")

    def __init__(self, a=0, b=0, c=0, d=0, s: Optional[int] = None):
        a, b, c, d = _frac(a), _frac(b), _frac(c), _frac(d)
        if s is not None:
            if s == 0 or squarefree_part(s)[0] != s:
                raise ValueError(f"s={s} must be a nonzero square-free integer")
            if s == 1:
                a, b, c, d, s = a + c, b + d, Fraction(0), Fraction(0), None
            elif s == -1:
                # sqrt(-1) = i: fold into the Q(i) part
                a, b, c, d, s = a - d, b + c, Fraction(0), Fraction(0), None
        elif c or d:
            raise ValueError("sqrt(s) coefficients need an explicit s")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "s", s)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # construction helpers
    @classmethod
    def coerce(cls, v) -> "ExactScalar":
        if isinstance(v, ExactScalar):
            return v
        if isinstance(v, complex):
            raise TypeError("floating point complex values are not exact")
        return cls(_frac(v))

    @classmethod
    def i(cls) -> "ExactScalar":
        return cls(0, 1)

    @classmethod
    def sqrt(cls, q) -> "ExactScalar":
        """Exact square root of a rational q, adjoining sqrt(s) if needed.

        For q < 0 the root is i*sqrt(|q|).
        """
        q = _frac(q)
        if q == 0:
            return cls(0)
        num_s, num_k = squarefree_part(q.numerator * q.denominator)
        # sqrt(q) = sqrt(p*den)/den with p*den = k^2 s
        scale = Fraction(num_k, q.denominator)
        if num_s == 1:
            return cls(scale)
        if num_s == -1:
            return cls(0, scale)
        if num_s < 0:
            return cls(0, 0, 0, scale, -num_s)
        return cls(0, 0, scale, 0, num_s)

    # structure
    def _tower(self, other: "ExactScalar") -> Optional[int]:
        if self.s is None:
            return other.s
        if other.s is None or other.s == self.s:
            return self.s
        raise TowerMismatch(f"scalars from towers s={self.s} and s={other.s}")

    def __add__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        s = self._tower(o)
        return ExactScalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, s)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, -self.c, -self.d, self.s)

    def __sub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        s = self._tower(o)
        S = s if s is not None else 0
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # (a1 + b1 i + c1 r + d1 i r)(a2 + b2 i + c2 r + d2 i r), r^2 = S, i^2 = -1
        a = a1 * a2 - b1 * b2 + S * (c1 * c2 - d1 * d2)
        b = a1 * b2 + b1 * a2 + S * (c1 * d2 + d1 * c2)
        c = a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return ExactScalar(a, b, c, d, s)

    __rmul__ = __mul__

    def conj(self) -> "ExactScalar":
        """Complex conjugation: fixes Q(sqrt(s)), sends i to -i."""
        return ExactScalar(self.a, -self.b, self.c, -self.d, self.s)

    def sqrt_conj(self) -> "ExactScalar":
        """The other automorphism: sqrt(s) -> -sqrt(s)."""
        return ExactScalar(self.a, self.b, -self.c, -self.d, self.s)

    def re(self) -> "ExactScalar":
        return ExactScalar(self.a, 0, self.c, 0, self.s)

    def im(self) -> "ExactScalar":
        return ExactScalar(self.b, 0, self.d, 0, self.s)

    def normsq(self) -> "ExactScalar":
        return self * self.conj()

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def is_real(self) -> bool:
        return not (self.b or self.d)

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        # multiply by the conjugates under i -> -i and sqrt(s) -> -sqrt(s)
        n1 = self * self.conj()  # in Q(sqrt s)
        n2 = n1 * n1.sqrt_conj()  # rational
        assert n2.is_rational()
        return self.conj() * n1.sqrt_conj() * ExactScalar(1 / n2.a)

    def __truediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ExactScalar(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    # equality and hashing are structural, with s normalized away when unused
    def _key(self):
        s = self.s if (self.c or self.d) else None
        return (self.a, self.b, self.c, self.d, s)

    def __eq__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        k = self._key()
        if not (k[1] or k[2] or k[3]):
            return hash(k[0])
        return hash(k)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"ExactScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _fmt_frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: ExactScalar) -> str:
    """Serialize as 'a/b', 'a/b+c/d*i', plus '*√s' and '*i*√s' terms."""
    parts = [_fmt_frac(x.a)]
    if x.b:
        parts.append(_fmt_frac(x.b) + "*i")
    if x.c:
        parts.append(_fmt_frac(x.c) + f"*√{x.s}")
    if x.d:
        parts.append(_fmt_frac(x.d) + f"*i*√{x.s}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


_TERM = re.compile(r"([+-]?\d+(?:/\d+)?)(\*i)?(?:\*√(-?\d+))?")


def parse_scalar(text: str) -> ExactScalar:
    """Inverse of :func:`format_scalar`; also accepts plain integers."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty scalar string")
    pos = 0
    coeffs = [Fraction(0)] * 4
    s = None
    while pos < len(t):
        m = _TERM.match(t, pos)
        if not m or m.end() == pos:
            raise ValueError(f"malformed scalar {text!r} at offset {pos}")
        q = Fraction(m.group(1))
        has_i = m.group(2) is not None
        root = m.group(3)
        if root is not None:
            r = int(root)
            if s is not None and s != r:
                raise ValueError(f"two different roots in {text!r}")
            s = r
            coeffs[3 if has_i else 2] += q
        else:
            coeffs[1 if has_i else 0] += q
        pos = m.end()
        if pos < len(t) and t[pos] not in "+-":
            raise ValueError(f"malformed scalar {text!r} at offset {pos}")
    return ExactScalar(*coeffs, s=s)


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)
