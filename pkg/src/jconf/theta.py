"""Representation parameters, Casimir eigenvalues and explicit theta lifts.

Continuous parameters mu, nu in iR are stored as formal imaginary rationals:
the Fraction t stands for t*i. Parameters on the G side use mu = lambda(H_0);
on the G' side nu = mu / 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

import sympy as sp

from . import jordan as jd
from .scalars import ExactScalar


class ParamError(ValueError):
    """A representation parameter violates the stated conditions."""


class NoMinimalRep(ValueError):
    pass


# ---------------------------------------------------------------------------
# table constants


def _so(p, q=0):
    n = p + q
    return n * (n - 1) // 2


def _sp(r):
    return r * (2 * r + 1)


def _sl(r):
    return r * r - 1


@dataclass(frozen=True)
class ModelConstants:
    model: str
    field: str
    r: int
    d: int
    delta: int
    n: int
    co_type: str
    g_type: str
    gsigma_type: str
    euclidean: bool
    dim_g: int          # real dimension
    dim_gsigma: int     # real dimension
    has_minrep: bool = True
    p: Optional[int] = None
    q: Optional[int] = None

    @property
    def rd_half(self) -> Fraction:
        return Fraction(self.r * self.d, 2)

    @property
    def cover_annotation(self) -> str:
        return "integral" if self.rd_half.denominator == 1 else "half-integral"

    @property
    def kind(self) -> str:
        if self.field == "C":
            return "complex"
        return "euclidean" if self.euclidean else "noneuclidean"

    def to_json(self) -> dict:
        return {"model": self.model, "field": self.field, "r": self.r, "d": self.d, "delta": self.delta,
                "n": self.n, "co": self.co_type, "g": self.g_type, "g_sigma": self.gsigma_type,
                "euclidean": self.euclidean, "dim_g": self.dim_g, "dim_g_sigma": self.dim_gsigma,
                "rd_half": str(self.rd_half), "cover_annotation": self.cover_annotation,
                "has_minrep": self.has_minrep}


def model_constants(model: str) -> ModelConstants:
    """Constants of the classification tables for a model id."""
    info = jd.parse_model_id(model)  # raises UnknownModel
    fam = info["family"]
    if fam == "SpinR":
        p, q = info["p"], info["q"]
        if p < 1 or q < 1 or p + q < 3:
            raise ValueError("spin signature needs p, q >= 1 and p + q >= 3")
        n = p + q
        eu = p == 1
        has = not (p >= 2 and q >= 2 and n % 2 == 1)
        return ModelConstants(model, "R", 2, n - 2, 1, n, f"so({p + 1},{q + 1})",
                              f"so({p - 1},{q})" if not eu else f"so({q})",
                              f"so({p - 1},{q - 1})" if not eu else f"so({q - 1})",
                              eu, _so(p - 1, q), _so(p - 1, q - 1), has, p, q)
    if fam == "SpinC":
        n = info["n"]
        if n < 3:
            raise ValueError("SpinC needs n >= 3")
        return ModelConstants(model, "C", 2, n - 2, 2, n, f"so({n + 2},C)", f"so({n - 1},C)",
                              f"so({n - 2},C)", False, 2 * _so(n - 1), 2 * _so(n - 2))
    if fam == "Herm3Os":
        return ModelConstants(model, "R", 3, 8, 1, 27, "e7(7)", "f4(4)", "so(4,5)", False, 52, 36)
    if fam == "Herm3O":
        if info["field"] == "R":
            return ModelConstants(model, "R", 3, 8, 1, 27, "e7(-25)", "f4", "so(9)", True, 52, 36)
        return ModelConstants(model, "C", 3, 8, 2, 27, "e7(C)", "f4(C)", "so(9,C)", False, 104, 72)
    r = info["r"]
    F = info.get("field", "R")
    if fam == "Sym":
        if F == "R":
            return ModelConstants(model, "R", r, 1, 1, r * (r + 1) // 2, f"sp({r},R)", f"so({r})",
                                  f"so({r - 1})", True, _so(r), _so(r - 1))
        return ModelConstants(model, "C", r, 1, 2, r * (r + 1) // 2, f"sp({r},C)", f"so({r},C)",
                              f"so({r - 1},C)", False, 2 * _so(r), 2 * _so(r - 1))
    if fam == "Herm":
        A = info["algebra"]
        if A == "C":
            return ModelConstants(model, "R", r, 2, 1, r * r, f"su({r},{r})", f"su({r})",
                                  f"s(u(1)+u({r - 1}))", True, _sl(r), (r - 1) ** 2)
        return ModelConstants(model, "R", r, 4, 1, r * (2 * r - 1), f"so*({4 * r})", f"sp({r})",
                              f"sp(1)+sp({r - 1})", True, _sp(r), 3 + _sp(r - 1))
    if fam == "M":
        if F == "R":
            return ModelConstants(model, "R", r, 2, 1, r * r, f"sl({2 * r},R)", f"sl({r},R)",
                                  f"s(gl(1,R)+gl({r - 1},R))", False, _sl(r), (r - 1) ** 2)
        return ModelConstants(model, "C", r, 2, 2, r * r, f"sl({2 * r},C)", f"sl({r},C)",
                              f"s(gl(1,C)+gl({r - 1},C))", False, 2 * _sl(r), 2 * (r - 1) ** 2)
    if fam == "Skew":
        if F == "R":
            return ModelConstants(model, "R", r, 4, 1, r * (2 * r - 1), f"so({2 * r},{2 * r})",
                                  f"sp({r},R)", f"sp(1,R)+sp({r - 1},R)", False, _sp(r), 3 + _sp(r - 1))
        return ModelConstants(model, "C", r, 4, 2, r * (2 * r - 1), f"so({4 * r},C)", f"sp({r},C)",
                              f"sp(1,C)+sp({r - 1},C)", False, 2 * _sp(r), 2 * (3 + _sp(r - 1)))
    raise jd.UnknownModel(model)


# ---------------------------------------------------------------------------
# parameters


def parse_imaginary(v) -> Fraction:
    """'3/2*i', '3/2i', '-i', 'i', '0', or a number (meaning the imaginary part)."""
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, dict) and set(v) == {"im"}:
        return Fraction(str(v["im"]))
    if not isinstance(v, str):
        raise ParamError(f"expected an imaginary rational, got {v!r}")
    s = v.replace(" ", "")
    if s in ("0", "0i", "0*i"):
        return Fraction(0)
    if not s.endswith("i"):
        raise ParamError(f"continuous parameter must be imaginary, got {v!r}")
    body = s[:-1].rstrip("*")
    if body in ("", "+"):
        return Fraction(1)
    if body == "-":
        return Fraction(-1)
    try:
        return Fraction(body)
    except ValueError:
        raise ParamError(f"cannot parse imaginary rational {v!r}") from None


def format_imaginary(t: Fraction) -> str:
    if t == 0:
        return "0"
    if t == 1:
        return "i"
    if t == -1:
        return "-i"
    return f"{t}*i"


def _int(v, name) -> int:
    if isinstance(v, bool):
        raise ParamError(f"{name} must be an integer")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError:
            pass
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    raise ParamError(f"{name} must be an integer, got {v!r}")


@dataclass(frozen=True)
class GParam:
    """variant in EuclideanHW(k) | NonEuclPrincipal(xi, mu) | AqModule(k) | ComplexPrincipal(m, mu)."""

    variant: str
    k: Optional[int] = None
    xi: Optional[int] = None
    m: Optional[int] = None
    mu: Optional[Fraction] = None  # imaginary part of mu

    VARIANTS = ("EuclideanHW", "NonEuclPrincipal", "AqModule", "ComplexPrincipal")

    def __post_init__(self):
        v = self.variant
        if v not in self.VARIANTS:
            raise ParamError(f"unknown G-parameter variant {v!r}")
        if v in ("EuclideanHW", "AqModule"):
            if not isinstance(self.k, int):
                raise ParamError(f"{v} needs an integer k")
        if v == "EuclideanHW" and (self.k < 0 or self.k % 2):
            raise ParamError("EuclideanHW needs k in 2Z_{>=0}")
        if v == "NonEuclPrincipal":
            if self.xi not in (0, 1):
                raise ParamError("xi must be 0 or 1")
            if self.mu is None:
                raise ParamError("NonEuclPrincipal needs mu")
        if v == "ComplexPrincipal":
            if not isinstance(self.m, int) or self.mu is None:
                raise ParamError("ComplexPrincipal needs integer m and mu")

    @classmethod
    def from_json(cls, obj) -> "GParam":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as e:
                raise ParamError(f"malformed JSON: {e}") from None
        if not isinstance(obj, dict) or "variant" not in obj:
            raise ParamError("parameter must be an object with a 'variant' field")
        v = obj["variant"]
        if v in ("EuclideanHW", "AqModule"):
            if "k" not in obj:
                raise ParamError(f"{v}: missing field 'k'")
            return cls(v, k=_int(obj["k"], "k"))
        if v == "NonEuclPrincipal":
            for f in ("xi", "mu"):
                if f not in obj:
                    raise ParamError(f"{v}: missing field '{f}'")
            return cls(v, xi=_int(obj["xi"], "xi"), mu=parse_imaginary(obj["mu"]))
        if v == "ComplexPrincipal":
            for f in ("m", "mu"):
                if f not in obj:
                    raise ParamError(f"{v}: missing field '{f}'")
            return cls(v, m=_int(obj["m"], "m"), mu=parse_imaginary(obj["mu"]))
        raise ParamError(f"unknown G-parameter variant {v!r}")

    def to_json(self) -> dict:
        out = {"variant": self.variant}
        if self.k is not None:
            out["k"] = self.k
        if self.xi is not None:
            out["xi"] = self.xi
        if self.m is not None:
            out["m"] = self.m
        if self.mu is not None:
            out["mu"] = format_imaginary(self.mu)
        return out

    def canonical(self) -> "GParam":
        """Representative with mu in iR_+ (and m >= 0 when mu = 0)."""
        if self.variant == "NonEuclPrincipal":
            return GParam(self.variant, xi=self.xi, mu=abs(self.mu))
        if self.variant == "ComplexPrincipal":
            m, mu = self.m, self.mu
            if mu < 0 or (mu == 0 and m < 0):
                m, mu = -m, -mu
            return GParam(self.variant, m=m, mu=mu)
        return self


@dataclass(frozen=True)
class GPrimeParam:
    """variant in HolDiscrete(k) | Discrete(k) | Principal(m, nu) | Complementary(m, nu)."""

    variant: str
    k: Optional[Fraction] = None
    m: Optional[int] = None
    nu: Optional[Fraction] = None  # imaginary part for Principal, real value for Complementary
    delta: int = 1

    def __post_init__(self):
        v = self.variant
        if v == "HolDiscrete":
            if self.k is None or Fraction(self.k) <= 1:
                raise ParamError("HolDiscrete needs k > 1")
        elif v == "Discrete":
            if not isinstance(self.k, int) or self.k < 2 or self.k % 2:
                raise ParamError("Discrete needs an even integer k >= 2")
        elif v == "Principal":
            if not isinstance(self.m, int) or self.nu is None:
                raise ParamError("Principal needs integer m and imaginary nu")
            if self.delta == 1 and self.m not in (0, 1):
                raise ParamError("for F = R, m lies in Z/2Z")
        elif v == "Complementary":
            if self.nu is None or not (0 < abs(Fraction(self.nu)) < Fraction(self.delta, 2)):
                raise ParamError("Complementary needs 0 < |nu| < delta/2")
            if self.delta == 2 and self.m != 0:
                raise ParamError("complex complementary series needs m = 0")
        else:
            raise ParamError(f"unknown G'-parameter variant {v!r}")

    def canonical(self) -> "GPrimeParam":
        """tau_{m,nu} ~ tau_{-m,-nu}: m >= 0 first (mod 2 for F = R), then nu >= 0."""
        if self.variant not in ("Principal", "Complementary"):
            return self
        m, nu = self.m, self.nu
        if self.delta == 1:
            m = m % 2
            if nu < 0:
                nu = -nu  # -m = m in Z/2Z
        else:
            if m < 0 or (m == 0 and nu < 0):
                m, nu = -m, -nu
        return GPrimeParam(self.variant, m=m, nu=nu, delta=self.delta)

    def to_json(self) -> dict:
        out = {"variant": self.variant}
        if self.k is not None:
            out["k"] = str(self.k)
        if self.m is not None:
            out["m"] = self.m
        if self.nu is not None:
            out["nu"] = format_imaginary(self.nu) if self.variant == "Principal" else str(self.nu)
        return out


@dataclass(frozen=True)
class ThetaLift:
    model: str
    input: GParam
    output: GPrimeParam
    cover: str
    twist: Optional[str] = None

    def to_json(self) -> dict:
        out = {"model": self.model, "input": self.input.to_json(), "output": self.output.to_json(),
               "cover": self.cover}
        if self.twist:
            out["twist"] = self.twist
        return out


# ---------------------------------------------------------------------------


def _mc(mc: Union[ModelConstants, str]) -> ModelConstants:
    return model_constants(mc) if isinstance(mc, str) else mc


def validate_gparam(mc: Union[ModelConstants, str], p: GParam) -> GParam:
    """Return the parameter if it lies in the Plancherel support, else raise ParamError."""
    mc = _mc(mc)
    if not mc.has_minrep:
        raise NoMinimalRep(f"{mc.model}: no minimal representation (p, q >= 2 and p + q odd)")
    kind = mc.kind
    want = {"euclidean": ("EuclideanHW",), "noneuclidean": ("NonEuclPrincipal", "AqModule"),
            "complex": ("ComplexPrincipal",)}[kind]
    if p.variant not in want:
        raise ParamError(f"{p.variant} is not a parameter for a {kind} model")
    if p.variant == "EuclideanHW" and (p.k < 0 or p.k % 2):
        raise ParamError("Cartan-Helgason: k must lie in 2Z_{>=0}")
    if p.variant == "AqModule":
        s = p.k + mc.rd_half
        if s.denominator != 1 or s <= 0 or s % 2:
            raise ParamError(f"discrete series: k + rd/2 = {s} is not in 2Z_{{>0}}")
    return p


def casimir_eigenvalue(mc: Union[ModelConstants, str], p: GParam):
    """d pi(C), and for ComplexPrincipal the pair (d pi(C), d pi(D))."""
    mc = _mc(mc)
    validate_gparam(mc, p)
    rd = Fraction(mc.r * mc.d)
    if p.variant in ("EuclideanHW", "AqModule"):
        k = Fraction(p.k)
        return ExactScalar(-Fraction(1, 32) * k * (k + rd - 2))
    mu2 = -p.mu * p.mu  # mu = i t, mu^2 = -t^2
    if p.variant == "NonEuclPrincipal":
        return ExactScalar(-Fraction(1, 32) * (mu2 - (rd / 2 - 1) ** 2))
    rho = rd - 2
    k = Fraction(p.m)
    c = ExactScalar(-Fraction(1, 32) * (mu2 - rho ** 2) - Fraction(1, 8) * k * k)
    # -1/8 i mu k with mu = i t  ->  t k / 8
    dval = ExactScalar(p.mu * k / 8)
    return c, dval


def _twisted(mc: ModelConstants) -> bool:
    return mc.p is not None and not mc.euclidean and (mc.p - mc.q) % 4 == 2


def theta_lift(mc: Union[ModelConstants, str], p: GParam) -> ThetaLift:
    mc = _mc(mc)
    validate_gparam(mc, p)
    p = p.canonical()
    twist = None
    if p.variant == "EuclideanHW":
        out = GPrimeParam("HolDiscrete", k=Fraction(p.k) + mc.rd_half)
    elif p.variant == "AqModule":
        out = GPrimeParam("Discrete", k=int(p.k + mc.rd_half))
    elif p.variant == "NonEuclPrincipal":
        m = p.xi
        if _twisted(mc):
            m = (m + 1) % 2
            twist = "p - q = 2 mod 4: xi shifted by 1"
        out = GPrimeParam("Principal", m=m, nu=p.mu / 2, delta=1)
    else:
        out = GPrimeParam("Principal", m=p.m, nu=p.mu / 2, delta=2)
    return ThetaLift(mc.model, p, out.canonical(), mc.cover_annotation, twist)


@dataclass
class PlancherelSupport:
    model: str
    discrete: list = field(default_factory=list)     # GParams with k <= max_k
    continuous: list = field(default_factory=list)   # symbolic family descriptions

    def to_json(self) -> dict:
        return {"model": self.model, "discrete": [p.to_json() for p in self.discrete],
                "continuous": self.continuous}


def discrete_parameters(mc: Union[ModelConstants, str]) -> Iterator[GParam]:
    """Lazily enumerate the discrete Plancherel parameters in increasing k."""
    mc = _mc(mc)
    if not mc.has_minrep:
        raise NoMinimalRep(f"{mc.model}: no minimal representation")
    if mc.kind == "euclidean":
        k = 0
        while True:
            yield GParam("EuclideanHW", k=k)
            k += 2
    elif mc.kind == "noneuclidean":
        h = mc.rd_half
        if h.denominator != 1:
            return
        k = 2 - int(h)
        while True:
            yield GParam("AqModule", k=k)
            k += 2


def plancherel_support(mc: Union[ModelConstants, str], max_k: int = 10) -> PlancherelSupport:
    mc = _mc(mc)
    if not mc.has_minrep:
        raise NoMinimalRep(f"{mc.model}: no minimal representation")
    out = PlancherelSupport(mc.model)
    for p in discrete_parameters(mc):
        if p.k > max_k:
            break
        out.discrete.append(validate_gparam(mc, p))
    if mc.kind == "noneuclidean":
        out.continuous = [{"variant": "NonEuclPrincipal", "xi": xi, "mu": "iR_+"} for xi in (0, 1)]
    elif mc.kind == "complex":
        out.continuous = [{"variant": "ComplexPrincipal", "m": "Z", "mu": "iR_+"}]
    return out


# ---------------------------------------------------------------------------
# symbolic consistency


def abstract_theta_consistency(mc: Union[ModelConstants, str]) -> dict:
    """Casimir scalars from the sl2 side and the G side agree under mu = 2 nu."""
    mc = _mc(mc)
    rd = sp.Integer(mc.r * mc.d)
    nu, m, k = sp.symbols("nu m k")
    mu = 2 * nu
    diffs = {}
    if mc.field == "R":
        sl2_side = -sp.Rational(1, 32) * (4 * nu ** 2 - (rd / 2 - 1) ** 2)
        g_side = -sp.Rational(1, 32) * (mu + rd / 2 - 1) * (mu - rd / 2 + 1)
        diffs["C"] = sp.expand(sl2_side - g_side)
        # discrete: Euclidean/Aq Casimir at nu = (1 - (k + rd/2)) / 2
        ds = sl2_side.subs(nu, (1 - (k + rd / 2)) / 2)
        diffs["C discrete"] = sp.expand(ds + sp.Rational(1, 32) * k * (k + rd - 2))
    else:
        sl2_C = -sp.Rational(1, 8) * (nu ** 2 + m ** 2 - (rd / 2 - 1) ** 2)
        sl2_D = -sp.Rational(1, 4) * sp.I * m * nu
        rho = rd - 2
        g_C = -sp.Rational(1, 32) * (mu ** 2 - rho ** 2) - sp.Rational(1, 8) * m ** 2
        g_D = -sp.Rational(1, 8) * sp.I * mu * m
        diffs["C"] = sp.expand(sl2_C - g_C)
        diffs["D"] = sp.expand(sl2_D - g_D)
    return {"ok": all(v == 0 for v in diffs.values()), "differences": {k_: str(v) for k_, v in diffs.items()}}


def injectivity_check(mc: Union[ModelConstants, str], max_k: int = 40) -> dict:
    """Distinct discrete parameters (k <= max_k) lift to distinct canonical G'-parameters;
    continuous families are separated symbolically."""
    mc = _mc(mc)
    seen = {}
    clash = []
    count = 0
    for p in discrete_parameters(mc):
        if p.k > max_k:
            break
        out = theta_lift(mc, p).output
        if out in seen:
            clash.append([seen[out].to_json(), p.to_json()])
        seen[out] = p
        count += 1
    sample = []
    if mc.kind == "noneuclidean":
        sample = [GParam("NonEuclPrincipal", xi=x, mu=Fraction(t, 3)) for x in (0, 1) for t in range(0, 7)]
    elif mc.kind == "complex":
        sample = [GParam("ComplexPrincipal", m=m, mu=Fraction(t, 3)) for m in range(-3, 4) for t in range(0, 5)]
    cont = {}
    for p in sample:
        c = p.canonical()
        out = theta_lift(mc, c).output
        if out in cont and cont[out] != c:
            clash.append([cont[out].to_json(), c.to_json()])
        cont[out] = c
        if out in seen:
            clash.append(["discrete/continuous overlap", c.to_json()])
    return {"ok": not clash, "discrete_tested": count, "continuous_sampled": len(sample), "clashes": clash}
