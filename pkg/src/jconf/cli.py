"""Command-line interface: JSON in, JSON out, verification reports."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import SCHEMA_VERSION, __version__
from . import conformal as co
from . import jordan as jd
from . import minrep as mr
from . import theta as th
from .scalars import ExactScalar

log = logging.getLogger("jconf")


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        return obj
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False)


def _model(name: str) -> jd.JordanAlgebra:
    try:
        return jd.build_model(name)
    except (jd.UnknownModel, ValueError) as e:
        raise UsageError(str(e)) from None


# ---------------------------------------------------------------------------
# verification suite


@dataclass
class Check:
    check_id: str
    paper_ref: str
    run: Callable  # (V, ctx) -> (status, witness)
    heavy: bool = False  # minrep-level work, skipped in quick mode for large models


def _rep(report) -> tuple:
    return ("pass" if report.ok else "fail"), (report.details if not report.ok else _summary(report))


def _summary(report) -> dict:
    d = {k: v for k, v in report.details.items() if isinstance(v, (int, str, bool))}
    return d or None


def _bool(ok: bool, witness=None) -> tuple:
    return ("pass" if ok else "fail"), witness


class Skip(Exception):
    pass


def _c_dims(V, ctx):
    mc = th.model_constants(V.name)
    ok = (V.n, V.r, V.d) == (mc.n, mc.r, mc.d) and jd.dims_ok(V)
    return _bool(ok, {"n": V.n, "r": V.r, "d": V.d, "table": [mc.n, mc.r, mc.d]})


def _c_comm(V, ctx):
    return _bool(jd.commutativity_check(V))


def _c_unit(V, ctx):
    return _bool(jd.unit_check(V))


def _c_jordan(V, ctx):
    r = jd.jordan_identity_check(V, samples=20, seed=ctx["seed"])
    return _bool(r.ok, r.failures[:5] or r.details)


def _c_theta(V, ctx):
    r = jd.theta_check(V)
    return _bool(r.ok, r.failures or None)


def _c_frame(V, ctx):
    bad = jd.check_frame(V, jd.standard_frame(V))
    return _bool(not bad, bad or None)


def _c_peirce(V, ctx):
    bad = jd.peirce_mult_check(V, jd.peirce_decompose(V))
    return _bool(not bad, bad or None)


def _c_lx2(V, ctx):
    if V.r < 3:
        raise Skip("needs rank >= 3")
    P = jd.peirce_decompose(V)
    fails = []
    for x in jd.la.rows_of(P.blocks[(1, 2)]):
        xs = [ExactScalar(jd.la.to_fraction(c)) for c in x]
        r = jd.lx_squared_check(V, P, 0, 1, 2, xs)
        if not r.ok:
            fails.append(r.failures)
    return _bool(not fails, fails[:3] or None)


def _c_json(V, ctx):
    obj = jd.to_json(V)
    back = jd.from_json(json.loads(json.dumps(obj)))
    return _bool(jd.to_json(back) == obj)


def _c_struct(V, ctx):
    return _rep(co.structure_algebra(V))


def _c_aut(V, ctx):
    a = co.aut_algebra(V)
    b = co.aut_by_closure(V)
    mc = th.model_constants(V.name)
    ok = a.dim == b.dim == mc.dim_g
    return _bool(ok, {"dim_aut": a.dim, "dim_closure": b.dim, "table": mc.dim_g})


def _c_jacobi(V, ctx):
    samples = 5000 if ctx["level"] == "full" else 500
    return _rep(co.jacobi(V, samples=samples, seed=ctx["seed"]))


def _c_grading(V, ctx):
    return _rep(co.grading_check(V))


def _c_sl2(V, ctx):
    return _rep(co.sl2_triple(V))


def _c_cartan(V, ctx):
    _, _, r = co.cartan_decomposition(V, seed=ctx["seed"])
    return _rep(r)


def _c_dual(V, ctx):
    return _rep(co.dual_pair_check(V))


def _c_autdec(V, ctx):
    return _rep(co.aut_decomposition(V).report)


def _c_sym(V, ctx):
    s = co.symmetric_pair(V)
    mc = th.model_constants(V.name)
    ok = s.report.ok and s.sigma_plus.dim == mc.dim_gsigma
    return _bool(ok, {"dim_g_sigma": s.sigma_plus.dim, "table": mc.dim_gsigma, **(_summary(s.report) or {}),
                      **({} if s.report.ok else {"checks": s.report.checks})})


def _c_d0(V, ctx):
    return _rep(co.d0_identities(V))


def _c_roots(kind):
    def run(V, ctx):
        try:
            rd = co.root_data(V, kind)
        except ValueError as e:
            raise Skip(str(e))
        st, w = _rep(rd.report)
        return st, {"mult_1": rd.mult_1, "mult_2": rd.mult_2, "rho": str(rd.rho_coeff),
                    **({} if rd.report.ok else {"checks": rd.report.checks})}
    return run


def _c_t0(V, ctx):
    try:
        return _rep(co.t0_rotation_check(V))
    except ValueError as e:
        raise Skip(str(e))


def _c_bessel_inv(V, ctx):
    return _rep(mr.bessel_basis_invariance(V, seed=ctx["seed"], degree=2, points=2, max_monomials=15))


def _c_linear(V, ctx):
    return _rep(mr.linearity_check(V, seed=ctx["seed"]))


def _c_parabolic(V, ctx):
    return _rep(mr.parabolic_relation_check(V, samples=20, seed=ctx["seed"]))


def _c_relation(name):
    def run(V, ctx):
        X, Y = mr.standard_pairs(V)[name]
        r = mr.rep_relation_check(V, X, Y, degree=2, points=5, seed=ctx["seed"])
        return _bool(r.ok, {"ambient_zero": r.details["ambient_zero"], "witness": r.details["witness"]})
    return run


def _c_keylemma(V, ctx):
    deg = 3 if ctx["level"] == "full" else 2
    return _rep(mr.key_lemma_at_c(V, degree=deg))


def _c_sl2_rel(V, ctx):
    return _rep(mr.sl2_relations_check(r=V.r, d=V.d, delta=V.delta))


def _c_sl2_match(V, ctx):
    return _rep(mr.keylemma_vs_sl2_match(V.r, V.d, V.delta))


def _c_theta_cons(V, ctx):
    if not V.has_minrep:
        raise Skip("no minimal representation")
    r = th.abstract_theta_consistency(V.name)
    return _bool(r["ok"], r["differences"])


def _c_theta_inj(V, ctx):
    if not V.has_minrep:
        raise Skip("no minimal representation")
    r = th.injectivity_check(V.name, max_k=40)
    return _bool(r["ok"], {k: v for k, v in r.items() if k != "ok"})


def _c_casimir_poly(V, ctx):
    mc = th.model_constants(V.name)
    if mc.kind == "complex" or not mc.has_minrep:
        raise Skip("no discrete series")
    ps = list(th.plancherel_support(mc, max_k=20).discrete)
    bad = []
    for p in ps:
        k = Fraction(p.k)
        want = -Fraction(1, 32) * k * (k + mc.r * mc.d - 2)
        if th.casimir_eigenvalue(mc, p) != ExactScalar(want):
            bad.append(p.to_json())
    return _bool(not bad, bad or {"tested": len(ps)})


_CHECKS = [
    Check("jordan.catalog_dims", 'classification tables: "Herm(3,O) e_{7(-25)} f_4 so(9)" and rows (n, r, d)', _c_dims),
    Check("jordan.commutative", "Jordan algebra: commutative product", _c_comm),
    Check("jordan.unit", "Jordan algebra with unit e", _c_unit),
    Check("jordan.identity", 'Jordan identity "x^2(xy) = x(x^2y)"', _c_jordan),
    Check("jordan.cartan_involution", '"choose a Cartan involution" with (x|y) = tau(x, theta y) positive definite', _c_theta),
    Check("jordan.frame", '"Jordan frame c_1, ..., c_r", split: V(c_i,1) = R c_i', _c_frame),
    Check("jordan.peirce_mult", "Peirce rules V_ij V_jk in V_ik", _c_peirce),
    Check("jordan.lx_squared", '"L(x)^2y=(1/8)tau_F(x,x)y"', _c_lx2),
    Check("jordan.json_roundtrip", "export/import round trip", _c_json),
    Check("co.structure_algebra", '"str(V) = L(V) + Der(V)"', _c_struct),
    Check("co.aut_dim", 'dual pair table: g-column ("f_4" has dimension 52)', _c_aut),
    Check("co.jacobi", "co(V) is a Lie algebra (Kantor-Koecher-Tits construction)", _c_jacobi),
    Check("co.grading", "co(V) = V + str(V) + V three-grading", _c_grading),
    Check("co.sl2_triple", '"(E, H, F) sl_2-triple"', _c_sl2),
    Check("co.cartan_decomposition", '"theta(u,T,v) = (-vartheta v, -T^#, -vartheta u)" Cartan involution of co(V)', _c_cartan),
    Check("co.dual_pair", 'Lemma "(g,g\') is a dual pair"', _c_dual),
    Check("co.aut_peirce", '"g = g_0 + sum g_ij" Peirce decomposition of aut(V)', _c_autdec),
    Check("co.symmetric_pair", '"g^sigma = g_c", g^sigma-column of the tables', _c_sym),
    Check("co.d0_identities", "commutators of D_0 = [L(c_1), L(x)] on Peirce blocks", _c_d0),
    Check("roots.split", 'Prop.: multiplicities "(r-2)d, d-1", "rho = delta(rd/2-1) alpha"', _c_roots("split")),
    Check("roots.compact", 'Prop.: "of the form {+-beta}, {+-2beta} or {+-beta,+-2beta}"', _c_roots("compact")),
    Check("roots.t0_rotation", '"beta(iT_0)=1" rotation by T_0', _c_t0),
    Check("minrep.bessel_basis_free", "Bessel operator is independent of the basis", _c_bessel_inv, heavy=True),
    Check("minrep.linear", "dPi is linear", _c_linear, heavy=True),
    Check("minrep.parabolic", "dPi on the maximal parabolic (0,T,v): ambient identity", _c_parabolic, heavy=True),
    Check("minrep.relation.E,F", "dPi is a representation on the minimal orbit: [E,F]", _c_relation("E,F"), heavy=True),
    Check("minrep.relation.E,u", "dPi is a representation on the minimal orbit: [E,(c1,0,0)]", _c_relation("E,(c1,0,0)"), heavy=True),
    Check("minrep.relation.u,u", "dPi is a representation on the minimal orbit: [(w,0,0),(c1,0,0)]", _c_relation("(w,0,0),(c1,0,0)"), heavy=True),
    Check("minrep.relation.u,v", "dPi is a representation on the minimal orbit: [(w,0,0),(0,0,c1)]", _c_relation("(w,0,0),(0,0,c1)"), heavy=True),
    Check("minrep.key_lemma", "Key Lemma: Bessel, Casimir and radial identities at x = c", _c_keylemma, heavy=True),
    Check("sl2.relations", "sl(2,F) model d tau_{m,nu}: commutation relations", _c_sl2_rel),
    Check("sl2.keylemma_match", "Key Lemma radial operator = i d tau(E)", _c_sl2_match),
    Check("theta.consistency", '"theta(pi) = tau" Casimir compatibility', _c_theta_cons),
    Check("theta.injectivity", "theta correspondence is injective on the Plancherel support", _c_theta_inj),
    Check("theta.casimir_discrete", 'Casimir "-1/32 k(k+rd-2)" on discrete parameters', _c_casimir_poly),
]


def check_ids() -> list:
    return [c.check_id for c in _CHECKS]


def quick_models() -> list:
    out = []
    for m in jd.CATALOG:
        mc = th.model_constants(m)
        if 3 * mc.n * mc.delta + mc.dim_g <= 40:
            out.append(m)
    return out


def verify_model(model: str, level: str = "quick", seed: int = 0) -> dict:
    V = _model(model)
    mc = th.model_constants(model)
    co_dim = 3 * mc.n * mc.delta + mc.dim_g
    ctx = {"seed": seed, "level": level}
    records = []
    for c in _CHECKS:
        t0 = time.perf_counter()
        if c.heavy and level == "quick" and co_dim > 40:
            status, witness = "skipped", "quick level: real dim co(V) > 40"
        else:
            try:
                status, witness = c.run(V, ctx)
            except Skip as e:
                status, witness = "skipped", str(e)
        ms = int((time.perf_counter() - t0) * 1000)
        log.info("%s %s %s (%d ms)", model, c.check_id, status, ms)
        rec = {"check_id": c.check_id, "paper_ref": c.paper_ref, "status": status, "millis": ms}
        if witness is not None:
            rec["witness"] = _jsonable(witness)
        records.append(rec)
    overall = "fail" if any(r["status"] == "fail" for r in records) else "pass"
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "model": model,
            "level": level, "seed": seed, "overall": overall, "checks": records}


def _verify_job(args):
    return verify_model(*args)


def verify_all(level: str, seed: int, workers: Optional[int] = None) -> dict:
    models = quick_models() if level == "quick" else list(jd.CATALOG)
    jobs = [(m, level, seed) for m in models]
    if workers == 1:
        reports = [_verify_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_verify_job, jobs))
    overall = "fail" if any(r["overall"] == "fail" for r in reports) else "pass"
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "level": level,
            "seed": seed, "overall": overall, "models": reports}


def strip_millis(report):
    """Copy of a report without timing fields, for determinism comparisons."""
    if isinstance(report, dict):
        return {k: strip_millis(v) for k, v in report.items() if k != "millis"}
    if isinstance(report, list):
        return [strip_millis(v) for v in report]
    return report


# ---------------------------------------------------------------------------
# other commands


def roots_report(model: str) -> dict:
    V = _model(model)
    mc = th.model_constants(model)
    out = {"schema_version": SCHEMA_VERSION, "model": model, "r": V.r, "d": V.d, "delta": V.delta,
           "mult_alpha": None, "mult_2alpha": None, "rho_a_coeff": None, "rho_t_coeff": None}
    ok = True
    try:
        rs = co.root_data(V, "split")
        out.update(mult_alpha=rs.mult_1, mult_2alpha=rs.mult_2, rho_a_coeff=str(rs.rho_coeff))
        ok &= rs.report.ok
    except ValueError as e:
        out["split_note"] = str(e)
    try:
        rc = co.root_data(V, "compact")
        out["rho_t_coeff"] = str(rc.rho_coeff)
        if out["mult_alpha"] is None:
            out.update(mult_alpha=rc.mult_1, mult_2alpha=rc.mult_2)
        ok &= rc.report.ok
    except ValueError as e:
        out["compact_note"] = str(e)
    dp = co.dual_pair_check(V)
    sym = co.symmetric_pair(V)
    out["dualpair_ok"] = bool(dp.ok)
    out["roots_ok"] = bool(ok)
    out["dims"] = {"aut": dp.details["dim_aut"], "gprime": dp.details["dim_gprime"],
                   "g_sigma": sym.sigma_plus.dim, "g_minus_sigma": sym.sigma_minus.dim,
                   "co": co.conformal_algebra(V).dim, "table_g": mc.dim_g, "table_g_sigma": mc.dim_gsigma}
    return out


def peirce_report(model: str) -> dict:
    V = _model(model)
    P = jd.peirce_decompose(V)
    blocks = {f"V{i + 1}{j + 1}": b.nrows() for (i, j), b in sorted(P.blocks.items())}
    signs = {f"V{i + 1}{j + 1}": [p.nrows(), m.nrows()] for (i, j), (p, m) in sorted(P.signs.items())}
    bad = jd.peirce_mult_check(V, P)
    return {"schema_version": SCHEMA_VERSION, "model": model, "r": V.r, "d": V.d, "delta": V.delta,
            "blocks": blocks, "theta_signs": signs, "peirce_rules_ok": not bad, "violations": bad}


def keylemma_report(model: str, degree: int, points: int, seed: int) -> dict:
    V = _model(model)
    t0 = time.perf_counter()
    r = mr.key_lemma_at_c(V, degree=degree)
    ms = int((time.perf_counter() - t0) * 1000)
    ids = [{"identity": k, "status": "pass" if v else "fail", "millis": ms} for k, v in r.checks.items()]
    t1 = time.perf_counter()
    inv = mr.bessel_basis_invariance(V, seed=seed, degree=min(degree, 2), points=points)
    ids.append({"identity": "Bessel operator basis independence", "status": "pass" if inv.ok else "fail",
                "millis": int((time.perf_counter() - t1) * 1000)})
    ok = r.ok and inv.ok
    return {"schema_version": SCHEMA_VERSION, "model": model, "degree": degree, "points": points,
            "seed": seed, "overall": "pass" if ok else "fail", "identities": ids,
            "details": _jsonable(r.details)}


def theta_report(model: str, param: str) -> dict:
    mc = _constants(model)
    p = th.GParam.from_json(param)
    lift = th.theta_lift(mc, p)
    out = {"schema_version": SCHEMA_VERSION, **lift.to_json()}
    c = th.casimir_eigenvalue(mc, p)
    out["casimir"] = [str(x) for x in c] if isinstance(c, tuple) else str(c)
    return out


def _constants(model: str) -> th.ModelConstants:
    try:
        return th.model_constants(model)
    except (jd.UnknownModel, ValueError) as e:
        raise UsageError(str(e)) from None


def plancherel_report(model: str, max_k: int) -> dict:
    mc = _constants(model)
    sup = th.plancherel_support(mc, max_k=max_k)
    return {"schema_version": SCHEMA_VERSION, "constants": mc.to_json(), **sup.to_json(),
            "lifts": [th.theta_lift(mc, p).output.to_json() for p in sup.discrete]}


# ---------------------------------------------------------------------------
# argument parsing


def _seed_default() -> int:
    v = os.environ.get("JCONF_SEED")
    if v is None:
        return 0
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"JCONF_SEED must be an integer, got {v!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jconf", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def model_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--model", required=True)
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    model_cmd("build", "build a model and print its JSON")
    p = sub.add_parser("verify", help="run the verification suite")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--model")
    g.add_argument("--all", action="store_true")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out")
    model_cmd("peirce", "Peirce block dimensions")
    model_cmd("roots", "restricted root data")
    model_cmd("dualpair", "dual pair and symmetric pair data")
    p = model_cmd("keylemma", "Key Lemma identities at x = c")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--points", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p = model_cmd("theta", "explicit theta lift of a G-parameter")
    p.add_argument("--param", required=True, help="JSON G-parameter")
    p = model_cmd("plancherel", "Plancherel support of the restriction")
    p.add_argument("--max-k", type=int, default=10)
    p = model_cmd("export", "export algebra, Lie algebra or report JSON")
    p.add_argument("--what", choices=("algebra", "lie", "report"), default="algebra")
    p = sub.add_parser("import", help="read a Jordan algebra JSON file and re-emit it")
    p.add_argument("file")
    p.add_argument("--out")
    return ap


def _emit(obj, out: Optional[str]):
    text = dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(args) -> int:
    seed = args.seed if getattr(args, "seed", None) is not None else _seed_default()
    cmd = args.cmd
    if cmd == "build":
        _emit({"schema_version": SCHEMA_VERSION, **jd.to_json(_model(args.model))}, args.out)
        return 0
    if cmd == "import":
        try:
            with open(args.file) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read {args.file}: {e}") from None
        if not isinstance(obj, dict):
            raise UsageError("algebra JSON must be an object")
        obj.pop("schema_version", None)
        try:
            V = jd.from_json(obj)
        except (ValueError, KeyError, TypeError) as e:
            raise UsageError(f"bad algebra JSON: {e}") from None
        r = jd.jordan_identity_check(V, samples=10, seed=seed)
        _emit({"schema_version": SCHEMA_VERSION, **jd.to_json(V)}, args.out)
        return 0 if r.ok else 1
    if cmd == "verify":
        rep = verify_all(args.level, seed, args.workers) if args.all else verify_model(args.model, args.level, seed)
        _emit(rep, args.out)
        return 0 if rep["overall"] == "pass" else 1
    if cmd == "peirce":
        rep = peirce_report(args.model)
        _emit(rep, args.out)
        return 0 if rep["peirce_rules_ok"] else 1
    if cmd in ("roots", "dualpair"):
        rep = roots_report(args.model)
        _emit(rep, args.out)
        return 0 if rep["dualpair_ok"] and rep["roots_ok"] else 1
    if cmd == "keylemma":
        rep = keylemma_report(args.model, args.degree, args.points, seed)
        _emit(rep, args.out)
        return 0 if rep["overall"] == "pass" else 1
    if cmd == "theta":
        _emit(theta_report(args.model, args.param), args.out)
        return 0
    if cmd == "plancherel":
        _emit(plancherel_report(args.model, args.max_k), args.out)
        return 0
    if cmd == "export":
        V = _model(args.model)
        if args.what == "algebra":
            _emit({"schema_version": SCHEMA_VERSION, **jd.to_json(V)}, args.out)
            return 0
        if args.what == "lie":
            C = co.conformal_algebra(V)
            _emit({"schema_version": SCHEMA_VERSION, "model": args.model, "co": C.lie.to_json()}, args.out)
            return 0
        rep = verify_model(args.model, "quick", seed)
        _emit(rep, args.out)
        return 0 if rep["overall"] == "pass" else 1
    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        return run(args)
    except (UsageError, th.ParamError, th.NoMinimalRep) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
