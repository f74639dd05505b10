"""Command-line front end: ``netei <subcommand> ...``.

Every run writes one JSON manifest holding the subcommand, every flag,
the seeds actually used, SHA-256 digests of inputs and outputs, the
package version and the wall-clock duration.  ``netei replay MANIFEST``
re-runs a manifest into a scratch directory and checks that every output
is reproduced byte for byte.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, estimators, theory
from .generate import generate_graph, stage_seeds
from .graph import graph_stats, load_edge_list, write_edge_list
from .model import JointDegreeModel
from .samplers import SamplerConfig, walk

logger = logging.getLogger("netei")

DEFAULT_LEVEL = 0.97


class CLIError(RuntimeError):
    pass


# small helpers -------------------------------------------------------------


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _fresh_seed():
    return int(np.random.SeedSequence().generate_state(1, np.uint64)[0])


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def _clean(obj):
    """Replace non-finite floats by ``None`` so the JSON stays standard."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _dump_json(obj, path):
    text = json.dumps(_clean(obj), indent=2, sort_keys=True, default=_json_default) + "\n"
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def read_trace(path) -> np.ndarray:
    """Read a degree trace, one integer per line (``-`` reads stdin).

    Blank lines and ``#`` comments are ignored.
    """
    fh = sys.stdin if str(path) == "-" else open(path)
    try:
        values = []
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                values.append(int(line))
            except ValueError:
                raise CLIError(f"{path}:{lineno}: expected one integer per line, got {line!r}") from None
    finally:
        if fh is not sys.stdin:
            fh.close()
    if not values:
        raise CLIError(f"{path}: empty trace")
    return np.asarray(values, dtype=np.int64)


def write_trace(degrees, path):
    text = "\n".join(map(str, np.asarray(degrees).tolist())) + "\n"
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(["" if (isinstance(v, float) and not math.isfinite(v)) else v for v in row])


# result builders -------------------------------------------------------------


def _model(args):
    return JointDegreeModel(args.mu, args.sigma, args.gamma)


def sweep_record(sweep: estimators.IntervalsSweep) -> dict:
    rows = []
    for r in sweep.rows:
        row = {"level": r.level, "u": r.u, "theta": r.theta}
        if r.estimate is not None:
            row["branch"] = r.estimate.context["branch"]
            row["exceedances"] = r.estimate.context["exceedances"]
        else:
            row["error"] = r.error
        rows.append(row)
    p = sweep.plateau
    plateau = None if p is None else {
        "value": p.value, "levels": list(p.levels), "spread": p.spread,
    }
    return {"rows": rows, "plateau": plateau}


def estimate_record(x, method="both", lag=5, fit="least-squares", m=10, levels=estimators.DEFAULT_LEVELS):
    out = {"n": int(len(x))}
    if method in ("intervals", "both"):
        out["intervals"] = sweep_record(estimators.intervals_sweep(x, levels))
    if method in ("copula", "both"):
        cop = estimators.empirical_copula(x, lag=lag)
        est = estimators.ei_copula_estimator(cop, fit=fit, m=m)
        out["copula"] = {
            "theta": est.theta, "lag": lag, "fit": fit, "m": m, "pairs": cop.n,
            "slope": est.context["slope"],
            "diagonal": {"u": cop.grid, "C": cop.values},
        }
    if method == "both":
        plateau = out["intervals"]["plateau"]
        out["agreement"] = None if plateau is None else abs(plateau["value"] - out["copula"]["theta"])
    return out


def check_record(x, u=None, level=DEFAULT_LEVEL, lengths=(5, 10, 15, 20), occurrences=2000):
    given_u = u
    if u is None:
        u = float(np.quantile(x, level))
    chk = estimators.d2_condition_check(x, u, lengths, occurrences)
    st = estimators.exceedance_stats(x, u)
    rec = {
        "u": u, "level": level if given_u is None else None,
        "r_up": chk.r_up, "r_cluster": chk.r_cluster,
        "per_length": {str(k): {"r_up": v[0], "r_cluster": v[1], "windows": v[2]} for k, v in chk.per_length.items()},
        "exceedances": st.count,
    }
    if st.count:
        cl = estimators.cluster_size_distribution(st)
        rec["mean_cluster_size"] = cl.mean
    try:
        est = estimators.intervals_from_epochs(st.epochs)
        rec["intervals_theta"] = est.theta
        rec["inverse_theta"] = 1.0 / est.theta if est.theta > 0 else None
    except estimators.EstimatorError as exc:
        rec["intervals_theta"] = None
        rec["intervals_error"] = str(exc)
    return rec


# subcommands -----------------------------------------------------------------


def cmd_generate(args, ctx):
    seed = args.seed if args.seed is not None else _fresh_seed()
    model = _model(args)
    res = generate_graph(model, args.nodes, args.rewire_steps, seed, multigraph=not args.simple)
    write_edge_list(res.graph, args.out, header=f"netei generate seed={seed}")
    ctx["seeds"] = {"global": seed, **res.seeds}
    ctx["outputs"].append(args.out)
    ctx["summary"] = {
        "model": {"mu": model.mu, "sigma": model.sigma, "gamma": model.gamma, "mean_degree": model.mean_degree},
        "graph": graph_stats(res.graph),
        "multigraph": res.graph.multigraph,
        **res.summary(),
    }
    del ctx["summary"]["seeds"]


def cmd_sample(args, ctx):
    seed = args.seed if args.seed is not None else _fresh_seed()
    g = load_edge_list(args.graph)
    cfg = SamplerConfig(args.kind, args.n, args.c, args.alpha, args.burn_in, seed)
    tr = walk(g, cfg)
    write_trace(tr.degrees, args.out)
    ctx["seeds"] = {"walk": seed}
    ctx["inputs"].append(args.graph)
    ctx["outputs"].append(args.out)
    ctx["summary"] = {"config": cfg.as_dict(), **tr.meta, "graph": graph_stats(g)}


def cmd_estimate(args, ctx):
    x = read_trace(args.trace)
    levels = _floats(args.levels) if args.levels else estimators.DEFAULT_LEVELS
    rec = estimate_record(x, args.method, args.lag, args.fit, args.m, levels)
    if args.gamma is not None:
        rec["theory"] = {"rw_pareto": theory.ei_rw_pareto(args.gamma)}
        if "copula" in rec:
            diag = rec["copula"]["diagonal"]
            inner = diag["u"] < 1
            th = theory.theoretical_copula_diag(diag["u"][inner], args.gamma)
            rec["copula"]["sup_distance_to_theory"] = float(np.max(np.abs(diag["C"][inner] - th)))
    _dump_json(rec, args.out)
    if args.csv and "intervals" in rec:
        _write_csv(args.csv, ["level", "u", "theta"],
                   [(r["level"], r["u"], np.nan if r["theta"] is None else r["theta"]) for r in rec["intervals"]["rows"]])
        ctx["outputs"].append(args.csv)
    if args.diag_csv and "copula" in rec:
        d = rec["copula"]["diagonal"]
        _write_csv(args.diag_csv, ["u", "C"], zip(d["u"].tolist(), d["C"].tolist()))
        ctx["outputs"].append(args.diag_csv)
    if args.trace != "-":
        ctx["inputs"].append(args.trace)
    ctx["outputs"].insert(0, args.out)
    ctx["summary"] = {
        "copula_theta": rec.get("copula", {}).get("theta"),
        "intervals_plateau": (rec.get("intervals", {}).get("plateau") or {}).get("value"),
    }


def cmd_check(args, ctx):
    x = read_trace(args.trace)
    rec = check_record(x, args.u, args.level, tuple(_ints(args.lengths)), args.occurrences)
    _dump_json(rec, args.out)
    if args.trace != "-":
        ctx["inputs"].append(args.trace)
    ctx["outputs"].append(args.out)
    ctx["summary"] = {"r_up": rec["r_up"], "r_cluster": rec["r_cluster"]}


THEORY_QUANTITIES = (
    "mean-degree", "rw", "rwj", "pr-bound", "archimedean", "copula-diag",
    "maxima-quantile", "largest-degree", "iid-largest-degree", "hitting-fraction", "cluster-size",
)


def theory_record(args) -> dict:
    model = _model(args)
    wanted = args.quantity or ["mean-degree", "rw"]
    out = {}
    for q in wanted:
        if q == "mean-degree":
            out[q] = model.mean_degree
        elif q == "rw":
            out[q] = theory.ei_rw_pareto(args.gamma)
        elif q == "rwj":
            out[q] = theory.ei_rwj_pareto(args.gamma, args.alpha, model.mean_degree)
        elif q == "pr-bound":
            out[q] = theory.ei_pr_lower_bound(args.c)
        elif q == "archimedean":
            out[q] = theory.ei_archimedean(args.beta if args.beta is not None else args.gamma)
        elif q == "copula-diag":
            u = np.asarray(_floats(args.u)) if args.u else np.linspace(0.0, 1.0, 11)
            out[q] = {"u": u, "C": np.atleast_1d(theory.theoretical_copula_diag(u, args.gamma))}
        elif q == "maxima-quantile":
            out[q] = theory.maxima_quantile_pareto(args.mu, args.sigma, args.gamma, args.n, _theta(args), args.eta)
        elif q == "largest-degree":
            out[q] = theory.largest_degree_estimate(args.tail_coeff, args.delta, args.n, _theta(args))
        elif q == "iid-largest-degree":
            out[q] = theory.iid_largest_degree(args.n, args.delta, args.k)
        elif q == "hitting-fraction":
            out[q] = theory.expected_hitting_fraction(_theta(args), args.tau)
        elif q == "cluster-size":
            out[q] = theory.mean_cluster_size(_theta(args))
    return out


def _theta(args):
    return args.theta if args.theta is not None else theory.ei_rw_pareto(args.gamma)


def cmd_theory(args, ctx):
    rec = theory_record(args)
    _dump_json(rec, args.out)
    if args.out != "-":
        ctx["outputs"].append(args.out)
    ctx["summary"] = {k: v for k, v in rec.items() if not isinstance(v, dict)}


# pipeline ------------------------------------------------------------------


def _pipeline_member(task):
    """One replicate: build a graph, then sample and estimate each sweep value."""
    p, rep, seeds = task
    model = JointDegreeModel(p["mu"], p["sigma"], p["gamma"])
    res = generate_graph(model, p["nodes"], p["rewire_steps"], seeds["graph"], multigraph=not p["simple"])
    out = []
    for i, value in enumerate(p["values"]):
        c = value if p["kind"] == "pr" else p["c"]
        alpha = value if p["kind"] == "rwj" else p["alpha"]
        cfg = SamplerConfig(p["kind"], p["n"], c, alpha, p["burn_in"], seeds["walks"][i])
        x = walk(res.graph, cfg).degrees
        rec = {"replicate": rep, "value": value, "c": c, "alpha": alpha}
        try:
            rec["estimate"] = estimate_record(x, "both", p["lag"], p["fit"], p["m"])
        except estimators.EstimatorError as exc:
            rec["estimate_error"] = str(exc)
        try:
            rec["check"] = check_record(x, level=p["level"])
        except estimators.EstimatorError as exc:
            rec["check_error"] = str(exc)
        if "estimate" in rec:
            rec["estimate"]["copula"].pop("diagonal")
        out.append(rec)
    return {"replicate": rep, "graph": graph_stats(res.graph), **res.summary(), "runs": out}


def _theory_for(kind, gamma, c, alpha, mean_degree):
    if kind == "rw":
        return theory.ei_rw_pareto(gamma), "equal"
    if kind == "rwj":
        return theory.ei_rwj_pareto(gamma, alpha, mean_degree), "equal"
    if c == 1:
        return theory.ei_rw_pareto(gamma), "equal"
    return theory.ei_pr_lower_bound(c), "lower-bound"


def _mean(values):
    values = [v for v in values if v is not None]
    return float(np.mean(values)) if values else None


def cmd_pipeline(args, ctx):
    seed = args.seed if args.seed is not None else _fresh_seed()
    if args.alpha_sweep and args.kind != "rwj":
        raise CLIError("--alpha-sweep needs --kind rwj")
    if args.c_sweep and args.kind != "pr":
        raise CLIError("--c-sweep needs --kind pr")
    if args.kind == "rwj":
        values = _floats(args.alpha_sweep) if args.alpha_sweep else [args.alpha]
    elif args.kind == "pr":
        values = _floats(args.c_sweep) if args.c_sweep else [args.c]
    else:
        values = [None]
    params = {
        "mu": args.mu, "sigma": args.sigma, "gamma": args.gamma, "nodes": args.nodes,
        "rewire_steps": args.rewire_steps, "simple": args.simple, "kind": args.kind,
        "n": args.n, "c": args.c, "alpha": args.alpha, "burn_in": args.burn_in,
        "lag": args.lag, "fit": args.fit, "m": args.m, "level": args.level, "values": values,
    }
    names = [f"replicate{r}" for r in range(args.replicates)]
    rep_seeds = stage_seeds(seed, names)
    tasks = []
    seeds_record = {"global": seed}
    for r, name in enumerate(names):
        sub = stage_seeds(rep_seeds[name], ["graph"] + [f"walk{i}" for i in range(len(values))])
        s = {"graph": sub["graph"], "walks": [sub[f"walk{i}"] for i in range(len(values))]}
        seeds_record[name] = s
        tasks.append((params, r, s))

    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            members = list(pool.map(_pipeline_member, tasks))
    else:
        members = [_pipeline_member(t) for t in tasks]

    model = _model(args)
    ed = model.mean_degree
    summary = []
    for i, value in enumerate(values):
        runs = [m["runs"][i] for m in members]
        c = runs[0]["c"]
        alpha = runs[0]["alpha"]
        th, relation = _theory_for(args.kind, args.gamma, c, alpha, ed)
        plateaus = [(r.get("estimate", {}).get("intervals", {}).get("plateau") or {}).get("value") for r in runs]
        copulas = [r.get("estimate", {}).get("copula", {}).get("theta") for r in runs]
        row = {
            "value": value, "c": c, "alpha": alpha, "theory": th, "relation": relation,
            "intervals_plateau": _mean(plateaus), "copula": _mean(copulas),
            "r_up": _mean([r.get("check", {}).get("r_up") for r in runs]),
            "r_cluster": _mean([r.get("check", {}).get("r_cluster") for r in runs]),
        }
        for key in ("intervals_plateau", "copula"):
            est = row[key]
            if est is None:
                ok = False
            elif relation == "equal":
                ok = abs(est - th) <= args.tolerance
            else:
                ok = est >= th - 0.05
            row[f"{key}_pass"] = ok
        summary.append(row)

    report = {"params": params, "mean_degree": ed, "summary": summary, "replicates": members}
    _dump_json(report, args.out)
    if args.csv:
        _write_csv(args.csv, ["value", "theory", "intervals_plateau", "copula", "r_up", "r_cluster"],
                   [tuple(np.nan if row[k] is None else row[k] for k in
                          ("value", "theory", "intervals_plateau", "copula", "r_up", "r_cluster")) for row in summary])
        ctx["outputs"].append(args.csv)
    ctx["outputs"].insert(0, args.out)
    ctx["seeds"] = seeds_record
    ctx["summary"] = {"rows": summary}


# replay ---------------------------------------------------------------------


_OUTPUT_FLAGS = ("out", "csv", "diag_csv")


def cmd_replay(args, ctx):
    man = json.loads(Path(args.manifest).read_text())
    if man.get("subcommand") in (None, "replay"):
        raise CLIError("manifest does not describe a replayable run")
    for path, digest in man.get("inputs", {}).items():
        if not Path(path).exists():
            raise CLIError(f"input {path} is missing")
        if _sha256(path) != digest:
            raise CLIError(f"input {path} changed since the recorded run")
    params = dict(man["params"])
    # pin every seed that was drawn fresh
    if "seed" in params and params["seed"] is None:
        s = man["seeds"]
        params["seed"] = s.get("global", s.get("walk"))
    recorded = man.get("outputs", {})
    with tempfile.TemporaryDirectory() as tmp:
        mapping = {}
        for flag in _OUTPUT_FLAGS:
            old = params.get(flag)
            if old and old != "-":
                new = str(Path(tmp) / f"{flag}_{Path(old).name}")
                params[flag] = new
                mapping[new] = old
        params["manifest"] = str(Path(tmp) / "replay.manifest.json")
        sub = argparse.Namespace(**params)
        sub.func = COMMANDS[man["subcommand"]]
        run(sub, quiet=True)
        mismatches = []
        for new, old in mapping.items():
            if old not in recorded:
                continue
            if _sha256(new) != recorded[old]:
                mismatches.append(old)
    ctx["inputs"].append(args.manifest)
    ctx["summary"] = {"replayed": man["subcommand"], "checked": sorted(recorded), "mismatches": mismatches}
    if mismatches:
        raise CLIError(f"replay differs for: {', '.join(mismatches)}")
    print(f"replay OK: {len(recorded)} output(s) reproduced", file=sys.stderr)


# parser and driver ---------------------------------------------------------


COMMANDS = {
    "generate": cmd_generate, "sample": cmd_sample, "estimate": cmd_estimate,
    "check": cmd_check, "theory": cmd_theory, "pipeline": cmd_pipeline,
}


def _model_flags(p):
    p.add_argument("--mu", type=float, default=10.0)
    p.add_argument("--sigma", type=float, default=15.0)
    p.add_argument("--gamma", type=float, default=1.2)


def _sampler_flags(p, kind_default="rw"):
    p.add_argument("--kind", choices=("rw", "pr", "rwj"), default=kind_default)
    p.add_argument("--n", type=int, default=100_000, help="trace length")
    p.add_argument("--c", type=float, default=0.85, help="PageRank damping")
    p.add_argument("--alpha", type=float, default=0.0, help="jump weight of rwj")
    p.add_argument("--burn-in", type=int, default=None, help="default: 10*N for pr, else 0")


def _estimator_flags(p):
    p.add_argument("--lag", type=int, default=5, help="spacing between copula pairs")
    p.add_argument("--fit", choices=("least-squares", "spline"), default="least-squares")
    p.add_argument("--m", type=int, default=10, help="grid points used by the least-squares fit")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="netei", description="Extremal index of random-walk degree sequences.")
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--version", action="version", version=f"netei {__version__}")
    subs = ap.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("generate", help="random graph with bivariate Pareto degree correlations")
    _model_flags(p)
    p.add_argument("--nodes", type=int, default=5000)
    p.add_argument("--rewire-steps", type=int, default=200_000, help="Metropolis proposals")
    p.add_argument("--simple", action="store_true", help="forbid parallel edges")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="edge-list file")
    p.set_defaults(func=cmd_generate)

    p = subs.add_parser("sample", help="run a walker and write its degree trace")
    p.add_argument("--graph", required=True, help="edge-list file")
    _sampler_flags(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="degree trace, one integer per line ('-' for stdout)")
    p.set_defaults(func=cmd_sample)

    p = subs.add_parser("estimate", help="estimate the extremal index of a degree trace")
    p.add_argument("--trace", required=True, help="degree trace ('-' for stdin)")
    p.add_argument("--method", choices=("copula", "intervals", "both"), default="both")
    _estimator_flags(p)
    p.add_argument("--levels", help="comma-separated quantile levels for the intervals sweep")
    p.add_argument("--gamma", type=float, help="compare with the random-walk theory at this tail index")
    p.add_argument("--out", default="-", help="JSON results")
    p.add_argument("--csv", help="(level, u, theta) table of the intervals sweep")
    p.add_argument("--diag-csv", help="empirical copula diagonal")
    p.set_defaults(func=cmd_estimate)

    p = subs.add_parser("check", help="upcrossing and clustering ratios of the exceedances")
    p.add_argument("--trace", required=True)
    p.add_argument("--u", type=float, help="threshold (overrides --level)")
    p.add_argument("--level", type=float, default=DEFAULT_LEVEL, help="empirical quantile level of the threshold")
    p.add_argument("--lengths", default="5,10,15,20")
    p.add_argument("--occurrences", type=int, default=2000)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("theory", help="closed-form values")
    _model_flags(p)
    p.add_argument("--quantity", action="append", choices=THEORY_QUANTITIES,
                   help="repeatable; default: mean-degree and rw")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--c", type=float, default=0.85)
    p.add_argument("--beta", type=float)
    p.add_argument("--theta", type=float, help="default: random-walk value at --gamma")
    p.add_argument("--u", help="comma-separated points for copula-diag")
    p.add_argument("--n", type=float, default=1e5)
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=1.2)
    p.add_argument("--tail-coeff", type=float, default=1.0)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_theory)

    p = subs.add_parser("pipeline", help="generate, sample, estimate and check in one go")
    _model_flags(p)
    p.add_argument("--nodes", type=int, default=5000)
    p.add_argument("--rewire-steps", type=int, default=200_000)
    p.add_argument("--simple", action="store_true")
    _sampler_flags(p)
    _estimator_flags(p)
    p.add_argument("--level", type=float, default=DEFAULT_LEVEL, help="threshold level of the check")
    p.add_argument("--alpha-sweep", help="comma-separated alpha values (rwj)")
    p.add_argument("--c-sweep", help="comma-separated damping values (pr)")
    p.add_argument("--replicates", type=int, default=1, help="independent graphs and walks per value")
    p.add_argument("--tolerance", type=float, default=0.1, help="pass band around the theory value")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="-")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_pipeline)

    p = subs.add_parser("replay", help="re-run a manifest and compare outputs byte for byte")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_replay)

    for sp in subs.choices.values():
        sp.add_argument("--manifest", help="manifest path (default: <out>.manifest.json, or stderr)")
    return ap


def _manifest_path(args):
    if args.manifest:
        return args.manifest
    if args.subcommand == "replay":
        return None
    out = getattr(args, "out", None)
    if out and out != "-":
        return out + ".manifest.json"
    return None


def run(args, quiet=False) -> dict:
    """Execute a parsed command and write its manifest."""
    params = {k: v for k, v in vars(args).items() if k not in ("func", "verbose")}
    ctx = {"inputs": [], "outputs": [], "seeds": {}, "summary": {}}
    t0 = time.perf_counter()
    args.func(args, ctx)
    duration = time.perf_counter() - t0
    manifest = {
        "subcommand": args.subcommand,
        "params": params,
        "seeds": ctx["seeds"],
        "inputs": {p: _sha256(p) for p in ctx["inputs"]},
        "outputs": {p: _sha256(p) for p in ctx["outputs"] if p != "-"},
        "version": __version__,
        "duration_s": duration,
        "summary": ctx["summary"],
    }
    path = _manifest_path(args)
    if path:
        _dump_json(manifest, path)
    elif not quiet:
        buf = io.StringIO()
        json.dump(_clean(manifest), buf, indent=2, sort_keys=True, default=_json_default)
        print(buf.getvalue(), file=sys.stderr)
    return manifest


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        run(args)
    except (CLIError, ValueError, OSError, ArithmeticError) as exc:
        print(f"netei {args.subcommand}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
