"""Command-line interface: metric evaluation, figure-style sweeps,
analytic-vs-Monte-Carlo validation, and channel sampling, all emitting CSV
or JSON with a run manifest.

Exit codes: 0 success, 2 configuration or numerical error, 3 validation FAIL.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .channels import alpha_mu_cdf
from .config import config_to_dict, load_config, replace_by_path
from .cun_cdf import SeriesPolicy, cdf_rf
from .errors import ConfigError, CunsecError
from .mc import (ks_distance, ks_distance_interpolated, sample_alpha_mu,
                 sample_malaga_snr, simulate_metrics)
from .secrecy import est, sop_lower, spsc
from .specfun import ContourPolicy

__all__ = ["RunManifest", "run_eval", "run_sweep", "run_validate", "main",
           "load_config"]

METRICS = {"sop": sop_lower, "spsc": spsc, "est": est}


@dataclasses.dataclass
class RunManifest:
    config_hash: str
    tool_version: str
    seed: int | None
    series_rel_tol: float
    series_max_terms: int
    contour_rel_tol: float
    generated_at: str | None = None

    @classmethod
    def build(cls, cfg, sp, policy, seed=None, timestamp=True):
        payload = json.dumps(config_to_dict(cfg), sort_keys=True).encode()
        return cls(
            config_hash=hashlib.sha256(payload).hexdigest()[:16],
            tool_version=__version__,
            seed=seed,
            series_rel_tol=sp.rel_tol,
            series_max_terms=sp.max_terms,
            contour_rel_tol=policy.rel_tol,
            generated_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
            if timestamp else None,
        )

    def as_json(self):
        d = dataclasses.asdict(self)
        if d["generated_at"] is None:
            del d["generated_at"]
        return json.dumps(d, sort_keys=True)


def _policies(tolerance=None):
    sp = SeriesPolicy() if tolerance is None else SeriesPolicy(rel_tol=tolerance)
    cp = ContourPolicy() if tolerance is None else ContourPolicy(rel_tol=tolerance)
    return sp, cp


def _scenario_override(cfg, scenario):
    if scenario is None:
        return cfg
    pc = dataclasses.replace(cfg.pc, scenario={"1": "I", "2": "II"}[scenario])
    return dataclasses.replace(cfg, pc=pc)


# --------------------------------------------------------------------------
# eval
# --------------------------------------------------------------------------

def run_eval(cfg, metric, sp=None, policy=None):
    sp = sp or SeriesPolicy()
    policy = policy or ContourPolicy()
    fn = METRICS[metric]
    return fn(cfg, sp, policy)


def _cmd_eval(args):
    sp, cp = _policies(args.tolerance)
    cfg = _scenario_override(load_config(args.config), args.scenario)
    result = run_eval(cfg, args.metric, sp, cp)
    manifest = RunManifest.build(cfg, sp, cp)
    print(json.dumps({
        "metric": args.metric,
        "kind": result.kind,
        "scenario": result.scenario,
        "value": result.value,
        "diagnostics": {k: v for k, v in result.diagnostics.items()
                        if isinstance(v, (str, int, float))},
        "manifest": json.loads(manifest.as_json()),
    }, sort_keys=True))
    return 0


# --------------------------------------------------------------------------
# sweep
# --------------------------------------------------------------------------

def run_sweep(cfg, axis, start, stop, points, metrics, sp=None, policy=None,
              workers=None):
    """Evaluate metrics along one axis; yields (axis_value, row dict)."""
    sp = sp or SeriesPolicy()
    policy = policy or ContourPolicy()
    if points < 2:
        raise ConfigError("a sweep needs at least 2 points")
    values = np.linspace(float(start), float(stop), int(points))

    def one(v):
        row = {}
        try:
            c = replace_by_path(cfg, axis, float(v))
            for m in metrics:
                res = METRICS[m](c, sp, policy)
                row[m] = res.value
                row.setdefault("route", res.diagnostics.get("route", ""))
            row["error"] = ""
        except CunsecError as exc:
            for m in metrics:
                row.setdefault(m, "")
            row.setdefault("route", "")
            row["error"] = f"{exc.category}: {exc}"
        return row

    workers = workers or int(os.environ.get("SECRECY_WORKERS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, values))
    else:
        rows = [one(v) for v in values]
    return list(zip(values.tolist(), rows))


def _write_sweep_csv(out, manifest, axis, metrics, rows):
    out.write(f"# {manifest.as_json()}\n")
    cols = ["axis", "axis_value"] + list(metrics) + ["route", "error"]
    out.write(",".join(cols) + "\n")
    for value, row in rows:
        cells = [axis, repr(value)]
        for m in metrics:
            cells.append(repr(row[m]) if isinstance(row[m], float) else "")
        cells.append(row.get("route", ""))
        err = row.get("error", "")
        cells.append('"' + err.replace('"', "'") + '"' if err else "")
        out.write(",".join(cells) + "\n")


def _cmd_sweep(args):
    sp, cp = _policies(args.tolerance)
    cfg = _scenario_override(load_config(args.config), args.scenario)
    metrics = [m.strip() for m in args.metrics.split(",") if m.strip()]
    for m in metrics:
        if m not in METRICS:
            raise ConfigError(f"unknown metric {m!r}; pick from {sorted(METRICS)}")
    rows = run_sweep(cfg, args.axis, args.start, args.stop, args.points,
                     metrics, sp, cp)
    manifest = RunManifest.build(cfg, sp, cp)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_sweep_csv(fh, manifest, args.axis, metrics, rows)
    else:
        _write_sweep_csv(sys.stdout, manifest, args.axis, metrics, rows)
    return 0


# --------------------------------------------------------------------------
# validate
# --------------------------------------------------------------------------

def run_validate(cfg, n, seed, sp=None, policy=None):
    """Analytic-vs-MC table plus channel-law KS rows.

    Returns (report dict, passed flag).  n must be >= 1e4.
    """
    sp = sp or SeriesPolicy()
    policy = policy or ContourPolicy()
    n = int(n)
    mc = simulate_metrics(cfg, n, seed)
    rows = []
    analytic = {
        "SOP_L": sop_lower(cfg, sp, policy).value,
        "SPSC": spsc(cfg, sp, policy).value,
    }
    analytic["EST"] = cfg.target_rate * (1.0 - analytic["SOP_L"])
    comparators = {"SOP_L": "SOP_L", "SPSC": "SPSC", "EST": "EST_L"}
    passed = True
    for name, mc_key in comparators.items():
        estm = mc[mc_key]
        se = max(estm.std_error, 1e-12)
        z = (analytic[name] - estm.estimate) / se
        ok = abs(z) <= 3.0
        passed &= ok
        rows.append({"metric": name, "analytic": analytic[name],
                     "mc": estm.estimate, "std_error": estm.std_error,
                     "z": z, "pass": ok})

    ks_rows = []
    ks_threshold = float(2.0 / np.sqrt(min(n, 1 << 18)))

    def ks_row(name, samples, cdf_vec, expensive=False):
        nonlocal passed
        if expensive:
            d = ks_distance_interpolated(samples, cdf_vec, n_grid=1024)
        else:
            d = ks_distance(samples, cdf_vec)
        ok = d < ks_threshold
        passed &= ok
        ks_rows.append({"channel": name, "ks": d, "threshold": ks_threshold,
                        "pass": ok})

    from .channels import MalagaCdfEvaluator
    from .mc import sample_batch

    batch = sample_batch(cfg, min(n, 1 << 18), seed, chunk_index=0)
    ks_row("rf_sr", batch.snr_r, lambda x: alpha_mu_cdf(cfg.rf_sr, x))
    ks_row("rf_sp", batch.snr_p, lambda x: alpha_mu_cdf(cfg.rf_sp, x))
    ks_row("rf_se", batch.snr_e, lambda x: alpha_mu_cdf(cfg.rf_se, x))
    fso_eval = MalagaCdfEvaluator(cfg.fso, policy=policy, blocked=True)
    ks_row("fso_blocked", batch.snr_fso, fso_eval.eval_many, expensive=True)
    if cfg.pc.scenario == "I":
        rf_samples = cfg.pc.psi_q * batch.snr_r / batch.snr_p
    else:
        rf_samples = np.minimum(cfg.pc.psi_q / batch.snr_p, cfg.pc.psi_t) \
            * batch.snr_r
    ks_row("rf_scenario", rf_samples,
           lambda x: np.array([cdf_rf(cfg, v, sp) for v in np.atleast_1d(x)]),
           expensive=True)
    report = {"metrics": rows, "ks": ks_rows, "n": n, "seed": seed,
              "pass": bool(passed)}
    return report, bool(passed)


def _render_validate(report, manifest):
    lines = [f"# {manifest.as_json()}"]
    lines.append("metric,analytic,mc,std_error,z,pass")
    for r in report["metrics"]:
        lines.append(
            f"{r['metric']},{r['analytic']!r},{r['mc']!r},"
            f"{r['std_error']!r},{r['z']!r},{'PASS' if r['pass'] else 'FAIL'}")
    lines.append("channel,ks,threshold,pass")
    for r in report["ks"]:
        lines.append(f"{r['channel']},{r['ks']!r},{r['threshold']!r},"
                     f"{'PASS' if r['pass'] else 'FAIL'}")
    lines.append(f"overall,{'PASS' if report['pass'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _cmd_validate(args):
    sp, cp = _policies(args.tolerance)
    cfg = _scenario_override(load_config(args.config), args.scenario)
    report, passed = run_validate(cfg, args.samples, args.seed, sp, cp)
    manifest = RunManifest.build(cfg, sp, cp, seed=args.seed, timestamp=False)
    text = _render_validate(report, manifest)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else 3


# --------------------------------------------------------------------------
# sample
# --------------------------------------------------------------------------

def _cmd_sample(args):
    sp, cp = _policies(args.tolerance)
    cfg = load_config(args.config)
    if args.channel == "alpha-mu":
        ch = {"sr": cfg.rf_sr, "sp": cfg.rf_sp, "se": cfg.rf_se}[args.link]
        draws = sample_alpha_mu(ch, args.n, args.seed)
    else:
        draws = sample_malaga_snr(cfg.fso, args.n, args.seed)
    manifest = RunManifest.build(cfg, sp, cp, seed=args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(f"# {manifest.as_json()}\n")
        fh.write("snr\n")
        for v in draws:
            fh.write(f"{float(v)!r}\n")
    return 0


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="cunsec",
        description="Secrecy metrics of an underlay cognitive hybrid RF/FSO "
                    "link, with Monte-Carlo validation.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--tolerance", type=float, default=None,
                       help="override series/contour relative tolerance")
        p.add_argument("--scenario", choices=["1", "2"], default=None,
                       help="override the config scenario")

    p = sub.add_parser("eval", help="evaluate one metric")
    common(p)
    p.add_argument("--metric", required=True, choices=sorted(METRICS))
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("sweep", help="metric sweep along one config axis")
    common(p)
    p.add_argument("--axis", required=True,
                   help="dotted config path, e.g. power.psi_q_db")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--metrics", required=True,
                   help="comma list from sop,spsc,est")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("validate", help="analytic vs Monte-Carlo validation")
    common(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("sample", help="draw channel samples to CSV")
    common(p)
    p.add_argument("--channel", required=True, choices=["alpha-mu", "malaga"])
    p.add_argument("--link", choices=["sr", "sp", "se"], default="sr",
                   help="which RF link for alpha-mu draws")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_sample)
    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CunsecError as exc:
        sys.stderr.write(json.dumps(
            {"error": exc.category, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
