"""
zndpiston command line.

Exit codes: 0 success, 1 a verification check failed, 2 configuration
error (bad scenario file, flag or parameter), 3 numerical failure during a
run.  The default output directory is taken from $ZNDPISTON_OUTPUT_DIR,
falling back to ./zndpiston-out.
"""

import argparse
import hashlib
import json
import logging
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .. import __version__, hugoniot, verification
from ..errors import AdmissibilityError, ConfigurationError, NumericalError, SimulationError
from ..simulation import run
from . import writers
from .scenario import parse_scenario, parse_upstream

ENV_OUTPUT = "ZNDPISTON_OUTPUT_DIR"
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

log = logging.getLogger("zndpiston")


def default_output():
    return Path(os.environ.get(ENV_OUTPUT) or "zndpiston-out")


def _overrides(args):
    table = {"epsilon": args.epsilon, "n_cells": args.cells, "t_end": args.t_end}
    return {k: v for k, v in table.items() if v is not None}


def _load(args):
    cfg = parse_scenario(args.scenario)
    ov = _overrides(args)
    return cfg.with_overrides(**ov), ov


def cmd_run(args):
    cfg, ov = _load(args)
    out = Path(args.out) if args.out else default_output()
    try:
        series = run(cfg)
    except SimulationError as exc:
        if exc.snapshot is not None:
            _dump_failure(out, exc)
        raise
    files = writers.write_run(series, out, overrides=ov, plot_data=args.plot_data)
    writers.write_manifest(
        out, subcommand="run", scenario=args.scenario, config_hash=cfg.config_hash(),
        overrides=ov, config=cfg.to_dict(), extra={"warnings": series.warnings},
    )
    tr = series.trace
    print(f"t_end={cfg.t_end:g} steps={len(tr['t']) - 1} chi={series.history.chi[-1]:.10g} "
          f"sup|phi_hat|={tr['norm_c0'].max():.4e} sup|chi'-chi0|={tr['chi_dev'].max():.4e}")
    for f in files:
        print(f)
    return 0


def _dump_failure(out, exc):
    out.mkdir(parents=True, exist_ok=True)
    snap = exc.snapshot
    path = out / "failure_snapshot.json"
    path.write_text(json.dumps({
        "error": str(exc), "t": snap.t, "chi": snap.chi, "chi_prime": snap.chi_prime,
        "phi_hat": np.asarray(snap.phi_hat).tolist(),
    }) + "\n")
    print(f"diagnostic snapshot written to {path}", file=sys.stderr)


def locus_rows(up, points):
    """Locus samples from the lower limit up to (excluding) nu0, both EOS branches."""
    lo = max(hugoniot.locus_lower_limit(up), 1e-6)
    rows = []
    for nu in np.linspace(lo, up.nu0, points + 2)[1:-1]:
        try:
            pt = hugoniot.downstream_closed_form(up, float(nu))
        except AdmissibilityError:
            continue
        rows.append((pt.nu, pt.u, pt.p, pt.s, pt.sigma))
    return rows


def cmd_locus(args):
    up = parse_upstream(args.upstream)
    rows = locus_rows(up, args.points)
    u = [r[1] for r in rows]
    if any(b >= a for a, b in zip(u, u[1:])):
        raise NumericalError("locus u column is not monotone decreasing in nu")
    blob = json.dumps({"gamma": up.gamma, "nu0": up.nu0, "p0": up.p0}, sort_keys=True, separators=(",", ":"))
    h = hashlib.sha256(blob.encode()).hexdigest()
    out = Path(args.out) if args.out else default_output() / "locus.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    writers.write_table(out, writers.LOCUS_COLUMNS, rows, h)
    u1, uo = hugoniot.admissible_window(up)
    print(f"admissible piston speeds: {u1:.10g} < u_iota < {uo:.10g}")
    print(out)
    return 0


def cmd_verify(args):
    cfg, ov = _load(args)
    out = Path(args.out) if args.out else default_output()
    out.mkdir(parents=True, exist_ok=True)
    keys = tuple(args.only) if args.only else verification.ACCEPTANCE
    unknown = set(keys) - set(verification.ACCEPTANCE)
    if unknown:
        raise ConfigurationError(f"unknown checks {sorted(unknown)}", field="--only")

    def progress(entry):
        verdict = "PASS" if entry.passed else ("info" if entry.informational else "FAIL")
        print(f"[{verdict}] {entry.name}: {entry.value:.4e} ({entry.runtime:.1f}s)", flush=True)

    with tempfile.TemporaryDirectory() as work:
        report = verification.run_suite(cfg, work, workers=args.workers, keys=keys,
                                        informational=args.informational, progress=progress)
    path = out / "verification.json"
    path.write_text(report.to_json() + "\n")
    writers.write_manifest(out, subcommand="verify", scenario=args.scenario, config_hash=cfg.config_hash(),
                           overrides=ov, config=cfg.to_dict())
    print(report.preamble)
    print(report.table())
    print(path)
    return 0 if report.passed else EXIT_CHECK_FAILED


def _sweep_member(job):
    cfg, outdir, plot = job
    series = run(cfg)
    writers.write_run(series, outdir, overrides={"epsilon": cfg.epsilon}, plot_data=plot)
    from ..verification import c1_sup

    tr = series.trace
    return (cfg.epsilon, float(tr["norm_c0"].max()), float(tr["chi_dev"].max()), c1_sup(series))


def cmd_sweep(args):
    cfg, ov = _load(args)
    out = Path(args.out) if args.out else default_output()
    eps = args.eps
    if any(not (e > 0.0) for e in eps):
        raise ConfigurationError("sweep amplitudes must be positive", field="--eps")
    jobs = [(cfg.with_overrides(epsilon=e), out / f"eps_{e:.6g}", args.plot_data) for e in eps]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_sweep_member, jobs))
    else:
        results = [_sweep_member(j) for j in jobs]
    rows = [(e, c0, dev, c1, c0 / e, dev / e, c1 / e) for e, c0, dev, c1 in results]
    cols = ("epsilon", "sup_c0", "sup_chi_dev", "sup_c1_phys", "c0_over_eps", "chi_dev_over_eps", "c1_over_eps")
    writers.write_table(out / "sweep.csv", cols, rows, cfg.config_hash(), ov)
    writers.write_manifest(out, subcommand="sweep", scenario=args.scenario, config_hash=cfg.config_hash(),
                           overrides=dict(ov, eps=list(eps)), config=cfg.to_dict())
    print(" ".join(f"{c:>16}" for c in cols))
    for r in rows:
        print(" ".join(f"{v:>16.6e}" for v in r))
    for k, name in ((4, "C0"), (5, "chi'"), (6, "C1")):
        vals = [r[k] for r in rows]
        print(f"{name} constant spread: {max(vals) / min(vals) - 1.0:.3%}")
    return 0


def _finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text}")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="zndpiston", description="Front-tracking lab for the ZND piston problem.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress")
    sub = p.add_subparsers(dest="command", required=True)

    def scenario_args(sp):
        sp.add_argument("scenario", help="scenario JSON file or bundled name (default, background)")
        sp.add_argument("--epsilon", type=_finite_float, help="override perturbation amplitude")
        sp.add_argument("--cells", type=int, help="override n_cells")
        sp.add_argument("--t-end", type=_finite_float, help="override horizon")
        sp.add_argument("--out", help=f"output directory (default ${ENV_OUTPUT} or ./zndpiston-out)")

    r = sub.add_parser("run", help="run one simulation and write CSV outputs")
    scenario_args(r)
    r.add_argument("--plot-data", action="store_true", help="also write gnuplot .dat files")
    r.set_defaults(func=cmd_run)

    lt = sub.add_parser("locus-table", help="write the Hugoniot locus of an upstream state")
    lt.add_argument("upstream", help="JSON file with gamma, nu0, p0 (or bundled name 'upstream')")
    lt.add_argument("--points", type=int, default=200)
    lt.add_argument("--out", help="output CSV path")
    lt.set_defaults(func=cmd_locus)

    v = sub.add_parser("verify", help="run the acceptance checks")
    scenario_args(v)
    v.add_argument("--only", nargs="+", metavar="CHECK", help="subset of " + ", ".join(verification.ACCEPTANCE))
    v.add_argument("--informational", action="store_true", help="also run the probes that may fail")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="epsilon-scaling study")
    scenario_args(s)
    s.add_argument("--eps", type=_finite_float, nargs="+", default=[1e-3, 5e-4, 2.5e-4])
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--plot-data", action="store_true")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
