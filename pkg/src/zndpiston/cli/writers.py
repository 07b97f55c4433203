"""
Output files.

Numeric files are CSV with a fixed column order and floats written with
17 significant digits, so identical runs produce identical bytes.  Each
ends in a comment footer carrying the package version and the config hash.
The manifest (JSON) holds the only time-dependent data.
"""

import csv
import datetime as _dt
import json
from pathlib import Path

import numpy as np

from .. import __version__

SNAPSHOT_COLUMNS = ("t", "xi", "x", "phi_hat1", "phi_hat2", "phi_hat3", "nu", "u", "p", "s", "T", "Z")
HISTORY_COLUMNS = ("t", "chi", "chi_prime")
NORM_COLUMNS = ("t", "norm_c0", "norm_c1", "chi_dev")
LOCUS_COLUMNS = ("nu", "u", "p", "s", "sigma")


def footer(config_hash, overrides=None):
    line = f"# zndpiston {__version__} config_hash={config_hash}"
    if overrides:
        line += " overrides=" + ",".join(f"{k}={v}" for k, v in sorted(overrides.items()))
    return line + "\n"


def _fmt(v):
    return "%.17g" % v


def write_table(path, columns, rows, config_hash, overrides=None):
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        fh.write(footer(config_hash, overrides))
    return path


def write_dat(path, columns, rows):
    """Whitespace-separated columns for gnuplot; blank line between blocks (rows of None)."""
    path = Path(path)
    with path.open("w") as fh:
        fh.write("# " + " ".join(columns) + "\n")
        for row in rows:
            if row is None:
                fh.write("\n")
            else:
                fh.write(" ".join(_fmt(v) for v in row) + "\n")
    return path


def snapshot_rows(series, blocks=False):
    for snap in series.snapshots:
        st = snap.state
        cols = (np.full_like(snap.xi, snap.t), snap.xi, snap.x, *snap.phi_hat, st.nu, st.u, st.p, st.s, st.T, snap.Z)
        yield from zip(*cols)
        if blocks:
            yield None


def history_rows(series):
    h = series.history
    return zip(h.t, h.chi, h.chi_prime)


def norm_rows(series):
    tr = series.trace
    return zip(*(tr[c] for c in NORM_COLUMNS))


def write_run(series, outdir, overrides=None, plot_data=False):
    """Write snapshots, shock history and norm traces; returns the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    h = series.cfg.config_hash()
    files = [
        write_table(out / "snapshots.csv", SNAPSHOT_COLUMNS, snapshot_rows(series), h, overrides),
        write_table(out / "shock_history.csv", HISTORY_COLUMNS, history_rows(series), h, overrides),
        write_table(out / "norms.csv", NORM_COLUMNS, norm_rows(series), h, overrides),
    ]
    if plot_data:
        files += [
            write_dat(out / "snapshots.dat", SNAPSHOT_COLUMNS, snapshot_rows(series, blocks=True)),
            write_dat(out / "shock_history.dat", HISTORY_COLUMNS, history_rows(series)),
            write_dat(out / "norms.dat", NORM_COLUMNS, norm_rows(series)),
        ]
    return files


def write_manifest(outdir, *, subcommand, scenario, config_hash, overrides=None, config=None, extra=None):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    doc = {
        "version": __version__,
        "subcommand": subcommand,
        "scenario": scenario,
        "output_dir": str(out),
        "overrides": overrides or {},
        "config_hash": config_hash,
        "config": config,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    if extra:
        doc.update(extra)
    path = out / "manifest.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path
