"""Command line entry point.

Subcommands: simulate, estimate, moments, bound, analyze, study. JSON
reports embed a run manifest (resolved configuration, version, seeds,
input digests, timestamps); CSV outputs are pure data so that identical
configurations reproduce them bit for bit.

Exit codes: 0 success; 1 input or validation error (single-line JSON error
record on stderr); 2 numerical-accuracy failure (degraded density values
without --allow-degraded).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import warnings
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .bounds import bound_report
from .density import AccuracyWarning
from .estimator import estimate_general, estimate_strict
from .moments import moment_table
from .params import (FormAParams, StrictParams, from_strict, tanpi, to_strict,
                     validate_strict)
from .sampler import RandomStream, sample_formA
from .signal import FluxConstants, SignalSeries, analyze, compose_flux
from .study import STUDY_CSV_FIELDS, StudyConfig, variance_study


class _CliError(Exception):
    """Input/validation failure: exit code 1."""


class _AccuracyError(Exception):
    """Numerical-accuracy failure: exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _utcnow():
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _manifest(ns, started, seeds=None, digests=None):
    config = {k: v for k, v in vars(ns).items()
              if k != "func" and not k.startswith("_")}
    return {
        "subcommand": ns.cmd,
        "config": config,
        "version": __version__,
        "seeds": seeds or {},
        "input_digests": digests or {},
        "started": started,
        "finished": _utcnow(),
    }


def _json_default(o):
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON-serializable: {type(o).__name__}")


def _emit_text(text, path, quiet):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        if not quiet:
            print(f"wrote {path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _emit_json(obj, ns):
    _emit_text(json.dumps(obj, indent=2, default=_json_default) + "\n",
               ns.out, ns.quiet)


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _emit_csv(fields, rows, ns):
    lines = [",".join(fields)]
    lines += [",".join(_csv_cell(r[f]) for f in fields) for r in rows]
    _emit_text("\n".join(lines) + "\n", ns.out_csv, ns.quiet)


def _read_text(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as e:
            raise _CliError(f"cannot read {path}: {e}") from e
    return text, hashlib.sha256(text.encode()).hexdigest()


def _read_value_lines(path):
    # One sample value per line; '#' comments and blank lines skipped.
    text, digest = _read_text(path)
    vals = []
    for line in text.splitlines():
        t = line.strip()
        if not t or t.startswith("#"):
            continue
        try:
            vals.append(float(t))
        except ValueError:
            raise _CliError(f"malformed value line: {t[:60]!r}") from None
    if not vals:
        raise _CliError("no sample values in input")
    return np.array(vals), digest


def _read_csv_table(path):
    # Header row required; '#' comment lines skipped; plain decimal values.
    text, digest = _read_text(path)
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    rows = list(csv.reader(lines))
    if not rows:
        raise _CliError("empty CSV input")
    header = [c.strip() for c in rows[0]]

    def numeric(cell):
        try:
            float(cell)
            return True
        except ValueError:
            return False

    if all(numeric(c) for c in header):
        raise _CliError("CSV header row required")
    data = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise _CliError(f"CSV row {i} has {len(row)} fields, "
                            f"expected {len(header)}")
        try:
            data.append([float(c) for c in row])
        except ValueError:
            raise _CliError(f"malformed CSV value in row {i}") from None
    if not data:
        raise _CliError("CSV has a header but no data rows")
    return header, np.array(data), digest


def _column(header, data, spec):
    try:
        idx = int(spec)
    except ValueError:
        if spec not in header:
            raise _CliError(f"column {spec!r} not found; header is {header}") \
                from None
        idx = header.index(spec)
    if not 0 <= idx < data.shape[1]:
        raise _CliError(f"column index {idx} out of range")
    return data[:, idx]


def _float_list(text):
    out = tuple(float(t) for t in text.split(",") if t.strip())
    if not out:
        raise ValueError("empty list")
    return out


def _int_list(text):
    out = tuple(int(t) for t in text.split(",") if t.strip())
    if not out:
        raise ValueError("empty list")
    return out


def _window(text):
    lo, _, hi = text.partition(":")
    return float(lo), float(hi)


def _cmd_simulate(ns):
    p = FormAParams(alpha=ns.alpha, beta=ns.beta, gamma=ns.gamma, lam=ns.lam)
    x = sample_formA(p, ns.n, RandomStream(ns.seed, ns.stream_id))
    _emit_text("".join(repr(float(v)) + "\n" for v in x), ns.out, ns.quiet)
    return 0


def _estimate_report_strict(sample):
    est = estimate_strict(sample)
    report = {
        "alpha_tilde": 1.0 / math.sqrt(est.nu_tilde),
        "beta_tilde": None,
        "lambda_tilde": None,
        "nu_hat": est.nu_hat,
        "nu_tilde": est.nu_tilde,
        "theta_tilde": est.theta_tilde,
        "tau_tilde": est.tau_tilde,
        "n": len(sample),
        "m": len(sample),
        "dropped_zeros": 0,
        "clamped": est.clamped,
        "theta_clamped": False,
        "beta_indeterminate": False,
        "degenerate": False,
    }
    try:
        fa = from_strict(StrictParams(est.nu_tilde, est.theta_tilde,
                                      est.tau_tilde))
    except ValueError:
        # nu=1 with |theta|=1: no finite form-A counterpart.
        report["degenerate"] = True
        return report
    report["alpha_tilde"] = fa.alpha
    report["beta_tilde"] = fa.beta
    report["lambda_tilde"] = fa.lam
    if tanpi(fa.alpha / 2.0) == 0.0 and est.theta_tilde != 0.0:
        report["beta_indeterminate"] = True
    return report


def _cmd_estimate(ns):
    if ns.column is None:
        sample, digest = _read_value_lines(ns.input)
    else:
        header, data, digest = _read_csv_table(ns.input)
        sample = _column(header, data, ns.column)
    started = ns._started
    if ns.strict:
        report = _estimate_report_strict(sample)
    else:
        g = estimate_general(sample)
        report = {
            "alpha_tilde": g.alpha_tilde,
            "beta_tilde": g.beta_tilde,
            "lambda_tilde": g.lambda_tilde,
            "nu_hat": g.strict.nu_hat,
            "nu_tilde": g.strict.nu_tilde,
            "theta_tilde": g.strict.theta_tilde,
            "tau_tilde": g.strict.tau_tilde,
            "n": g.n,
            "m": g.m,
            "dropped_zeros": g.dropped_zeros,
            "clamped": g.strict.clamped,
            "theta_clamped": g.theta_clamped,
            "beta_indeterminate": g.beta_indeterminate,
            "degenerate": False,
        }
    _emit_json({"manifest": _manifest(ns, started,
                                      digests={ns.input: digest}),
                "report": report}, ns)
    return 0


def _cmd_moments(ns):
    rows = moment_table(StrictParams(ns.nu, ns.theta, ns.tau))
    _emit_csv(("order", "kind", "value"),
              [{"order": r.order, "kind": r.kind, "value": r.value}
               for r in rows], ns)
    return 0


def _bound_point(alpha, nu, theta, beta):
    if nu is None:
        if not 0.0 < alpha <= 2.0:
            raise _CliError("--alpha must lie in (0, 2]")
        nu = 1.0 / (alpha * alpha)
    elif not nu >= 0.25:
        raise _CliError("--nu must be >= 1/4")
    if theta is None:
        if beta is None:
            theta = 0.0
        else:
            theta = to_strict(FormAParams(alpha=1.0 / math.sqrt(nu),
                                          beta=beta)).theta
    s = StrictParams(nu, theta, 0.0)
    bad = validate_strict(s)
    if bad:
        raise _CliError(f"inadmissible bound point: {', '.join(bad)}")
    return s


def _cmd_bound(ns):
    if ns.alpha_grid and (ns.alpha is not None or ns.nu is not None):
        raise _CliError("--alpha-grid excludes --alpha and --nu")
    if ns.n_grid and ns.n is not None:
        raise _CliError("--n-grid excludes --n")
    if ns.alpha_grid:
        points = [(a, None) for a in ns.alpha_grid]
    elif ns.alpha is not None:
        points = [(ns.alpha, None)]
    elif ns.nu is not None:
        points = [(None, ns.nu)]
    else:
        raise _CliError("one of --alpha, --nu, --alpha-grid is required")
    if ns.n_grid:
        n_values = ns.n_grid
    elif ns.n is not None:
        n_values = (ns.n,)
    else:
        raise _CliError("--n or --n-grid is required")
    rows = []
    for a, nu in points:
        s = _bound_point(a, nu, ns.theta, ns.beta)
        for n in n_values:
            rows.append({"alpha": 1.0 / math.sqrt(s.nu),
                         **bound_report(s, int(n)).as_dict()})
    if len(rows) > 1:
        _emit_csv(tuple(rows[0].keys()), rows, ns)
    else:
        _emit_json({"manifest": _manifest(ns, ns._started),
                    "report": rows[0]}, ns)
    return 0


def _flux_constants(spec):
    if os.path.exists(spec):
        text, _ = _read_text(spec)
    else:
        text = spec
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise _CliError(f"flux constants are not valid JSON: {e}") from None
    wanted = {"c_light", "b_field", "delta_theta", "r_mean"}
    if not isinstance(obj, dict) or set(obj) != wanted:
        raise _CliError(f"flux constants must be a JSON object with keys "
                        f"{sorted(wanted)}")
    try:
        return FluxConstants(**{k: float(v) for k, v in obj.items()})
    except (TypeError, ValueError) as e:
        raise _CliError(f"bad flux constants: {e}") from None


def _cmd_analyze(ns):
    header, data, digest = _read_csv_table(ns.input)
    t = data[:, 0]
    if t.size < 3:
        raise _CliError("need at least 3 samples")
    dts = np.diff(t)
    if not np.all(dts > 0):
        raise _CliError("time column must be strictly increasing")
    dt = float(np.mean(dts))
    t0 = float(t[0])
    if data.shape[1] == 2:
        series = SignalSeries(values=data[:, 1], dt=dt, t0=t0,
                              channel=header[1])
    elif data.shape[1] == 4:
        if ns.flux_constants is None:
            raise _CliError("four-column input requires --flux-constants")
        k = _flux_constants(ns.flux_constants)

        def chan(col):
            return SignalSeries(values=data[:, col], dt=dt, t0=t0,
                                channel=header[col])

        series = compose_flux(chan(1), chan(2), chan(3), k)
    else:
        raise _CliError("expected 2 columns (time,value) or 4 "
                        "(time,dn,phi1,phi2)")
    started = ns._started
    with warnings.catch_warnings(record=True) as wlist:
        warnings.simplefilter("always")
        comp = analyze(series, bins=ns.bins, window=ns.window,
                       tail_fraction=ns.tail_fraction)
    notes = [str(w.message) for w in wlist
             if issubclass(w.category, AccuracyWarning)]
    if notes and not ns.allow_degraded:
        raise _AccuracyError("; ".join(sorted(set(notes))))
    f = comp.fitted
    report = {
        "fitted": {
            "alpha_tilde": f.alpha_tilde,
            "beta_tilde": f.beta_tilde,
            "lambda_tilde": f.lambda_tilde,
            "nu_tilde": f.strict.nu_tilde,
            "theta_tilde": f.strict.theta_tilde,
            "tau_tilde": f.strict.tau_tilde,
            "n": f.n,
            "m": f.m,
            "dropped_zeros": f.dropped_zeros,
            "clamped": f.strict.clamped,
            "theta_clamped": f.theta_clamped,
            "beta_indeterminate": f.beta_indeterminate,
        },
        "tail_slope_empirical": comp.tail_slope_empirical,
        "tail_slope_theoretical": comp.tail_slope_theoretical,
        "histogram": comp.histogram,
        "theoretical": comp.theoretical,
        "accuracy_warnings": sorted(set(notes)),
    }
    _emit_json({"manifest": _manifest(ns, started,
                                      digests={ns.input: digest}),
                "report": report}, ns)
    if ns.out_csv:
        rows = [{"bin_center": c, "empirical": e, "theoretical": th}
                for (c, e), (_, th) in zip(comp.histogram, comp.theoretical)]
        _emit_csv(("bin_center", "empirical", "theoretical"), rows, ns)
    if ns.fig:
        from .figures import save_density_figure
        save_density_figure(comp, ns.fig)
        if not ns.quiet:
            print(f"wrote {ns.fig}", file=sys.stderr)
    return 0


def _cmd_study(ns):
    cfg = StudyConfig(alpha_grid=ns.alpha_grid, beta=ns.beta,
                      n_grid=ns.n_grid, replications=ns.reps,
                      seed=ns.seed, workers=ns.workers)
    started = ns._started
    rows = variance_study(cfg)
    dicts = [r.as_dict() for r in rows]
    _emit_csv(STUDY_CSV_FIELDS, dicts, ns)
    if ns.out:
        _emit_json({"manifest": _manifest(ns, started,
                                          seeds={"seed": ns.seed}),
                    "rows": dicts}, ns)
    if ns.fig:
        from .figures import save_study_figure
        save_study_figure(rows, ns.fig)
        if not ns.quiet:
            print(f"wrote {ns.fig}", file=sys.stderr)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--out-csv", help="write the CSV table here instead of stdout")
    common.add_argument("--seed", type=int, default=0,
                        help="base RNG seed (default 0)")
    common.add_argument("--quiet", action="store_true",
                        help="suppress file-written notes on stderr")

    p = _Parser(prog="stabfit",
                description="Stable-law exponent estimation, mean-square "
                            "error bounds, sampling and signal analysis.")
    sub = p.add_subparsers(dest="cmd", required=True)

    ps = sub.add_parser("simulate", parents=[common],
                        help="draw stable variates, one per line")
    ps.add_argument("--alpha", type=float, required=True)
    ps.add_argument("--beta", type=float, default=0.0)
    ps.add_argument("--gamma", type=float, default=0.0)
    ps.add_argument("--lambda", dest="lam", type=float, default=1.0)
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--stream-id", type=int, default=0)
    ps.set_defaults(func=_cmd_simulate)

    pe = sub.add_parser("estimate", parents=[common],
                        help="estimate stable parameters from a sample")
    pe.add_argument("--input", required=True,
                    help="sample file, or '-' for stdin")
    pe.add_argument("--column",
                    help="CSV column (name or 0-based index); omit for "
                         "one-value-per-line input")
    mode = pe.add_mutually_exclusive_group()
    mode.add_argument("--strict", action="store_true",
                      help="assume a strictly stable sample (no transform)")
    mode.add_argument("--general", dest="strict", action="store_false",
                      help="triplet-transform pipeline (default)")
    pe.set_defaults(func=_cmd_estimate, strict=False)

    pm = sub.add_parser("moments", parents=[common],
                        help="closed-form moment table as CSV")
    pm.add_argument("--nu", type=float, required=True)
    pm.add_argument("--theta", type=float, required=True)
    pm.add_argument("--tau", type=float, required=True)
    pm.set_defaults(func=_cmd_moments)

    pb = sub.add_parser("bound", parents=[common],
                        help="mean-square error bound report")
    exa = pb.add_mutually_exclusive_group()
    exa.add_argument("--alpha", type=float)
    exa.add_argument("--nu", type=float)
    ext = pb.add_mutually_exclusive_group()
    ext.add_argument("--theta", type=float)
    ext.add_argument("--beta", type=float)
    pb.add_argument("--n", type=int, help="strictly stable sample size")
    pb.add_argument("--n-grid", type=_int_list,
                    help="comma-separated n sweep (emits CSV)")
    pb.add_argument("--alpha-grid", type=_float_list,
                    help="comma-separated alpha sweep (emits CSV)")
    pb.set_defaults(func=_cmd_bound)

    pa = sub.add_parser("analyze", parents=[common],
                        help="extrema-increment density analysis")
    pa.add_argument("--input", required=True,
                    help="CSV: (time,value) or (time,dn,phi1,phi2)")
    pa.add_argument("--flux-constants",
                    help="JSON (file or inline) with c_light, b_field, "
                         "delta_theta, r_mean")
    pa.add_argument("--window", type=_window,
                    help="absolute time window t_lo:t_hi in seconds")
    pa.add_argument("--bins", type=int, default=60)
    pa.add_argument("--tail-fraction", type=float, default=0.05)
    pa.add_argument("--allow-degraded", action="store_true",
                    help="tolerate density values outside the certified "
                         "accuracy box (exit 0 instead of 2)")
    pa.add_argument("--fig", help="also render the density comparison PNG here")
    pa.set_defaults(func=_cmd_analyze)

    pst = sub.add_parser("study", parents=[common],
                         help="variance-vs-bound Monte Carlo table")
    pst.add_argument("--alpha-grid", type=_float_list, required=True)
    pst.add_argument("--beta", type=float, default=0.0)
    pst.add_argument("--n-grid", type=_int_list, required=True)
    pst.add_argument("--reps", type=int, default=100)
    pst.add_argument("--workers", type=int, default=1)
    pst.add_argument("--fig", help="also render the study figure PNG here")
    pst.set_defaults(func=_cmd_study)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        ns._started = _utcnow()
        return ns.func(ns)
    except _CliError as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 1
    except _AccuracyError as e:
        print(json.dumps({"error": str(e), "class": "accuracy"}),
              file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
