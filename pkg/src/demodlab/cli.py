"""Command-line surface tying the modules into reproducible runs.

Subcommands: sample, recover, sweep, diagnose, window, am-demo, enob.
Exit codes: 0 success, 2 configuration error, 3 I/O error.  Configurations
are validated before any file is created, and all randomness derives from
the --seed flag, so a rerun with the same flags is byte-identical.
"""

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io
from .diagnostics import coherence, cumulative_coherence, max_entry, submatrix_condition
from .experiments import (
    GridConfig,
    am_demo,
    enob,
    fit_rate_law,
    fom,
    min_rate_search,
    recovery_success,
    success_grid,
    window_demo,
)
from .seeding import derive_rng
from .signals import draw_model_a
from .solvers import SolverConfig, cosamp, irls_l1, l0_oracle, l1_denoise
from .system import build_system, draw_chipping

__all__ = ["main", "RunConfig", "ConfigError"]


class ConfigError(ValueError):
    """Invalid run configuration; reported with exit code 2."""


@dataclass
class RunConfig:
    """Validated parameters for one command invocation."""

    command: str
    out: Path
    seed: int = 0
    w: int | None = None
    r_values: list = field(default_factory=list)
    k_values: list = field(default_factory=list)
    trials: int = 100
    solver: str = "irls"
    eta: float = 0.0
    options: dict = field(default_factory=dict)


def _parse_int_list(text):
    """Parse '8', '8,16,32', or '8:64:8' (inclusive range) into a list."""
    text = str(text)
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 2:
            start, stop, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            start, stop, step = parts
        else:
            raise ConfigError(f"bad range {text!r}; use start:stop[:step]")
        if step < 1 or stop < start:
            raise ConfigError(f"bad range {text!r}")
        return list(range(start, stop + 1, step))
    try:
        return [int(p) for p in text.split(",") if p != ""]
    except ValueError as exc:
        raise ConfigError(f"bad integer list {text!r}") from exc


def _check_w(w):
    if w is None or w < 2 or w % 2 != 0:
        raise ConfigError(f"--w must be even and >= 2, got {w}")
    return int(w)


def _check_dims(w, r_values, k_values):
    for r in r_values:
        if not 1 <= r <= w:
            raise ConfigError(f"--r value {r} outside [1, W={w}]")
    for k in k_values:
        if not 0 <= k <= w:
            raise ConfigError(f"--k value {k} outside [0, W={w}]")


def _solver_config(args):
    return SolverConfig(max_iters=args.max_iters) if args.max_iters else SolverConfig()


def _ensure_outdir(path):
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------- commands


def _cmd_sample(args):
    w = _check_w(args.w)
    r_values = _parse_int_list(args.r) if args.r else []
    k_values = _parse_int_list(args.k) if args.k is not None else []
    if len(r_values) != 1 or len(k_values) != 1:
        raise ConfigError("sample needs exactly one --r and one --k")
    _check_dims(w, r_values, k_values)
    r, k = r_values[0], k_values[0]
    config = {"w": w, "r": r, "k": k, "seed": args.seed}

    out = _ensure_outdir(args.out)
    rng = derive_rng(args.seed, "sample", w, r, k)
    s = draw_model_a(w, k, rng)
    system = io.make_system(w, r, args.seed)
    y = system.apply(s)
    io.write_json(out / "signal.json", io.signal_to_json(s))
    io.write_json(out / "samples.json", io.samples_to_json(y, w))
    io.write_json(out / "system.json", io.system_to_json(system, seed=args.seed))
    io.write_manifest(out, "sample", args.seed, config)
    return 0


def _cmd_recover(args):
    solver = args.solver
    if solver not in ("irls", "bpdn", "cosamp", "l0"):
        raise ConfigError(f"unknown solver {solver!r}")
    if args.eta < 0:
        raise ConfigError("--eta must be nonnegative")
    in_dir = Path(getattr(args, "in"))
    out = _ensure_outdir(args.out)

    system = io.system_from_json(io.read_json(in_dir / "system.json"))
    y, w = io.samples_from_json(io.read_json(in_dir / "samples.json"))
    if w != system.w or len(y) != system.r:
        raise ConfigError("samples and system dimensions disagree")
    truth = None
    signal_path = in_dir / "signal.json"
    if signal_path.exists():
        truth = io.signal_from_json(io.read_json(signal_path))

    config = _solver_config(args)
    if solver == "irls":
        result = irls_l1(system, y, config)
    elif solver == "bpdn":
        result = l1_denoise(system, y, args.eta, config)
    elif solver == "cosamp":
        if args.k is None:
            raise ConfigError("cosamp needs --k")
        result = cosamp(system, y, _parse_int_list(args.k)[0], config)
    else:
        if args.k is None:
            raise ConfigError("the l0 oracle needs --k")
        result = l0_oracle(system, y, _parse_int_list(args.k)[0], config)

    doc = {
        "schema_version": io.SCHEMA_VERSION,
        "kind": "recovery_result",
        "solver": solver,
        "converged": bool(result.converged),
        "iterations": int(result.iterations),
        "residual_l2": float(result.residual_l2),
        "estimate_re_im": io.complex_to_interleaved(result.estimate),
    }
    if truth is not None:
        norm = np.linalg.norm(truth)
        err = np.linalg.norm(result.estimate - truth)
        doc["relative_error"] = float(err / norm) if norm > 0 else float(err)
        doc["success"] = recovery_success(truth, result)
    io.write_json(out / "result.json", doc)
    io.write_manifest(
        out, "recover", None, {"solver": solver, "eta": args.eta, "in": str(in_dir)},
        results={"converged": doc["converged"], "residual_l2": doc["residual_l2"]},
    )
    return 0


def _cmd_sweep(args):
    w = _check_w(args.w)
    k_values = _parse_int_list(args.k) if args.k is not None else []
    if not k_values:
        raise ConfigError("sweep needs --k")
    if args.kind == "grid":
        r_values = _parse_int_list(args.r) if args.r else []
        if not r_values:
            raise ConfigError("grid sweep needs --r")
    else:
        r_values = []
    _check_dims(w, r_values, k_values)
    if args.trials < 20:
        raise ConfigError("--trials must be >= 20")
    if not 0.0 < args.target < 1.0:
        raise ConfigError("--target must lie in (0, 1)")
    out = _ensure_outdir(args.out)
    config = {
        "kind": args.kind, "w": w, "k": k_values, "r": r_values,
        "trials": args.trials, "target": args.target, "seed": args.seed,
    }

    if args.kind == "grid":
        grid = success_grid(
            GridConfig(
                w=w, k_values=tuple(k_values), r_values=tuple(r_values),
                trials_per_cell=args.trials, master_seed=args.seed,
            )
        )
        rows = [
            (w, k, r, args.trials, int(grid.success_counts[i, j]))
            for i, k in enumerate(k_values)
            for j, r in enumerate(r_values)
        ]
        io.write_csv(out / "grid.csv", io.GRID_COLUMNS, rows)
        io.write_manifest(out, "sweep", args.seed, config)
    else:
        points = []
        for k in k_values:
            rng = derive_rng(args.seed, "minrate", w, k)
            points.append((k, w, min_rate_search(w, k, args.trials, args.target, rng)))
        io.write_csv(out / "minrate.csv", io.MINRATE_COLUMNS, [(w, k, r) for (k, w2, r) in points])
        results = {}
        valid = [(k, w2, r) for (k, w2, r) in points if r > 0]
        if len(valid) >= 3:
            fit = fit_rate_law(valid)
            results["fit"] = {"slope": fit.slope, "intercept": fit.intercept}
        io.write_manifest(out, "sweep", args.seed, config, results=results)
    return 0


def _cmd_diagnose(args):
    w = _check_w(args.w)
    r_values = _parse_int_list(args.r) if args.r else []
    if len(r_values) != 1:
        raise ConfigError("diagnose needs exactly one --r")
    r = r_values[0]
    _check_dims(w, r_values, [])
    out = _ensure_outdir(args.out)
    config = {
        "w": w, "r": r, "k": args.k, "draws": args.draws,
        "seed": args.seed, "exhaustive": bool(args.exhaustive),
    }

    rows = []
    if args.exhaustive:
        if w > 12:
            raise ConfigError("exhaustive chipping enumeration is limited to W <= 12")
        gram_sum = np.zeros((w, w), dtype=complex)
        count = 0
        for signs in itertools.product((-1.0, 1.0), repeat=w):
            phi = build_system(w, r, np.array(signs)).dense()
            gram_sum += phi.conj().T @ phi
            count += 1
        deviation = np.max(np.abs(gram_sum / count - np.eye(w)))
        rows.append((0, "mean_gram_max_abs_dev", float(deviation)))
        rows.append((0, "chipping_sequences", count))
    else:
        k = args.k if args.k is not None else min(8, r)
        if not 1 <= k <= min(r, w - 1):
            raise ConfigError(f"--k must lie in [1, min(R, W-1)] for diagnostics, got {k}")
        for draw in range(args.draws):
            rng = derive_rng(args.seed, "diagnose", w, r, draw)
            system = build_system(w, r, draw_chipping(w, rng))
            omega = np.sort(rng.choice(w, size=k, replace=False))
            rows.append((draw, "max_entry", max_entry(system)))
            rows.append((draw, "coherence", coherence(system)))
            rows.append((draw, "mu2_random_support", cumulative_coherence(system, omega)))
            rows.append((draw, "submatrix_condition", submatrix_condition(system, omega)))
    io.write_csv(out / "diag.csv", io.DIAG_COLUMNS, rows)
    io.write_manifest(out, "diagnose", args.seed, config)
    return 0


def _cmd_window(args):
    if args.omega_prime == int(args.omega_prime):
        raise ConfigError("--omega-prime must be nonharmonic (non-integer)")
    if args.order < 1:
        raise ConfigError("--order must be >= 1")
    k_values = _parse_int_list(args.k) if args.k else [4, 8, 16, 32, 64]
    if min(k_values) < 1:
        raise ConfigError("--k values must be >= 1")
    out = _ensure_outdir(args.out)
    config = {"omega_prime": args.omega_prime, "order": args.order, "k": k_values}

    table = window_demo(args.omega_prime, args.order, k_values)
    rows = list(zip(table.k_values, table.err_raw, table.err_windowed))
    io.write_csv(out / "window.csv", io.WINDOW_COLUMNS, rows)
    io.write_manifest(
        out, "window", None, config,
        results={"slope_raw": table.slope_raw, "slope_windowed": table.slope_windowed},
    )
    return 0


def _cmd_am_demo(args):
    w = _check_w(args.w)
    r_values = _parse_int_list(args.r) if args.r else []
    if not r_values:
        raise ConfigError("am-demo needs --r")
    _check_dims(w, r_values, [])
    if args.k is None:
        raise ConfigError("am-demo needs --k (message Fourier coefficients)")
    k = _parse_int_list(args.k)[0]
    if args.noise < 0:
        raise ConfigError("--noise must be nonnegative")
    if k < 2 or k % 2 != 0:
        raise ConfigError("--k must be an even message-coefficient count >= 2")
    if args.carrier <= k or args.carrier + k > w // 2 - 1:
        raise ConfigError("carrier/message band overflow")
    out = _ensure_outdir(args.out)
    config = {
        "w": w, "k": k, "carrier": args.carrier, "r": r_values,
        "noise": args.noise, "seed": args.seed,
    }

    rows = []
    for r in r_values:
        rng = derive_rng(args.seed, "am", w, k, r)
        snr_db, _ = am_demo(k, w, r, args.carrier, args.noise, rng)
        rows.append((w, k, r, args.carrier, args.noise, snr_db))
    io.write_csv(out / "amdemo.csv", io.AMDEMO_COLUMNS, rows)
    io.write_manifest(out, "am-demo", args.seed, config)
    return 0


def _cmd_enob(args):
    value = enob(args.snr)
    doc = {"schema_version": io.SCHEMA_VERSION, "kind": "enob", "snr_db": args.snr, "enob": value}
    if args.w is not None and args.k is not None:
        w = _check_w(args.w)
        doc["fom"] = fom(value, w, lambda _r: args.p_diss_const, args.k)
        doc["fom_conventional"] = 2.0 ** (value - 1.0) * w / args.p_diss_const
    if args.out:
        out = _ensure_outdir(args.out)
        io.write_json(out / "enob.json", doc)
    else:
        print(json.dumps(doc, sort_keys=True))
    return 0


# ---------------------------------------------------------------- plumbing


def build_parser():
    parser = argparse.ArgumentParser(prog="demodlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", required=out_required)
        p.add_argument("--max-iters", dest="max_iters", type=int, default=None)

    p = sub.add_parser("sample", help="draw a signal + demodulator and write the samples")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--k", required=True)
    common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("recover", help="recover an amplitude vector from a sample run")
    p.add_argument("--in", dest="in", required=True)
    p.add_argument("--solver", default="irls", choices=["irls", "bpdn", "cosamp", "l0"])
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--k", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--max-iters", dest="max_iters", type=int, default=None)
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("sweep", help="success grid or minimum-rate sweep, CSV output")
    p.add_argument("--kind", choices=["grid", "minrate"], default="grid")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--r", default=None)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--target", type=float, default=0.99)
    common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("diagnose", help="matrix statistics over seeded draws")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--draws", type=int, default=100)
    p.add_argument("--exhaustive", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("window", help="windowing decay study")
    p.add_argument("--omega-prime", dest="omega_prime", type=float, required=True)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--k", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_window)

    p = sub.add_parser("am-demo", help="synthetic AM acquisition and demodulation")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--carrier", type=int, required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--noise", type=float, default=0.0)
    common(p)
    p.set_defaults(func=_cmd_am_demo)

    p = sub.add_parser("enob", help="effective number of bits / figure of merit")
    p.add_argument("--snr", type=float, required=True)
    p.add_argument("--w", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--p-diss-const", dest="p_diss_const", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_enob)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"demodlab: configuration error: {exc}", file=sys.stderr)
        return 2
    except (io.SchemaError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"demodlab: I/O error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"demodlab: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
