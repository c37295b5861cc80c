"""Command-line interface.

Subcommands: ``generate``, ``count``, ``estimate``, ``balance``, ``plan``,
``experiment`` and ``replay``.  Exit codes: 0 success, 2 invalid input,
3 infeasible plan without ``--downscale``, 4 undefined balance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .analytics import repetition_plan, space_model
from .graph import (
    GraphValidationError,
    UndefinedBalanceError,
    balance_exact,
    count_triangles_exact,
    generate_er_signed,
    graph_params,
)
from .orchestrator import (
    ClassicalHints,
    Hints,
    InfeasiblePlanError,
    WorkerError,
    WorkerPool,
    balance_classical,
    balance_hybrid,
    classical_count,
    exact_classical_hints,
    exact_count_hints,
    exact_hints,
    hint_sensitivity,
    hybrid_count,
    manifest,
)
from .estimators import target_stream
from .sampling import split_seed
from .stream import ParseError, parse_stream, serialize_graph, serialize_stream, to_stream

SEED_ENV = "SIGNEDTRI_SEED"
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_UNDEFINED = 4

TABLE_COLUMNS = ["n", "instance", "p_E", "p_plus", "E_plus", "E_minus", "Delta_E", "Delta_V",
                 "T0", "T1", "T2", "T3", "B", "B_C", "B_H", "relerr_C", "relerr_H", "flag"]
VIOLIN_COLUMNS = ["n", "p_E", "p_plus", "instance", "algorithm", "rel_error"]


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


# ----------------------------------------------------------------- helpers

def _floats(text: str, count: int, what: str) -> list:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"{what} needs {count} comma-separated numbers")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what}: not a number in {text!r}") from None


def _hints_arg(text: str):
    return _floats(text, 3, "--hints m,T,dE")


def _rates_arg(text: str):
    if text.strip().lower() == "jk":
        return "jk"
    vals = _floats(text, 2, "--rates pE,pV")
    for v in vals:
        if not 0 < v <= 1:
            raise argparse.ArgumentTypeError("rates must lie in (0, 1]")
    return vals


def _prob(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {v}")
    return v


def _unit(text: str) -> float:
    v = _prob(text)
    if v == 0:
        raise argparse.ArgumentTypeError("value must lie in (0, 1]")
    return v


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def resolve_seed(flag) -> int:
    """``--seed`` wins, then the environment variable, then 0."""
    if flag is not None:
        return int(flag)
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise CliError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return 0


def _read_stream(path: str):
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_stream(data)
    except ParseError as exc:
        raise CliError(f"{path}: {exc}") from None


def _emit(text: str, path=None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x, digits):
    if isinstance(x, float):
        if math.isnan(x):
            return ""
        return f"{x:.{digits}f}" if digits is not None else repr(x)
    return x


def _csv(rows: list, columns: list, digits=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c, ""), digits) for c in columns])
    return buf.getvalue()


def _pool(args, seed) -> WorkerPool:
    heavy = getattr(args, "heavy_workers", None)
    return WorkerPool(light_workers=args.workers, heavy_workers=heavy if heavy is not None else args.workers,
                      master_seed=seed, max_parallel=args.max_parallel, downscale=args.downscale)


def _jk_rates(t, delta_e, delta_v):
    # recommended classical rates, clamped into (0, 1]
    p_e = min(1.0, max(1e-9, delta_v / max(t, 1.0)))
    p_v = min(1.0, max(delta_v / max(delta_e, 1.0), 1.0 / math.sqrt(max(delta_v, 1.0))))
    return [p_e, p_v]


def _write_manifest(args, command, seed, config, runs):
    if getattr(args, "manifest", None):
        m = manifest(command, seed, config, runs)
        m["version"] = __version__
        with open(args.manifest, "w", encoding="utf-8") as fh:
            json.dump(m, fh, indent=2, sort_keys=True)


# ---------------------------------------------------------------- commands

def cmd_generate(args) -> int:
    seed = resolve_seed(args.seed)
    g = generate_er_signed(args.n, args.p_edge, args.p_plus, seed)
    if args.order_seed is None:
        data = serialize_graph(g)
    else:
        data = serialize_stream(to_stream(g, args.order_seed))
    _emit(data.decode("ascii"), args.output)
    return 0


def _count_row(s) -> dict:
    g = s.to_graph()
    c = count_triangles_exact(g)
    gp = graph_params(g)
    pos, neg = g.count_signs()
    row = {"n": g.n, "m": g.m, "E_plus": pos, "E_minus": neg, "Delta_E": gp.delta_e,
           "Delta_V": gp.delta_v, "T0": c.t0, "T1": c.t1, "T2": c.t2, "T3": c.t3, "T": c.total}
    try:
        row["B"] = balance_exact(c)
    except UndefinedBalanceError:
        row["B"] = None
    return row


def cmd_count(args) -> int:
    s = _read_stream(args.input)
    row = _count_row(s)
    cols = ["n", "m", "E_plus", "E_minus", "Delta_E", "Delta_V", "T0", "T1", "T2", "T3", "T", "B"]
    if args.out == "json":
        _emit(json.dumps(row, sort_keys=True) + "\n")
    else:
        _emit(_csv([{k: ("" if v is None else v) for k, v in row.items()}], cols, args.digits))
    if row["B"] is None:
        print("balance undefined: the graph has no triangles", file=sys.stderr)
        return EXIT_UNDEFINED
    return 0


def _hybrid_hints(args, s, target):
    if args.exact_hints:
        return exact_count_hints(s, target)[0]
    if args.hints is None:
        raise CliError("hybrid mode needs --exact-hints or --hints m,T,dE")
    return Hints(*args.hints)


def _classical_hints(args, s, target, balance=False):
    if args.exact_hints:
        return exact_classical_hints(s) if balance else exact_count_hints(s, target)[1]
    if args.hints is None:
        raise CliError("classical mode needs --exact-hints or --hints m,T,dE")
    _, t, de = args.hints
    dv = args.delta_v if args.delta_v is not None else t
    return ClassicalHints(t=t, delta_e=de, delta_v=dv)


def _rates(args, h: ClassicalHints):
    if args.rates is None:
        raise CliError("classical mode needs explicit --rates pE,pV (or --rates jk)")
    if args.rates == "jk":
        return _jk_rates(h.t, h.delta_e, h.delta_v)
    return list(args.rates)


def cmd_estimate(args) -> int:
    s = _read_stream(args.input)
    seed = resolve_seed(args.seed)
    pool = _pool(args, seed)
    out: dict = {"target": args.target, "mode": args.mode, "master_seed": seed}
    runs = []
    if args.mode == "hybrid":
        h = _hybrid_hints(args, s, args.target)
        t, mode = target_stream(s, args.target)
        rep = hybrid_count(t, mode, args.eps, args.delta, h, seed, pool, args.target, args.k)
        out["estimate"] = rep.combined
        out["report"] = rep.to_dict(include_raw=args.raw)
        runs.append(rep.to_dict(include_raw=False))
        if args.sensitivity:
            out["sensitivity"] = hint_sensitivity(
                lambda hh: hybrid_count(t, mode, args.eps, args.delta, hh, seed, pool, args.target,
                                        args.k).combined, h)
    else:
        h = _classical_hints(args, s, args.target)
        rates = _rates(args, h)
        rep = classical_count(s, args.target, args.eps, args.delta, rates, h, seed, pool)
        out["estimate"] = rep.estimate
        out["report"] = rep.to_dict(include_raw=args.raw)
        runs.append(rep.to_dict(include_raw=False))
    if args.out == "json":
        _emit(json.dumps(out, sort_keys=True) + "\n")
    else:
        _emit(_csv([{"target": args.target, "mode": args.mode, "estimate": out["estimate"],
                     "master_seed": seed}], ["target", "mode", "estimate", "master_seed"], args.digits))
    _write_manifest(args, "estimate", seed, _config(args, seed), runs)
    return 0


def cmd_balance(args) -> int:
    s = _read_stream(args.input)
    seed = resolve_seed(args.seed)
    pool = _pool(args, seed)
    out: dict = {"mode": args.mode, "master_seed": seed}
    runs = []
    modes = ["classical", "hybrid"] if args.mode == "both" else [args.mode]
    try:
        exact = balance_exact(count_triangles_exact(s.to_graph())) if args.exact_hints else None
    except UndefinedBalanceError:
        print("balance undefined: the graph has no triangles", file=sys.stderr)
        return EXIT_UNDEFINED
    if exact is not None:
        out["exact"] = exact
    for mode in modes:
        if mode == "hybrid":
            if args.exact_hints:
                h = exact_hints(s)
            elif args.hints is None:
                raise CliError("hybrid mode needs --exact-hints or --hints m,T,dE")
            else:
                h = Hints(*args.hints)
            res = balance_hybrid(s, args.eps, args.delta, h, seed, pool)
            out["hybrid"] = res.estimate
            out["hybrid_report"] = res.to_dict(include_raw=args.raw)
            runs.extend(r.to_dict(include_raw=False) for r in res.reports.values())
        else:
            h = _classical_hints(args, s, 1, balance=True)
            rates = _rates(args, h)
            rep = balance_classical(s, args.eps, args.delta, rates, h, seed, pool)
            out["classical"] = rep.estimate
            out["classical_report"] = rep.to_dict(include_raw=args.raw)
            runs.append(rep.to_dict(include_raw=False))
    if args.out == "json":
        _emit(json.dumps(out, sort_keys=True) + "\n")
    else:
        row = {k: out.get(k, "") for k in ("exact", "classical", "hybrid", "master_seed")}
        _emit(_csv([row], ["exact", "classical", "hybrid", "master_seed"], args.digits))
    _write_manifest(args, "balance", seed, _config(args, seed), runs)
    return 0


def cmd_plan(args) -> int:
    if args.input:
        s = _read_stream(args.input)
        h = exact_count_hints(s, args.target)[0]
        m, t, de, n = h.m, h.t, h.delta_e, s.n
    elif args.hints is not None:
        m, t, de = args.hints
        n = args.n
    else:
        raise CliError("plan needs an input stream or --hints m,T,dE")
    if min(m, t, de) <= 0:
        raise CliError("hints must be positive (the target count may be zero on this input)")
    plan = repetition_plan(args.eps, args.delta, args.k, m, t, de)
    halves = repetition_plan(args.eps / 2, args.delta / 2, args.k, m, t, de)
    report = {
        "plan": plan.to_dict(),
        "hybrid_sides": halves.to_dict(),
        "light_workers": halves.light_runs,
        "heavy_workers": halves.heavy_runs,
        "space": space_model(m, t, de, args.eps, min(args.delta, 0.999999), n=n),
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def experiment_rows(ns, pes, pps, instances, eps, delta, seed, rates, pool_kw, log=None):
    """Run the balance protocol on a grid; returns (table rows, violin rows, manifest entries)."""
    rows, violin, runs = [], [], []
    idx = 0
    for n in ns:
        for pe in pes:
            for pp in pps:
                for rep in range(instances):
                    graph_seed = [seed, idx, 0]
                    order_seed = [seed, idx, 1]
                    run_seed = split_seed(seed, idx)
                    g = generate_er_signed(n, pe, pp, graph_seed)
                    s = to_stream(g, order_seed)
                    row = {"n": n, "instance": rep, "p_E": pe, "p_plus": pp}
                    cr = _count_row(s)
                    row.update({k: cr[k] for k in ("E_plus", "E_minus", "Delta_E", "Delta_V",
                                                    "T0", "T1", "T2", "T3")})
                    entry = {"index": idx, "n": n, "p_E": pe, "p_plus": pp, "instance": rep,
                             "graph_seed": graph_seed, "order_seed": order_seed, "run_seed": run_seed}
                    b = cr["B"]
                    flags = []
                    if b is None:
                        flags.append("undefined-balance")
                        row.update({"B": float("nan"), "B_C": float("nan"), "B_H": float("nan"),
                                    "relerr_C": float("nan"), "relerr_H": float("nan")})
                    else:
                        row["B"] = b
                        pool = WorkerPool(master_seed=run_seed, **pool_kw)
                        try:
                            c = balance_classical(s, eps, delta, rates, exact_classical_hints(s),
                                                  run_seed, pool)
                            row["B_C"] = c.estimate
                            entry["classical"] = c.to_dict(include_raw=False)
                        except UndefinedBalanceError:
                            row["B_C"] = float("nan")
                            flags.append("classical-undefined")
                        try:
                            r = balance_hybrid(s, eps, delta, exact_hints(s), run_seed, pool)
                            row["B_H"] = r.estimate
                            entry["hybrid"] = {k: v.to_dict(include_raw=False) for k, v in r.reports.items()}
                        except UndefinedBalanceError:
                            row["B_H"] = float("nan")
                            flags.append("hybrid-undefined")
                        for alg, col in (("classical", "B_C"), ("hybrid", "B_H")):
                            err = abs(row[col] - b) / b if b > 0 else abs(row[col] - b)
                            row["relerr_" + col[-1]] = err
                            if not math.isnan(err):
                                violin.append({"n": n, "p_E": pe, "p_plus": pp, "instance": rep,
                                               "algorithm": alg, "rel_error": err})
                    row["flag"] = ";".join(flags)
                    rows.append(row)
                    runs.append(entry)
                    if log is not None:
                        log(row)
                    idx += 1
    return rows, violin, runs


def cmd_experiment(args) -> int:
    seed = resolve_seed(args.seed)
    downscale = not args.no_downscale
    pool_kw = {"light_workers": args.workers, "heavy_workers": args.heavy_workers,
               "max_parallel": args.max_parallel, "downscale": downscale}
    t0 = time.time()

    def log(row):
        if not args.quiet:
            print(f"[{time.time() - t0:7.1f}s] n={row['n']} p_E={row['p_E']} p_plus={row['p_plus']} "
                  f"#{row['instance']} B={_fmt(row['B'], 4)} B_C={_fmt(row['B_C'], 4)} "
                  f"B_H={_fmt(row['B_H'], 4)} {row['flag']}", file=sys.stderr)

    rows, violin, runs = experiment_rows(args.grid_n, args.grid_p_edge, args.grid_p_plus,
                                         args.instances, args.eps, args.delta, seed,
                                         list(args.rates), pool_kw, log)
    os.makedirs(args.out_dir, exist_ok=True)
    if args.out == "json":
        with open(os.path.join(args.out_dir, "table.json"), "w", encoding="utf-8") as fh:
            json.dump([{k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in r.items()}
                       for r in rows], fh, indent=1, sort_keys=True)
    else:
        with open(os.path.join(args.out_dir, "table.csv"), "w", encoding="utf-8") as fh:
            fh.write(_csv(rows, TABLE_COLUMNS, args.digits))
    with open(os.path.join(args.out_dir, "violin.csv"), "w", encoding="utf-8") as fh:
        fh.write(_csv(violin, VIOLIN_COLUMNS, args.digits))
    config = _config(args, seed)
    config["downscale"] = downscale
    m = manifest("experiment", seed, config, runs)
    m["version"] = __version__
    path = args.manifest or os.path.join(args.out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(m, fh, indent=1, sort_keys=True)
    return 0


def cmd_replay(args) -> int:
    try:
        with open(args.manifest_file, encoding="utf-8") as fh:
            m = json.load(fh)
        argv = m["config"]["argv"]
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read manifest {args.manifest_file}: {exc}") from None
    argv = list(argv)
    if args.out_dir and m.get("command") == "experiment":
        argv += ["--out-dir", args.out_dir]
    if args.manifest:
        argv += ["--manifest", args.manifest]
    return main(argv)


_CONFIG_SKIP = {"func", "manifest", "out_dir", "quiet", "argv"}


def _config(args, seed) -> dict:
    d = {k: v for k, v in vars(args).items() if k not in _CONFIG_SKIP}
    d["seed"] = seed
    d["argv"] = _argv_for_replay(args, seed)
    return d


def _argv_for_replay(args, seed) -> list:
    argv = list(getattr(args, "argv", []))
    out, skip = [], False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in ("--manifest", "--out-dir", "--seed"):
            skip = True
            continue
        if tok.startswith(("--manifest=", "--out-dir=", "--seed=")):
            continue
        out.append(tok)
    return out + ["--seed", str(seed)]


# ------------------------------------------------------------------ parser

def _common_estimation(p, default_rates=None):
    p.add_argument("--eps", type=_unit, default=0.1)
    p.add_argument("--delta", type=_unit, default=0.1)
    p.add_argument("--seed", type=int, default=None, help=f"master seed (else ${SEED_ENV}, else 0)")
    p.add_argument("--rates", type=_rates_arg, default=default_rates,
                   help="classical sampling rates pE,pV, or 'jk' for the rates derived from the hints")
    p.add_argument("--exact-hints", action="store_true", help="compute m, T, Delta_E from the input")
    p.add_argument("--hints", type=_hints_arg, default=None, metavar="m,T,dE")
    p.add_argument("--delta-v", type=float, default=None, help="Delta_V hint for classical mode (default T)")
    p.add_argument("--workers", type=int, default=None, help="worker cap per side and target")
    p.add_argument("--heavy-workers", type=int, default=None, help="separate cap for heavy workers")
    p.add_argument("--downscale", action="store_true", help="shrink plans that exceed the worker cap")
    p.add_argument("--max-parallel", type=int, default=1)
    p.add_argument("--out", choices=["csv", "json"], default="json")
    p.add_argument("--digits", type=int, default=None, help="truncate floats for display")
    p.add_argument("--manifest", default=None, help="write a replay manifest here")
    p.add_argument("--raw", action="store_true", help="include per-worker outputs in JSON")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="signedtri", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a signed Erdos-Renyi graph in stream format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-edge", type=_prob, required=True)
    p.add_argument("--p-plus", type=_prob, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--order-seed", type=int, default=None, help="shuffle arrivals (default: canonical order)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("count", help="exact triangle counts, parameters and balance")
    p.add_argument("input")
    p.add_argument("--out", choices=["csv", "json"], default="csv")
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("estimate", help="estimate one triangle count")
    p.add_argument("input")
    p.add_argument("--target", choices=["T0", "T1", "T2", "T3", "T"], default="T1")
    p.add_argument("--mode", choices=["classical", "hybrid"], default="hybrid")
    p.add_argument("--k", type=int, default=None, help="override the light/heavy threshold")
    p.add_argument("--sensitivity", action="store_true", help="repeat with hints x0.5 and x2")
    _common_estimation(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("balance", help="estimate the triangular balance index")
    p.add_argument("input")
    p.add_argument("--mode", choices=["classical", "hybrid", "both"], default="hybrid")
    _common_estimation(p)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("plan", help="repetition counts, threshold k and space model")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--target", choices=["T0", "T1", "T2", "T3", "T"], default="T1")
    p.add_argument("--eps", type=_unit, default=0.1)
    p.add_argument("--delta", type=_unit, default=0.1)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="vertex count for the log n factor and qubits")
    p.add_argument("--hints", type=_hints_arg, default=None, metavar="m,T,dE")
    p.add_argument("--exact-hints", action="store_true", help="(default when an input is given)")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("experiment", help="balance protocol over a grid of random graphs")
    p.add_argument("--grid-n", type=_int_list, default=[10, 20, 30, 40, 50])
    p.add_argument("--grid-p-edge", type=_float_list, default=[0.5, 0.75])
    p.add_argument("--grid-p-plus", type=_float_list, default=[0.25, 0.5, 0.75])
    p.add_argument("--instances", type=int, default=5)
    p.add_argument("--eps", type=_unit, default=0.1)
    p.add_argument("--delta", type=_unit, default=0.1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--rates", type=_rates_arg, default=[0.7, 0.7], help="classical rates pE,pV")
    p.add_argument("--workers", type=int, default=300_000, help="light/classical worker cap per target")
    p.add_argument("--heavy-workers", type=int, default=60_000)
    p.add_argument("--no-downscale", action="store_true", help="fail instead of shrinking plans")
    p.add_argument("--max-parallel", type=int, default=1)
    p.add_argument("--out", choices=["csv", "json"], default="csv")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--out-dir", default="experiment-out")
    p.add_argument("--manifest", default=None, help="manifest path (default OUT_DIR/manifest.json)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("replay", help="re-run a command recorded in a manifest")
    p.add_argument("manifest_file")
    p.add_argument("--out-dir", default=None)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_replay)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    if getattr(args, "rates", None) == "jk" and args.command == "experiment":
        parser.error("--rates jk needs per-instance hints; give explicit rates for experiments")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InfeasiblePlanError as exc:
        print(f"error: {exc} (pass --downscale to shrink the plan)", file=sys.stderr)
        return EXIT_INFEASIBLE
    except UndefinedBalanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except WorkerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, GraphValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
