"""Command-line interface: differentiate, benchmark, precompute."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import api
from .benchmark import emit_plotdata, run_benchmark, write_partition_trace
from .config import build_config
from .operators import build_operators, load_operators, save_operators
from .tikhonov import TikhonovConfig


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=9, help="maximum mode index (default 9)")
    parser.add_argument("--gamma", type=float, default=1.0, help="window oversampling (default 1)")
    parser.add_argument("--T", type=float, default=6.0, help="extension ratio (default 6)")
    parser.add_argument("--r", type=int, default=6, help="maximum bisection depth (default 6)")
    parser.add_argument("--rho", type=float, default=2.0, help="acceptance safety factor (default 2)")


def _config_from(args) -> dict:
    return dict(n=args.n, gamma=args.gamma, T=args.T, r=args.r, rho=args.rho)


def _read_samples(path: Path):
    """Read a samples CSV with header 'x,y' or 'y'; returns (x or None, y)."""
    with open(path) as fh:
        header = fh.readline().strip().lower()
        columns = [c.strip() for c in header.split(",")]
        if columns == ["x", "y"]:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
            if data.shape[1] != 2:
                raise ValueError(f"{path}: expected two columns x,y")
            return data[:, 0], data[:, 1]
        if columns == ["y"]:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
            return None, data[:, 0]
    raise ValueError(f"{path}: first line must be a header 'x,y' or 'y', got {header!r}")


def _fmt(value) -> str:
    return repr(float(value))


def _cmd_differentiate(args) -> int:
    x_col, y = _read_samples(Path(args.input))
    if x_col is not None:
        a = args.a if args.a is not None else float(x_col[0])
        b = args.b if args.b is not None else float(x_col[-1])
    else:
        if args.a is None or args.b is None:
            raise ValueError("input has no x column; --a and --b are required")
        a, b = args.a, args.b
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")

    cfg = build_config(**_config_from(args))
    api.check_sample_count(y.size, cfg)

    out = Path(args.out)
    if args.method == "m1":
        ops = None
        if args.cache:
            try:
                ops = load_operators(args.cache, cfg)
            except (OSError, ValueError):
                ops = None
        if ops is None:
            ops = build_operators(cfg)
        result = api.differentiate(
            y, a, b, args.delta1, cfg=cfg, ops=ops,
            order=args.order, with_function=args.with_function,
        )
        write_partition_trace(result.leaves, out.with_name(out.stem + "_partition.tsv"))
    else:
        if args.order != 1:
            raise ValueError("--order > 1 is supported for method m1 only")
        result = api.differentiate_baseline(
            y, a, b, args.delta1, with_function=args.with_function
        )

    header = "x,dfdx" + (",f_denoised" if result.fvalues is not None else "")
    lines = [header]
    for i in range(result.x.size):
        row = f"{_fmt(result.x[i])},{_fmt(result.dvalues[i])}"
        if result.fvalues is not None:
            row += f",{_fmt(result.fvalues[i])}"
        lines.append(row)
    out.write_text("\n".join(lines) + "\n")

    manifest = {
        "command": "differentiate",
        "input": str(args.input),
        "out": str(out),
        "a": a, "b": b,
        "delta1": args.delta1,
        "method": args.method,
        "order": args.order,
        "with_function": bool(args.with_function),
        "config": {"n": cfg.n, "gamma": cfg.gamma, "T": cfg.T, "r": cfg.r,
                   "rho": cfg.rho, "m": cfg.m, "L": cfg.L, "M": cfg.M},
    }
    out.with_name(out.stem + "_manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    return 0


def _parse_functions(spec: str) -> list[str]:
    """Expand 'f1,f3' and range forms like 'f1..f6' into a function id list."""
    out: list[str] = []
    for token in spec.split(","):
        token = token.strip()
        if ".." in token:
            lo, hi = token.split("..", 1)
            for i in range(int(lo.lstrip("f")), int(hi.lstrip("f")) + 1):
                out.append(f"f{i}")
        elif token:
            out.append(token)
    return out


def _cmd_benchmark(args) -> int:
    functions = _parse_functions(args.functions)
    deltas = [float(tok) for tok in args.deltas.split(",") if tok.strip()]
    methods = [tok.strip() for tok in args.methods.split(",") if tok.strip()]
    cfg = build_config(**_config_from(args))
    records = run_benchmark(
        functions, deltas, args.seeds, methods, outdir=args.outdir,
        cfg=cfg, cfg2=TikhonovConfig(), interval=(args.a, args.b),
    )
    emit_plotdata(records, args.outdir)
    print(f"wrote {len(records)} benchmark records under {args.outdir}")
    return 0


def _cmd_precompute(args) -> int:
    cfg = build_config(**_config_from(args))
    ops = build_operators(cfg)
    save_operators(args.cache, cfg, ops)
    print(f"wrote operator cache for M={cfg.M} to {args.cache}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fexdiff",
        description="Adaptive Fourier-extension differentiation of noisy samples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("differentiate", help="differentiate one sampled signal")
    p.add_argument("--input", required=True, help="CSV with header 'x,y' or 'y'")
    p.add_argument("--a", type=float, default=None, help="left endpoint (required for y-only CSV)")
    p.add_argument("--b", type=float, default=None, help="right endpoint (required for y-only CSV)")
    p.add_argument("--delta1", type=float, required=True, help="per-sample noise bound")
    _add_config_args(p)
    p.add_argument("--method", choices=["m1", "m2"], default="m1",
                   help="m1: adaptive multi-interval; m2: single-interval Tikhonov baseline")
    p.add_argument("--order", type=int, default=1, help="derivative order (m1 only, default 1)")
    p.add_argument("--with-function", action="store_true", help="include denoised values")
    p.add_argument("--cache", default=None, help="operator cache file to reuse if valid")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_differentiate)

    p = sub.add_parser("benchmark", help="run the function/noise/method sweep")
    p.add_argument("--functions", default="f1..f6", help="comma list or range, e.g. f1..f6")
    p.add_argument("--deltas", default="1e-2,1e-3,1e-4,1e-5", help="comma list of noise levels")
    p.add_argument("--seeds", type=int, default=10, help="noise realizations per cell (default 10)")
    p.add_argument("--methods", default="m1,m2", help="comma list from {m1,m2}")
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    _add_config_args(p)
    p.add_argument("--outdir", required=True, help="directory for CSV/TSV artifacts")
    p.set_defaults(func=_cmd_benchmark)

    p = sub.add_parser("precompute", help="build and cache the fitting operators")
    _add_config_args(p)
    p.add_argument("--cache", required=True, help="cache file to write (.npz)")
    p.set_defaults(func=_cmd_precompute)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
