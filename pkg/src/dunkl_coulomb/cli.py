"""Command-line front end: spectrum tables, state samples, Gram matrices, verification.

Exit status: 0 on success, 1 when a verification or Gram tolerance fails,
2 on bad flags or invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import spectra, verification, wavefunctions
from .operators import ModelParams
from .spectra import QuantumNumbers
from .term_algebra import as_rational, fmt_rational

GRAM_TOLERANCE = 1e-8


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3/4 or -1, got {text!r}")


def _grid(text: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like WxH, got {text!r}")
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be positive")
    return w, h


def _box(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        vals = ()
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"box must be x0,x1,y0,y1, got {text!r}")
    return vals  # type: ignore[return-value]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _params(args) -> ModelParams:
    return ModelParams(args.mu1, args.mu2, args.alpha)


def _qn(args) -> QuantumNumbers:
    return QuantumNumbers(args.l, args.two_n, args.e1, args.e2)


# ---------------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    params = _params(args)
    params.require_bound_states()
    rows = []
    for N in range(args.max_level + 1):
        level = spectra.enumerate_level(params, N)
        for qn in level:
            rec = {"level": N}
            rec.update(spectra.spectrum_record(params, qn))
            rec["degeneracy"] = len(level)
            rows.append(rec)
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.out)
    return 0


def cmd_state(args) -> int:
    params = _params(args)
    bundle = wavefunctions.full_wavefunction(_qn(args), params)
    # eigenfunctions carry no negative power of r, so the origin is a safe sample point
    assert all(k[2] >= 0 for k in bundle.exact_unnormalized.keys())
    rows = wavefunctions.sample_grid(bundle, args.grid, args.box)
    buf = io.StringIO()
    buf.write("x1,x2,psi\n")
    for x, y, v in rows:
        buf.write(f"{_fmt(x)},{_fmt(y)},{_fmt(v)}\n")
    _emit(buf.getvalue(), args.out)
    if args.out is not None:
        side = bundle.sidecar()
        side.update(
            mu1=fmt_rational(params.mu1),
            mu2=fmt_rational(params.mu2),
            alpha=fmt_rational(params.alpha),
            grid=list(args.grid),
            box=list(args.box),
        )
        args.out.with_suffix(".json").write_text(json.dumps(side, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_gram(args) -> int:
    params = _params(args)
    params.require_bound_states()
    if args.kind == "angular":
        states, G = wavefunctions.angular_gram(params, args.max_two_n, args.quad_order)
    elif args.kind == "radial":
        states, G = wavefunctions.radial_gram(params, args.two_n, args.max_l, args.quad_order)
    elif args.kind == "level":
        states, G = wavefunctions.state_gram(params, spectra.states_up_to(params, args.max_level), args.quad_order)
    else:
        states, G = wavefunctions.state_gram(params, [_qn(args)], args.quad_order)
    dev = np.abs(G - np.eye(len(G)))
    off = dev - np.diag(np.diag(dev))
    result = {
        "kind": args.kind,
        "labels": [qn.as_dict() for qn in states],
        "matrix": G.tolist(),
        "max_offdiag": float(off.max()) if len(G) > 1 else 0.0,
        "max_diag_dev": float(np.diag(dev).max()),
        "tolerance": GRAM_TOLERANCE,
    }
    result["pass"] = bool(dev.max() <= GRAM_TOLERANCE)
    if args.format == "json":
        _emit(json.dumps(result, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        for row in G:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        _emit(buf.getvalue(), args.out)
    return 0 if result["pass"] else 1


def cmd_verify(args) -> int:
    explicit = any(v is not None for v in (args.mu1, args.mu2, args.alpha))
    if explicit:
        params_list = [ModelParams(args.mu1 or 0, args.mu2 or 0, args.alpha if args.alpha is not None else -1)]
    else:
        params_list = list(verification.DEFAULT_PARAMS)
    only = None
    if args.suite:
        only = [name for chunk in args.suite for name in chunk.split(",") if name]
    config = verification.SuiteConfig(seed=args.seed)
    reports = verification.run_suite(params_list, config, only=only, mutate=args.mutate)
    payload = [r.to_dict(timing=not args.no_timing) for r in reports]
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    for r in reports:
        print(f"{r.status.upper():4s} {r.name} {r.params['mu1']},{r.params['mu2']},{r.params['alpha']}", file=sys.stderr)
    return 0 if verification.all_passed(reports) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dunkl-coulomb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def model_flags(p, defaults=True):
        d = (Fraction(0), Fraction(0), Fraction(-1)) if defaults else (None, None, None)
        p.add_argument("--mu1", type=_rational, default=d[0], help="reflection coupling mu1 (p/q)")
        p.add_argument("--mu2", type=_rational, default=d[1], help="reflection coupling mu2 (p/q)")
        p.add_argument("--alpha", type=_rational, default=d[2], help="Coulomb strength, negative for bound states")

    def state_flags(p):
        p.add_argument("--l", type=int, default=0)
        p.add_argument("--two-n", type=int, default=0, help="twice the angular quantum number n")
        p.add_argument("--e1", type=int, default=0, choices=(0, 1))
        p.add_argument("--e2", type=int, default=0, choices=(0, 1))

    p = sub.add_parser("spectrum", help="energy levels with kappa, beta, J3^2 and degeneracy")
    model_flags(p)
    p.add_argument("--max-level", type=int, default=3)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("state", help="sample a normalized eigenfunction on a grid (CSV + sidecar JSON)")
    model_flags(p)
    state_flags(p)
    p.add_argument("--grid", type=_grid, default=(41, 41), help="WxH sample counts")
    p.add_argument("--box", type=_box, default=(-10.0, 10.0, -10.0, 10.0), help="x0,x1,y0,y1 (use --box=...)")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("gram", help="quadrature Gram matrices of normalized states")
    model_flags(p)
    state_flags(p)
    p.add_argument("--kind", choices=("angular", "radial", "level", "state"), default="angular")
    p.add_argument("--max-two-n", type=int, default=6)
    p.add_argument("--max-l", type=int, default=5)
    p.add_argument("--max-level", type=int, default=3)
    p.add_argument("--quad-order", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("verify", help="run the identity suite; exit 1 on any failure")
    model_flags(p, defaults=False)
    p.add_argument("--suite", action="append", help=f"restrict to checks: {', '.join(verification.CHECKS)}")
    p.add_argument("--mutate", choices=verification.CHECKS, help="apply the documented mutation to one check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "suite", None):
        bad = [n for chunk in args.suite for n in chunk.split(",") if n and n not in verification.CHECKS]
        if bad:
            parser.error(f"unknown suite {bad[0]!r}")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
