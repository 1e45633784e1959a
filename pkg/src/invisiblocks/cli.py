"""Command-line front end.

Subcommands: design, singularity, spectrum, profile, verify.
Assemblies persist as versioned JSON (see specfile), tabular output as CSV
with 15 significant digits (override with INVISIBLOCKS_PRECISION).
Exit codes: 0 success/pass, 1 design or verification failure, 2 I/O or
parse failure.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import math
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import blocks as blocks_mod
from . import design as design_mod
from . import solver as solver_mod
from .blocks import block_support, refractive_index
from .design import DesignTarget
from .specfile import SpecFormatError, load_spec, save_spec

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_IO = 2

_COMPLEX_RE = re.compile(r"^\s*([+-]?[\d.eE+-]+)\s*,\s*([+-]?[\d.eE+-]+)\s*$")


def parse_complex(text: str) -> complex:
    """Parse 're,im' (whitespace tolerated) into a complex number."""
    match = _COMPLEX_RE.match(text)
    if not match:
        raise argparse.ArgumentTypeError(
            f"expected complex as 're,im' (e.g. '0,1.5'), got {text!r}"
        )
    try:
        return complex(float(match.group(1)), float(match.group(2)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex {text!r}: {exc}")


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part.strip()) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {exc}")


def _precision() -> int:
    try:
        return max(12, int(os.environ.get("INVISIBLOCKS_PRECISION", "15")))
    except ValueError:
        return 15


def _fmt(value: float) -> str:
    return f"{value:.{_precision()}g}"


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])


def _print_blocks(spec) -> None:
    for i, b in enumerate(spec.blocks):
        left, right = block_support(b)
        kind = "left-invisible " if b.conjugated else "right-invisible"
        print(
            f"  block {i}: {kind} alpha={b.alpha:.6e} n={b.n} "
            f"d={b.d:.6f} um support=[{left:.6f}, {right:.6f}] um"
        )


def cmd_design(args) -> int:
    target = DesignTarget(rl=args.rl, rr=args.rr, t=args.t, k0=args.k0)
    if args.plan == "paper6":
        plan = design_mod.plan_six(target, args.r_script)
    else:
        plan = design_mod.plan_addendum(target)
    print(f"plan ({args.plan}): {len(plan.entries)} block(s), "
          f"R-script = {plan.r_script:.6g}")
    for i, entry in enumerate(plan.entries):
        print(f"  entry {i}: {entry.side}-invisible target {entry.amplitude:.6g}")
    if not plan.entries:
        print("warning: free potential (no blocks needed)")
    spec = design_mod.assemble(
        plan, n=args.n, gap_min=args.gap, origin=args.origin, m_list=args.m_list
    )
    _print_blocks(spec)
    save_spec(spec, args.out)
    print(f"wrote {args.out}")
    report = design_mod.verify(spec, target, tol=args.tol)
    print(
        f"verify at k0: |d_rl| = {report.residual_rl:.3e}  "
        f"|d_rr| = {report.residual_rr:.3e}  |d_t| = {report.residual_t:.3e}  "
        f"-> {'pass' if report.passed else 'FAIL'} (tol {report.tolerance:g})"
    )
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_singularity(args) -> int:
    beta = design_mod.solve_beta(args.alpha, args.m, args.n)
    spec = design_mod.design_singularity(args.alpha, args.n, args.m, args.k0)
    if args.cpa:
        spec = design_mod.conjugate_spec(spec)
    rr_plus = blocks_mod.block_triple(spec.blocks[0])
    rl_minus = blocks_mod.block_triple(spec.blocks[1])
    print(f"solved beta = {beta:.6e}")
    if args.cpa:
        print("conjugated assembly (coherent perfect absorber at k0)")
    else:
        amp_plus = rr_plus.rr
        amp_minus = rl_minus.rl
        print(f"left block  R^r = {amp_plus:.6g}")
        print(f"right block R^l = {amp_minus:.6g}")
        print(f"product R^l * R^r = {amp_plus * amp_minus:.6g}")
    _print_blocks(spec)
    save_spec(spec, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    spec = load_spec(args.spec)
    table = solver_mod.scan_spectrum(spec, args.kmin, args.kmax, args.points)
    rows = [
        (
            float(table.k[i]),
            float(table.k[i] / spec.k0),
            float(table.rl2[i]),
            float(table.rr2[i]),
            float(table.t2[i]),
            float(table.arg_t[i]),
            int(table.capped[i]),
        )
        for i in range(len(table))
    ]
    _write_csv(args.out, ["k", "k_over_k0", "Rl2", "Rr2", "T2", "argT", "capped"], rows)
    print(f"wrote {args.out} ({len(table)} rows)")
    if args.fig:
        from .plotting import save_spectrum_figure

        save_spectrum_figure(table, spec.k0, args.fig)
        print(f"wrote {args.fig}")
    return EXIT_OK


def cmd_profile(args) -> int:
    spec = load_spec(args.spec)
    x = np.linspace(args.xmin, args.xmax, args.points)
    v = np.asarray(blocks_mod.evaluate_spec(spec, x))
    index = np.asarray(refractive_index(spec, x))
    rows = [
        (
            float(x[i]),
            float(v[i].real),
            float(v[i].imag),
            float(index[i].real - 1.0),
            float(index[i].imag),
        )
        for i in range(len(x))
    ]
    _write_csv(args.out, ["x", "re_v", "im_v", "re_n_minus_1", "im_n"], rows)
    print(f"wrote {args.out} ({len(x)} rows)")
    if args.fig:
        from .plotting import save_profile_figure

        save_profile_figure(x, v, index, args.fig)
        print(f"wrote {args.fig}")
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    target = DesignTarget(rl=args.rl, rr=args.rr, t=args.t, k0=args.k0)
    report = design_mod.verify(spec, target, tol=args.tol)
    print(f"achieved rl = {report.achieved.rl:.6g}")
    print(f"achieved rr = {report.achieved.rr:.6g}")
    print(f"achieved t  = {report.achieved.t:.6g}")
    print(
        f"residuals: |d_rl| = {report.residual_rl:.3e}  "
        f"|d_rr| = {report.residual_rr:.3e}  |d_t| = {report.residual_t:.3e}"
    )
    print(f"{'pass' if report.passed else 'FAIL'} (tol {report.tolerance:g})")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invisiblocks",
        description="Design and verify 1D scattering potentials assembled "
        "from unidirectionally invisible building blocks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="plan and realize prescribed amplitudes at k0")
    p.add_argument("--rl", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--rr", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--t", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--k0", type=float, required=True, help="wavenumber (rad/um)")
    p.add_argument("--plan", choices=("paper6", "addendum"), default="paper6")
    p.add_argument("--r-script", type=parse_complex, default=None, metavar="RE,IM",
                   help="free nonzero parameter of the reflectionless core")
    p.add_argument("--n", type=int, default=300, help="length quantum count per block")
    p.add_argument("--gap", type=float, default=0.0, help="minimum inter-block gap (um)")
    p.add_argument("--origin", type=float, default=0.0,
                   help="left edge of the first block (um), auto placement only")
    p.add_argument("--m-list", type=parse_int_list, default=None,
                   help="explicit branch indices, one per planned block")
    p.add_argument("--tol", type=float, default=1e-3, help="verification tolerance")
    p.add_argument("--out", required=True, help="output spec path (JSON)")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("singularity",
                       help="two-block spectral-singularity (or CPA) design")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k0", type=float, required=True)
    p.add_argument("--cpa", action="store_true",
                   help="conjugate the design (coherent perfect absorber)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_singularity)

    p = sub.add_parser("spectrum", help="scan scattering coefficients over k")
    p.add_argument("--spec", required=True)
    p.add_argument("--kmin", type=float, required=True)
    p.add_argument("--kmax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--fig", default=None, help="also render a figure to this path")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("profile", help="sample potential and refractive index")
    p.add_argument("--spec", required=True)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--fig", default=None, help="also render a figure to this path")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="check a saved spec against target amplitudes")
    p.add_argument("--spec", required=True)
    p.add_argument("--rl", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--rr", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--t", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--k0", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-3)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, SpecFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
