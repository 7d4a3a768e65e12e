"""Command-line interface: point evaluation, sweeps, DOS tables, exact
moments, and a self-test battery.

Records are emitted as CSV (default) or JSON with 17 significant digits so
doubles survive a round trip.  Exit codes: 0 success, 1 malformed flags or
I/O error, 2 divergent/non-converged evaluation, 3 failed self-test.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import oracles
from .green import GreenResult, dos, green_local, green_sweep
from .quadrature import QuadratureConfig

__all__ = ["main"]

_CSV_FIELDS = ["d", "omega", "re", "im", "abs_error", "piece_j", "flags"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _flags(res: GreenResult) -> list[str]:
    out = []
    if res.van_hove_adjacent:
        out.append("van_hove_adjacent")
    if res.divergent:
        out.append("divergent")
    if not res.converged:
        out.append("nonconverged")
    return out


def _record(res: GreenResult) -> dict:
    return {
        "d": res.d,
        "omega": res.omega,
        "re": res.value.real,
        "im": res.value.imag,
        "abs_error": res.abs_error,
        "piece_j": res.piece_j,
        "flags": _flags(res),
    }


def _emit(records: list[dict], fmt: str, out_path: str | None,
          fields: list[str] | None = None) -> None:
    fields = fields or _CSV_FIELDS
    if fmt == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for rec in records:
            row = []
            for key in fields:
                val = rec[key]
                if isinstance(val, float):
                    row.append(_fmt(val))
                elif isinstance(val, list):
                    row.append(";".join(val))
                else:
                    row.append(str(val))
            writer.writerow(row)
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cfg(args) -> QuadratureConfig:
    return QuadratureConfig(rel_tol=args.rel_tol)


def cmd_eval(args) -> int:
    res = green_local(args.d, args.omega, _cfg(args))
    _emit([_record(res)], args.format, None)
    return 2 if (res.divergent or not res.converged) else 0


def cmd_dos(args) -> int:
    res = green_local(args.d, args.omega, _cfg(args))
    rec = {
        "d": res.d,
        "omega": res.omega,
        "dos": math.inf if (res.divergent and res.value.imag == -math.inf)
        else (math.nan if res.divergent else -res.value.imag / math.pi),
        "abs_error": res.abs_error / math.pi,
        "piece_j": res.piece_j,
        "flags": _flags(res),
    }
    _emit([rec], args.format, None,
          fields=["d", "omega", "dos", "abs_error", "piece_j", "flags"])
    return 2 if (res.divergent or not res.converged) else 0


def cmd_sweep(args) -> int:
    if args.steps < 2:
        print("error: --steps must be >= 2", file=sys.stderr)
        return 1
    grid = np.linspace(args.omega_min, args.omega_max, args.steps)
    results = green_sweep(args.d, [float(w) for w in grid], _cfg(args))
    try:
        _emit([_record(r) for r in results], args.format, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_moments(args) -> int:
    if not 0 <= args.kmax <= 200:
        print("error: --kmax must be in [0, 200]", file=sys.stderr)
        return 1
    table = oracles.moments(args.d, args.kmax)
    records = [
        {
            "d": args.d,
            "k": 2 * k,
            "numerator": m.numerator,
            "denominator": m.denominator,
            "decimal": float(m),
        }
        for k, m in enumerate(table.moments)
    ]
    if args.format == "json":
        for rec in records:  # big integers serialize exactly in JSON
            rec["numerator"] = int(rec["numerator"])
    _emit(records, args.format, None,
          fields=["d", "k", "numerator", "denominator", "decimal"])
    return 0


def _selftest_checks(level: str):
    tight = QuadratureConfig()
    fast = QuadratureConfig.fast()

    def golden():
        r = green_local(3, 0.0, tight)
        return max(abs(r.value.imag + 0.8964407887768), abs(r.value.real)), 5e-13

    def chain_closed_form():
        worst = 0.0
        for w in np.linspace(-3.0, 3.0, 25):
            if abs(abs(w) - 1.0) < 1e-9:
                continue
            g = green_local(1, float(w), tight).value
            worst = max(worst, abs(g - oracles.g1_closed_form(float(w))))
        return worst, 1e-12

    def symmetry():
        worst = 0.0
        for w in np.linspace(0.1, 4.7, 12):
            a = green_local(4, float(w), tight).value
            b = green_local(4, -float(w), tight).value
            worst = max(worst, abs(b + a.conjugate()))
        return worst, 1e-12

    def laurent_triangle():
        worst = 0.0
        for d in range(1, 5):
            w = float(2 * d)
            g = green_local(d, w, tight).value
            worst = max(worst, abs(g - oracles.laurent_green(d, w, 60)))
        return worst, 1e-10

    checks = [
        ("golden_g3_zero", golden),
        ("chain_closed_form", chain_closed_form),
        ("symmetry_d4", symmetry),
        ("laurent_triangle", laurent_triangle),
    ]
    if level == "full":

        def normalization():
            worst = 0.0
            for d in range(1, 8):
                tol_d = 1e-6 if d <= 2 else 1e-8
                err = abs(oracles.dos_normalization(d, fast) - 1.0)
                worst = max(worst, err / tol_d)
            return worst, 1.0  # worst error relative to its own tolerance

        def convolution():
            cfg = QuadratureConfig(rel_tol=1e-10, abs_tol=1e-12, max_levels=11)
            worst = 0.0
            for w in (0.0, 1.5):
                worst = max(
                    worst,
                    abs(oracles.dos_convolution(1, 2, w, cfg) - dos(3, w, tight)),
                )
            return worst, 1e-8

        def fourier():
            v = oracles.bessel_j_fourier(3, 0.0, 1.2e6, 10_000_000)
            return abs(v - complex(0.0, -0.8964407887768)), 1e-3

        checks += [
            ("dos_normalization", normalization),
            ("dos_convolution", convolution),
            ("bessel_j_fourier", fourier),
        ]
    return checks


def cmd_selftest(args) -> int:
    failed = 0
    for name, check in _selftest_checks(args.level):
        err, tol = check()
        ok = err <= tol
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name:<22s} "
              f"discrepancy={err:.3e}  tolerance={tol:.1e}")
    print(f"selftest: {'all checks passed' if not failed else f'{failed} check(s) FAILED'}")
    return 3 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latgreen",
        description="Hypercubic lattice Green functions G_d(omega) and DOS.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--d", type=int, required=True, help="lattice dimension")
        p.add_argument("--rel-tol", type=float, default=1e-13)
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("eval", help="evaluate G_d at one frequency")
    add_common(p)
    p.add_argument("--omega", type=float, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dos", help="evaluate the density of states at one frequency")
    add_common(p)
    p.add_argument("--omega", type=float, required=True)
    p.set_defaults(func=cmd_dos)

    p = sub.add_parser("sweep", help="evaluate G_d on a uniform frequency grid")
    add_common(p)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("moments", help="exact spectral moments as fractions")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("selftest", help="run the oracle cross-check battery")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if getattr(args, "d", 1) < 1:
        print("error: --d must be >= 1", file=sys.stderr)
        return 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
