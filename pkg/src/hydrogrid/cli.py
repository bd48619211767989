"""Batch command-line front end.

Commands emit spectra, wavefunction tables, coefficient tables, Pollaczek
evaluations, convergence sweeps and the verification report, as CSV
(RFC 4180) or JSON (UTF-8).  Output is deterministic: identical
configuration yields byte-identical files.  Rational flags are parsed
exactly ("p/q" or decimal strings); float literals are rejected in exact
mode so exactness never silently degrades.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import verify as verify_mod
from .coordinate import (ZeroPivotError, alpha_inner, continuum_energy,
                         eigen_data, laguerre_ref, wavefunction)
from .numerics import (QuadraticSurd, parse_rational, surd_to_float,
                       surd_to_json)
from .pollaczek import mass_point, pollaczek_mass_closed

OUT_DIR_ENV = "HYDROGRID_OUT_DIR"

COMMANDS = ("spectrum", "wavefunction", "pollaczek", "coeffs", "verify",
            "converge")


@dataclass(frozen=True)
class RunConfig:
    command: str
    delta: Fraction = Fraction(1)
    deltas: tuple[Fraction, ...] = ()
    n_lo: int = 1
    n_hi: int = 1
    k_max: int = 20
    j_max: int = 20
    mode: str = "exact"
    precision_bits: int = 96
    output: str = "csv"
    out_path: str | None = None


def _fmt_float(value: float) -> str:
    return format(value, ".17g")


def _scalar_cell(value: QuadraticSurd, mode: str, bits: int) -> str:
    if mode == "exact":
        return str(value)
    return _fmt_float(surd_to_float(value, bits))


def _scalar_json(value: QuadraticSurd, mode: str, bits: int):
    if mode == "exact":
        return surd_to_json(value)
    return surd_to_float(value, bits)


def _rows_spectrum(cfg: RunConfig):
    header = ["n", "mu", "E", "q"]
    rows = []
    records = []
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        ed = eigen_data(n, cfg.delta)
        rows.append([str(n)] + [_scalar_cell(v, cfg.mode, cfg.precision_bits)
                                for v in (ed.mu, ed.E, ed.q)])
        records.append({
            "n": n,
            "mu": _scalar_json(ed.mu, cfg.mode, cfg.precision_bits),
            "E": _scalar_json(ed.E, cfg.mode, cfg.precision_bits),
            "q": _scalar_json(ed.q, cfg.mode, cfg.precision_bits),
        })
    return header, rows, records


def _rows_wavefunction(cfg: RunConfig):
    header = ["n", "k", "u"]
    rows = []
    records = []
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        for k in range(1, cfg.k_max + 1):
            u = wavefunction(n, cfg.delta, k)
            rows.append([str(n), str(k),
                         _scalar_cell(u, cfg.mode, cfg.precision_bits)])
            records.append({"n": n, "k": k,
                            "u": _scalar_json(u, cfg.mode, cfg.precision_bits)})
    return header, rows, records


def _rows_pollaczek(cfg: RunConfig):
    header = ["m", "j", "P"]
    rows = []
    records = []
    for m in range(cfg.n_lo, cfg.n_hi + 1):
        mp = mass_point(m, cfg.delta)
        for j in range(cfg.j_max + 1):
            value = pollaczek_mass_closed(j, mp)
            rows.append([str(m), str(j),
                         _scalar_cell(value, cfg.mode, cfg.precision_bits)])
            records.append({"m": m, "j": j,
                            "P": _scalar_json(value, cfg.mode,
                                              cfg.precision_bits)})
    return header, rows, records


def _rows_coeffs(cfg: RunConfig):
    header = ["n", "k", "m", "ell_n_minus_k", "inner", "assembled",
              "order_normalized"]
    rows = []
    records = []
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        kmax = min(cfg.k_max, n - 1)
        table = alpha_inner(n, kmax)
        ell = laguerre_ref(n).coefficients
        for k in range(0, kmax + 1):
            assembled = table.assembled(k, cfg.delta)
            for m in range(0, k // 2 + 1):
                inner = table.inner_coeff(k, m)
                if m >= 1:
                    normalized = str(inner * n ** (2 * m)
                                     * Fraction(math.factorial(n - k + 2 * m - 1),
                                                math.factorial(n - k))
                                     / math.comb(k // 2, m))
                else:
                    normalized = ""
                rows.append([str(n), str(k), str(m), str(ell[n - k]),
                             str(inner),
                             _scalar_cell(assembled, cfg.mode,
                                          cfg.precision_bits),
                             normalized])
                records.append({
                    "n": n, "k": k, "m": m,
                    "ell_n_minus_k": str(ell[n - k]),
                    "inner": str(inner),
                    "assembled": _scalar_json(assembled, cfg.mode,
                                              cfg.precision_bits),
                    "order_normalized": normalized or None,
                })
    return header, rows, records


def _rows_converge(cfg: RunConfig):
    header = ["n", "delta", "E", "E_plus_continuum", "ratio_to_delta_sq"]
    rows = []
    records = []
    deltas = cfg.deltas or (cfg.delta,)
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        for delta in deltas:
            ed = eigen_data(n, delta)
            energy = surd_to_float(ed.E, cfg.precision_bits)
            gap = energy - float(continuum_energy(n))
            ratio = gap / float(delta) ** 2
            rows.append([str(n), str(delta), _fmt_float(energy),
                         _fmt_float(gap), _fmt_float(ratio)])
            records.append({"n": n, "delta": str(delta), "E": energy,
                            "E_plus_continuum": gap,
                            "ratio_to_delta_sq": ratio})
    return header, rows, records


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _resolve_out_path(path: str) -> str:
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out_path is None:
        sys.stdout.write(text)
        return
    target = _resolve_out_path(cfg.out_path)
    parent = os.path.dirname(target)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        if cfg.command == "verify":
            report = verify_mod.run_verification(cfg.delta, cfg.n_lo,
                                                 cfg.n_hi, cfg.k_max)
            if cfg.output == "csv":
                header = ["check", "passed"]
                rows = [[name, str(passed).lower()]
                        for name, passed in report["checks"].items()]
                text = _csv_text(header, rows)
            else:
                text = _json_text(report)
            _write(cfg, text)
            for line in verify_mod.format_report_lines(report):
                print(line, file=sys.stderr)
            return 0 if report["all_passed"] else 1

        builders = {
            "spectrum": _rows_spectrum,
            "wavefunction": _rows_wavefunction,
            "pollaczek": _rows_pollaczek,
            "coeffs": _rows_coeffs,
            "converge": _rows_converge,
        }
        header, rows, records = builders[cfg.command](cfg)
        if cfg.output == "csv":
            text = _csv_text(header, rows)
        else:
            payload = {
                "command": cfg.command,
                "delta": str(cfg.delta),
                "mode": cfg.mode,
                "rows": records,
            }
            if cfg.command == "converge":
                payload["deltas"] = [str(d) for d in (cfg.deltas or (cfg.delta,))]
            text = _json_text(payload)
        _write(cfg, text)
        return 0
    except ZeroPivotError as exc:
        print(f"error: {exc} (n={exc.n}, k={exc.k}, m={exc.m})",
              file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _parse_range(text: str) -> tuple[int, int]:
    s = text.strip()
    if ".." in s:
        lo_s, hi_s = s.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(s)
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hydrogrid",
        description="Exact spectra, eigenfunctions and Pollaczek polynomial "
                    "tables for the lattice hydrogen radial problem.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_n="1..4") -> None:
        p.add_argument("--delta", default="1",
                       help="lattice step, as 'p/q' or a decimal string")
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--precision-bits", type=int, default=96,
                       help="working precision for float conversions")
        p.add_argument("--output", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, metavar="PATH",
                       help=f"output file (default stdout; relative paths "
                            f"resolve against ${OUT_DIR_ENV})")
        p.add_argument("--n", default=default_n, metavar="LO..HI",
                       help="state index range")

    p = sub.add_parser("spectrum", help="eigenvalue table (mu, E, q)")
    common(p)

    p = sub.add_parser("wavefunction", help="lattice eigenfunction table")
    common(p)
    p.add_argument("--kmax", type=int, default=20, help="last grid index")

    p = sub.add_parser("pollaczek",
                       help="P_j at the mass points x_m (--n gives the m range)")
    common(p, default_n="0..3")
    p.add_argument("--jmax", type=int, default=20, help="highest degree")

    p = sub.add_parser("coeffs", help="inner/assembled coefficient tables")
    common(p)
    p.add_argument("--kmax", type=int, default=8,
                   help="deepest level k (capped at n-1 per state)")

    p = sub.add_parser("verify", help="run the cross-module invariant suite")
    common(p, default_n="1..8")
    p.add_argument("--kmax", type=int, default=40,
                   help="rows per eigenvector identity check")

    p = sub.add_parser("converge", help="continuum-limit energy sweep")
    common(p, default_n="1..3")
    p.add_argument("--deltas", default="1/5,1/10,1/20",
                   help="comma-separated list of lattice steps")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    allow_exp = args.mode == "float"
    delta = parse_rational(args.delta, allow_exponent=allow_exp)
    n_lo, n_hi = _parse_range(args.n)
    deltas: tuple[Fraction, ...] = ()
    if getattr(args, "deltas", None):
        deltas = tuple(parse_rational(part, allow_exponent=allow_exp)
                       for part in args.deltas.split(","))
    return RunConfig(
        command=args.command,
        delta=delta,
        deltas=deltas,
        n_lo=n_lo,
        n_hi=n_hi,
        k_max=getattr(args, "kmax", 20),
        j_max=getattr(args, "jmax", 20),
        mode=args.mode,
        precision_bits=args.precision_bits,
        output=args.output,
        out_path=args.out,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
