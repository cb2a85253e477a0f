"""Command-line interface.

    xiconst compute   --n-max 20 --methods series,contour
    xiconst verify    --suite all
    xiconst figures   --n-max 64 --out-dir figs
    xiconst zeros     --zeros-file zeros.txt --n-max 3
    xiconst stieltjes --k-max 30 --bits 256

Settings come from flags, then XICONST_* environment variables, then a
key=value file given with --config, then built-in defaults.  Exit codes:
0 success, 1 verification failure, 2 usage or input error, 3 numeric error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import mpmath
from mpmath import mp, mpf

from . import verification as ver
from .constants import ConstantsRecord, c_from_stieltjes, d_exact, lambda_from_zeros, s1, s2
from .contour import ContourPlan, bundled_zeros, c_contour, load_zeros
from .errors import (
    CapError,
    DomainError,
    InconclusiveError,
    InsufficientDataError,
    PrecisionError,
    ZeroFileError,
)
from .numeric_kernel import DEFAULT_POLICY, to_decimal
from .series import eta_series, f_series, lambda_series
from .stieltjes import stieltjes_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

METHODS = ("series", "stieltjes", "contour", "zeros")
SUITES = ("appendixA", "lemma1", "corollary", "funceq", "bounds", "eta",
          "asymptotics", "three_way", "lambda1", "logzeta", "appendixB")
ENV_PREFIX = "XICONST_"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    n_max: int | None = None
    k_max: int | None = None
    bits: int | None = None
    methods: tuple = ("series",)
    radius: str = "0.9"
    samples: int | None = None
    zeros_file: str | None = None
    out_dir: str | None = None
    suite: tuple = ("all",)
    format: str = "json"

    def validate(self) -> None:
        if not self.methods:
            raise UsageError("methods must not be empty")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise UsageError(f"unknown methods: {', '.join(sorted(unknown))}")
        if self.n_max is not None and self.n_max < 1:
            raise UsageError("n-max must be at least 1")
        if self.k_max is not None and self.k_max < 0:
            raise UsageError("k-max must be nonnegative")
        if self.bits is not None and self.bits < 16:
            raise UsageError("bits must be at least 16")
        if not 0 < float(self.radius) < 1:
            raise UsageError("radius must lie in (0, 1)")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        bad = set(self.suite) - set(SUITES) - {"all"}
        if bad:
            raise UsageError(f"unknown suite: {', '.join(sorted(bad))}")


def _split(value) -> tuple:
    if isinstance(value, (tuple, list)):
        return tuple(value)
    return tuple(v.strip() for v in str(value).split(",") if v.strip())


_CONVERT = {
    "n_max": int, "k_max": int, "bits": int, "samples": int,
    "methods": _split, "suite": _split,
    "radius": str, "zeros_file": str, "out_dir": str, "format": str,
}


def read_config_file(path) -> dict:
    out = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _CONVERT:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def resolve_config(args: argparse.Namespace, environ=None) -> RunConfig:
    """flag > environment > config file > default."""
    environ = os.environ if environ is None else environ
    layers = [read_config_file(args.config) if args.config else {}]
    layers.append({k: environ[ENV_PREFIX + k.upper()] for k in _CONVERT
                   if ENV_PREFIX + k.upper() in environ})
    layers.append({k: getattr(args, k) for k in _CONVERT
                   if getattr(args, k, None) is not None})
    merged = {}
    for layer in layers:
        merged.update(layer)
    try:
        values = {k: _CONVERT[k](v) for k, v in merged.items()}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    config = RunConfig(**values)
    config.validate()
    return config


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _open_out(config: RunConfig, name: str, stdout):
    if config.out_dir is None:
        return stdout, False
    directory = Path(config.out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return open(directory / name, "w", encoding="utf-8", newline=""), True


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

RECORD_FIELDS = [f.name for f in fields(ConstantsRecord)]


def _c_by_method(config: RunConfig, n_max: int, bits: int, table) -> dict:
    out = {}
    for method in config.methods:
        if method == "series":
            series = f_series(table, n_max)
            out[method] = [series[n] for n in range(1, n_max + 1)]
        elif method == "stieltjes":
            out[method] = [c_from_stieltjes(n, table) for n in range(1, n_max + 1)]
        elif method == "contour":
            plan = ContourPlan.for_order(n_max, radius=config.radius,
                                         samples=config.samples, bits=bits)
            out[method] = c_contour(plan)
        elif method == "zeros":
            zeros = _zeros(config)
            with mp.workprec(bits):
                half_log_pi = mpmath.log(mp.pi) / 2
                out[method] = [lambda_from_zeros(n, zeros).value / n - mpf(1) / n
                               + half_log_pi - d_exact(n, bits)
                               for n in range(1, n_max + 1)]
    return out


def cmd_compute(config: RunConfig, stdout) -> int:
    n_max = config.n_max or 10
    bits = config.bits or DEFAULT_POLICY.effective_bits(n_max)
    table = stieltjes_table(max(n_max, config.k_max or 0), bits)
    etas = eta_series(table, n_max - 1)
    lam = lambda_series(table, n_max)
    out, close = _open_out(config, f"constants.{'jsonl' if config.format == 'json' else 'csv'}",
                           stdout)
    writer = csv.writer(out, lineterminator="\n") if config.format == "csv" else None
    if writer:
        writer.writerow(RECORD_FIELDS)
    status = EXIT_OK
    worst_digits = None
    try:
        try:
            by_method = _c_by_method(config, n_max, bits, table)
        except (CapError, PrecisionError, InsufficientDataError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = EXIT_NUMERIC
            by_method = {}
        if not by_method:
            return status
        primary = next(m for m in METHODS if m in by_method)
        for n in range(1, n_max + 1):
            with mp.workprec(bits):
                values = [by_method[m][n - 1] for m in config.methods]
                digits = ver.agree_digits(values) if len(values) > 1 else int(bits * math.log10(2))
                record = ConstantsRecord(
                    n=n,
                    lambda_over_n=lam[n],
                    c=by_method[primary][n - 1],
                    d=d_exact(n, bits),
                    S1=s1(n, bits),
                    S2=s2(n, etas, bits),
                    method="+".join(config.methods),
                    bits=bits,
                    agree_digits=digits,
                )
            worst_digits = digits if worst_digits is None else min(worst_digits, digits)
            if writer:
                row = record.to_dict()
                writer.writerow([row[k] for k in RECORD_FIELDS])
            else:
                out.write(record.to_json() + "\n")
            out.flush()
    finally:
        if close:
            out.close()
    print(f"computed n=1..{n_max} at {bits} bits, methods={','.join(config.methods)}, "
          f"min agree_digits={worst_digits}", file=sys.stderr)
    return status


def _zeros(config: RunConfig):
    return load_zeros(config.zeros_file) if config.zeros_file else bundled_zeros()


def _run_suite(name: str, config: RunConfig):
    n = config.n_max
    bits = config.bits
    if name == "appendixA":
        return ver.check_appendixA(bits=bits or 256)
    if name == "lemma1":
        return ver.check_lemma1(n or 64, bits or 256)
    if name == "corollary":
        return ver.check_corollary(n or 64, bits or 256)
    if name == "funceq":
        return ver.check_funceq_F((2, 3), bits or 256)
    if name == "bounds":
        return ver.check_s1_bounds(n or 200)
    if name == "eta":
        return ver.check_eta_signs(n or 30, bits)
    if name == "asymptotics":
        return ver.check_d_asymptotics(100, bits or 256)
    if name == "three_way":
        return ver.check_three_way(n or 32, bits)
    if name == "lambda1":
        zeros = _zeros(config)
        return ver.check_lambda1(bits or 256, zeros.truncated(min(100, len(zeros))))
    if name == "logzeta":
        return ver.check_logzeta_integral()
    if name == "appendixB":
        return ver.check_appendixB()
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(config: RunConfig, stdout) -> int:
    names = SUITES if "all" in config.suite else config.suite
    out, close = _open_out(config, f"verify.{'jsonl' if config.format == 'json' else 'csv'}",
                           stdout)
    writer = csv.writer(out, lineterminator="\n") if config.format == "csv" else None
    if writer:
        writer.writerow(["name", "range", "max_residual", "tolerance", "pass", "notes"])
    status = EXIT_OK
    try:
        for name in names:
            try:
                report = _run_suite(name, config)
            except InconclusiveError as exc:
                print(f"{name}: inconclusive: {exc}", file=sys.stderr)
                status = max(status, EXIT_NUMERIC)
                continue
            row = report.to_dict()
            if writer:
                writer.writerow(list(row.values()))
            else:
                out.write(json.dumps(row) + "\n")
            out.flush()
            print(f"{'PASS' if report.passed else 'FAIL'} {name}", file=sys.stderr)
            if not report.passed and status == EXIT_OK:
                status = EXIT_FAIL
    finally:
        if close:
            out.close()
    return status


def cmd_figures(config: RunConfig, stdout) -> int:
    n_max = config.n_max or 64
    if n_max < 3:
        raise UsageError("figures need n-max >= 3")
    bits = config.bits or DEFAULT_POLICY.effective_bits(n_max)
    table = stieltjes_table(n_max, bits)
    series = f_series(table, n_max)
    c = [series[n] for n in range(1, n_max + 1)]
    directory = Path(config.out_dir or ".")
    directory.mkdir(parents=True, exist_ok=True)

    def dec(x):
        return to_decimal(x, bits)

    with mp.workprec(bits):
        write_csv(directory / "fig1.csv", ["n", "abs_c_n", "bound_6_over_pi2_sqrt_n"],
                  [[n, dec(abs(c[n - 1])), dec(6 / (mp.pi ** 2 * mpmath.sqrt(n)))]
                   for n in range(1, n_max + 1)])
        write_csv(directory / "fig2.csv", ["n", "c_n"],
                  [[n, dec(c[n - 1])] for n in range(1, n_max + 1)])
        delta = ver.delta_sequence(c)
        write_csv(directory / "fig3.csv", ["n", "delta_n"],
                  [[n, dec(delta[n - 2])] for n in range(2, n_max)])
        mags = ver.dft_magnitude(c, bits)
        write_csv(directory / "fig4.csv", ["k", "dft_magnitude"],
                  [[k, dec(m)] for k, m in enumerate(mags)])
    fit = ver.conjecture_fit(c)
    print(f"wrote fig1..fig4.csv to {directory} (n=1..{n_max}); "
          f"|c_n| <= 6/(pi^2 sqrt n) violated at n={fit.violations} "
          f"(advisory); slope {fit.slope:.3f}", file=stdout)
    return EXIT_OK


def cmd_zeros(config: RunConfig, stdout) -> int:
    zeros = _zeros(config)
    n_max = config.n_max or 1
    bits = config.bits or DEFAULT_POLICY.effective_bits(n_max)
    lam = lambda_series(stieltjes_table(n_max, bits), n_max)
    report = {
        "K": zeros.count,
        "first": to_decimal(zeros.ordinates[0], 64),
        "last": to_decimal(zeros.ordinates[-1], 64),
        "comparisons": [],
    }
    with mp.workprec(bits):
        for n in range(1, n_max + 1):
            approx = lambda_from_zeros(n, zeros).value
            exact = lam[n] * n
            report["comparisons"].append({
                "n": n,
                "lambda_zeros": to_decimal(approx, 64),
                "lambda_series": to_decimal(exact, bits),
                "abs_diff": to_decimal(abs(approx - exact), 64),
            })
    stdout.write(json.dumps(report) + "\n")
    return EXIT_OK


def cmd_stieltjes(config: RunConfig, stdout) -> int:
    K = config.k_max if config.k_max is not None else 20
    bits = config.bits or DEFAULT_POLICY.effective_bits(K)
    table = stieltjes_table(K, bits)
    out, close = _open_out(config, "stieltjes.csv", stdout)
    try:
        out.write(table.to_csv())
    finally:
        if close:
            out.close()
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "figures": cmd_figures,
    "zeros": cmd_zeros,
    "stieltjes": cmd_stieltjes,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--k-max", dest="k_max", type=int)
    common.add_argument("--bits", type=int)
    common.add_argument("--methods", help=f"comma list from {','.join(METHODS)}")
    common.add_argument("--radius")
    common.add_argument("--samples", type=int)
    common.add_argument("--zeros-file", dest="zeros_file")
    common.add_argument("--out-dir", dest="out_dir")
    common.add_argument("--suite", help=f"all or a comma list from {','.join(SUITES)}")
    common.add_argument("--format", choices=("json", "csv"))

    parser = argparse.ArgumentParser(prog="xiconst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=fn.__name__.replace("cmd_", ""))
    return parser


def main(argv=None, stdout=None, environ=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = resolve_config(args, environ)
        return COMMANDS[args.command](config, stdout)
    except (UsageError, ZeroFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, InsufficientDataError, CapError, InconclusiveError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
