"""CSV-emitting command line interface for the numerical experiments.

Five subcommands cover the experiment families: ``cond-sweep`` (extreme
singular values and condition numbers over lam, m, alpha), ``reconstruct``
(error table plus dense-grid traces for the three methods), ``error-decay``
(degree sweep of the inverse reconstruction with fitted and analytic
convergence rates), ``alpha-sweep`` (angle-independence deviations), and
``gram`` (Gram eigenvalue extremes, the certified lower bound, and
truncation-tail norms).

Every run writes one CSV per command (floats at 17 significant digits,
rows deterministically ordered) and a sibling metadata JSON echoing the
command, parameters, corpus version, and timestamp.  The corpus
self-check — measured jumps against documented jump sizes — runs before
any computation; failures abort with a nonzero exit code and a diagnostic
naming the offending (function, alpha, lambda, m) tuple.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .corpus import CORPUS_VERSION, CorpusIntegrityError, load_corpus
from .frft import default_quad_order
from .gegenbauer import GegenbauerBasis, gram_matrix, min_h_constant
from .linalg import condition_report, symmetric_eigenvalues
from .reconstruct import (
    GridSpec,
    direct_reconstruct,
    iprm_reconstruct,
    partial_sum_report,
)
from .transform import assemble_cached

__all__ = ["RunConfig", "main"]

COMMANDS = ("cond-sweep", "reconstruct", "error-decay", "alpha-sweep", "gram")

ALPHA_SET = tuple(k * math.pi / 16.0 for k in range(1, 8))
LAMBDA_SWEEP = (0.5, 0.75, 1.0, 1.5, 2.0)
DEGREE_SWEEP = (4, 8, 12, 16, 20, 24)
DECAY_DEGREES = (4, 8, 12, 16, 20, 24, 28, 32)
ALPHA_SWEEP_DEGREES = (8, 16, 24)
DEFAULT_ALPHA = math.pi / 4.0

_METHOD_LABELS = (("frfs", "frfs-partial-sum"), ("direct", "direct"), ("iprm", "iprm"))


@dataclass(frozen=True)
class RunConfig:
    """One experiment run: the command plus every tunable knob."""

    command: str
    alpha: tuple = ()
    lambdas: tuple = ()
    m: tuple = ()
    n_ratio: int = 10
    quad_order: int | None = None
    output: Path = Path(".")
    seed: int | None = None
    functions: tuple = ()
    big_n: tuple = ()
    coeffs_json: bool = False
    grid_step: float = 2e-3

    def parameters(self) -> dict:
        """JSON-serializable echo of every field for the metadata file."""
        return {
            "alpha": list(self.alpha),
            "lambda": list(self.lambdas),
            "m": list(self.m),
            "n_ratio": self.n_ratio,
            "quad_order": self.quad_order,
            "output": str(self.output),
            "seed": self.seed,
            "functions": list(self.functions),
            "big_n": list(self.big_n),
            "coeffs_json": self.coeffs_json,
            "grid_step": self.grid_step,
        }


class RowFailure(RuntimeError):
    """A sweep point failed; carries the identifying tuple for diagnostics."""

    def __init__(self, function, alpha, lam, m, cause):
        super().__init__(
            f"failed at (function={function}, alpha={alpha}, lambda={lam}, "
            f"m={m}): {cause}"
        )


def _fmt(value) -> str:
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_metadata(config: RunConfig, stem: str) -> None:
    meta = {
        "command": config.command,
        "parameters": config.parameters(),
        "corpus_version": CORPUS_VERSION,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    path = config.output / f"{stem}_meta.json"
    with open(path, "w") as handle:
        json.dump(meta, handle, indent=2)
        handle.write("\n")


def _quad(config: RunConfig, big_n: int) -> int:
    return config.quad_order or default_quad_order(big_n)


def cmd_cond_sweep(config: RunConfig, corpus) -> None:
    """Extreme singular values of the transformation matrix per (lam, m, alpha)."""
    rows = []
    for lam in config.lambdas:
        for m in config.m:
            big_n = config.n_ratio * m
            for alpha in config.alpha:
                try:
                    w = assemble_cached(alpha, lam, m, big_n, _quad(config, big_n))
                    report = condition_report(w)
                except Exception as exc:
                    raise RowFailure("-", alpha, lam, m, exc) from exc
                rows.append(
                    (lam, m, alpha, big_n, report.sigma_max,
                     report.sigma_min, report.kappa)
                )
    _write_csv(
        config.output / "cond_sweep.csv",
        ("lambda", "m", "alpha", "big_n", "sigma_max", "sigma_min", "kappa"),
        rows,
    )
    _write_metadata(config, "cond_sweep")


def cmd_reconstruct(config: RunConfig, corpus) -> None:
    """Error table and dense-grid traces for the three methods."""
    alpha = config.alpha[0]
    lam = config.lambdas[0]
    m = config.m[0]
    big_n = config.n_ratio * m
    quad_order = _quad(config, big_n)
    grid_spec = GridSpec(config.grid_step)
    rows, grid_rows = [], []
    coeff_dump: dict = {}
    for name in config.functions:
        function = corpus.function(name)
        for label, _tag in _METHOD_LABELS:
            try:
                if label == "frfs":
                    report = partial_sum_report(
                        function, alpha, big_n, quad_order, grid_spec
                    )
                elif label == "iprm":
                    report = iprm_reconstruct(
                        function, alpha, lam, m, big_n, quad_order, grid_spec
                    )
                else:
                    report = direct_reconstruct(
                        function, alpha, lam, m, big_n, quad_order, grid_spec
                    )
            except Exception as exc:
                raise RowFailure(name, alpha, lam, m, exc) from exc
            rows.append((name, label, report.rel_l2, report.abs_linf))
            for a, b in function.intervals:
                x = grid_spec.points(a, b)
                exact = np.asarray(function(x), dtype=float)
                approx = np.asarray(report.evaluate(x), dtype=complex)
                grid_rows.extend(
                    (name, label, float(xi), float(fi), vi.real, vi.imag)
                    for xi, fi, vi in zip(x, exact, approx)
                )
            if config.coeffs_json and report.per_piece_coeffs:
                coeff_dump.setdefault(name, {})[label] = [
                    [[c.real, c.imag] for c in ghat]
                    for ghat in report.per_piece_coeffs
                ]
    _write_csv(
        config.output / "reconstruct.csv",
        ("function", "method", "rel_l2", "abs_linf"),
        rows,
    )
    _write_csv(
        config.output / "reconstruct_grid.csv",
        ("function", "method", "x", "exact", "approx_re", "approx_im"),
        grid_rows,
    )
    if config.coeffs_json:
        with open(config.output / "reconstruct_coeffs.json", "w") as handle:
            json.dump(coeff_dump, handle, indent=2)
            handle.write("\n")
    _write_metadata(config, "reconstruct")


def cmd_error_decay(config: RunConfig, corpus) -> None:
    """Degree sweep of the inverse reconstruction with fitted decay rates."""
    alpha = config.alpha[0]
    lam = config.lambdas[0]
    grid_spec = GridSpec(config.grid_step)
    rows = []
    for name in config.functions:
        function = corpus.function(name)
        rho_analytic = corpus.bernstein_rate(name).rho
        errors = []
        for m in config.m:
            big_n = config.n_ratio * m
            try:
                report = iprm_reconstruct(
                    function, alpha, lam, m, big_n,
                    _quad(config, big_n), grid_spec,
                )
            except Exception as exc:
                raise RowFailure(name, alpha, lam, m, exc) from exc
            errors.append(report.abs_linf)
        slope = float(
            np.polyfit(np.asarray(config.m, dtype=float), np.log(errors), 1)[0]
        )
        rho_fit = math.exp(-slope)
        rows.extend(
            (name, m, err, rho_fit, rho_analytic)
            for m, err in zip(config.m, errors)
        )
    _write_csv(
        config.output / "error_decay.csv",
        ("function", "m", "abs_linf", "rho_fit", "rho_analytic"),
        rows,
    )
    _write_metadata(config, "error_decay")


def cmd_alpha_sweep(config: RunConfig, corpus) -> None:
    """Angle dependence of the inverse reconstruction error."""
    lam = config.lambdas[0]
    grid_spec = GridSpec(config.grid_step)
    rows = []
    for name in config.functions:
        function = corpus.function(name)
        for m in config.m:
            big_n = config.n_ratio * m
            errors = []
            for alpha in config.alpha:
                try:
                    report = iprm_reconstruct(
                        function, alpha, lam, m, big_n,
                        _quad(config, big_n), grid_spec,
                    )
                except Exception as exc:
                    raise RowFailure(name, alpha, lam, m, exc) from exc
                errors.append(report.abs_linf)
            mean_error = float(np.mean(errors))
            rows.extend(
                (name, m, alpha, err, abs(err - mean_error) / mean_error)
                for alpha, err in zip(config.alpha, errors)
            )
    _write_csv(
        config.output / "alpha_sweep.csv",
        ("function", "m", "alpha", "e_alpha", "deviation"),
        rows,
    )
    _write_metadata(config, "alpha_sweep")


def cmd_gram(config: RunConfig, corpus) -> None:
    """Gram eigenvalue extremes, certified lower bound, and tail norms."""
    alpha = config.alpha[0] if config.alpha else DEFAULT_ALPHA
    lam = config.lambdas[0]
    m = config.m[0]
    try:
        basis = GegenbauerBasis(lam, m)
        gram = gram_matrix(basis)
        eigenvalues = symmetric_eigenvalues(gram.entries)
        min_h = min_h_constant(basis)
    except Exception as exc:
        raise RowFailure("-", alpha, lam, m, exc) from exc
    rows = []
    for big_n in config.big_n:
        try:
            w = assemble_cached(alpha, lam, m, big_n, _quad(config, big_n))
            tail = gram.entries - 2.0 * (w.entries.conj().T @ w.entries)
            tail_fro = float(np.linalg.norm(tail, "fro"))
            tail_two = float(np.linalg.norm(tail, 2))
        except Exception as exc:
            raise RowFailure("-", alpha, lam, m, exc) from exc
        rows.append(
            (lam, m, big_n, float(eigenvalues[-1]), float(eigenvalues[0]),
             min_h, tail_fro, tail_two)
        )
    _write_csv(
        config.output / "gram.csv",
        ("lambda", "m", "big_n", "lambda_min", "lambda_max",
         "min_h", "tail_fro", "tail_2"),
        rows,
    )
    entry_rows = [
        (lam, m, l, j, float(gram.entries[l, j]))
        for l in range(m + 1)
        for j in range(m + 1)
    ]
    _write_csv(
        config.output / "gram_entries.csv",
        ("lambda", "m", "l", "j", "value"),
        entry_rows,
    )
    _write_metadata(config, "gram")


_RUNNERS = {
    "cond-sweep": cmd_cond_sweep,
    "reconstruct": cmd_reconstruct,
    "error-decay": cmd_error_decay,
    "alpha-sweep": cmd_alpha_sweep,
    "gram": cmd_gram,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frft-iprm",
        description=(
            "Numerical experiments for Gibbs-free reconstruction from "
            "fractional Fourier series."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command, help=f"run the {command} experiment")
        sub.add_argument("--config", type=Path, default=None,
                         help="JSON file with RunConfig fields (flags win)")
        sub.add_argument("--alpha", type=float, nargs="+", default=None,
                         help="chirp angle(s) in (0, pi/2]")
        sub.add_argument("--lambda", dest="lambdas", type=float, nargs="+",
                         default=None, help="Gegenbauer weight exponent(s)")
        sub.add_argument("--m", type=int, nargs="+", default=None,
                         help="polynomial degree(s)")
        sub.add_argument("--n-ratio", type=int, default=None,
                         help="mode multiplier N = n_ratio * m (default 10)")
        sub.add_argument("--quad-order", type=int, default=None,
                         help="override the coefficient quadrature order")
        sub.add_argument("--out", type=Path, default=None,
                         help="output directory (default: current)")
        sub.add_argument("--seed", type=int, default=None,
                         help="reserved for future noise studies")
        sub.add_argument("--functions", nargs="+", default=None,
                         metavar="NAME", help="corpus subset (default: all six)")
        sub.add_argument("--big-n", type=int, nargs="+", default=None,
                         help="explicit truncation order(s) N (gram command)")
        sub.add_argument("--grid-step", type=float, default=None,
                         help="error-grid step per piece (default 2e-3)")
        if command == "reconstruct":
            sub.add_argument("--coeffs-json", action="store_true",
                             help="also dump per-piece coefficient vectors")
    return parser


_COMMAND_DEFAULTS = {
    "cond-sweep": {"alpha": (DEFAULT_ALPHA,), "lambdas": LAMBDA_SWEEP,
                   "m": DEGREE_SWEEP},
    "reconstruct": {"alpha": (DEFAULT_ALPHA,), "lambdas": (0.75,), "m": (16,)},
    "error-decay": {"alpha": (DEFAULT_ALPHA,), "lambdas": (0.75,),
                    "m": DECAY_DEGREES},
    "alpha-sweep": {"alpha": ALPHA_SET, "lambdas": (0.75,),
                    "m": ALPHA_SWEEP_DEGREES},
    "gram": {"alpha": (DEFAULT_ALPHA,), "lambdas": (0.75,), "m": (16,),
             "big_n": (80, 160)},
}


def _merge_config(args: argparse.Namespace, corpus) -> RunConfig:
    """Layer defaults < config file < explicit flags into one RunConfig."""
    file_values: dict = {}
    if args.config is not None:
        with open(args.config) as handle:
            file_values = json.load(handle)
        unknown = set(file_values) - {
            "alpha", "lambda", "m", "n_ratio", "quad_order", "out",
            "seed", "functions", "big_n", "coeffs_json", "grid_step",
        }
        if unknown:
            raise ValueError(f"unknown config file keys: {sorted(unknown)}")

    def pick(flag_value, file_key, default):
        if flag_value is not None:
            return flag_value
        if file_key in file_values and file_values[file_key] is not None:
            return file_values[file_key]
        return default

    def as_tuple(value):
        if value is None:
            return ()
        if isinstance(value, (list, tuple, np.ndarray)):
            return tuple(value)
        return (value,)

    defaults = _COMMAND_DEFAULTS[args.command]
    alpha = as_tuple(pick(args.alpha, "alpha", defaults.get("alpha", ())))
    lambdas = as_tuple(pick(args.lambdas, "lambda", defaults.get("lambdas", ())))
    m = as_tuple(pick(args.m, "m", defaults.get("m", ())))
    big_n = as_tuple(pick(args.big_n, "big_n", defaults.get("big_n", ())))
    functions = as_tuple(
        pick(args.functions, "functions", corpus.names)
    )
    for name in functions:
        corpus.function(name)  # raises KeyError with the valid names
    return RunConfig(
        command=args.command,
        alpha=tuple(float(a) for a in alpha),
        lambdas=tuple(float(v) for v in lambdas),
        m=tuple(int(v) for v in m),
        n_ratio=int(pick(args.n_ratio, "n_ratio", 10)),
        quad_order=pick(args.quad_order, "quad_order", None),
        output=Path(pick(args.out, "out", Path("."))),
        seed=pick(args.seed, "seed", None),
        functions=functions,
        big_n=tuple(int(v) for v in big_n),
        coeffs_json=bool(
            pick(getattr(args, "coeffs_json", False) or None,
                 "coeffs_json", False)
        ),
        grid_step=float(pick(args.grid_step, "grid_step", 2e-3)),
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        corpus = load_corpus(verify=True)
    except CorpusIntegrityError as exc:
        print(f"corpus self-check failed: {exc}", file=sys.stderr)
        return 2
    try:
        config = _merge_config(args, corpus)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    config.output.mkdir(parents=True, exist_ok=True)
    try:
        _RUNNERS[config.command](config, corpus)
    except RowFailure as exc:
        print(str(exc), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
