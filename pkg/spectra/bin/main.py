"""
main.py

Command line interface for SPECTRA - Spectral decompositions and harmonic
analysis at desk scale.

This script:
  - Reads matrices, group signals, vector families and circle signals from
    YAML files.
  - Runs the requested decomposition, transform or certification.
  - Prints a Rich report, or `key=value` lines with --porcelain.
  - Exits 0 when every verdict passes, 1 on a failed verdict or numerical
    error, 2 on parse, configuration or usage errors.

Usage:
  spectra <command> [options] [input]

Commands:
  schur          Schur triangularization U*AU = B.
  eig            One eigenpair, the Schur eigenvalues and (--hermitian) eigh.
  spectral       Eigenprojection resolution of a normal matrix.
  group-dual     Dual group of Z_N1 × ... × Z_Nk.
  group-ft       Fourier transform on a finite abelian group.
  riesz          Riesz-sequence certificate of a vector family.
  circle-series  Fourier series of a signal on the circle grid.
  selftest       Property suites.

Gabriel Braun, 2026
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable

import numpy as np
import pydantic as pyd

import spectra
from spectra import abelian, circle, io, riesz, schur, spectral
from spectra.config import DEFAULT_SEED, resolve_tolerance
from spectra.console import console, log_report, setup_logging
from spectra.errors import ConfigError, GridMismatch, ParseError, SpectraError
from spectra.linalg import Tolerance, hermitian_eig
from spectra.report import EXIT_FAILURE, EXIT_USAGE, RunReport, g17
from spectra.selftest import SUITES, run_selftest

logger = logging.getLogger("spectra")

Command = Callable[[argparse.Namespace, RunReport, Tolerance, np.random.Generator], None]
COMMANDS: dict[str, Command] = {}


def command(name: str):
    def deco(fn: Command) -> Command:
        COMMANDS[name] = fn
        return fn

    return deco


def _out_path(args: argparse.Namespace, name: str) -> Path:
    """`--out/<name>` when --out is set, else `<input stem>.<name>` beside the input."""
    if args.out is not None:
        return args.out / name
    source = getattr(args, "input", None)
    if source is None:
        return Path.cwd() / name
    return source.with_name(f"{source.stem}.{name}")


def _eigen_rows(values) -> list[list[str]]:
    return [[str(k), g17(z.real), g17(z.imag)] for k, z in enumerate(np.asarray(values))]


# ======================================================================
# LINEAR ALGEBRA
# ======================================================================
@command("schur")
def run_schur(args, report: RunReport, tol: Tolerance, rng: np.random.Generator) -> None:
    a = io.read_matrix(args.input)
    report.inputs.update(matrix=str(args.input), method=args.method)

    f = schur.schur_decompose(a, tol, method=args.method, rng=rng)
    a_norm = max(f.source_norm, tol.abs)
    report.metric("n", f.n)
    report.metric("residual", f.residual(a))
    report.metric("reconstruction_error", f.reconstruction_error(a))
    report.metric("unitarity_defect", f.unitarity_defect)
    report.metric("lower_mass", f.lower_mass)

    report.check("residual", f.residual(a) / a_norm, 1e-10)
    report.check("unitarity", f.unitarity_defect, 1e-11)
    report.check("lower_mass", f.lower_mass / a_norm, 1e-10)
    if f.n <= schur.ORACLE_MAX_N:
        distance = schur.multiset_distance(f.eigenvalues, schur.char_poly_roots(a))
        report.check("oracle_distance", distance, 1e-8)
    report.listing("eigenvalues", ["k", "re", "im"], _eigen_rows(f.eigenvalues))

    report.outputs.append(str(io.write_matrix(_out_path(args, "u.yaml"), f.u)))
    report.outputs.append(str(io.write_matrix(_out_path(args, "b.yaml"), f.b)))


@command("eig")
def run_eig(args, report: RunReport, tol: Tolerance, rng: np.random.Generator) -> None:
    a = io.read_matrix(args.input)
    report.inputs.update(matrix=str(args.input), hermitian=str(args.hermitian))
    a_norm = float(np.linalg.norm(a, "fro"))

    lam, x = schur.find_eigenpair(a, tol, rng=rng)
    residual = float(np.linalg.norm(a @ x - lam * x))
    report.metric("eigenvalue.re", lam.real)
    report.metric("eigenvalue.im", lam.imag)
    report.check("eigenpair_residual", residual, tol.threshold(a_norm))

    f = schur.schur_decompose(a, tol, rng=rng)
    report.listing("eigenvalues", ["k", "re", "im"], _eigen_rows(f.eigenvalues))
    if f.n <= schur.ORACLE_MAX_N:
        distance = schur.multiset_distance(f.eigenvalues, schur.char_poly_roots(a))
        report.metric("oracle_distance", distance)
        report.check("oracle_distance", distance, 1e-8)

    if args.hermitian:
        w, q = hermitian_eig(a, tol)
        error = float(np.linalg.norm((q * w) @ q.conj().T - a, "fro"))
        report.check("hermitian_reconstruction", error, 1e-11 * max(a_norm, 1.0))
        report.listing(
            "hermitian_eigenvalues", ["k", "value"], [[str(k), g17(v)] for k, v in enumerate(w)]
        )


@command("spectral")
def run_spectral(args, report: RunReport, tol: Tolerance, rng: np.random.Generator) -> None:
    t = io.read_matrix(args.input)
    report.inputs.update(matrix=str(args.input))
    t_norm = max(float(np.linalg.norm(t, "fro")), tol.abs)

    dec = spectral.spectral_decompose(t, tol, rng=rng)
    reconstruction = float(np.linalg.norm(dec.reconstruct() - t, "fro"))
    _, diagonal = spectral.diagonalize(t, tol, rng=rng)

    report.metric("normality_defect", spectral.normality_defect(t))
    report.metric("cluster_radius", dec.cluster_radius)
    report.metric("reconstruction_error", reconstruction)
    report.check("reconstruction", reconstruction / t_norm, 1e-9)
    report.check("resolution_of_identity", dec.resolution_defect(), 1e-10)
    report.check("idempotence", max(dec.idempotence_defects()), 1e-10)
    report.check("self_adjointness", max(dec.self_adjoint_defects()), 1e-12)
    report.check("mutual_orthogonality", dec.orthogonality_defect(), 1e-10)
    report.check("trace_multiplicity", max(dec.trace_defects()), 1e-8)
    report.check("commutation", max(dec.commutation_defects(t)) / t_norm, 1e-10)
    report.check("off_diagonal_mass", spectral.off_diagonal_mass(diagonal) / t_norm, 1e-8)

    report.listing(
        "eigenvalues",
        ["k", "re", "im", "multiplicity", "idempotence", "trace_defect"],
        [
            [str(k), g17(lam.real), g17(lam.imag), str(m), g17(idem), g17(tr)]
            for k, (lam, m, idem, tr) in enumerate(
                zip(
                    dec.eigenvalues,
                    dec.multiplicities,
                    dec.idempotence_defects(),
                    dec.trace_defects(),
                )
            )
        ],
    )


# ======================================================================
# FINITE ABELIAN GROUPS
# ======================================================================
def _factors(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(n) for n in text.split(",") if n.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated orders, got {text!r}")


def _coords(m) -> str:
    return "(" + " ".join(str(int(c)) for c in m) + ")"


@command("group-dual")
def run_group_dual(args, report: RunReport, tol: Tolerance, rng: np.random.Generator) -> None:
    g = abelian.FiniteAbelianGroup(factor_orders=args.factors)
    report.inputs.update(group=str(g))

    chars = abelian.dual_group(g)
    report.metric("order", g.order)
    report.metric("characters", len(chars))
    report.check("dual_order", None, 0.0, passed=len(chars) == g.order)

    table = abelian.character_table(g)
    gram = table @ table.conj().T / g.order
    report.check(
        "orthonormality", float(np.max(np.abs(gram - np.eye(g.order)))), 1e-12
    )

    unit = np.eye(g.rank, dtype=np.int64)
    rows = []
    for k, m in enumerate(chars):
        on_generators = [abelian.character_eval(g, m, e) for e in unit]
        rows.append([str(k), _coords(m), *(f"{g17(z.real)} {g17(z.imag)}" for z in on_generators)])
    report.listing(
        "characters", ["k", "m", *(f"ζ(e_{i})" for i in range(g.rank))], rows
    )
    if args.out is not None:
        report.outputs.append(str(io.write_matrix(args.out / "characters.yaml", table)))


@command("group-ft")
def run_group_ft(args, report: RunReport, tol: Tolerance, rng: np.random.Generator) -> None:
    f = io.read_group_signal(args.input)
    g = f.group
    report.inputs.update(signal=str(args.input), group=str(g), inverse=str(args.inverse))

    if args.inverse:
        fhat = abelian.GroupSignal(group=g, values=f.values, domain="dual")
        result = abelian.inverse_transform(g, fhat)
        back = abelian.fourier_transform(g, result)
        report.check(
            "round_trip", float(np.max(np.abs(back.values - fhat.values))), 1e-12
        )
        report.metric("energy", fhat.norm_squared())
        suffix = "ift.yaml"
    else:
        result = abelian.fourier_transform(g, f)
        back = abelian.inverse_transform(g, result)
        gap = abelian.plancherel_gap(g, f)
        report.metric("norm_squared", f.norm_squared())
        report.metric("plancherel_gap", gap)
        report.check(
            "plancherel", abs(gap), 1e-12 * max(f.norm_squared(), 1.0)
        )
        report.check(
            "round_trip", float(np.max(np.abs(back.values - f.values))), 1e-12
        )
        suffix = "ft.yaml"

    report.listing(
        "transform",
        ["index", "re", "im"],
        [
            [_coords(m), g17(z.real), g17(z.imag)]
            for m, z in zip(g.elements(cap=abelian.TRANSFORM_CAP), result.values)
        ],
    )
    out = io.write_group_signal(_out_path(args, suffix), result)
    report.outputs.append(str(out))


# ======================================================================
# RIESZ SEQUENCES
# ======================================================================
@command("riesz")
def run_riesz(args, report: RunReport, tol: Tolerance, rng: np.random.Generator) -> None:
    fam = io.read_vector_family(args.input)
    report.inputs.update(family=str(args.input), threshold=g17(args.threshold))

    cert = riesz.riesz_certify(fam, args.threshold)
    gram_norm = max(float(np.linalg.norm(cert.gram, "fro")), tol.abs)
    u = cert.synthesis_u

    report.metric("window", cert.window)
    report.metric("ambient_dim", cert.ambient_dim)
    report.metric("rank", cert.rank)
    report.metric("lower_bound_A", cert.lower_bound_A)
    report.metric("upper_bound_B", cert.upper_bound_B)
    report.metric("bessel_constant", cert.bessel_constant)
    if np.isfinite(cert.condition):
        report.metric("condition", cert.condition)
    report.metric("characterization_gap", cert.characterization_gap)

    normalized = cert.lower_bound_A / cert.upper_bound_B if cert.upper_bound_B > 0 else 0.0
    report.check(
        "riesz_sequence", normalized, cert.degenerate_threshold, passed=cert.passed
    )
    report.check(
        "bessel_equals_B",
        abs(cert.bessel_constant - cert.upper_bound_B),
        1e-12 * max(cert.upper_bound_B, 1.0),
    )
    report.check(
        "synthesis_gram", float(np.max(np.abs(u.conj().T @ u - cert.gram))), 1e-12 * max(gram_norm, 1.0)
    )
    report.check("r_factor", cert.r_residual / gram_norm, 1e-10)
    report.listing(
        "certificate",
        ["field", "value"],
        [
            ["verdict", cert.verdict.value],
            ["complete", str(cert.complete)],
            ["condition", g17(cert.condition)],
        ],
    )


# ======================================================================
# CIRCLE
# ======================================================================
def _param(text: str) -> tuple[str, int | float | complex]:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    for cast in (int, float, complex):
        try:
            return key, cast(raw)
        except ValueError:
            continue
    raise argparse.ArgumentTypeError(f"value of {key!r} is not a number: {raw!r}")


@command("circle-series")
def run_circle_series(
    args, report: RunReport, tol: Tolerance, rng: np.random.Generator
) -> None:
    if (args.input is None) == (args.builtin is None):
        raise ConfigError("circle-series needs exactly one of an input file or --builtin.")

    if args.input is not None:
        s = io.read_circle_signal(args.input)
        report.inputs.update(signal=str(args.input))
        if args.grid is not None and args.grid != s.quadrature_order:
            raise GridMismatch(
                f"--grid {args.grid} disagrees with the {s.quadrature_order} samples of the file."
            )
    else:
        if args.grid is None:
            raise ConfigError("--builtin requires --grid Q.")
        params = dict(args.param)
        s = circle.sample_builtin(args.builtin, args.grid, **params)
        report.inputs.update(
            builtin=args.builtin, **{f"param.{k}": str(v) for k, v in params.items()}
        )
    q = s.quadrature_order
    report.inputs.update(grid=str(q), nmax=str(args.nmax))

    series = circle.fourier_coefficients(s, args.nmax)
    gap = circle.plancherel_gap(s, args.nmax)
    approx = circle.partial_sum(series, q)
    report.metric("norm_squared", circle.norm_squared(s))
    report.metric("window_energy", series.energy())
    report.metric("plancherel_gap", gap)
    report.metric("mean_square_error", circle.mean_square_error(s, approx))
    report.check("bessel_inequality", -gap, 1e-12)

    report.listing(
        "coefficients",
        ["n", "re", "im", "abs"],
        [
            [str(n), g17(c.real), g17(c.imag), g17(abs(c))]
            for n, c in zip(series.frequencies, series.coefficients)
        ],
    )


# ======================================================================
# SELFTEST
# ======================================================================
@command("selftest")
def run_selftest_command(
    args, report: RunReport, tol: Tolerance, rng: np.random.Generator
) -> None:
    report.inputs.update(seed=str(args.seed), suites=",".join(args.suite or SUITES))
    run_selftest(report, args.seed, tol, args.suite)


# ======================================================================
# PARSER
# ======================================================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help="Seed of the random generator"
    )
    common.add_argument(
        "--tol", type=float, default=None, help="Absolute tolerance (overrides SPECTRA_TOL)"
    )
    common.add_argument(
        "--porcelain", action="store_true", help="Print key=value lines instead of tables"
    )
    common.add_argument("--out", type=Path, default=None, help="Output directory")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )

    parser = argparse.ArgumentParser(
        prog="spectra",
        description="SPECTRA - Spectral decompositions and harmonic analysis",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {spectra.VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("schur", parents=[common], help="Schur triangularization")
    p.add_argument("input", type=Path, help="YAML matrix file")
    p.add_argument(
        "--method",
        choices=[m.value for m in schur.SchurMethod],
        default=schur.SchurMethod.QR.value,
        help="Shifted QR or the eigenpair deflation recursion",
    )

    p = sub.add_parser("eig", parents=[common], help="Eigenvalues and one eigenpair")
    p.add_argument("input", type=Path, help="YAML matrix file")
    p.add_argument("--hermitian", action="store_true", help="Also run the Hermitian solver")

    p = sub.add_parser("spectral", parents=[common], help="Spectral decomposition")
    p.add_argument("input", type=Path, help="YAML matrix file")

    p = sub.add_parser("group-dual", parents=[common], help="Dual group listing")
    p.add_argument("--factors", type=_factors, required=True, help="Orders, e.g. 2,3")

    p = sub.add_parser("group-ft", parents=[common], help="Fourier transform on a group")
    p.add_argument("input", type=Path, help="YAML group signal file")
    p.add_argument("--inverse", action="store_true", help="Input holds f̂; synthesize f")

    p = sub.add_parser("riesz", parents=[common], help="Riesz-sequence certificate")
    p.add_argument("input", type=Path, help="YAML vector family file")
    p.add_argument(
        "--threshold",
        type=float,
        default=riesz.DEGENERATE_THRESHOLD,
        help="Degeneracy threshold on λ_min/λ_max of the Gram matrix",
    )

    p = sub.add_parser("circle-series", parents=[common], help="Fourier series on S¹")
    p.add_argument("input", type=Path, nargs="?", default=None, help="YAML circle signal file")
    p.add_argument("--grid", type=int, default=None, help="Quadrature order Q")
    p.add_argument("--nmax", type=int, required=True, help="Largest |n| of the series")
    p.add_argument(
        "--builtin", choices=circle.CircleSignal.builtin_names(), help="Built-in test function"
    )
    p.add_argument(
        "--param", type=_param, action="append", default=[], help="Builtin parameter key=value"
    )

    p = sub.add_parser("selftest", parents=[common], help="Run the property suites")
    p.add_argument(
        "--suite", action="append", choices=list(SUITES), help="Run only this suite"
    )
    return parser


def execute(args: argparse.Namespace) -> RunReport:
    """Dispatch parsed arguments; errors are recorded on the report, not raised."""
    report = RunReport(command=args.command)
    try:
        tol = resolve_tolerance(args.tol)
        rng = np.random.default_rng(args.seed)
        COMMANDS[args.command](args, report, tol, rng)
    except (ParseError, ConfigError, pyd.ValidationError) as exc:
        logger.debug("usage error", exc_info=True)
        report.fail(exc, EXIT_USAGE)
    except SpectraError as exc:
        logger.debug("numerical error", exc_info=True)
        report.fail(exc, EXIT_FAILURE)
    return report


def run(argv: list[str] | None = None) -> RunReport:
    return execute(build_parser().parse_args(argv))


def main(argv: list[str] | None = None) -> None:
    """
    Parse the arguments, run the command and exit with the report's code.
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    report = execute(args)

    if args.porcelain:
        sys.stdout.write(report.porcelain())
    else:
        log_report(report, console=console)
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()
