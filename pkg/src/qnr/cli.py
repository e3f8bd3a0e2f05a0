"""Command-line front end: analyze matrices, generate example operators, run
truncation sweeps, and emit reports and boundary data for plotting.

Exit codes: 0 success; 1 I/O, parse, or parameter failure; 2 the analyzed
matrix is not quadratic (the report is still written, prediction omitted);
3 more c-coefficients than matrix dimensions.

Every flag can also be set in a TOML config file passed with --config, under
a table named after the subcommand; explicit flags win. QNR_THREADS caps the
worker count used for support-function grids.
"""
from __future__ import annotations

import argparse
import datetime
import os
import sys

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:            # Python 3.10
    import tomli as tomllib

from . import __version__
from . import fileio
from .cnumrange import Coefficients, compute_wc, sandwich_check
from .fileio import format_float
from .geometry import hausdorff_support
from .linalg import spectral_norm
from .numrange import compute_range, sample_oracle
from .operators import (
    InvalidParameter,
    cauchy_circle,
    composition_matrix,
    composition_predict,
    power_weight_hankel,
    power_weight_predict,
    singular_norm_from_hankel,
)
from .quadratic import NotQuadratic, assemble_canonical, fit_quadratic, predict_W

GEN_FAMILIES = ("composition", "hankel", "cauchy-circle", "canonical")
SWEEP_FAMILIES = ("composition", "hankel", "cauchy-circle")
SWEEP_ANGLES_DEFAULT = 240


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 1


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _workers() -> int:
    raw = os.environ.get("QNR_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parse_complex(text: str) -> complex:
    return complex(str(text).replace(" ", "").replace("i", "j"))


def _parse_complex_list(text: str) -> list[complex]:
    return [_parse_complex(tok) for tok in str(text).split(",") if tok != ""]


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in str(text).split(",") if tok != ""]


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in str(text).split(",") if tok != ""]


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _provenance(args, argv: list[str]) -> dict:
    block = {
        "command": " ".join(argv),
        "seed": getattr(args, "seed", None),
        "version": __version__,
    }
    if not getattr(args, "no_timestamp", False):
        block["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return block


def _emit_report(args, report: dict) -> None:
    if getattr(args, "report", None):
        fileio.write_report(args.report, report)
    else:
        sys.stdout.write(fileio.emit_json(report))


def _load_config(args) -> None:
    # config fills only flags the command line left unset (None)
    if not getattr(args, "config", None):
        return
    with open(args.config, "rb") as f:
        conf = tomllib.load(f)
    table = conf.get(args.command, {})
    if not isinstance(table, dict):
        raise ValueError(f"config table [{args.command}] must be a table")
    for key, val in table.items():
        dest = {"lambda": "lam", "no-timestamp": "no_timestamp"}.get(key, key.replace("-", "_"))
        if not hasattr(args, dest):
            raise ValueError(f"unknown config key {key!r} for command {args.command!r}")
        if getattr(args, dest) is None:
            setattr(args, dest, val)


def _signature_block(sig) -> dict:
    return {
        "mu": _complex_pair(sig.mu),
        "nu": _complex_pair(sig.nu),
        "lambda": [_complex_pair(sig.lambda1), _complex_pair(sig.lambda2)],
        "s": sig.s,
        "residual": sig.residual,
        "quadratic": sig.quadratic,
    }


def _prediction_block(pred) -> dict:
    E = pred.ellipse
    closed = {"closed": "yes", "open": "no", "unknown": "unknown"}[E.boundary_included]
    return {
        "foci": [_complex_pair(complex(E.focus1)), _complex_pair(complex(E.focus2))],
        "major": E.major_axis,
        "minor": E.minor_axis,
        "closed": closed,
        "attained": pred.attained,
    }


def _oracle_block(A, table, trials: int, seed) -> dict:
    pts = sample_oracle(A, trials, seed=seed)
    proj = (np.exp(-1j * table.angles)[:, None] * pts[None, :]).real
    viol = float((proj.max(axis=1) - table.support_values).max())
    return {"trials": int(trials), "max_violation": viol}


def cmd_analyze(args, argv: list[str]) -> int:
    angles = 720 if args.angles is None else int(args.angles)
    trials = 512 if args.oracle is None else int(args.oracle)
    seed = 0 if args.seed is None else int(args.seed)
    try:
        A = fileio.load_matrix(args.input)
    except (OSError, fileio.MatrixFormatError) as exc:
        return _fail(str(exc))
    try:
        sig = fit_quadratic(A)
        table = compute_range(A, m=angles, workers=_workers())
        oracle = _oracle_block(A, table, trials, seed) if trials > 0 else None
    except ValueError as exc:
        return _fail(str(exc))
    prediction = None
    hausdorff = None
    if sig.quadratic:
        pred = predict_W(sig)
        prediction = _prediction_block(pred)
        hausdorff = hausdorff_support(table, pred.ellipse)
    report = {
        "signature": _signature_block(sig),
        "prediction": prediction,
        "computation": {
            "grid": angles,
            "hausdorff_vs_prediction": hausdorff,
            "witness_defect": table.witness_defect(),
            "oracle": oracle,
        },
        "provenance": _provenance(args, argv),
    }
    try:
        _emit_report(args, report)
        if args.boundary:
            fileio.write_boundary_csv(
                args.boundary, table.angles, table.support_values, table.boundary_points
            )
    except OSError as exc:
        return _fail(str(exc))
    if not sig.quadratic:
        print("matrix is not quadratic; prediction omitted", file=sys.stderr)
        return 2
    return 0


def _echo(name: str, value) -> None:
    if value is None:
        print(f"{name} = unknown")
    else:
        print(f"{name} = {format_float(value)}")


def _gen_matrix(args):
    # returns (matrix, echo lines as (name, value) pairs)
    family = args.family
    N = 64 if args.size is None else int(args.size)
    if family == "composition":
        if args.p is None:
            raise InvalidParameter("composition needs --p")
        p = _parse_complex(args.p)
        pred = composition_predict(p)
        return composition_matrix(p, N), [
            ("norm", pred.norm),
            ("ess_norm", pred.ess_norm),
            ("major_axis", pred.ellipse_W.major_axis),
        ]
    if family == "hankel":
        if args.beta is None:
            raise InvalidParameter("hankel needs --beta")
        beta = float(args.beta)
        pred = power_weight_predict([beta])
        return power_weight_hankel(beta, N).matrix(), [
            ("singular_norm", pred.norm),
            ("singular_ess_norm", pred.ess_norm),
            ("singular_major_axis", pred.ellipse_Wess.major_axis),
        ]
    if family == "cauchy-circle":
        return cauchy_circle(N), [("norm", 1.0), ("ess_norm", 1.0), ("major_axis", 2.0)]
    if family == "canonical":
        if args.lam is None or args.x is None:
            raise InvalidParameter("canonical needs --lambda and --x")
        lams = _parse_complex_list(args.lam)
        if len(lams) != 2:
            raise InvalidParameter("--lambda needs exactly two comma-separated values")
        xs = _parse_float_list(args.x)
        dims = (0, 0) if args.dims is None else tuple(_parse_int_list(args.dims))
        if len(dims) != 2:
            raise InvalidParameter("--dims needs exactly two comma-separated integers")
        seed = 0 if args.seed is None else int(args.seed)
        A = assemble_canonical(lams[0], lams[1], xs, dims=dims, seed=seed)
        pred = predict_W(fit_quadratic(A))
        E = pred.ellipse
        return A, [
            ("major_axis", E.major_axis),
            ("minor_axis", E.minor_axis),
            ("focus1_re", complex(E.focus1).real),
            ("focus1_im", complex(E.focus1).imag),
            ("focus2_re", complex(E.focus2).real),
            ("focus2_im", complex(E.focus2).imag),
        ]
    raise InvalidParameter(f"unknown family {family!r}")


def cmd_gen(args, argv: list[str]) -> int:
    try:
        A, lines = _gen_matrix(args)
    except (InvalidParameter, ValueError) as exc:
        return _fail(str(exc))
    out = args.out or f"{args.family}_{A.shape[0]}.json"
    try:
        fileio.write_matrix(out, A)
    except OSError as exc:
        return _fail(str(exc))
    print(f"family = {args.family}")
    for name, value in lines:
        _echo(name, value)
    print(f"wrote {out}", file=sys.stderr)
    return 0


def _tail_norm(A: np.ndarray, tail_fraction: float) -> float:
    K = int(np.floor(tail_fraction * A.shape[0]))
    return spectral_norm(A[K:, K:])


def _sweep_rows(args, sizes: list[int], angles: int, tf: float) -> list[tuple]:
    family = args.family
    rows = []
    if family == "composition":
        if args.p is None:
            raise InvalidParameter("composition needs --p")
        p = _parse_complex(args.p)
        major_pred = composition_predict(p).ellipse_W.major_axis
        for N in sizes:
            A = composition_matrix(p, N)
            table = compute_range(A, m=angles, workers=_workers())
            rows.append(
                (N, spectral_norm(A), _tail_norm(A, tf), table.major_axis_estimate(), major_pred)
            )
    elif family == "hankel":
        if args.beta is None:
            raise InvalidParameter("hankel needs --beta")
        beta = float(args.beta)
        major_pred = power_weight_predict([beta]).ellipse_Wess.major_axis
        for N in sizes:
            A = power_weight_hankel(beta, N).matrix()
            h = spectral_norm(A)
            s_derived = singular_norm_from_hankel(h)
            rows.append((N, h, _tail_norm(A, tf), s_derived + 1 / s_derived, major_pred))
    else:
        for N in sizes:
            A = cauchy_circle(N)
            table = compute_range(A, m=angles, workers=_workers())
            rows.append((N, spectral_norm(A), _tail_norm(A, tf), table.major_axis_estimate(), 2.0))
    return rows


def cmd_sweep(args, argv: list[str]) -> int:
    if args.family not in SWEEP_FAMILIES:
        return _fail(f"family {args.family!r} cannot be swept (one of {SWEEP_FAMILIES})")
    if args.sizes is None:
        return _fail("--sizes is required")
    sizes = args.sizes if isinstance(args.sizes, list) else _parse_int_list(args.sizes)
    sizes = [int(N) for N in sizes]
    if len(sizes) < 2:
        return _fail("need at least 2 sizes")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        return _fail("sizes must be strictly increasing")
    angles = SWEEP_ANGLES_DEFAULT if args.angles is None else int(args.angles)
    tf = 0.5 if args.tail_fraction is None else float(args.tail_fraction)
    if not 0 < tf < 1:
        return _fail("tail-fraction must lie in (0, 1)")
    try:
        rows = _sweep_rows(args, sizes, angles, tf)
    except (InvalidParameter, ValueError) as exc:
        return _fail(str(exc))
    norms = [r[1] for r in rows]
    if any(b < a - 1e-12 for a, b in zip(norms, norms[1:])):
        _warn("norm column is not non-decreasing across the sweep")
    tails = [r[2] for r in rows]
    if any(t < max(tails[: i + 1]) * 0.95 for i, t in enumerate(tails)):
        _warn("tail-compression column dropped more than 5% below its running max")
    out = args.out or f"{args.family}_sweep.csv"
    try:
        fileio.write_sweep_csv(out, rows)
    except OSError as exc:
        return _fail(str(exc))
    print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_cnum(args, argv: list[str]) -> int:
    angles = 720 if args.angles is None else int(args.angles)
    try:
        A = fileio.load_matrix(args.input)
    except (OSError, fileio.MatrixFormatError) as exc:
        return _fail(str(exc))
    if args.c is None:
        return _fail("--c is required")
    try:
        raw = args.c if isinstance(args.c, list) else _parse_float_list(args.c)
        raw = [float(v) for v in raw]
    except ValueError as exc:
        return _fail(f"cannot parse --c: {exc}")
    if not raw:
        return _fail("--c needs at least one value")
    if any(v == 0 for v in raw):
        _warn("zero coefficients dropped from c")
        raw = [v for v in raw if v != 0]
        if not raw:
            return _fail("all coefficients were zero")
    c = Coefficients.from_values(raw)
    n = A.shape[0]
    if c.k > n:
        print(f"error: {c.k} coefficients exceed the dimension {n}", file=sys.stderr)
        return 3
    try:
        region = compute_wc(A, c, m=angles, workers=_workers())
    except ValueError as exc:
        return _fail(str(exc))
    sig = fit_quadratic(A)
    sandwich = None
    if sig.quadratic and sig.s > 0:
        rep = sandwich_check(A, sig, c, s0=None, grid=angles)
        sandwich = {
            "outer_foci": [
                _complex_pair(complex(rep.outer.focus1)),
                _complex_pair(complex(rep.outer.focus2)),
            ],
            "outer_major_axis": rep.outer.major_axis,
            "max_violation_outer": rep.max_violation_outer,
            "contained": rep.ok(),
        }
    report = {
        "coefficients": {
            "values": list(c.values),
            "rotation": _complex_pair(complex(c.rotation)),
            "k": c.k,
        },
        "signature": _signature_block(sig),
        "sandwich": sandwich,
        "computation": {"grid": angles, "witness_defect": region.witness_defect()},
        "provenance": _provenance(args, argv),
    }
    try:
        _emit_report(args, report)
        if args.boundary:
            fileio.write_boundary_csv(
                args.boundary, region.angles, region.support_values, region.boundary_points
            )
    except OSError as exc:
        return _fail(str(exc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnr",
        description="Numerical ranges of quadratic matrices: analysis, generators, sweeps.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config file; flags win on conflict")
    common.add_argument(
        "--no-timestamp",
        action="store_true",
        default=None,
        dest="no_timestamp",
        help="omit the timestamp field from reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="quadratic fit + range report")
    p.add_argument("input", help="matrix JSON file")
    p.add_argument("--angles", type=int, default=None, help="support grid size (default 720)")
    p.add_argument("--oracle", type=int, default=None, help="Rayleigh sample count (default 512)")
    p.add_argument("--seed", type=int, default=None, help="oracle RNG seed (default 0)")
    p.add_argument("--report", default=None, help="report JSON path (default: stdout)")
    p.add_argument("--boundary", default=None, help="boundary CSV path (default: not written)")

    p = sub.add_parser("gen", parents=[common], help="generate an operator matrix file")
    p.add_argument("family", choices=GEN_FAMILIES)
    p.add_argument("--size", type=int, default=None, help="matrix size N (default 64)")
    p.add_argument("--out", default=None, help="output path (default <family>_<n>.json)")
    p.add_argument("--p", default=None, help="composition symbol point (complex)")
    p.add_argument("--beta", type=float, default=None, help="power-weight exponent")
    p.add_argument("--lambda", dest="lam", default=None, help="canonical eigenvalues a,b")
    p.add_argument("--x", default=None, help="canonical coupling singular values x1,x2,...")
    p.add_argument("--dims", default=None, help="canonical uncoupled dimensions d1,d2")
    p.add_argument("--seed", type=int, default=None, help="unitary conjugation seed (default 0)")

    p = sub.add_parser("sweep", parents=[common], help="finite-section convergence table")
    p.add_argument("family", help=f"one of {SWEEP_FAMILIES}")
    p.add_argument("--sizes", default=None, help="comma-separated section sizes (at least 2)")
    p.add_argument("--out", default=None, help="CSV path (default <family>_sweep.csv)")
    p.add_argument("--p", default=None, help="composition symbol point (complex)")
    p.add_argument("--beta", type=float, default=None, help="power-weight exponent")
    p.add_argument(
        "--tail-fraction",
        dest="tail_fraction",
        type=float,
        default=None,
        help="tail-compression window start as a fraction of N (default 0.5)",
    )
    p.add_argument("--angles", type=int, default=None, help="range grid for major_computed (default 240)")

    p = sub.add_parser("cnum", parents=[common], help="c-numerical range support table")
    p.add_argument("input", help="matrix JSON file")
    p.add_argument("--c", default=None, help="comma-separated real coefficients")
    p.add_argument("--angles", type=int, default=None, help="support grid size (default 720)")
    p.add_argument("--seed", type=int, default=None, help="recorded in provenance")
    p.add_argument("--report", default=None, help="report JSON path (default: stdout)")
    p.add_argument("--boundary", default=None, help="boundary CSV path (default: not written)")
    return parser


HANDLERS = {"analyze": cmd_analyze, "gen": cmd_gen, "sweep": cmd_sweep, "cnum": cmd_cnum}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the artifact contract reserves 2
        return 0 if exc.code == 0 else 1
    try:
        _load_config(args)
    except (OSError, ValueError, tomllib.TOMLDecodeError) as exc:
        return _fail(f"config: {exc}")
    return HANDLERS[args.command](args, argv)


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
