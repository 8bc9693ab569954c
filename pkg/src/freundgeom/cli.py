"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
Numbers are written with 17 significant digits; output is a pure function of
the arguments.  A relative ``--output`` path is resolved against
``$FREUNDGEOM_OUTPUT_DIR`` when that variable is set.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import geometry, immersion, stochastic, submanifolds as sm, verify
from .params import DomainError, FreundParams

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
CLAMP_RANGE = (1e-6, 1e6)
OUTPUT_DIR_ENV = "FREUNDGEOM_OUTPUT_DIR"
MANIFOLD_ARITY = {"F": 4, "F1": 2, "F2": 2, "F3": 2, "F4": 3, "F4sym": 2}


class UsageError(Exception):
    pass


# ------------------------------------------------------------- formatting


def fmt(x) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x + 0.0, ".17g")


def to_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with every float at 17 significant digits."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}"{k}": {to_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in obj):
            return "[" + ", ".join(to_json(v, indent + 1) for v in obj) + "]"
        items = [inner + to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if obj is None:
        return "null"
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _text_block(name: str, value) -> list[str]:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            lines.extend(_text_block(f"{name}.{k}" if name else str(k), v))
        return lines
    arr = np.asarray(value)
    if arr.dtype == object or arr.dtype.kind in "US":
        return [f"{name} = {value}"]
    if arr.ndim == 0:
        return [f"{name} = {fmt(arr)}" if name else fmt(arr)]
    if arr.ndim == 1:
        return [f"{name} = " + " ".join(fmt(v) for v in arr)]
    if arr.ndim == 2:
        return [f"{name} ="] + ["  " + " ".join(fmt(v) for v in row) for row in arr]
    lines = [f"{name} (nonzero, 1-based):"]
    for idx in zip(*np.nonzero(arr)):
        lines.append("  " + ",".join(str(i + 1) for i in idx) + " " + fmt(arr[idx]))
    return lines


def to_text(result: dict) -> str:
    if list(result) == ["value"]:
        return fmt(result["value"]) + "\n"
    lines = []
    for k, v in result.items():
        lines.extend(_text_block(k, v))
    return "\n".join(lines) + "\n"


def to_csv(result: dict) -> str:
    """Long format: ``quantity,index,value`` with 1-based comma-free indices."""
    rows = ["quantity,index,value"]
    for key, val in _flatten(result):
        arr = np.asarray(val)
        if arr.dtype == object or arr.dtype.kind in "USb":
            rows.append(f"{key},,{val}")
        elif arr.ndim == 0:
            rows.append(f"{key},,{fmt(arr)}")
        else:
            for idx in np.ndindex(arr.shape):
                rows.append(f"{key},{'-'.join(str(i + 1) for i in idx)},{fmt(arr[idx])}")
    return "\n".join(rows) + "\n"


def _flatten(d: dict, prefix: str = ""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, v


# ---------------------------------------------------------------- parsing


def parse_values(text: str | None, arity: int, what: str) -> list[float]:
    if text is None:
        raise UsageError(f"--params is required ({arity} comma-separated values for {what})")
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--params must be comma-separated numbers: {text!r}") from exc
    if len(values) != arity:
        raise UsageError(f"{what} takes {arity} parameters, got {len(values)}")
    return values


def clamp(values: list[float]) -> list[float]:
    """Clamp positive parameters into the supported range, warning on stderr."""
    lo, hi = CLAMP_RANGE
    out = []
    for v in values:
        if not math.isfinite(v) or v <= 0:
            raise DomainError(f"parameters must be finite and positive, got {v!r}")
        c = min(max(v, lo), hi)
        if c != v:
            print(f"warning: parameter {v!r} clamped to {c!r}", file=sys.stderr)
        out.append(c)
    return out


def _point(args, arity=4, what="the Freund manifold") -> list[float]:
    return clamp(parse_values(args.params, arity, what))


def _resolve_output(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, args) -> None:
    out = _resolve_output(args.output)
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _render(result: dict, args) -> str:
    if args.format == "json":
        return to_json(result) + "\n"
    if args.format == "csv":
        return to_csv(result)
    return to_text(result)


# --------------------------------------------------------------- commands


def cmd_metric(args) -> int:
    p = FreundParams(*_point(args))
    _emit(_render({"metric": geometry.fisher_metric(p), "inverse": geometry.fisher_metric_inverse(p)}, args), args)
    return EXIT_OK


def cmd_connection(args) -> int:
    p = FreundParams(*_point(args))
    result = {
        "alpha": args.alpha,
        "christoffel_lower": geometry.christoffel_lower(p, args.alpha),
        "christoffel_upper": geometry.christoffel_upper(p, args.alpha),
    }
    _emit(_render(result, args), args)
    return EXIT_OK


def cmd_curvature(args) -> int:
    p = FreundParams(*_point(args))
    _emit(_render({"alpha": args.alpha, "curvature": geometry.curvature_tensor(p, args.alpha)}, args), args)
    return EXIT_OK


def cmd_ricci(args) -> int:
    p = FreundParams(*_point(args))
    ric = geometry.ricci_tensor(p, args.alpha)
    result = {
        "alpha": args.alpha,
        "ricci": ric.matrix,
        "eigenvalues": ric.eigenvalues,
        "eigenvectors": ric.eigenvectors,
    }
    _emit(_render(result, args), args)
    return EXIT_OK


def cmd_scalar(args) -> int:
    # the scalar curvature is constant on F, so --params is optional here
    p = FreundParams(*_point(args)) if args.params is not None else FreundParams(1.0, 1.0, 1.0, 1.0)
    _emit(_render({"value": geometry.scalar_curvature(p, args.alpha)}, args), args)
    return EXIT_OK


def cmd_sectional(args) -> int:
    p = FreundParams(*_point(args))
    sec = geometry.sectional_curvatures(p, args.alpha)
    mean = geometry.mean_curvatures(p, args.alpha)
    result = {
        "alpha": args.alpha,
        "sectional": {f"{a}{b}": v for (a, b), v in sec.items()},
        "mean": {str(k): v for k, v in mean.items()},
    }
    _emit(_render(result, args), args)
    return EXIT_OK


def cmd_submanifold(args) -> int:
    name = args.manifold
    q = _point(args, MANIFOLD_ARITY[name], name)
    a = args.alpha
    if name == "F1":
        p = sm.F1Point(*q)
        low, up = sm.f1_connection(p, a)
        result = {"metric": sm.f1_metric(p), "christoffel_lower": low, "christoffel_upper": up,
                  "curvature_max_abs": float(np.max(np.abs(sm.f1_curvature(p, a))))}
    elif name == "F2":
        p = sm.F2Point(*q)
        low, up = sm.f2_connection(p, a)
        pot = sm.f2_potential(p)
        dual = sm.f2_to_dual(p)
        result = {"metric": sm.f2_metric(p), "christoffel_lower": low, "christoffel_upper": up,
                  "potential": pot.value, "dual_coords": dual.as_array(),
                  "dual_potential": sm.f2_dual_potential(p),
                  "covariance": sm.f2_covariance(p), "correlation": sm.f2_correlation(p)}
    elif name == "F3":
        p = sm.F3Point(*q)
        result = {"metric": sm.f3_metric(p), "christoffel_lower": sm.f3_christoffel_lower(p, a),
                  "christoffel_upper": sm.f3_connection(p, a),
                  "covariance": sm.f3_covariance(p), "correlation": sm.f3_correlation(p),
                  "curvature_max_abs": float(np.max(np.abs(sm.f3_curvature(p, a))))}
    elif name == "F4":
        p = sm.ACBEDPoint(*q)
        ind = sm.acbed_connection(p, a)
        result = {"freund_params": p.embed().as_array(), "metric": sm.acbed_metric(p),
                  "christoffel_lower": ind.christoffel_lower, "christoffel_upper": ind.christoffel_upper,
                  "covariance": sm.acbed_covariance(p), "correlation": sm.acbed_correlation(p),
                  "curvature_max_abs": float(np.max(np.abs(sm.acbed_curvature(p, a))))}
    else:
        fam = sm.acbed_symmetric_family(q[0], q[1], a)
        result = {"metric": fam.metric, "christoffel_lower": fam.christoffel_lower,
                  "christoffel_upper": fam.christoffel_upper, "potential": fam.potential.value,
                  "dual_coords": fam.dual_coords, "dual_potential": fam.dual_potential,
                  "curvature_max_abs": float(np.max(np.abs(sm.acbed_symmetric_curvature(q[0], q[1], a))))}
    _emit(_render({"manifold": name, "alpha": a, **result}, args), args)
    return EXIT_OK


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"ranges are given as lo,hi: {text!r}") from exc
    return lo, hi


def cmd_immerse(args) -> int:
    if args.mesh:
        mesh = immersion.build_mesh(
            _range(args.u_range), _range(args.v_range), args.resolution, args.tube_radius
        )
        text = immersion.mesh_to_obj(mesh) if args.mesh_format == "obj" else immersion.mesh_to_csv(mesh)
        _emit(text, args)
        return EXIT_OK
    u, v = _point(args, 2, "the immersion (alpha1,beta1)")
    q = immersion.immerse(sm.F2Point(u, v))
    dist, foot = immersion.distance_to_independence(q)
    result = {"point": q.as_array(), "transversal": list(immersion.TRANSVERSAL),
              "distance_to_independence": dist, "foot": foot.as_array()}
    _emit(_render(result, args), args)
    return EXIT_OK


def cmd_sample(args) -> int:
    p = FreundParams(*_point(args))
    batch = stochastic.sample(p, args.n, args.seed)
    if args.format == "csv":
        _emit(stochastic.batch_to_csv(batch), args)
        return EXIT_OK
    mom = stochastic.empirical_moments(batch) if batch.n >= 2 else None
    result = {"n": batch.n, "seed": batch.seed}
    if mom is not None:
        result.update(vars(mom))
    _emit(_render(result, args), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    overrides = {}
    for item in args.tol or []:
        key, sep, value = item.partition("=")
        try:
            overrides[key] = float(value)
        except ValueError:
            sep = ""
        if not sep or key not in verify.DEFAULT_TOLERANCES:
            raise UsageError(f"--tol expects CHECK=VALUE with a known check name, got {item!r}")
    report = verify.run_verification(args.grid, overrides)
    if args.format == "json":
        text = to_json(report.to_dict()) + "\n"
    elif args.format == "csv":
        text = report.to_csv()
    else:
        text = report.to_text()
    _emit(text, args)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    "metric": (cmd_metric, "Fisher metric and its inverse"),
    "connection": (cmd_connection, "alpha-connection symbols, lower and upper"),
    "curvature": (cmd_curvature, "all-lower alpha-curvature tensor"),
    "ricci": (cmd_ricci, "alpha-Ricci tensor and eigen-system"),
    "scalar": (cmd_scalar, "alpha-scalar curvature"),
    "sectional": (cmd_sectional, "sectional and mean curvatures"),
    "submanifold": (cmd_submanifold, "geometry of F1, F2, F3, F4 or the symmetric F4 slice"),
    "immerse": (cmd_immerse, "affine immersion of F2: point, distance or mesh export"),
    "sample": (cmd_sample, "simulate the Freund construction"),
    "verify": (cmd_verify, "closed forms against the numeric oracles"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="comma-separated parameter values")
    common.add_argument("--alpha", type=float, default=0.0, help="connection index (default 0)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=0, help="random seed for sample")

    parser = argparse.ArgumentParser(prog="freundgeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {}
    for name, (_, help_text) in COMMANDS.items():
        parsers[name] = sub.add_parser(name, parents=[common], help=help_text)
    parsers["submanifold"].add_argument(
        "--manifold", choices=tuple(k for k in MANIFOLD_ARITY if k != "F"), required=True
    )
    imm = parsers["immerse"]
    imm.add_argument("--mesh", action="store_true", help="export the surface mesh instead of one point")
    imm.add_argument("--mesh-format", choices=("obj", "csv"), default="obj")
    imm.add_argument("--u-range", default="0.2,3")
    imm.add_argument("--v-range", default="0.2,3")
    imm.add_argument("--resolution", type=int, default=64)
    imm.add_argument("--tube-radius", type=float, default=0.1)
    parsers["sample"].add_argument("--n", type=int, default=1000, help="number of pairs")
    parsers["verify"].add_argument("--grid", choices=tuple(verify.GRIDS), default="coarse")
    parsers["verify"].add_argument(
        "--tol", action="append", metavar="CHECK=VALUE", help="override one check tolerance"
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not math.isfinite(args.alpha):
        parser.error("--alpha must be finite")
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except UsageError as exc:
        parser.error(str(exc))
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
