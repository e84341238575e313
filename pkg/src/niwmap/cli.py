"""Batch JSON front end.

Parameter documents look like::

    {"dim": 1, "parameterization": "standard",
     "params": {"mu0": [0], "lambda": 1, "psi": [1], "nu": 3},
     "solver": {"nu0": 1, "epsilon": 1e-10}}

Matrices are row-major flat arrays of length ``dim**2``. Natural documents
carry ``eta1 .. eta4`` and mean documents ``m1 .. m4``. ``solver`` is
optional and only consulted when the mean-to-natural solve runs.

Failures produce ``{"error": {"code": ..., "message": ...}}`` on stdout and
exit status 1. Exit status is 0 exactly when no error document is written.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import linalg
from .errors import DimensionError, InvalidParams, NIWError
from .forward import mean_from_natural
from .model import (
    MeanParams,
    NaturalParams,
    StandardParams,
    log_pdf,
    natural_to_standard,
    standard_to_natural,
)
from .reverse import NuSolverConfig, f_prime_nu, natural_from_mean, standard_from_mean
from .sampling import random_source, sample_niw

PARAMETERIZATIONS = ("standard", "natural", "mean")

# name -> (kind, field on the params object); kind is "vector", "matrix" or "scalar"
_FIELDS = {
    "standard": (("mu0", "vector", "mu0"), ("lambda", "scalar", "lam"), ("psi", "matrix", "psi"), ("nu", "scalar", "nu")),
    "natural": (("eta1", "matrix", "eta1"), ("eta2", "vector", "eta2"), ("eta3", "scalar", "eta3"), ("eta4", "scalar", "eta4")),
    "mean": (("m1", "matrix", "m1"), ("m2", "vector", "m2"), ("m3", "scalar", "m3"), ("m4", "scalar", "m4")),
}
_TYPES = {"standard": StandardParams, "natural": NaturalParams, "mean": MeanParams}
_SOLVER_KEYS = ("nu0", "epsilon", "max_newton_iters", "max_bracket_halvings")

SAMPLE_CHUNK = 4096


def dumps(obj):
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialize non-finite number {obj!r}")
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _number(x, name):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InvalidParams(f"{name} must be a number")
    return float(x)


def _flat(x, length, name):
    if not isinstance(x, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        raise InvalidParams(f"{name} must be an array of numbers")
    if len(x) != length:
        raise DimensionError(f"{name} has {len(x)} entries, expected {length}")
    return np.array(x, dtype=float)


def parse_document(doc):
    """Build ``(params, solver_config)`` from a parameter document."""
    if not isinstance(doc, dict):
        raise InvalidParams("document must be a JSON object")
    d = doc.get("dim")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidParams("dim must be a positive integer")
    kind = doc.get("parameterization")
    if kind not in PARAMETERIZATIONS:
        raise InvalidParams(f"parameterization must be one of {PARAMETERIZATIONS}, got {kind!r}")
    payload = doc.get("params")
    if not isinstance(payload, dict):
        raise InvalidParams("params must be a JSON object")
    expected = {name for name, _, _ in _FIELDS[kind]}
    if set(payload) != expected:
        raise InvalidParams(f"{kind} params need exactly the fields {sorted(expected)}, got {sorted(payload)}")
    kwargs = {}
    for name, shape, attr in _FIELDS[kind]:
        if shape == "matrix":
            kwargs[attr] = _flat(payload[name], d * d, name).reshape(d, d)
        elif shape == "vector":
            kwargs[attr] = _flat(payload[name], d, name)
        else:
            kwargs[attr] = _number(payload[name], name)
    params = _TYPES[kind](**kwargs)
    return params, parse_solver(doc.get("solver", {}))


def parse_solver(block):
    if not isinstance(block, dict) or set(block) - set(_SOLVER_KEYS):
        raise InvalidParams(f"solver must be an object with keys among {_SOLVER_KEYS}")
    kwargs = {}
    for key, value in block.items():
        if key.startswith("max_"):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidParams(f"solver.{key} must be an integer")
            kwargs[key] = value
        else:
            kwargs[key] = _number(value, f"solver.{key}")
    return NuSolverConfig(**kwargs)


def parameterization_of(params):
    for kind, cls in _TYPES.items():
        if isinstance(params, cls):
            return kind
    raise TypeError(f"not a parameter object: {params!r}")


def serialize_params(params):
    kind = parameterization_of(params)
    payload = {}
    for name, shape, attr in _FIELDS[kind]:
        value = getattr(params, attr)
        payload[name] = linalg.vec(value).tolist() if shape == "matrix" else (
            value.tolist() if shape == "vector" else float(value))
    return {"dim": params.dim, "parameterization": kind, "params": payload}


def _report_dict(report):
    return {
        "nu": report.nu,
        "bracket_halvings": report.bracket_halvings,
        "newton_iters": report.newton_iters,
        "final_abs_f": report.final_abs_f,
    }


def to_natural(params, cfg):
    """Natural parameters for any parameter object, plus the solver report if one ran."""
    if isinstance(params, NaturalParams):
        return params, None
    if isinstance(params, StandardParams):
        return standard_to_natural(params), None
    return natural_from_mean(params, cfg, full_output=True)


def cmd_convert(params, target, cfg):
    if target not in PARAMETERIZATIONS:
        raise InvalidParams(f"unknown target parameterization {target!r}")
    report = None
    if isinstance(params, MeanParams) and target == "mean":
        out = params
    elif isinstance(params, MeanParams) and target == "standard":
        out, report = standard_from_mean(params, cfg, full_output=True)
    elif isinstance(params, StandardParams) and target == "standard":
        out = params
    else:
        e, report = to_natural(params, cfg)
        if target == "natural":
            out = e
        elif target == "standard":
            out = natural_to_standard(e)
        else:
            out = mean_from_natural(e)
    doc = serialize_params(out)
    if report is not None:
        doc["diagnostics"] = {"nu_solver": _report_dict(report)}
    return doc


def parse_point(obj, d):
    if not isinstance(obj, dict) or set(obj) != {"mu", "sigma"}:
        raise InvalidParams('point must be an object with fields "mu" and "sigma"')
    mu = _flat(obj["mu"], d, "mu")
    sigma = linalg.symmetric(_flat(obj["sigma"], d * d, "sigma").reshape(d, d), name="sigma")
    return mu, sigma


def cmd_logpdf(params, point, cfg):
    e, _ = to_natural(params, cfg)
    mu, sigma = parse_point(point, e.dim)
    return log_pdf(mu, sigma, e)


def cmd_sample(params, n, seed, cfg):
    """Iterator over ``n`` sample records ``{"mu": [...], "sigma": [...]}``.

    Arguments are validated eagerly, before the first record is produced.
    """
    if n < 0:
        raise InvalidParams(f"sample count must be non-negative, got {n}")
    if isinstance(params, StandardParams):
        p = params
    else:
        p = natural_to_standard(to_natural(params, cfg)[0])
    return _sample_records(p, n, random_source(seed))


def _sample_records(p, n, rng):
    remaining = n
    while remaining > 0:
        k = min(SAMPLE_CHUNK, remaining)
        mu, sigma = sample_niw(p, rng, size=k)
        for i in range(k):
            yield {"mu": mu[i].tolist(), "sigma": sigma[i].reshape(-1).tolist()}
        remaining -= k


def _normwise_rel(pairs):
    out = 0.0
    for a, b in pairs:
        a = np.atleast_1d(np.asarray(a, dtype=float))
        b = np.atleast_1d(np.asarray(b, dtype=float))
        scale = np.max(np.abs(a))
        err = np.max(np.abs(a - b))
        out = max(out, err / scale if scale > 0 else err)
    return float(out)


def _natural_pairs(e, e2):
    return [(e.eta1, e2.eta1), (e.eta2, e2.eta2), (e.eta3, e2.eta3), (e.eta4, e2.eta4)]


def _mean_pairs(m, m2):
    return [(m.m1, m2.m1), (m.m2, m2.m2), (m.m3, m2.m3), (m.m4, m2.m4)]


def cmd_check(params, cfg, tol=1e-8):
    """Forward -> reverse -> forward diagnostics.

    Residuals are normwise relative errors per parameter block (largest
    entry error over largest entry magnitude), maximized over blocks.
    Returns ``(report, passed)``.
    """
    e, first_report = to_natural(params, cfg)
    m = mean_from_natural(e)
    e2, report = natural_from_mean(m, cfg, full_output=True)
    m2 = mean_from_natural(e2)
    iterates = report.iterates
    invariants = {
        "natural_params_valid": True,
        "mean_params_feasible": True,
        "f_prime_positive_at_root": f_prime_nu(report.nu, e.dim) > 0.0,
        "newton_iterates_nondecreasing": all(b >= a for a, b in zip(iterates, iterates[1:])),
        "f_residual_within_epsilon": report.final_abs_f <= cfg.epsilon,
    }
    residuals = {
        "natural_roundtrip": _normwise_rel(_natural_pairs(e, e2)),
        "mean_roundtrip": _normwise_rel(_mean_pairs(m, m2)),
        "f_nu": report.final_abs_f,
    }
    passed = all(invariants.values()) and residuals["natural_roundtrip"] < tol and residuals["mean_roundtrip"] < tol
    diagnostics = {"nu_solver": _report_dict(report)}
    if first_report is not None:
        diagnostics["input_nu_solver"] = _report_dict(first_report)
    out = {
        "passed": passed,
        "tolerance": tol,
        "residuals": residuals,
        "invariants": invariants,
        "diagnostics": diagnostics,
    }
    if not passed:
        failed = [k for k, v in invariants.items() if not v]
        failed += [k for k in ("natural_roundtrip", "mean_roundtrip") if not residuals[k] < tol]
        out["error"] = {"code": "CHECK_FAILED", "message": "failed checks: " + ", ".join(failed)}
    return out, passed


def _error_document(code, message):
    return {"error": {"code": code, "message": message}}


def _read_json(path, stdin):
    try:
        if path is None or path == "-":
            return json.load(stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise InvalidParams(f"could not read JSON input: {exc}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="parameter document (default: stdin)")
    common.add_argument("--epsilon", type=float, help="tolerance on |f(nu)| for the nu solve")
    common.add_argument("--nu0", type=float, help="initial guess for the nu solve")

    parser = argparse.ArgumentParser(prog="niwmap", description="Normal-inverse-Wishart parameter conversions.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("convert", parents=[common], help="convert between parameterizations")
    p.add_argument("--to", required=True, choices=PARAMETERIZATIONS)
    p = sub.add_parser("logpdf", parents=[common], help="log density at a point")
    p.add_argument("--at", required=True, help='point document {"mu": [...], "sigma": [...]}')
    p = sub.add_parser("sample", parents=[common], help="draw samples as newline-delimited JSON")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p = sub.add_parser("check", parents=[common], help="round-trip and invariant diagnostics")
    p.add_argument("--tol", type=float, default=1e-8)
    return parser


def _run(args, stdin, stdout):
    params, cfg = parse_document(_read_json(args.input, stdin))
    overrides = {k: getattr(args, k) for k in ("epsilon", "nu0") if getattr(args, k) is not None}
    if overrides:
        cfg = NuSolverConfig(**{**cfg.__dict__, **overrides})

    if args.command == "convert":
        stdout.write(dumps(cmd_convert(params, args.to, cfg)) + "\n")
    elif args.command == "logpdf":
        stdout.write(dumps(cmd_logpdf(params, _read_json(args.at, stdin), cfg)) + "\n")
    elif args.command == "sample":
        for rec in cmd_sample(params, args.n, args.seed, cfg):
            stdout.write(dumps(rec) + "\n")
    else:
        report, passed = cmd_check(params, cfg, args.tol)
        stdout.write(dumps(report) + "\n")
        return 0 if passed else 1
    return 0


def main(argv=None, stdin=None, stdout=None):
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    try:
        return _run(args, stdin, stdout)
    except NIWError as exc:
        stdout.write(dumps(_error_document(exc.code, str(exc))) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
