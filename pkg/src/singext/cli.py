"""Batch command-line surface with reproducible JSON/CSV output.

Subcommands: model list | model info | solve-r | classify | weyl |
spectrum | nonneg | smatrix | ladder | sweep | verify.  Every command
but ``sweep`` prints one JSON envelope {command, inputs, output,
provenance} to stdout; ``sweep`` prints CSV rows.  Complex scalars are
passed as "re,im"; matrices as JSON files or inline JSON (nesting depth
2 for real entries, 3 for [re,im] pairs); outputs always use [re,im]
pairs.  Exit codes: 0 success, 1 verification mismatch, 2 input or
validation error, 3 mathematical failure (no unique solution where one
is required, or a singular matrix at the requested point), 64 unknown
subcommand.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import acceptance, models
from .admissibility import (NoSolution, UniqueSolution, classify_rank_one,
                            rank_one_to_json, solution_to_json,
                            solve_homogeneous_R)
from .errors import ConvergenceError, PoleError
from .jsonio import decode_complex, decode_matrix, encode_matrix
from .spectra_scattering import (S_MATRIX_PROVENANCE_NOTE, RealizationSpec,
                                 is_homogeneous_realization,
                                 is_nonnegative_realization, s_matrix,
                                 spectrum_ladder)
from .triplet import AdmissibleMatrix, CouplingMatrix
from .weyl import find_negative_eigenvalues, weyl_m

USAGE = """usage: singext <command> [options]

commands:
  model list            enumerate model kinds
  model info            family, flags and Gram samples of one model
  solve-r               solve the homogeneity system for R
  classify              rank-one trichotomy for an n=1 model
  weyl                  Weyl matrix M(z) of a model
  spectrum              negative-axis eigenvalues of a realization
  nonneg                nonnegativity criterion for a realization
  smatrix               scattering matrix S(z) for a coupling matrix
  ladder                geometric spectrum ladder
  sweep                 CSV sweep of a scalar coupling
  verify                run the reference-value verification suite

Tolerance defaults: family/solver checks 1e-10, Hermiticity 1e-12
(relative), unitarity 1e-12; see --help of each command.
"""


class _MathFailure(Exception):
    """Internal: a demanded unique solution is unavailable."""


def _load_json_arg(text: str):
    """Parse an argument as inline JSON, falling back to a file path."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        if os.path.exists(text):
            with open(text, "r", encoding="utf-8") as fh:
                return json.load(fh)
        raise ValueError(f"{text!r} is neither inline JSON nor an existing file")


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("interval must be 'lo,hi'")
    return float(parts[0]), float(parts[1])


def _model_from_args(args) -> models.ModelSpec:
    if getattr(args, "model", None):
        return models.model_from_json(_load_json_arg(args.model))
    kind = getattr(args, "kind", None)
    if kind is None:
        raise ValueError("provide --model JSON or --kind with its parameters")
    obj = {"kind": kind}
    for key in ("d", "p", "alpha", "n"):
        value = getattr(args, key, None)
        if value is not None:
            obj[key] = value
    if getattr(args, "m_gram", None):
        obj["m_gram"] = _load_json_arg(args.m_gram)
    return models.model_from_json(obj)


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="model spec as inline JSON or a file path")
    parser.add_argument("--kind", choices=sorted(models.MODEL_SUMMARIES),
                        help="model kind (alternative to --model)")
    parser.add_argument("--d", type=int, help="dimension for PointInteractionRd")
    parser.add_argument("--p", type=int, help="prime for PAdicVladimirov")
    parser.add_argument("--alpha", type=float,
                        help="exponent for PAdicVladimirov / ScalingInvariant3D")
    parser.add_argument("--n", type=int,
                        help="channel count for ScalingInvariant3D")
    parser.add_argument("--m-gram", dest="m_gram",
                        help="channel Gram matrix for ScalingInvariant3D")


def _solve_unique_r(spec: models.ModelSpec, tol: float) -> np.ndarray:
    sol = solve_homogeneous_R(spec.family, spec.gram, tol)
    if not isinstance(sol, UniqueSolution):
        raise _MathFailure(
            f"model admits no unique homogeneous R (got {sol.tag})")
    return sol.matrix


def _emit(command: str, inputs: dict, output, provenance: list[str]) -> None:
    envelope = {"command": command, "inputs": inputs, "output": output,
                "provenance": provenance}
    print(json.dumps(envelope, sort_keys=True))


def _cmd_model(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext model")
    parser.add_argument("action", choices=["list", "info"])
    _add_model_arguments(parser)
    args = parser.parse_args(argv)
    if args.action == "list":
        out = [{"kind": kind, "summary": models.MODEL_SUMMARIES[kind]}
               for kind in sorted(models.MODEL_SUMMARIES)]
        _emit("model list", {}, out, ["model registry"])
        return 0
    spec = _model_from_args(args)
    _emit("model info", {"kind": spec.kind, "params": dict(spec.params)},
          models.model_info(spec), ["model construction", "symmetry family",
                                    "Gram data"])
    return 0


def _cmd_solve_r(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext solve-r")
    _add_model_arguments(parser)
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="solver tolerance (default 1e-10)")
    args = parser.parse_args(argv)
    spec = _model_from_args(args)
    sol = solve_homogeneous_R(spec.family, spec.gram, args.tol)
    _emit("solve-r", {"kind": spec.kind, "params": dict(spec.params),
                      "tol": args.tol},
          solution_to_json(sol), ["homogeneity system for R"])
    return 3 if isinstance(sol, NoSolution) else 0


def _cmd_classify(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext classify")
    _add_model_arguments(parser)
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="solver tolerance (default 1e-10)")
    args = parser.parse_args(argv)
    spec = _model_from_args(args)
    verdict = classify_rank_one(spec.family, spec.gram,
                                spec.psi_in_Hminus1[0], args.tol)
    _emit("classify", {"kind": spec.kind, "params": dict(spec.params),
                       "tol": args.tol},
          rank_one_to_json(verdict),
          ["rank-one trichotomy", "homogeneity system for R"])
    return 0


def _cmd_weyl(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext weyl")
    _add_model_arguments(parser)
    parser.add_argument("--z", required=True, help="spectral point as 're,im'")
    parser.add_argument("--R", help="override R (inline JSON or file)")
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="solver tolerance (default 1e-10)")
    args = parser.parse_args(argv)
    spec = _model_from_args(args)
    if args.R:
        reg = decode_matrix(_load_json_arg(args.R))
    else:
        reg = _solve_unique_r(spec, args.tol)
    z = decode_complex(args.z)
    evaluation = weyl_m(spec.spectral, reg, z)
    out = {"z": [z.real, z.imag], "M": encode_matrix(evaluation.matrix),
           "closed_form_residual": evaluation.closed_form_residual}
    _emit("weyl", {"kind": spec.kind, "params": dict(spec.params),
                   "z": [z.real, z.imag]},
          out, ["Weyl function via the linear fractional transform"])
    return 0


def _cmd_spectrum(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext spectrum")
    _add_model_arguments(parser)
    parser.add_argument("--B", required=True, help="coupling matrix")
    parser.add_argument("--interval", required=True, help="'lo,hi' below 0")
    parser.add_argument("--num", type=int, default=2000,
                        help="scan grid size (default 2000)")
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="solver and bisection tolerance (default 1e-10)")
    args = parser.parse_args(argv)
    spec = _model_from_args(args)
    reg = _solve_unique_r(spec, args.tol)
    coupling = decode_matrix(_load_json_arg(args.B))
    interval = _parse_interval(args.interval)
    roots = find_negative_eigenvalues(spec.spectral, reg, coupling, interval,
                                      tol=args.tol, num=args.num)
    _emit("spectrum", {"kind": spec.kind, "params": dict(spec.params),
                       "interval": list(interval), "num": args.num,
                       "tol": args.tol},
          roots, ["negative-axis eigenvalue search",
                  "resolvent-difference kernel"])
    return 0


def _cmd_nonneg(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext nonneg")
    _add_model_arguments(parser)
    parser.add_argument("--B", required=True, help="coupling matrix")
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="solver and Loewner-order tolerance (default 1e-10)")
    args = parser.parse_args(argv)
    spec = _model_from_args(args)
    reg = _solve_unique_r(spec, args.tol)
    coupling = CouplingMatrix(decode_matrix(_load_json_arg(args.B)))
    report = is_nonnegative_realization(
        RealizationSpec(coupling, AdmissibleMatrix(reg), spec.family),
        args.tol)
    _emit("nonneg", {"kind": spec.kind, "params": dict(spec.params),
                     "tol": args.tol},
          report.to_json(), ["nonnegativity criterion in Loewner order"])
    return 0


def _cmd_smatrix(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext smatrix")
    parser.add_argument("--B", required=True, help="coupling matrix")
    parser.add_argument("--z", required=True, help="spectral point as 're,im'")
    parser.add_argument("--tol", type=float, default=1e-12,
                        help="unitarity/contractivity tolerance (default 1e-12)")
    args = parser.parse_args(argv)
    coupling = decode_matrix(_load_json_arg(args.B))
    z = decode_complex(args.z)
    result = s_matrix(coupling, z, args.tol)
    out = {"z": [z.real, z.imag], "S": encode_matrix(result.matrix),
           "unitary": result.unitary, "contractive": result.contractive,
           "unitary_defect": result.unitary_defect,
           "max_singular_value": result.max_singular_value,
           "note": S_MATRIX_PROVENANCE_NOTE}
    _emit("smatrix", {"z": [z.real, z.imag], "tol": args.tol}, out,
          ["Cayley-type scattering matrix"])
    return 0


def _cmd_ladder(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext ladder")
    parser.add_argument("--lambda", dest="lambda0", required=True,
                        help="base spectral point as 're,im'")
    parser.add_argument("--p", type=float, required=True, help="ladder ratio")
    parser.add_argument("--range", dest="n_range", required=True,
                        help="inclusive integer range 'a,b'")
    args = parser.parse_args(argv)
    lam = decode_complex(args.lambda0)
    a_str, b_str = args.n_range.split(",")
    points = spectrum_ladder(lam, args.p, (int(a_str), int(b_str)))
    _emit("ladder", {"lambda": [lam.real, lam.imag], "p": args.p,
                     "range": [int(a_str), int(b_str)]},
          [[v.real, v.imag] for v in points],
          ["geometric spectrum ladder of homogeneous realizations"])
    return 0


def _cmd_sweep(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext sweep")
    _add_model_arguments(parser)
    parser.add_argument("--range", dest="b_range", required=True,
                        help="'lo,hi' of the scalar coupling b")
    parser.add_argument("--count", type=int, required=True)
    parser.add_argument("--check", choices=["nonneg", "homogeneous"],
                        default="nonneg")
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="criterion tolerance (default 1e-10)")
    args = parser.parse_args(argv)
    spec = _model_from_args(args)
    if spec.n != 1:
        raise ValueError("sweep drives a scalar coupling; the model must have n=1")
    reg = AdmissibleMatrix(_solve_unique_r(spec, args.tol))
    lo, hi = _parse_interval(args.b_range)
    writer = csv.writer(sys.stdout, lineterminator="\r\n")
    writer.writerow(["b", "verdict"])
    for b in np.linspace(lo, hi, args.count):
        realization = RealizationSpec(CouplingMatrix([[b]]), reg, spec.family)
        if args.check == "nonneg":
            verdict = bool(is_nonnegative_realization(realization, args.tol))
        else:
            verdict = is_homogeneous_realization(realization, args.tol)
        writer.writerow([repr(float(b)), "true" if verdict else "false"])
    return 0


def _cmd_verify(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="singext verify")
    parser.add_argument("--criteria",
                        help="comma-separated criterion numbers (default all)")
    args = parser.parse_args(argv)
    numbers = None
    if args.criteria:
        numbers = [int(v) for v in args.criteria.split(",")]
    results = acceptance.run_criteria(numbers)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"criterion {res.number}: {status} - {res.title}",
              file=sys.stderr)
    _emit("verify", {"criteria": numbers or sorted(acceptance.CRITERIA)},
          [res.to_json() for res in results],
          ["reference-value verification suite"])
    return 0 if all(res.passed for res in results) else 1


_HANDLERS = {
    "model": _cmd_model,
    "solve-r": _cmd_solve_r,
    "classify": _cmd_classify,
    "weyl": _cmd_weyl,
    "spectrum": _cmd_spectrum,
    "nonneg": _cmd_nonneg,
    "smatrix": _cmd_smatrix,
    "ladder": _cmd_ladder,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def run(argv: list[str]) -> int:
    """Execute one command; returns the exit code."""
    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE)
        return 0 if argv else 64
    command = argv[0]
    handler = _HANDLERS.get(command)
    if handler is None:
        print(USAGE)
        return 64
    try:
        return handler(argv[1:])
    except SystemExit as exc:  # argparse --help or argument errors
        code = exc.code
        return code if isinstance(code, int) else 2
    except _MathFailure as exc:
        print(json.dumps({"command": command, "error": str(exc)},
                         sort_keys=True))
        return 3
    except (PoleError, ConvergenceError) as exc:
        print(json.dumps({"command": command, "error": str(exc)},
                         sort_keys=True))
        return 3
    except (ValueError, KeyError, OSError) as exc:
        print(json.dumps({"command": command, "error": str(exc)},
                         sort_keys=True))
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
