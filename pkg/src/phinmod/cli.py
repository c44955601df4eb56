"""Command-line front end: JSON in, canonical JSON out, batch mode.

Canonical output means sorted keys, compact separators, exact scalar strings,
and a trailing newline, so identical inputs give byte-identical outputs.

Exit codes: 0 success, 1 invalid input (machine-readable error object on
stdout), 2 unsupported case (exact computation out of range).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .adjoint import FrobTuple, ad_frobenius, one_minus_pad, unflatten_tuple
from .components import (
    gl2_report,
    gl2_x0_tangent,
    reg_filtration_reconstruct,
    singularity_certificate,
    sub_fiber,
)
from .errors import InternalCheckError, InvalidInputError, UnsupportedCaseError
from .field import Scalar, is_prime
from .linalg import Mat, charpoly, jordan_type
from .moduli import (
    Filtration,
    canonical_point,
    complex_dims,
    filtered_complex_dims,
    validate_point,
)
from .nilpotent import associated_cocharacter
from .selftest import run_selftest

__all__ = ["main", "console_main"]

COMMANDS = [
    "validate",
    "charpoly-ad",
    "kernel",
    "jordan-type",
    "assoc-cochar",
    "canonical-point",
    "complex-dims",
    "complex-dims-filtered",
    "tangent-dim",
    "gl2-report",
    "gl2-x0-tangent",
    "reg-reconstruct",
    "gl3-sub-fiber",
    "gl3-certificate",
    "selftest",
]


# -- payload parsing ----------------------------------------------------------


def _parse_scalar(obj, p: int) -> Scalar:
    if isinstance(obj, int):
        return Scalar(obj, 0, p)
    if isinstance(obj, str):
        return Scalar(Fraction(obj), 0, p)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return Scalar.from_pair([str(obj[0]), str(obj[1])], p)
    raise InvalidInputError(f"bad scalar {obj!r}")


def _parse_mat(obj, p: int) -> Mat:
    if not (isinstance(obj, list) and obj and all(isinstance(r, list) for r in obj)):
        raise InvalidInputError("matrix must be a non-empty list of rows")
    return Mat([[_parse_scalar(x, p) for x in row] for row in obj])


def _parse_mats(obj, p: int):
    if not (isinstance(obj, list) and obj):
        raise InvalidInputError("expected a non-empty list of matrices")
    return [_parse_mat(m, p) for m in obj]


def _check_shape(mats, opts):
    n = mats[0].rows
    f = len(mats)
    if opts.n is not None and opts.n != n:
        raise InvalidInputError(f"--n {opts.n} does not match payload size {n}")
    if opts.f is not None and opts.f != f:
        raise InvalidInputError(f"--f {opts.f} does not match payload length {f}")


def _group_tuple(obj, opts) -> FrobTuple:
    mats = _parse_mats(obj, opts.p)
    _check_shape(mats, opts)
    return FrobTuple.group(mats)


def _lie_tuple(obj, opts) -> FrobTuple:
    mats = _parse_mats(obj, opts.p)
    _check_shape(mats, opts)
    return FrobTuple.lie(mats)


def _point(payload, opts):
    if not isinstance(payload, dict):
        raise InvalidInputError("payload must be an object with 'phi' and 'nil'")
    if "phi" not in payload or "nil" not in payload:
        raise InvalidInputError("payload needs 'phi' and 'nil'")
    return validate_point(_group_tuple(payload["phi"], opts),
                          _lie_tuple(payload["nil"], opts))


def _single_mat(payload, opts, key: str = "mat") -> Mat:
    if not isinstance(payload, dict) or key not in payload:
        raise InvalidInputError(f"payload needs '{key}'")
    m = _parse_mat(payload[key], opts.p)
    if opts.n is not None and opts.n != m.rows:
        raise InvalidInputError(f"--n {opts.n} does not match payload size {m.rows}")
    return m


# -- command handlers ---------------------------------------------------------


def _cmd_validate(payload, opts):
    pt = _point(payload, opts)
    return {"valid": True, "n": pt.n, "f": pt.f, "p": pt.p}


def _cmd_charpoly_ad(payload, opts):
    if not isinstance(payload, dict) or "phi" not in payload:
        raise InvalidInputError("payload needs 'phi'")
    phi = _group_tuple(payload["phi"], opts)
    coeffs = charpoly(ad_frobenius(phi).matrix)
    return {"charpoly": [c.to_pair() for c in coeffs]}


def _cmd_kernel(payload, opts):
    if not isinstance(payload, dict) or "phi" not in payload:
        raise InvalidInputError("payload needs 'phi'")
    phi = _group_tuple(payload["phi"], opts)
    ker = one_minus_pad(phi).kernel()
    basis = [[m.to_lists() for m in unflatten_tuple(v, phi.n, phi.f)]
             for v in ker.basis]
    return {"dim": ker.dim, "basis": basis}


def _cmd_jordan_type(payload, opts):
    m = _single_mat(payload, opts)
    return {"partition": list(jordan_type(m))}


def _cmd_assoc_cochar(payload, opts):
    m = _single_mat(payload, opts)
    return associated_cocharacter(m).to_json_dict()


def _cmd_canonical_point(payload, opts):
    m = _single_mat(payload, opts)
    pt = canonical_point(m, f=opts.f if opts.f else 1)
    return pt.to_json_dict()


def _cmd_complex_dims(payload, opts):
    return complex_dims(_point(payload, opts)).to_json_dict()


def _cmd_complex_dims_filtered(payload, opts):
    pt = _point(payload, opts)
    if "hodge_weights" not in payload:
        raise InvalidInputError("payload needs 'hodge_weights'")
    weights = payload["hodge_weights"]
    if not (isinstance(weights, list) and len(weights) == pt.n
            and all(isinstance(w, int) for w in weights)):
        raise InvalidInputError("'hodge_weights' must be a list of n integers")
    fil = Filtration.from_weights(weights, pt.f, pt.p)
    return filtered_complex_dims(pt, fil).to_json_dict()


def _cmd_tangent_dim(payload, opts):
    return {"tangent_dim": complex_dims(_point(payload, opts)).tangent_dim}


def _cmd_gl2_report(payload, opts):
    if not isinstance(payload, dict) or "phi" not in payload:
        raise InvalidInputError("payload needs 'phi'")
    return gl2_report(_group_tuple(payload["phi"], opts)).to_json_dict()


def _cmd_gl2_x0_tangent(payload, opts):
    if not isinstance(payload, dict) or "phi" not in payload:
        raise InvalidInputError("payload needs 'phi'")
    return {"dim": gl2_x0_tangent(_group_tuple(payload["phi"], opts))}


def _cmd_reg_reconstruct(payload, opts):
    return reg_filtration_reconstruct(_point(payload, opts)).to_json_dict()


def _cmd_gl3_sub_fiber(payload, opts):
    return sub_fiber(_single_mat(payload, opts, "phi")).to_json_dict()


def _cmd_gl3_certificate(payload, opts):
    return singularity_certificate(_single_mat(payload, opts, "phi")).to_json_dict()


def _cmd_selftest(payload, opts):
    return run_selftest()


HANDLERS = {
    "validate": _cmd_validate,
    "charpoly-ad": _cmd_charpoly_ad,
    "kernel": _cmd_kernel,
    "jordan-type": _cmd_jordan_type,
    "assoc-cochar": _cmd_assoc_cochar,
    "canonical-point": _cmd_canonical_point,
    "complex-dims": _cmd_complex_dims,
    "complex-dims-filtered": _cmd_complex_dims_filtered,
    "tangent-dim": _cmd_tangent_dim,
    "gl2-report": _cmd_gl2_report,
    "gl2-x0-tangent": _cmd_gl2_x0_tangent,
    "reg-reconstruct": _cmd_reg_reconstruct,
    "gl3-sub-fiber": _cmd_gl3_sub_fiber,
    "gl3-certificate": _cmd_gl3_certificate,
    "selftest": _cmd_selftest,
}


# -- driver -------------------------------------------------------------------


def _error_obj(code: str, exc: Exception) -> dict:
    obj = {"code": code, "message": str(exc)}
    details = getattr(exc, "details", None)
    if details:
        obj["details"] = details
    return obj


def _run_one(cmd, payload, opts):
    """Returns (exit_code, json-able result)."""
    try:
        result = HANDLERS[cmd](payload, opts)
    except InvalidInputError as exc:
        return 1, {"error": _error_obj("INVALID_INPUT", exc)}
    except UnsupportedCaseError as exc:
        return 2, {"error": _error_obj("UNSUPPORTED", exc)}
    except InternalCheckError as exc:
        return 1, {"error": _error_obj("INTERNAL", exc)}
    except (ValueError, ZeroDivisionError, KeyError, TypeError, IndexError) as exc:
        return 1, {"error": _error_obj("INVALID_INPUT", exc)}
    if cmd == "selftest" and not result.get("ok", False):
        return 1, result
    return 0, result


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="phinmod",
        description="Exact computations with Frobenius-nilpotent pairs on gl_n.")
    parser.add_argument("--p", type=int, default=2, help="prime (default 2)")
    parser.add_argument("--n", type=int, default=None, help="matrix size check, 2..4")
    parser.add_argument("--f", type=int, default=None, help="tuple length, 1..3")
    parser.add_argument("--cmd", required=True, choices=COMMANDS)
    parser.add_argument("--in", dest="inpath", default=None,
                        help="input JSON path ('-' or omitted: stdin)")
    parser.add_argument("--out", dest="outpath", default=None,
                        help="output path (omitted: stdout)")
    parser.add_argument("--batch", action="store_true",
                        help="payload is a JSON array processed item by item")
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep 2 for unsupported cases only
        if exc.code in (0, None):
            return 0
        sys.stdout.write(_dump({"error": {"code": "INVALID_INPUT",
                                          "message": "bad command line"}}))
        return 1

    def emit(text: str):
        if opts.outpath:
            with open(opts.outpath, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    if not is_prime(opts.p):
        emit(_dump({"error": {"code": "INVALID_INPUT",
                              "message": f"--p must be prime, got {opts.p}"}}))
        return 1
    if opts.n is not None and not 2 <= opts.n <= 4:
        emit(_dump({"error": {"code": "INVALID_INPUT",
                              "message": "--n must be in 2..4"}}))
        return 1
    if opts.f is not None and not 1 <= opts.f <= 3:
        emit(_dump({"error": {"code": "INVALID_INPUT",
                              "message": "--f must be in 1..3"}}))
        return 1

    payload = None
    if opts.cmd != "selftest":
        try:
            if opts.inpath and opts.inpath != "-":
                with open(opts.inpath, "r", encoding="utf-8") as fh:
                    payload = json.load(fh)
            else:
                payload = json.load(sys.stdin)
        except (OSError, json.JSONDecodeError) as exc:
            emit(_dump({"error": {"code": "INVALID_INPUT",
                                  "message": f"cannot read payload: {exc}"}}))
            return 1

    if opts.batch:
        if not isinstance(payload, list):
            emit(_dump({"error": {"code": "INVALID_INPUT",
                                  "message": "--batch needs a JSON array"}}))
            return 1
        results = []
        worst = 0
        for item in payload:
            code, result = _run_one(opts.cmd, item, opts)
            worst = max(worst, code)
            if code == 0:
                results.append({"ok": True, "result": result})
            else:
                results.append({"ok": False, **result})
        emit(_dump(results))
        return worst

    code, result = _run_one(opts.cmd, payload, opts)
    emit(_dump(result))
    return code


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
