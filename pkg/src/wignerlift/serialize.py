"""JSON-ready encodings for vectors, matrices, tensors, oracles and lifts.

Numbers serialize through Python floats, whose repr is the shortest decimal
that round-trips, so encoded values are exact.  This module maps between
in-memory objects and plain dicts; file I/O stays in the CLI layer.

Formats:
  matrix  {"rows": r, "cols": c, "data": [[re, im], ...]}   row-major
  vector  same with cols = 1
  tensor  {"dim_a", "dim_b", "dim_c", "data": [...]}        index k*(da*db) + i*db + j
  table   {"domain_dim", "codomain_dim", "pairs": [{"in": vec, "out": vec}, ...]}
  lift    {"matrix": matrix, "antilinear": bool, "residual": float}
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch
from .hilbert import DEFAULT_TOL, ToleranceConfig, as_matrix, as_vector
from .lift import SemilinearLift
from .projective import MatrixOracle, RayMapOracle, TabulatedOracle
from .tensor import BilinearComposition

__all__ = [
    "encode_matrix",
    "decode_matrix",
    "encode_vector",
    "decode_vector",
    "encode_composition",
    "decode_composition",
    "encode_lift",
    "decode_lift",
    "encode_tabulated_oracle",
    "decode_oracle",
]


def _encode_complex_list(flat: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in flat]


def _decode_complex_list(data) -> np.ndarray:
    try:
        return np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed complex data: {exc}") from exc


def encode_matrix(m) -> dict:
    m = as_matrix(m)
    return {"rows": m.shape[0], "cols": m.shape[1],
            "data": _encode_complex_list(m.reshape(-1))}


def decode_matrix(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    flat = _decode_complex_list(obj["data"])
    if flat.shape[0] != rows * cols:
        raise DimensionMismatch(
            f"matrix data length {flat.shape[0]} vs rows*cols {rows * cols}")
    return flat.reshape(rows, cols)


def encode_vector(v) -> dict:
    v = as_vector(v)
    return {"rows": v.shape[0], "cols": 1, "data": _encode_complex_list(v)}


def decode_vector(obj: dict) -> np.ndarray:
    m = decode_matrix(obj)
    if m.shape[1] != 1:
        raise DimensionMismatch(f"expected a column vector, got cols = {m.shape[1]}")
    return m[:, 0]


def encode_composition(m: BilinearComposition) -> dict:
    return {"dim_a": m.dim_a, "dim_b": m.dim_b, "dim_c": m.dim_c,
            "data": _encode_complex_list(m.coeffs.reshape(-1))}


def decode_composition(obj: dict) -> BilinearComposition:
    da, db, dc = int(obj["dim_a"]), int(obj["dim_b"]), int(obj["dim_c"])
    flat = _decode_complex_list(obj["data"])
    if flat.shape[0] != da * db * dc:
        raise DimensionMismatch(
            f"tensor data length {flat.shape[0]} vs dim_c*dim_a*dim_b {da * db * dc}")
    return BilinearComposition(da, db, dc, flat.reshape(dc, da, db))


def encode_lift(l: SemilinearLift) -> dict:
    return {"matrix": encode_matrix(l.matrix), "antilinear": bool(l.antilinear),
            "residual": float(l.residual)}


def decode_lift(obj: dict) -> SemilinearLift:
    return SemilinearLift(matrix=decode_matrix(obj["matrix"]),
                          antilinear=bool(obj["antilinear"]),
                          residual=float(obj["residual"]))


def encode_tabulated_oracle(oracle: TabulatedOracle) -> dict:
    return {
        "domain_dim": oracle.domain_dim,
        "codomain_dim": oracle.codomain_dim,
        "pairs": [{"in": encode_vector(rin.rep), "out": encode_vector(rout.rep)}
                  for rin, rout in oracle._table],
    }


def decode_oracle(obj: dict, tol: ToleranceConfig = DEFAULT_TOL) -> RayMapOracle:
    """Build a ray-map oracle from its dict form.

    A "pairs" key selects the tabulated kind (inputs are canonicalized on
    load); a "matrix" key selects the matrix-induced kind, with an optional
    "conjugate_input" flag.
    """
    if "pairs" in obj:
        pairs = [(decode_vector(p["in"]), decode_vector(p["out"]))
                 for p in obj["pairs"]]
        return TabulatedOracle(int(obj["domain_dim"]), int(obj["codomain_dim"]),
                               pairs, tol=tol)
    if "matrix" in obj:
        return MatrixOracle(decode_matrix(obj["matrix"]),
                            conjugate_input=bool(obj.get("conjugate_input", False)),
                            tol=tol)
    raise ValueError("oracle object needs a 'pairs' or 'matrix' key")
