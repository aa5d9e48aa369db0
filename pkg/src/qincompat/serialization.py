"""Text file format for bases, POVMs and states.

A document is JSON with fields {kind, dim, data}; complex entries are
[re, im] pairs and matrices are row-major nested arrays.  POVMs store a list
of matrices.  Parsers reject anything violating the type invariants with a
diagnostic naming the failed invariant; the CLI machine output reuses the
same encoding.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import Basis, DensityState, Povm
from .errors import InvariantViolationError

KINDS = ("basis", "povm", "state")


def complex_matrix_to_data(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def data_to_complex_matrix(data, name: str = "data") -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvariantViolationError(f"{name}.entries", str(exc)) from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise InvariantViolationError(f"{name}.entries", "expected nested [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def to_payload(obj: Basis | Povm | DensityState) -> dict:
    if isinstance(obj, Basis):
        return {"kind": "basis", "dim": obj.dim, "data": complex_matrix_to_data(obj.u)}
    if isinstance(obj, Povm):
        return {
            "kind": "povm",
            "dim": obj.dim,
            "data": [complex_matrix_to_data(e) for e in obj.effects],
        }
    if isinstance(obj, DensityState):
        return {"kind": "state", "dim": obj.dim, "data": complex_matrix_to_data(obj.rho)}
    raise TypeError(f"unsupported object {type(obj).__name__}")


def from_payload(payload: dict) -> Basis | Povm | DensityState:
    if not isinstance(payload, dict):
        raise InvariantViolationError("file.document", "top level must be an object")
    kind = payload.get("kind")
    if kind not in KINDS:
        raise InvariantViolationError("file.kind", f"expected one of {KINDS}, got {kind!r}")
    if "dim" not in payload or "data" not in payload:
        raise InvariantViolationError("file.fields", "missing dim or data")
    dim = payload["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InvariantViolationError("file.dim", repr(dim))
    data = payload["data"]
    if kind == "basis":
        u = data_to_complex_matrix(data, "basis.data")
        if u.shape != (dim, dim):
            raise InvariantViolationError("basis.dims", f"declared dim {dim}, data shape {u.shape}")
        return Basis(u)
    if kind == "povm":
        if not isinstance(data, list) or not data:
            raise InvariantViolationError("povm.data", "expected a nonempty list of matrices")
        effects = tuple(data_to_complex_matrix(e, f"povm.data[{k}]") for k, e in enumerate(data))
        for k, e in enumerate(effects):
            if e.shape != (dim, dim):
                raise InvariantViolationError("povm.dims", f"effect {k} shape {e.shape}, dim {dim}")
        return Povm(effects)
    rho = data_to_complex_matrix(data, "state.data")
    if rho.shape != (dim, dim):
        raise InvariantViolationError("state.dims", f"declared dim {dim}, data shape {rho.shape}")
    return DensityState(rho=rho)


def load_object(path: str | Path) -> Basis | Povm | DensityState:
    text = Path(path).read_text()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvariantViolationError("file.json", f"{path}: {exc}") from exc
    return from_payload(payload)


def dump_object(obj: Basis | Povm | DensityState, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_payload(obj)) + "\n")
