"""JSON (de)serialization of states with their charge metadata.

A state file holds the subsystem dimensions, the complex matrix as nested
``[re, im]`` pairs in row-major order, the charge lists, and an optional
modulus. Numbers round-trip exactly through JSON, so parse -> serialize ->
parse is bit-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .qmat import DensityOperator
from .symmetry import ChargeSpectrum, total_charges


class StateFileError(ValueError):
    """A state file failed to parse or violated a state invariant."""


@dataclass(frozen=True)
class LoadedState:
    state: DensityOperator
    charges_s: ChargeSpectrum
    charges_r: ChargeSpectrum | None

    @property
    def is_joint(self) -> bool:
        return self.charges_r is not None

    def total(self) -> ChargeSpectrum:
        if self.charges_r is None:
            return self.charges_s
        return total_charges(self.charges_s, self.charges_r)


def to_payload(
    state: DensityOperator,
    charges_s: ChargeSpectrum,
    charges_r: ChargeSpectrum | None = None,
) -> dict:
    """JSON-ready dict with deterministic key order."""
    if charges_r is not None and charges_r.modulus != charges_s.modulus:
        raise ValueError(
            f"modulus mismatch: {charges_s.modulus} vs {charges_r.modulus}"
        )
    matrix = [
        [[float(entry.real), float(entry.imag)] for entry in row]
        for row in state.matrix
    ]
    modulus = charges_s.modulus
    payload = {
        "dims": list(state.dims),
        "matrix": matrix,
        "charges_s": list(charges_s.charges),
        "charges_r": None if charges_r is None else list(charges_r.charges),
        "modulus": modulus,
    }
    return payload


def from_payload(payload: dict) -> LoadedState:
    if not isinstance(payload, dict):
        raise StateFileError("state file must hold a JSON object")
    for key in ("dims", "matrix", "charges_s"):
        if key not in payload:
            raise StateFileError(f"state file is missing {key!r}")
    dims = payload["dims"]
    if (
        not isinstance(dims, list)
        or not dims
        or len(dims) > 2
        or not all(isinstance(d, int) and d >= 1 for d in dims)
    ):
        raise StateFileError(f"dims must be one or two positive integers, got {dims!r}")
    try:
        raw = np.asarray(payload["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"matrix entries must be [re, im] number pairs: {exc}") from exc
    n = int(np.prod(dims))
    if raw.shape != (n, n, 2):
        raise StateFileError(
            f"matrix must be {n} x {n} entries of [re, im] pairs, got shape {raw.shape}"
        )
    modulus = payload.get("modulus")
    if modulus is not None and (not isinstance(modulus, int) or modulus < 1):
        raise StateFileError(f"modulus must be a positive integer or null, got {modulus!r}")

    def _charges(key: str, expected_len: int) -> ChargeSpectrum:
        values = payload.get(key)
        if not isinstance(values, list) or not all(isinstance(c, int) for c in values):
            raise StateFileError(f"{key} must be a list of integers, got {values!r}")
        if len(values) != expected_len:
            raise StateFileError(
                f"{key} has {len(values)} entries for a subsystem of dimension {expected_len}"
            )
        return ChargeSpectrum(tuple(values), modulus)

    charges_s = _charges("charges_s", dims[0])
    charges_r = None
    if len(dims) == 2:
        if payload.get("charges_r") is None:
            raise StateFileError("a two-subsystem file requires charges_r")
        charges_r = _charges("charges_r", dims[1])
    try:
        state = DensityOperator(raw[..., 0] + 1j * raw[..., 1], tuple(dims))
    except ValueError as exc:
        raise StateFileError(f"invalid state: {exc}") from exc
    return LoadedState(state, charges_s, charges_r)


def dumps(
    state: DensityOperator,
    charges_s: ChargeSpectrum,
    charges_r: ChargeSpectrum | None = None,
) -> str:
    return json.dumps(to_payload(state, charges_s, charges_r), indent=2) + "\n"


def dump(
    state: DensityOperator,
    charges_s: ChargeSpectrum,
    charges_r: ChargeSpectrum | None,
    path,
) -> None:
    Path(path).write_text(dumps(state, charges_s, charges_r))


def loads(text: str) -> LoadedState:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    return from_payload(payload)


def load(path) -> LoadedState:
    return loads(Path(path).read_text())
