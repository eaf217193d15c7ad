"""Canonical worked configurations and their closed-form values.

Three named setups exercise the whole measure stack:

* ``qubit``: both parties are qubits in the balanced superposition.
* ``localization``: a balanced qubit against a uniform d-level clock; the
  mutual asymmetry 1 - 1/d saturates toward 1 as the clock grows.
* ``coherence-order``: the system holds coherence between its extreme
  levels (charges 0 and d-1) against the same clock; the mutual asymmetry
  collapses to 1/d, so even a good clock cannot resolve coherence of its
  own order.

The coherence-order system is stored as a two-level system carrying charges
{0, d-1}: only the occupied levels matter to every quantity here, and this
keeps the joint dimension at 2d.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

import numpy as np

from .qmat import DensityOperator, tensor
from .symmetry import ChargeSpectrum

EXAMPLE_NAMES = ("qubit", "localization", "coherence-order")


@dataclass(frozen=True)
class ExpectedValues:
    """Closed-form asymmetries of a worked configuration, in bits."""

    a_s: float
    a_r: float
    a_sr: float
    mutual: float


@dataclass(frozen=True)
class WorkedExample:
    name: str
    rho_s: DensityOperator
    rho_r: DensityOperator
    s_charges: ChargeSpectrum
    r_charges: ChargeSpectrum
    expected: ExpectedValues

    def joint(self) -> DensityOperator:
        return tensor(self.rho_s, self.rho_r)

    def describe(self) -> str:
        return (
            f"{self.name}: dims ({self.rho_s.n}, {self.rho_r.n}), "
            f"charges {self.s_charges.charges} + {self.r_charges.charges}"
        )


def _balanced_pair(charges: tuple[int, int]) -> tuple[DensityOperator, ChargeSpectrum]:
    state = DensityOperator.from_pure(np.array([1.0, 1.0]) / np.sqrt(2.0))
    return state, ChargeSpectrum(charges)


def _uniform_qudit(d: int) -> tuple[DensityOperator, ChargeSpectrum]:
    state = DensityOperator.from_pure(np.ones(d) / np.sqrt(d))
    return state, ChargeSpectrum(tuple(range(d)))


def qubit_pair() -> WorkedExample:
    """Two balanced qubits; every quantity is a simple fraction."""
    rho, charges = _balanced_pair((0, 1))
    return WorkedExample(
        name="qubit",
        rho_s=rho,
        rho_r=rho,
        s_charges=charges,
        r_charges=charges,
        expected=ExpectedValues(a_s=1.0, a_r=1.0, a_sr=1.5, mutual=0.5),
    )


def high_localization(d: int) -> WorkedExample:
    """Balanced qubit against a uniform d-level clock."""
    d = int(d)
    if d < 2:
        raise ValueError(f"clock dimension must be at least 2, got {d}")
    rho_s, s_charges = _balanced_pair((0, 1))
    rho_r, r_charges = _uniform_qudit(d)
    return WorkedExample(
        name="localization",
        rho_s=rho_s,
        rho_r=rho_r,
        s_charges=s_charges,
        r_charges=r_charges,
        expected=ExpectedValues(
            a_s=1.0, a_r=log2(d), a_sr=log2(d) + 1.0 / d, mutual=1.0 - 1.0 / d
        ),
    )


def high_coherence_order(d: int) -> WorkedExample:
    """System with coherence between charges 0 and d-1 against the same clock."""
    d = int(d)
    if d < 2:
        raise ValueError(f"clock dimension must be at least 2, got {d}")
    rho_s, s_charges = _balanced_pair((0, d - 1))
    rho_r, r_charges = _uniform_qudit(d)
    return WorkedExample(
        name="coherence-order",
        rho_s=rho_s,
        rho_r=rho_r,
        s_charges=s_charges,
        r_charges=r_charges,
        expected=ExpectedValues(
            a_s=1.0, a_r=log2(d), a_sr=1.0 + log2(d) - 1.0 / d, mutual=1.0 / d
        ),
    )


def worked_example(name: str, d: int = 2) -> WorkedExample:
    """Dispatch by example name; ``d`` is ignored by the qubit pair."""
    if name == "qubit":
        return qubit_pair()
    if name == "localization":
        return high_localization(d)
    if name == "coherence-order":
        return high_coherence_order(d)
    raise ValueError(f"unknown example {name!r}; expected one of {EXAMPLE_NAMES}")


def symmetric_state_closed_form(name: str, d: int = 2) -> DensityOperator:
    """Entrywise closed form of the globally dephased joint state.

    Built index by index, independent of the dephasing implementation.
    Basis order is system major: joint index of (s, m) is s*d + m.
    """
    if name == "qubit":
        mat = np.zeros((4, 4), dtype=complex)
        np.fill_diagonal(mat, 0.25)
        mat[1, 2] = mat[2, 1] = 0.25  # |01><10| and its conjugate survive
        return DensityOperator(mat, (2, 2))
    d = int(d)
    if d < 2:
        raise ValueError(f"clock dimension must be at least 2, got {d}")
    n = 2 * d
    mat = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(mat, 1.0 / (2.0 * d))
    if name == "localization":
        # coherence between (s=0, m+1) and (s=1, m) inside each total-charge sector
        for m in range(d - 1):
            i, j = m + 1, d + m
            mat[i, j] = mat[j, i] = 1.0 / (2.0 * d)
        return DensityOperator(mat, (2, d))
    if name == "coherence-order":
        # single surviving pair: (charge 0, m=d-1) with (charge d-1, m=0)
        i, j = d - 1, d
        mat[i, j] = mat[j, i] = 1.0 / (2.0 * d)
        return DensityOperator(mat, (2, d))
    raise ValueError(f"unknown example {name!r}; expected one of {EXAMPLE_NAMES}")


def figure_states(which: str, d: int) -> tuple[np.ndarray, np.ndarray]:
    """System and clock vectors (energy basis) for the angle-space plots.

    The coherence-order system is returned as the full d-level vector so its
    angle wave function carries the e^{i (d-1) theta} beat.
    """
    d = int(d)
    if d < 2:
        raise ValueError(f"clock dimension must be at least 2, got {d}")
    psi_r = np.ones(d, dtype=complex) / np.sqrt(d)
    if which == "localization":
        psi_s = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
    elif which == "coherence-order":
        psi_s = np.zeros(d, dtype=complex)
        psi_s[0] = psi_s[d - 1] = 1.0 / np.sqrt(2.0)
    else:
        raise ValueError(
            f"unknown figure {which!r}; expected 'localization' or 'coherence-order'"
        )
    return psi_s, psi_r
