"""Asymmetry quantifiers for bipartite systems under an abelian symmetry.

The base quantity is the relative entropy of asymmetry,
``A(rho) = S(twirl(rho)) - S(rho)``: the entropy a state gains when averaged
over the group. For a pair of subsystems, the excess of local over global
asymmetry

    A(rho_S) + A(rho_R) - A(rho_S (x) rho_R)

is the mutual asymmetry: it is nonzero exactly when the parts can serve as
reference frames for one another inside a globally symmetric composite. For
time translations the same number is the mutual (internal) coherence. Two
equivalent closed forms are provided, along with the classical-quantum
extension whose interaction information reproduces the measure on product
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .qmat import (
    DensityOperator,
    partial_trace,
    relative_entropy,
    shannon_entropy,
    tensor,
    von_neumann_entropy,
)
from .symmetry import (
    ChargeSpectrum,
    SectorDecomposition,
    dephase,
    dephase_local,
    finite_design,
    group_action,
    sectors,
    total_charges,
)

#: A mutual asymmetry at or below this counts as zero for the frame decision.
QRF_THRESHOLD = 1e-9


def asymmetry(rho: DensityOperator, decomposition: SectorDecomposition) -> float:
    """Relative entropy of asymmetry A(rho) = S(dephase(rho)) - S(rho), bits.

    Nonnegative, and zero exactly when the state is already symmetric.
    """
    value = von_neumann_entropy(dephase(rho, decomposition)) - von_neumann_entropy(rho)
    if value < -1e-9:
        raise RuntimeError(
            f"asymmetry evaluated to {value:.3e} < 0; entropies are inconsistent"
        )
    return max(value, 0.0)


def _check_state_charges(rho: DensityOperator, charges: ChargeSpectrum, name: str):
    if charges.dim != rho.n:
        raise ValueError(
            f"{name}: charge count {charges.dim} does not match dimension {rho.n}"
        )


def mutual_asymmetry(
    rho_s: DensityOperator,
    rho_r: DensityOperator,
    s_charges: ChargeSpectrum,
    r_charges: ChargeSpectrum,
) -> float:
    """Mutual asymmetry A(rho_S) + A(rho_R) - A(rho_S (x) rho_R), in bits.

    Takes the two marginals explicitly, which pins the product regime the
    sum form is defined for. Local dephasings use each subsystem's own
    charges, the joint one uses the total charge.
    """
    _check_state_charges(rho_s, s_charges, "system")
    _check_state_charges(rho_r, r_charges, "reference")
    joint = tensor(rho_s, rho_r)
    total = total_charges(s_charges, r_charges)
    return (
        asymmetry(rho_s, sectors(s_charges))
        + asymmetry(rho_r, sectors(r_charges))
        - asymmetry(joint, sectors(total))
    )


class GlobalLocalGap(NamedTuple):
    """The two equal readings of the gap between local and global dephasing."""

    entropy_difference: float
    relative_entropy: float

    @property
    def value(self) -> float:
        return self.entropy_difference


def mutual_asymmetry_relent(
    rho_sr: DensityOperator,
    s_charges: ChargeSpectrum,
    r_charges: ChargeSpectrum,
    agreement_tol: float = 1e-9,
) -> GlobalLocalGap:
    """Mutual asymmetry of a joint state from its dephased forms.

    Returns both S(fully_dephased) - S(globally_dephased) and the relative
    entropy S(globally_dephased || fully_dephased); the two agree for any
    joint state and a disagreement beyond ``agreement_tol`` is reported as
    an internal inconsistency. The fully dephased state always supports the
    globally dephased one, so the relative-entropy branch is finite.
    """
    if len(rho_sr.dims) != 2:
        raise ValueError(f"joint state must declare two subsystems, got dims {rho_sr.dims}")
    if rho_sr.dims != (s_charges.dim, r_charges.dim):
        raise ValueError(
            f"joint dims {rho_sr.dims} do not match charge counts "
            f"({s_charges.dim}, {r_charges.dim})"
        )
    total = total_charges(s_charges, r_charges)
    globally = dephase(rho_sr, sectors(total))
    locally = dephase_local(rho_sr, sectors(s_charges), sectors(r_charges))
    difference = von_neumann_entropy(locally) - von_neumann_entropy(globally)
    relent = relative_entropy(globally, locally)
    if abs(difference - relent) > agreement_tol:
        raise RuntimeError(
            f"entropy-difference form {difference!r} and relative-entropy form "
            f"{relent!r} disagree beyond {agreement_tol}"
        )
    return GlobalLocalGap(difference, relent)


def mutual_coherence(
    rho_sr: DensityOperator,
    s_charges: ChargeSpectrum,
    r_charges: ChargeSpectrum,
) -> GlobalLocalGap:
    """Mutual (internal) coherence: the time-translation reading of the gap.

    With energy charges, global dephasing leaves coherence inside degenerate
    total-energy sectors while local dephasing removes it; this measures the
    difference.
    """
    return mutual_asymmetry_relent(rho_sr, s_charges, r_charges)


# ---------------------------------------------------------------------------
# classical-quantum extension and interaction information
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CqEntry:
    """One classical register cell: weight, angle, and the rotated state."""

    probability: float
    angle: float
    state: DensityOperator


@dataclass(frozen=True)
class CqState:
    """Classical register of group angles paired with the rotated joint states.

    Register cells are orthogonal by construction (distinct design angles),
    every entry is unitarily equivalent to the base state, and the weighted
    average of the entries is the globally dephased base state.
    """

    entries: tuple[CqEntry, ...]
    base: DensityOperator
    s_charges: ChargeSpectrum
    r_charges: ChargeSpectrum

    def __post_init__(self):
        total = sum(e.probability for e in self.entries)
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"entry probabilities sum to {total!r}, not 1")

    @property
    def size(self) -> int:
        return len(self.entries)

    def classical_distribution(self) -> np.ndarray:
        return np.array([e.probability for e in self.entries])

    def averaged_state(self) -> DensityOperator:
        """Register-averaged joint state (the view with the register traced out)."""
        acc = np.zeros_like(self.base.matrix)
        for e in self.entries:
            acc = acc + e.probability * e.state.matrix
        return DensityOperator(acc, self.base.dims)

    def _entry_part(self, entry: CqEntry, part: str) -> np.ndarray:
        if part == "sr":
            return entry.state.matrix
        if part == "s":
            return partial_trace(entry.state, 0).matrix
        if part == "r":
            return partial_trace(entry.state, 1).matrix
        raise ValueError(f"unknown part {part!r}; expected 's', 'r' or 'sr'")

    def block_state(self, part: str = "sr") -> DensityOperator:
        """Explicit register (x) part state, block diagonal over register cells."""
        blocks = [self._entry_part(e, part) for e in self.entries]
        d = blocks[0].shape[0]
        n = self.size
        out = np.zeros((n * d, n * d), dtype=complex)
        for i, (e, block) in enumerate(zip(self.entries, blocks)):
            out[i * d : (i + 1) * d, i * d : (i + 1) * d] = e.probability * block
        return DensityOperator(out, (n, d))

    def block_entropy(self, part: str = "sr") -> float:
        """S(register (x) part) via the joint entropy theorem.

        H(p) plus the weighted entropies of the per-cell marginals; must
        match the direct eigenvalue evaluation of :meth:`block_state`.
        """
        p = self.classical_distribution()
        weighted = sum(
            e.probability * von_neumann_entropy(self._entry_part(e, part))
            for e in self.entries
        )
        return shannon_entropy(p) + float(weighted)


def build_cq_state(
    rho_sr: DensityOperator,
    s_charges: ChargeSpectrum,
    r_charges: ChargeSpectrum,
) -> CqState:
    """Discretize the register of group angles with the minimal exact design."""
    if len(rho_sr.dims) != 2 or rho_sr.dims != (s_charges.dim, r_charges.dim):
        raise ValueError(
            f"joint dims {rho_sr.dims} do not match charge counts "
            f"({s_charges.dim}, {r_charges.dim})"
        )
    total = total_charges(s_charges, r_charges)
    design = finite_design(total)
    entries = tuple(
        CqEntry(weight, theta, group_action(rho_sr, total, theta))
        for theta, weight in zip(design.points, design.weights)
    )
    return CqState(entries, rho_sr, s_charges, r_charges)


def interaction_information(cq: CqState) -> float:
    """I(S:R) - I(S:R|C) of the classical-quantum extension, in bits.

    The mutual information is taken on the register-averaged state; the
    conditional term uses the exact block structure, so no continuum
    register is ever represented. Equals the mutual asymmetry for product
    base states; can go negative for correlated ones.
    """
    omega = cq.averaged_state()
    mutual_info = (
        von_neumann_entropy(partial_trace(omega, 0))
        + von_neumann_entropy(partial_trace(omega, 1))
        - von_neumann_entropy(omega)
    )
    h = shannon_entropy(cq.classical_distribution())
    conditional = (
        cq.block_entropy("s") + cq.block_entropy("r") - cq.block_entropy("sr") - h
    )
    return mutual_info - conditional


# ---------------------------------------------------------------------------
# bounds and the frame criterion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    """Mutual asymmetry against its bounds 0 <= value <= min local asymmetry."""

    value: float
    min_local: float
    lower_ok: bool
    upper_ok: bool


def bounds_report(
    rho_s: DensityOperator,
    rho_r: DensityOperator,
    s_charges: ChargeSpectrum,
    r_charges: ChargeSpectrum,
    slack: float = 1e-9,
) -> BoundsReport:
    """Check 0 <= mutual asymmetry <= min{A(rho_S), A(rho_R)} within slack.

    Violations are reported in the flags rather than raised; they would
    indicate an implementation bug, not bad input.
    """
    a_s = asymmetry(rho_s, sectors(s_charges))
    a_r = asymmetry(rho_r, sectors(r_charges))
    joint = tensor(rho_s, rho_r)
    value = a_s + a_r - asymmetry(joint, sectors(total_charges(s_charges, r_charges)))
    min_local = min(a_s, a_r)
    return BoundsReport(
        value=value,
        min_local=min_local,
        lower_ok=value >= -slack,
        upper_ok=value <= min_local + slack,
    )


def is_mutual_qrf(
    rho_s: DensityOperator,
    rho_r: DensityOperator,
    s_charges: ChargeSpectrum,
    r_charges: ChargeSpectrum,
) -> bool:
    """Whether the pair can act as reference frames for each other.

    True when the mutual asymmetry exceeds ``QRF_THRESHOLD`` (the exact
    criterion is nonzero; the threshold absorbs round-off).
    """
    return mutual_asymmetry(rho_s, rho_r, s_charges, r_charges) > QRF_THRESHOLD
