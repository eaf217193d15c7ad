"""Charge-sector machinery for abelian translation groups, U(1) and Z_m.

A charge spectrum assigns one integer quantum number to every basis index of
a subsystem; the group acts by ``U(theta) = diag(exp(-i c theta))``. Joint
systems add charges indexwise in Kronecker order, states decompose into
charge sectors, and the uniform group average is realized three equivalent
ways:

* sector dephasing (project onto block-diagonal form),
* quadrature over equally spaced angles,
* a weighted finite design.

For integer charges all three agree exactly once the number of quadrature
points exceeds the charge span, so no Haar integral is ever discretized
approximately.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import HERMITICITY_TOL, DensityOperator, _as_matrix

# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChargeSpectrum:
    """Integer charge per basis index; a modulus makes the group cyclic.

    With ``modulus`` absent the group is U(1); with ``modulus = m`` it is
    Z_m and the charges are stored reduced to [0, m).
    """

    charges: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and int(self.modulus) < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        modulus = None if self.modulus is None else int(self.modulus)
        charges = tuple(int(c) for c in self.charges)
        if not charges:
            raise ValueError("charge list is empty")
        if modulus is not None:
            charges = tuple(c % modulus for c in charges)
        object.__setattr__(self, "charges", charges)
        object.__setattr__(self, "modulus", modulus)

    @property
    def dim(self) -> int:
        return len(self.charges)

    @property
    def span(self) -> int:
        return max(self.charges) - min(self.charges)

    def as_array(self) -> np.ndarray:
        return np.array(self.charges, dtype=int)


@dataclass(frozen=True)
class SectorDecomposition:
    """Partition of the basis indices by charge label.

    ``labels[i]`` is the sector of basis index i; the derived projectors sum
    to the identity by construction.
    """

    labels: np.ndarray

    def __post_init__(self):
        labels = np.array(self.labels, dtype=int)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError("sector labels must form a nonempty 1d array")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.labels.size

    @property
    def sector_labels(self) -> tuple[int, ...]:
        return tuple(int(k) for k in np.unique(self.labels))

    @property
    def n_sectors(self) -> int:
        return len(self.sector_labels)

    def block_indices(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def projector(self, label: int) -> np.ndarray:
        return np.diag((self.labels == label).astype(complex))

    def coherence_mask(self) -> np.ndarray:
        """Boolean matrix marking entries that survive dephasing."""
        return self.labels[:, None] == self.labels[None, :]


@dataclass(frozen=True)
class FiniteDesign:
    """Weighted angle set reproducing the uniform group average exactly.

    For a spectrum arising from a d-dimensional representation with
    unit-spaced charges the point count stays at or below d^2; here the
    equally spaced construction uses span + 1 points, the minimum for an
    abelian group.
    """

    points: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        points = tuple(float(t) for t in self.points)
        weights = tuple(float(w) for w in self.weights)
        if len(points) != len(weights) or not points:
            raise ValueError("design needs matching nonempty points and weights")
        if any(w < 0 for w in weights):
            raise ValueError("design weights must be nonnegative")
        total = sum(weights)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"design weights sum to {total!r}, not 1")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return len(self.points)


# ---------------------------------------------------------------------------
# charge algebra
# ---------------------------------------------------------------------------


def total_charges(s_charges: ChargeSpectrum, r_charges: ChargeSpectrum) -> ChargeSpectrum:
    """Joint charge spectrum: index (i, j) carries charge s_i + r_j.

    Ordering matches the Kronecker product, and the moduli must agree
    (both absent, or equal).
    """
    if s_charges.modulus != r_charges.modulus:
        raise ValueError(
            f"modulus mismatch: {s_charges.modulus} vs {r_charges.modulus}"
        )
    joint = tuple(cs + cr for cs in s_charges.charges for cr in r_charges.charges)
    return ChargeSpectrum(joint, s_charges.modulus)


def sectors(charges: ChargeSpectrum) -> SectorDecomposition:
    """Group equal charges into sectors."""
    return SectorDecomposition(charges.as_array())


def _float_gcd(values, tol: float) -> float:
    g = 0.0
    for v in values:
        a, b = g, abs(float(v))
        while b > tol:
            a, b = b, a % b
        g = a
    return g


def charges_from_hamiltonian(hamiltonian, tol: float = 1e-9) -> ChargeSpectrum:
    """Integer charges of a diagonal Hamiltonian.

    Shifts the diagonal to start at zero, divides by the approximate gcd of
    the gaps, and rounds; spectra that are not integer multiples of a single
    unit within ``tol`` are rejected as incommensurate.
    """
    mat = _as_matrix(hamiltonian)
    off = float(np.abs(mat - np.diag(np.diagonal(mat))).max())
    if off > HERMITICITY_TOL:
        raise ValueError("hamiltonian must be diagonal in the charge basis")
    energies = np.real(np.diagonal(mat)).astype(float)
    shifted = energies - energies.min()
    scale = float(shifted.max())
    if scale == 0.0:
        return ChargeSpectrum((0,) * energies.size)
    unit = _float_gcd(shifted[shifted > 0], tol * scale)
    if unit <= tol * scale:
        raise ValueError("incommensurate spectrum: no common energy unit found")
    ratios = shifted / unit
    rounded = np.rint(ratios)
    if float(np.abs(ratios - rounded).max()) > tol:
        raise ValueError(
            f"incommensurate spectrum: ratios {ratios} are not integers within {tol}"
        )
    return ChargeSpectrum(tuple(int(c) for c in rounded))


# ---------------------------------------------------------------------------
# group averages
# ---------------------------------------------------------------------------


def group_action(rho: DensityOperator, charges: ChargeSpectrum, theta: float) -> DensityOperator:
    """Conjugate by U(theta) = diag(exp(-i c theta))."""
    if charges.dim != rho.n:
        raise ValueError(f"charge count {charges.dim} does not match dimension {rho.n}")
    u = np.exp(-1j * float(theta) * charges.as_array())
    return DensityOperator((u[:, None] * rho.matrix) * u.conj()[None, :], rho.dims)


def dephase(rho: DensityOperator, decomposition: SectorDecomposition) -> DensityOperator:
    """Kill coherence between charge sectors (the uniform group average)."""
    if decomposition.dim != rho.n:
        raise ValueError(
            f"sector labels cover dimension {decomposition.dim}, state has {rho.n}"
        )
    out = np.where(decomposition.coherence_mask(), rho.matrix, 0.0)
    return DensityOperator(out, rho.dims)


def dephase_local(
    rho: DensityOperator,
    s_sectors: SectorDecomposition,
    r_sectors: SectorDecomposition,
) -> DensityOperator:
    """Dephase each subsystem separately (the fully dephasing map).

    Equals global dephasing with the product decomposition labeled by sector
    pairs, which refines the total-charge partition.
    """
    if len(rho.dims) != 2 or rho.dims != (s_sectors.dim, r_sectors.dim):
        raise ValueError(
            f"state dims {rho.dims} do not match sector sizes "
            f"({s_sectors.dim}, {r_sectors.dim})"
        )
    mask_s = s_sectors.coherence_mask().astype(np.uint8)
    mask_r = r_sectors.coherence_mask().astype(np.uint8)
    mask = np.kron(mask_s, mask_r).astype(bool)
    return DensityOperator(np.where(mask, rho.matrix, 0.0), rho.dims)


def twirl_quadrature(
    rho: DensityOperator, charges: ChargeSpectrum, n_points: int
) -> DensityOperator:
    """Average U(theta_j) rho U(theta_j)^dag over theta_j = 2 pi j / N.

    Exact (equal to dephasing) whenever N exceeds the charge span, because
    every nonzero charge difference then falls on a cancelling root of unity.
    """
    if charges.dim != rho.n:
        raise ValueError(f"charge count {charges.dim} does not match dimension {rho.n}")
    n_points = int(n_points)
    span = charges.span
    if n_points <= span:
        raise ValueError(f"n_points = {n_points} must exceed the charge span {span}")
    c = charges.as_array()
    acc = np.zeros_like(rho.matrix)
    for j in range(n_points):
        u = np.exp(-2j * np.pi * j / n_points * c)
        acc = acc + (u[:, None] * rho.matrix) * u.conj()[None, :]
    return DensityOperator(acc / n_points, rho.dims)


def finite_design(charges: ChargeSpectrum) -> FiniteDesign:
    """Minimal uniform design for the charge spectrum: span + 1 equal angles."""
    n = charges.span + 1
    points = tuple(2.0 * np.pi * j / n for j in range(n))
    weights = (1.0 / n,) * n
    return FiniteDesign(points, weights)


def twirl_design(
    rho: DensityOperator, charges: ChargeSpectrum, design: FiniteDesign
) -> DensityOperator:
    """Weighted average of group actions over an explicit design."""
    if charges.dim != rho.n:
        raise ValueError(f"charge count {charges.dim} does not match dimension {rho.n}")
    c = charges.as_array()
    acc = np.zeros_like(rho.matrix)
    for theta, weight in zip(design.points, design.weights):
        u = np.exp(-1j * theta * c)
        acc = acc + weight * ((u[:, None] * rho.matrix) * u.conj()[None, :])
    return DensityOperator(acc, rho.dims)
