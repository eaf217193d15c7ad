"""Dense complex-matrix foundation: states, operators, and entropy functionals.

Everything downstream (twirls, asymmetry measures, clock dynamics) is built on
the types and operations here. All entropic quantities are in bits: the
closed-form values this package reproduces (asymmetry 1 for a balanced qubit
superposition, log d for a uniform qudit) only come out right in base 2, so
the logarithm base is fixed rather than configurable.

Subsystem ordering follows the Kronecker-product convention: the joint basis
index of (i_a, i_b) is ``i_a * dim_b + i_b``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from math import prod

import numpy as np

#: Largest tolerated correction |M - (M + M^dag)/2| before a matrix is rejected.
HERMITICITY_TOL = 1e-12
#: Largest tolerated |tr(rho) - 1|.
TRACE_TOL = 1e-10
#: Eigenvalues in [-EIGENVALUE_FLOOR, 0) count as round-off and clamp to zero;
#: anything below signals an invalid state.
EIGENVALUE_FLOOR = 1e-10
#: Eigenvalues of sigma at or below this are treated as its kernel in
#: relative_entropy; rho may carry at most this much weight there.
SUPPORT_TOL = 1e-10


class SupportError(ValueError):
    """rho has weight outside sigma's support, so S(rho||sigma) is infinite."""


def _as_matrix(operator) -> np.ndarray:
    """Accept a wrapped operator or a bare array and return the ndarray."""
    return np.asarray(getattr(operator, "matrix", operator))


def _hermitize(matrix: np.ndarray, what: str) -> np.ndarray:
    sym = (matrix + matrix.conj().T) / 2
    defect = float(np.abs(matrix - sym).max()) if matrix.size else 0.0
    if defect > HERMITICITY_TOL:
        raise ValueError(
            f"{what} is not Hermitian: symmetrization correction {defect:.3e} "
            f"exceeds {HERMITICITY_TOL}"
        )
    return sym


def _normalize_dims(dims, side: int) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if any(d < 1 for d in out) or prod(out) != side:
        raise ValueError(f"dims {out} do not multiply to the matrix side {side}")
    return out


@dataclass(frozen=True)
class DensityOperator:
    """Positive unit-trace operator with declared subsystem dimensions.

    The matrix is symmetrized on construction and rejected if the correction
    exceeds ``HERMITICITY_TOL``; trace and positivity are checked against
    ``TRACE_TOL`` and ``EIGENVALUE_FLOOR``. Instances are immutable.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        dims = _normalize_dims(self.dims, mat.shape[0])
        mat = _hermitize(mat, "density matrix")
        trace = float(mat.trace().real)
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {trace!r}, not 1")
        lowest = float(np.linalg.eigvalsh(mat)[0])
        if lowest < -EIGENVALUE_FLOOR:
            raise ValueError(
                f"density matrix is not positive: lowest eigenvalue {lowest:.3e}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, vector, dims=None) -> "DensityOperator":
        """Projector onto a normalized state vector."""
        v = np.asarray(vector, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state vector norm is {norm!r}, not 1")
        if dims is None:
            dims = (v.size,)
        return cls(np.outer(v, v.conj()), tuple(dims))

    @classmethod
    def maximally_mixed(cls, dims) -> "DensityOperator":
        dims = tuple(int(d) for d in dims)
        n = prod(dims)
        return cls(np.eye(n) / n, dims)


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian matrix (an observable or Hamiltonian, natural units)."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator must be square, got shape {mat.shape}")
        dims = _normalize_dims(self.dims, mat.shape[0])
        mat = _hermitize(mat, "operator")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_diagonal(cls, values, dims=None) -> "HermitianOperator":
        v = np.asarray(values, dtype=float).reshape(-1)
        if dims is None:
            dims = (v.size,)
        return cls(np.diag(v).astype(complex), tuple(dims))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending, real) and the unitary of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.array(self.eigenvalues, dtype=float)
        v = np.array(self.eigenvectors, dtype=complex)
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product, row-major: joint index of (i_a, i_b) is i_a*rows_b + i_b."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def tensor(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    """Product state a (x) b with concatenated subsystem dims."""
    return DensityOperator(np.kron(a.matrix, b.matrix), a.dims + b.dims)


def partial_trace(rho: DensityOperator, keep: int) -> DensityOperator:
    """Reduced state of one subsystem.

    Parameters
    ----------
    rho : DensityOperator
        State with at least two declared subsystems.
    keep : int
        Index into ``rho.dims`` of the subsystem to keep; all others are
        traced out.
    """
    dims = rho.dims
    if len(dims) < 2:
        raise ValueError("partial trace needs at least two subsystems")
    if not 0 <= keep < len(dims):
        raise ValueError(f"subsystem index {keep} out of range for dims {dims}")
    n = len(dims)
    letters = string.ascii_lowercase
    row = list(letters[:n])
    col = list(letters[:n])
    col[keep] = letters[n]
    spec = "".join(row) + "".join(col) + "->" + row[keep] + col[keep]
    reduced = np.einsum(spec, rho.matrix.reshape(dims + dims))
    return DensityOperator(reduced, (dims[keep],))


def eigh(operator) -> SpectralDecomposition:
    """Hermitian eigendecomposition with ascending eigenvalues."""
    mat = _as_matrix(operator)
    defect = float(np.abs(mat - mat.conj().T).max()) / 2
    if defect > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    w, v = np.linalg.eigh(mat)
    return SpectralDecomposition(w, v)


def _clamped_spectrum(matrix: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(matrix)
    if w[0] < -EIGENVALUE_FLOOR:
        raise ValueError(
            f"state has eigenvalue {w[0]:.3e} below -{EIGENVALUE_FLOOR}; not a valid state"
        )
    return np.where(w < 0.0, 0.0, w)


def von_neumann_entropy(rho) -> float:
    """S(rho) = -sum_i lambda_i log2 lambda_i, in bits, with 0 log 0 = 0.

    Eigenvalues in [-EIGENVALUE_FLOOR, 0) are clamped to zero; anything
    lower raises.
    """
    w = _clamped_spectrum(_as_matrix(rho))
    positive = w[w > 0.0]
    s = float(-(positive @ np.log2(positive)))
    return 0.0 if s == 0.0 else s


def shannon_entropy(p) -> float:
    """H(p) = -sum p log2 p in bits for a probability vector."""
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.size == 0:
        raise ValueError("empty probability vector")
    if (arr < 0.0).any():
        raise ValueError(f"probabilities must be nonnegative, got min {arr.min()!r}")
    total = float(arr.sum())
    if abs(total - 1.0) > TRACE_TOL:
        raise ValueError(f"probabilities sum to {total!r}, not 1")
    positive = arr[arr > 0.0]
    h = float(-(positive @ np.log2(positive)))
    return 0.0 if h == 0.0 else h


def relative_entropy(rho, sigma) -> float:
    """Quantum relative entropy S(rho||sigma) = tr rho (log2 rho - log2 sigma).

    The support condition is checked explicitly: eigendirections of sigma
    with eigenvalue at or below ``SUPPORT_TOL`` form its kernel, and if rho
    carries more than ``SUPPORT_TOL`` weight there the value is infinite,
    reported by raising :class:`SupportError` rather than returning a float.
    """
    a = _as_matrix(rho)
    b = _as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    wr, vr = np.linalg.eigh(a)
    ws, vs = np.linalg.eigh(b)
    if wr[0] < -EIGENVALUE_FLOOR or ws[0] < -EIGENVALUE_FLOOR:
        raise ValueError("inputs must be positive semidefinite")
    wr = np.where(wr < 0.0, 0.0, wr)
    ws = np.where(ws < 0.0, 0.0, ws)

    overlap = np.abs(vr.conj().T @ vs) ** 2  # overlap[i, j] = |<u_i|v_j>|^2
    kernel = ws <= SUPPORT_TOL
    if kernel.any():
        leaked = float(wr @ overlap[:, kernel].sum(axis=1))
        if leaked > SUPPORT_TOL:
            raise SupportError(
                f"rho carries weight {leaked:.3e} outside sigma's support; "
                "S(rho||sigma) is infinite"
            )
    pos_r = wr > 0.0
    term_rho = float(wr[pos_r] @ np.log2(wr[pos_r]))
    live = ~kernel
    column_weight = wr @ overlap[:, live]
    term_sigma = float(column_weight @ np.log2(ws[live]))
    value = term_rho - term_sigma
    if value < -1e-9:
        raise RuntimeError(
            f"relative entropy evaluated to {value:.3e} < 0; inputs are inconsistent"
        )
    return max(value, 0.0)


def commutator_norm(a, b) -> float:
    """Max-entry norm of the commutator AB - BA."""
    ma = _as_matrix(a)
    mb = _as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"shape mismatch: {ma.shape} vs {mb.shape}")
    return float(np.abs(ma @ mb - mb @ ma).max())
