"""Asymmetry quantifiers for bipartite quantum reference frames and the
relational dynamics of finite clocks.

All entropic quantities are in bits (log base 2).
"""

from .measures import (
    BoundsReport,
    CqEntry,
    CqState,
    GlobalLocalGap,
    asymmetry,
    bounds_report,
    build_cq_state,
    interaction_information,
    is_mutual_qrf,
    mutual_asymmetry,
    mutual_asymmetry_relent,
    mutual_coherence,
)
from .presets import (
    EXAMPLE_NAMES,
    WorkedExample,
    figure_states,
    high_coherence_order,
    high_localization,
    qubit_pair,
    symmetric_state_closed_form,
    worked_example,
)
from .pwc import (
    ClockModel,
    HistoryState,
    QubitClock,
    angle_amplitude,
    conditional_probability,
    corrupt_tick,
    gaussian_clock_state,
    history_from_projection,
    overlap_decay,
    psw_clock,
    qubit_clock,
    relational_fidelities,
    relational_state,
    schrodinger_residual,
    system_charges_from_hamiltonian,
    time_state_angle_form,
)
from .qmat import (
    DensityOperator,
    HermitianOperator,
    SpectralDecomposition,
    SupportError,
    commutator_norm,
    eigh,
    kron,
    partial_trace,
    relative_entropy,
    shannon_entropy,
    tensor,
    von_neumann_entropy,
)
from .symmetry import (
    ChargeSpectrum,
    FiniteDesign,
    SectorDecomposition,
    charges_from_hamiltonian,
    dephase,
    dephase_local,
    finite_design,
    group_action,
    sectors,
    total_charges,
    twirl_design,
    twirl_quadrature,
)

__version__ = "0.1.0"
