"""Coherence-based quantumness of qubit channels."""

from .bipartite import (
    TwoQubitState,
    choi_state,
    geometric_discord_b,
    local_apply_bob,
    observation_check,
    ppt_min_eigenvalue,
)
from .channels import (
    AffineChannel,
    KrausChannel,
    affine_to_choi,
    amplitude_damping,
    apply,
    choi_to_kraus,
    dephasing,
    generalized_depolarizing,
    identity_channel,
    is_entanglement_breaking,
    is_unital,
    kraus_to_affine,
    kraus_to_choi,
    kraus_validate,
    named_channel,
    random_cptp,
    unitary,
)
from .quantumness import (
    QuantumnessReport,
    classify,
    fixed_basis_quantumness,
    grid_min_quantumness,
    is_semiclassical,
    mc_quantumness,
    quantumness,
)
from .teleport import average_fidelity, teleport_report, werner_state

__version__ = "0.1.0"
