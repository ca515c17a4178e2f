"""Quantum discord of two-qubit X states.

Computes discord by minimizing post-measurement conditional entropy
over projective measurements and general 3-element POVMs, with a CLI
that reports bundled benchmark states in both log bases.
"""

from .discord import (
    DiscordValue,
    MeasurementOutcome,
    ali_candidate,
    conditional_entropy_povm3,
    conditional_entropy_projective,
    discord_given_conditional_entropy,
    e_function,
    povm_outcomes,
)
from .entropy import (
    LogBase,
    binary_entropy,
    marginal_entropy_b,
    mutual_information,
    von_neumann_xstate,
)
from .errors import (
    DegenerateError,
    DomainError,
    ParseError,
    PositivityError,
    TraceError,
    ZeroProbabilityError,
)
from .optimizer import (
    OptResult,
    PhiAuditReport,
    SearchConfig,
    minimize_povm3,
    minimize_projective,
    phi_invariance_audit,
)
from .povm import (
    EulerAngles,
    Povm3,
    PovmWeights,
    TriangleAngles,
    angles_from_weights,
    build_povm3,
    planar_directions,
    rotation_matrix,
    sample_weights,
)
from .qstate import (
    BlochParams,
    XState,
    bloch_params,
    eigenvalues,
    marginal_b,
    to_matrix,
    xstate_from_entries,
)

__all__ = [
    "BlochParams",
    "DegenerateError",
    "DiscordValue",
    "DomainError",
    "EulerAngles",
    "LogBase",
    "MeasurementOutcome",
    "OptResult",
    "ParseError",
    "PhiAuditReport",
    "Povm3",
    "PovmWeights",
    "PositivityError",
    "SearchConfig",
    "TraceError",
    "TriangleAngles",
    "XState",
    "ZeroProbabilityError",
    "ali_candidate",
    "angles_from_weights",
    "binary_entropy",
    "bloch_params",
    "build_povm3",
    "conditional_entropy_povm3",
    "conditional_entropy_projective",
    "discord_given_conditional_entropy",
    "e_function",
    "eigenvalues",
    "marginal_b",
    "marginal_entropy_b",
    "minimize_povm3",
    "minimize_projective",
    "mutual_information",
    "phi_invariance_audit",
    "planar_directions",
    "povm_outcomes",
    "rotation_matrix",
    "sample_weights",
    "to_matrix",
    "von_neumann_xstate",
    "xstate_from_entries",
]
