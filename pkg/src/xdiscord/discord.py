"""Post-measurement conditional entropy and quantum discord evaluation.

Measuring subsystem B with a rank-1 element mu (I + m.sigma) leaves
subsystem A in a qubit state whose Bloch length is

    E(m) = sqrt((t1 mx)^2 + (t2 my)^2 + (t3 mz + B)^2) / (1 + A mz),

so the outcome contributes probability mu (1 + A mz) and entropy h(E).
Discord follows as S(rho_B) - S(rho_AB) + min conditional entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .entropy import LogBase, binary_entropy, marginal_entropy_b, von_neumann_xstate
from .errors import ZeroProbabilityError
from .povm import Povm3
from .qstate import XState, bloch_params

PROB_FLOOR = 1e-12
E_CLAMP_TOL = 1e-10
UNIT_NORM_TOL = 1e-10


@dataclass(frozen=True)
class MeasurementOutcome:
    """One POVM outcome: its probability and post-measurement Bloch length."""

    prob: float
    e_value: float

    def __post_init__(self):
        if self.prob < 0.0:
            raise ValueError(f"negative outcome probability {self.prob!r}")
        if self.e_value > 1.0 + E_CLAMP_TOL:
            raise ValueError(f"Bloch length {self.e_value!r} above 1")


@dataclass(frozen=True)
class DiscordValue:
    """Discord value with the conditional entropy and witness that produced it."""

    value: float
    conditional_entropy: float
    base: LogBase
    witness: Any = None


def _check_unit(m) -> tuple[float, float, float]:
    mx, my, mz = float(m[0]), float(m[1]), float(m[2])
    norm = math.sqrt(mx * mx + my * my + mz * mz)
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise ValueError(f"direction norm {norm!r} deviates from 1")
    return mx, my, mz


def e_function(s: XState, m) -> float:
    """Bloch length of subsystem A after outcome direction m, clamped to [0, 1].

    Raises ZeroProbabilityError when 1 + A*mz <= 1e-12: the outcome
    never occurs and its entropy term must be skipped by the caller.
    """
    mx, my, mz = _check_unit(m)
    bp = bloch_params(s)
    denom = 1.0 + bp.A * mz
    if denom <= PROB_FLOOR:
        raise ZeroProbabilityError(f"outcome probability factor {denom!r} vanishes")
    num = math.sqrt(
        (bp.t1 * mx) ** 2 + (bp.t2 * my) ** 2 + (bp.t3 * mz + bp.B) ** 2
    )
    return min(max(num / denom, 0.0), 1.0)


def povm_outcomes(s: XState, p: Povm3) -> list[MeasurementOutcome]:
    """Probabilities and Bloch lengths for the three outcomes of p.

    Zero-probability outcomes get e_value 0; their entropy weight is 0.
    """
    bp = bloch_params(s)
    mus = p.weights.as_array()
    out = []
    for mu, m in zip(mus, p.dirs):
        prob = mu * (1.0 + bp.A * m[2])
        if prob <= mu * PROB_FLOOR:
            out.append(MeasurementOutcome(prob=max(prob, 0.0), e_value=0.0))
        else:
            out.append(MeasurementOutcome(prob=prob, e_value=e_function(s, m)))
    return out


def conditional_entropy_povm3(s: XState, p: Povm3, base: LogBase = LogBase.BITS) -> float:
    """Average post-measurement entropy sum_k p_k h(E_k) for a 3-element POVM."""
    return sum(
        o.prob * binary_entropy(o.e_value, base)
        for o in povm_outcomes(s, p)
        if o.prob > 0.0
    )


def conditional_entropy_projective(s: XState, n, base: LogBase = LogBase.BITS) -> float:
    """Two-outcome specialization: antipodal directions n and -n, weights 1/2."""
    nx, ny, nz = _check_unit(n)
    bp = bloch_params(s)
    total = 0.0
    for sgn in (1.0, -1.0):
        prob = 0.5 * (1.0 + bp.A * sgn * nz)
        if prob <= 0.5 * PROB_FLOOR:
            continue
        total += prob * binary_entropy(
            e_function(s, (sgn * nx, sgn * ny, sgn * nz)), base
        )
    return total


def discord_given_conditional_entropy(
    s: XState, ce: float, witness: Any, base: LogBase = LogBase.BITS
) -> DiscordValue:
    """Assemble a DiscordValue: S(rho_B) - S(rho_AB) + ce."""
    if ce < -PROB_FLOOR:
        raise ValueError(f"negative conditional entropy {ce!r}")
    value = marginal_entropy_b(s, base) - von_neumann_xstate(s, base) + ce
    return DiscordValue(value=value, conditional_entropy=ce, base=base, witness=witness)


AXIS_CANDIDATES = (
    ("z", np.array([0.0, 0.0, 1.0])),
    ("x", np.array([1.0, 0.0, 0.0])),
)


def ali_candidate(s: XState, base: LogBase = LogBase.BITS) -> DiscordValue:
    """Discord from the better of the two axis projective measurements.

    The z/x axis pair is the candidate set closed-form X-state
    treatments optimize over; the bundled benchmarks pin its values.
    """
    best_ce = math.inf
    best_axis = None
    for label, n in AXIS_CANDIDATES:
        ce = conditional_entropy_projective(s, n, base)
        if ce < best_ce:
            best_ce = ce
            best_axis = (label, n)
    witness = {"kind": "projective-axis", "axis": best_axis[0], "direction": best_axis[1]}
    return discord_given_conditional_entropy(s, best_ce, witness, base)
