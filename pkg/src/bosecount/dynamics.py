"""Single-particle dynamics of a two-level system.

The Hamiltonian ``epsilon*sigma_z + xi*sigma_x + eta*sigma_y`` (hbar=1,
all quantities dimensionless) generates a 2x2 unitary whose off-diagonal
weight p = |u12|^2 is the one-particle mode-switch probability.  The
many-particle statistics depend on p alone, so this module also inverts
p(t) to find the shortest pulse reaching a requested transfer
probability.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "TwoLevelParams",
    "SingleParticleUnitary",
    "TargetUnreachable",
    "NoCoupling",
    "rabi_frequency",
    "evolve",
    "transfer_ceiling",
    "solve_pulse_duration",
]

_UNITARITY_TOL = 1e-12


class TargetUnreachable(ValueError):
    """Requested transfer probability exceeds the detuning-limited maximum."""


class NoCoupling(ValueError):
    """Nonzero transfer requested but both tunnelling components vanish."""


@dataclass(frozen=True)
class TwoLevelParams:
    """Hamiltonian coefficients: energy half-splitting and the real and
    imaginary parts of the tunnelling element ``xi + i*eta``."""

    epsilon: float
    xi: float
    eta: float

    def __post_init__(self) -> None:
        for name in ("epsilon", "xi", "eta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SingleParticleUnitary:
    """Matrix elements of the one-particle evolution plus derived scalars.

    p is the mode-switch probability |u12|^2, alpha the phase of u11 and
    beta the phase of u12.  Construction enforces unitarity and the
    structure u22 = conj(u11), u21 = -conj(u12) to 1e-12.
    """

    u11: complex
    u12: complex
    u21: complex
    u22: complex
    p: float
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        defect = self.unitarity_defect()
        if defect > _UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        structure = max(abs(self.u22 - self.u11.conjugate()),
                        abs(self.u21 + self.u12.conjugate()))
        if structure > _UNITARITY_TOL:
            raise ValueError(f"matrix structure violated (defect {structure:.3e})")
        if abs(self.p - abs(self.u12) ** 2) > _UNITARITY_TOL:
            raise ValueError("p is inconsistent with |u12|^2")

    def unitarity_defect(self) -> float:
        """Largest violation of the column-orthonormality conditions."""
        c1 = abs(abs(self.u11) ** 2 + abs(self.u21) ** 2 - 1.0)
        c2 = abs(abs(self.u12) ** 2 + abs(self.u22) ** 2 - 1.0)
        c3 = abs(self.u11 * self.u12.conjugate() + self.u21 * self.u22.conjugate())
        return max(c1, c2, c3)


def rabi_frequency(params: TwoLevelParams) -> float:
    """Oscillation frequency sqrt(epsilon^2 + xi^2 + eta^2)."""
    return math.sqrt(params.epsilon ** 2 + params.xi ** 2 + params.eta ** 2)


def evolve(params: TwoLevelParams, t: float) -> SingleParticleUnitary:
    """Unitary exp(-i H t) for the two-level Hamiltonian.

    Written as cos(wt) minus i*sin(wt)/w times the Hamiltonian; the
    degenerate w = 0 case takes the analytic limit sin(wt)/w -> t.
    """
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    w = rabi_frequency(params)
    if w > 0.0:
        c = math.cos(w * t)
        s = math.sin(w * t) / w
    else:
        c = 1.0
        s = t
    u11 = complex(c, -params.epsilon * s)
    u12 = complex(-params.eta * s, -params.xi * s)
    u21 = complex(params.eta * s, -params.xi * s)
    u22 = complex(c, params.epsilon * s)
    p = min(1.0, abs(u12) ** 2)
    alpha = cmath.phase(u11) if u11 != 0 else 0.0
    beta = cmath.phase(u12) if u12 != 0 else 0.0
    return SingleParticleUnitary(u11, u12, u21, u22, p, alpha, beta)


def transfer_ceiling(params: TwoLevelParams) -> float:
    """Largest reachable p: (xi^2 + eta^2) / (epsilon^2 + xi^2 + eta^2)."""
    coupling = params.xi ** 2 + params.eta ** 2
    if coupling == 0.0:
        return 0.0
    return coupling / (params.epsilon ** 2 + coupling)


def solve_pulse_duration(params: TwoLevelParams, target_p: float) -> float:
    """Smallest t >= 0 with p(t) equal to target_p.

    Closed-form inversion of p(t) = p_max * sin(w*t)^2 on the first
    quarter period; exact to roundoff, so well inside the 1e-12
    relative contract.
    """
    if not (0.0 <= target_p <= 1.0):
        raise ValueError(f"target_p must lie in [0, 1], got {target_p!r}")
    if target_p == 0.0:
        return 0.0
    coupling = params.xi ** 2 + params.eta ** 2
    if coupling == 0.0:
        raise NoCoupling("xi = eta = 0 admits no transfer")
    w_sq = params.epsilon ** 2 + coupling
    p_max = coupling / w_sq
    if target_p > p_max:
        raise TargetUnreachable(
            f"target_p={target_p!r} exceeds the detuning ceiling p_max={p_max!r}")
    ratio = min(1.0, target_p / p_max)
    return math.asin(math.sqrt(ratio)) / math.sqrt(w_sq)
