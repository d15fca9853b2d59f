"""Two-state system: stationary (diagonal) evolution and the symmetric
double-well Hamiltonian ``[[E, -A], [-A, E]]``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotNormalized
from .hilbert import TOL_INPUT, HermitianOp, StateVector, matrix_exponential_evolution


@dataclass(frozen=True)
class TwoStateProblem:
    E: float
    A: float
    hbar: float = 1.0
    psi0: StateVector = field(default_factory=lambda: StateVector([1.0, 0.0]))

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        psi = self.psi0 if isinstance(self.psi0, StateVector) else StateVector(self.psi0)
        if psi.dim != 2:
            raise ValueError("psi0 must be two-dimensional")
        if abs(psi.norm() ** 2 - 1) > TOL_INPUT:
            raise NotNormalized("psi0 must be normalized")
        object.__setattr__(self, "psi0", psi)

    def hamiltonian(self) -> HermitianOp:
        return HermitianOp([[self.E, -self.A], [-self.A, self.E]])

    @property
    def starts_in_first_state(self) -> bool:
        a = self.psi0.amplitudes
        return abs(a[1]) == 0.0 and abs(abs(a[0]) - 1.0) <= 1e-15


def propagator_probs(p: TwoStateProblem, t: float) -> tuple[float, float]:
    """Occupation probabilities of ``exp(-i H t / hbar) psi0``."""
    u = matrix_exponential_evolution(p.hamiltonian(), t, p.hbar)
    psi = u.matrix @ p.psi0.amplitudes
    return float(abs(psi[0]) ** 2), float(abs(psi[1]) ** 2)


def ammonia_probs(p: TwoStateProblem, t: float) -> tuple[float, float]:
    """``(cos^2(A t / hbar), sin^2(A t / hbar))`` for ``psi0 = (1, 0)``.

    Any other initial state is evolved with the propagator instead.
    """
    if not p.starts_in_first_state:
        return propagator_probs(p, t)
    x = p.A * t / p.hbar
    c2 = math.cos(x) ** 2
    return c2, 1.0 - c2


def stationary_probs(E1: float, E2: float, a: complex, b: complex, t: float, hbar: float = 1.0) -> tuple[float, float]:
    """Diagonal Hamiltonian: amplitudes only acquire phases, probabilities stay put."""
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > TOL_INPUT:
        raise NotNormalized("|a|^2 + |b|^2 must equal 1")
    amp1 = a * np.exp(-1j * E1 * t / hbar)
    amp2 = b * np.exp(-1j * E2 * t / hbar)
    return abs(amp1) ** 2, abs(amp2) ** 2


def time_grid(p: TwoStateProblem, t_max: float, points: int) -> list[tuple[float, float, float]]:
    """``(t, P1, P2)`` rows on an evenly spaced grid from 0 to ``t_max``."""
    if points < 1:
        raise ValueError("grid needs at least one point")
    ts = np.linspace(0.0, t_max, points) if points > 1 else np.array([t_max])
    return [(float(t), *propagator_probs(p, float(t))) for t in ts]
