"""Qbits ``alpha*t + beta*f``: construction, angle coding, cbit identification
and repeated-measurement sampling."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized
from .hilbert import TOL_ENTRY, TOL_INPUT, StateVector

TOL_RAY = 1e-9


class CbitClass(enum.Enum):
    CLASSICAL_ONE = "classical-one"
    CLASSICAL_ZERO = "classical-zero"
    NONCLASSICAL = "nonclassical"


@dataclass(frozen=True)
class Qbit:
    """Amplitudes of the halting/true state ``t`` and the false state ``f``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @property
    def vector(self) -> StateVector:
        return StateVector([self.alpha, self.beta])

    def __array__(self, dtype=None, copy=None):
        return np.array([self.alpha, self.beta], dtype=dtype)

    def to_json(self) -> dict:
        from .serialize import complex_to_json

        return {"alpha": complex_to_json(self.alpha), "beta": complex_to_json(self.beta)}

    @classmethod
    def from_json(cls, obj) -> "Qbit":
        from .serialize import complex_from_json

        return make_qbit(complex_from_json(obj["alpha"]), complex_from_json(obj["beta"]))


T = Qbit(1, 0)
F = Qbit(0, 1)
H_STAR = Qbit(1 / math.sqrt(2), 1 / math.sqrt(2))


def make_qbit(alpha: complex, beta: complex) -> Qbit:
    dev = abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0)
    if dev > TOL_INPUT:
        raise NotNormalized(f"|alpha|^2 + |beta|^2 deviates from 1 by {dev:.3e}")
    return Qbit(alpha, beta)


def code_qbit(omega: float, phi: float, delta: float) -> Qbit:
    """``(alpha, beta) = e^{i phi} (sin omega, e^{i delta} cos omega)``."""
    omega, phi, delta = (math.remainder(a, 2 * math.pi) for a in (omega, phi, delta))
    g = complex(math.cos(phi), math.sin(phi))
    rel = complex(math.cos(delta), math.sin(delta))
    return Qbit(g * math.sin(omega), g * rel * math.cos(omega))


def classify(q: Qbit) -> CbitClass:
    if abs(q.beta) <= TOL_ENTRY:
        return CbitClass.CLASSICAL_ONE
    if abs(q.alpha) <= TOL_ENTRY:
        return CbitClass.CLASSICAL_ZERO
    return CbitClass.NONCLASSICAL


def measure_probs(q: Qbit) -> tuple[float, float]:
    p_t = abs(q.alpha) ** 2
    p_f = abs(q.beta) ** 2
    return p_t, p_f


def sample_measurements(q: Qbit, n: int, seed: int) -> tuple[int, int]:
    """Count outcomes of ``n`` independent measurements in the {t, f} basis.

    Draws come from numpy's PCG64 generator seeded with ``seed``; identical
    arguments always give identical counts.
    """
    if n < 1:
        raise ValueError("need at least one measurement")
    p_t, p_f = measure_probs(q)
    p_t = p_t / (p_t + p_f)
    rng = np.random.Generator(np.random.PCG64(seed & 0xFFFFFFFFFFFFFFFF))
    count_t = int(np.count_nonzero(rng.random(n) < p_t))
    return count_t, n - count_t


def ray_equal(x, y, tol: float = TOL_RAY) -> bool:
    """True when ``|x - c*y| <= tol`` for some unit-modulus ``c``."""
    a = np.asarray(x, dtype=complex).ravel()
    b = np.asarray(y, dtype=complex).ravel()
    if a.shape != b.shape:
        return False
    return float(np.linalg.norm(a - overlap_phase(a, b) * b)) <= tol


def overlap_phase(a, b) -> complex:
    """Unit phase ``c`` minimising ``|a - c*b|``."""
    z = np.vdot(b, a)
    return complex(z / abs(z)) if abs(z) > 0 else 1.0
