"""Two-dimensional unitaries: the four-angle parameterization, the gate
catalog, fixed points and the generalized (phase-acquiring) diagonalization."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnknownGate
from .hilbert import TOL_ENTRY, StateVector, UnitaryOp, _as_unitary

PI = math.pi
TOL_FIXED = 1e-9


def _wrap(x: float) -> float:
    """Reduce an angle into ``[-pi, pi]``."""
    return math.remainder(x, 2 * PI)


@dataclass(frozen=True)
class U2Params:
    """Angles of ``e^{-i beta} [[e^{i alpha} cos w, -e^{-i phi} sin w], [e^{i phi} sin w, e^{-i alpha} cos w]]``.

    Out-of-range inputs are mapped onto an in-range tuple describing the same
    matrix: ``omega, beta`` in ``[-pi, pi]`` and ``alpha, phi`` in ``[-pi/2, pi/2]``.
    """

    omega: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        w, a, b, f = (_wrap(float(x)) for x in (self.omega, self.alpha, self.beta, self.phi))
        # shifting alpha by pi flips cos(omega): compensate with omega -> pi - omega
        if a > PI / 2:
            a, w = a - PI, _wrap(PI - w)
        elif a < -PI / 2:
            a, w = a + PI, _wrap(PI - w)
        # shifting phi by pi flips sin(omega): compensate with omega -> -omega
        if f > PI / 2:
            f, w = f - PI, -w
        elif f < -PI / 2:
            f, w = f + PI, -w
        object.__setattr__(self, "omega", w)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "phi", f)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.omega, self.alpha, self.beta, self.phi)


def u2_array(omega: float, alpha: float, beta: float, phi: float) -> np.ndarray:
    c, s = math.cos(omega), math.sin(omega)
    ea, ef = np.exp(1j * alpha), np.exp(1j * phi)
    return np.exp(-1j * beta) * np.array(
        [[ea * c, -np.conj(ef) * s], [ef * s, np.conj(ea) * c]], dtype=complex
    )


def u2_matrix(p: U2Params) -> UnitaryOp:
    return UnitaryOp(u2_array(*p.as_tuple()))


def u2_params_from_matrix(m) -> U2Params:
    """Invert :func:`u2_matrix` for an arbitrary 2x2 unitary."""
    m = _as_unitary(m).matrix
    beta = -np.angle(np.linalg.det(m)) / 2
    s = np.exp(1j * beta) * m
    x, y = s[0, 0], s[1, 0]
    omega = math.atan2(abs(y), abs(x))
    alpha = float(np.angle(x)) if abs(x) > 0 else 0.0
    phi = float(np.angle(y)) if abs(y) > 0 else 0.0
    return U2Params(omega, alpha, float(beta), phi)


_R2 = 1 / math.sqrt(2)
_GATES = {
    "identity": np.eye(2, dtype=complex),
    "not": np.array([[0, 1], [1, 0]], dtype=complex),
    "sqrt_not": _R2 * np.array([[1, -1], [1, 1]], dtype=complex),
    "sqrt_not_prime": 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]),
}
GATE_NAMES = tuple(_GATES)


def gate(name: str) -> UnitaryOp:
    try:
        return UnitaryOp(_GATES[name])
    except KeyError:
        raise UnknownGate(f"unknown gate {name!r}; choose from {', '.join(GATE_NAMES)}") from None


def phase_gate(theta: float) -> UnitaryOp:
    return UnitaryOp(np.diag([1.0, np.exp(1j * theta)]))


@dataclass(frozen=True)
class FixedPointReport:
    has_fixed_point: bool
    fixed_vectors: tuple[StateVector, ...]
    eigenphases: tuple[float, float]


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v) > 1e-12))
    return v * (abs(v[k]) / v[k])


def fixed_point_report(u) -> FixedPointReport:
    """Eigenphases of ``u`` and an orthonormal basis of its eigenvalue-1 space.

    Uses the SVD of ``u - I``: for a normal matrix its singular values are the
    distances ``|lambda - 1|`` of the eigenvalues from one.
    """
    m = _as_unitary(u).matrix
    phases = tuple(sorted(float(np.angle(ev)) for ev in np.linalg.eigvals(m)))
    _, sigma, vh = np.linalg.svd(m - np.eye(m.shape[0]))
    fixed = tuple(
        StateVector(_canonical_phase(vh[k].conj())) for k in range(len(sigma)) if sigma[k] <= TOL_FIXED
    )
    return FixedPointReport(bool(fixed), fixed, phases)


def generalized_diag(p: U2Params, mu: float, lam: float) -> UnitaryOp:
    """``U(p)^{-1} diag(e^{i mu}, e^{i lam}) U(p)``; eigenphases are ``{mu, lam}``."""
    u = u2_array(*p.as_tuple())
    d = np.diag([np.exp(1j * mu), np.exp(1j * lam)])
    return UnitaryOp(u.conj().T @ d @ u)


def is_unitary_entrywise(m, tol: float = TOL_ENTRY) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.allclose(m @ m.conj().T, np.eye(m.shape[0]), rtol=0, atol=tol))
