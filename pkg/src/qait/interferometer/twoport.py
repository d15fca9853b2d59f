"""Universal two-port devices: the beam-splitter form ``T_bs`` and the
Mach-Zehnder form ``T_mz``, their parameter correspondences and the gate
realizations.

Argument order follows the device: ``t_bs(omega, alpha, beta, phi)`` and
``t_mz(alpha, beta, omega, phi)``.  Angles are used as given (no wrapping);
``t_mz`` depends on ``omega/2`` and is therefore only 4*pi periodic in omega.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..hilbert import UnitaryOp
from ..u2 import U2Params

PI = math.pi


@dataclass(frozen=True)
class TwoPortParams:
    omega: float
    alpha: float
    beta: float
    phi: float
    flavor: str = "bs"

    def __post_init__(self):
        if self.flavor not in ("bs", "mz"):
            raise ValueError("flavor must be 'bs' or 'mz'")

    def args(self) -> tuple[float, float, float, float]:
        """Positional arguments in the order the device function expects."""
        if self.flavor == "bs":
            return (self.omega, self.alpha, self.beta, self.phi)
        return (self.alpha, self.beta, self.omega, self.phi)

    @classmethod
    def bs(cls, omega, alpha, beta, phi) -> "TwoPortParams":
        return cls(omega, alpha, beta, phi, "bs")

    @classmethod
    def mz(cls, alpha, beta, omega, phi) -> "TwoPortParams":
        return cls(omega, alpha, beta, phi, "mz")

    def matrix(self) -> UnitaryOp:
        return t_bs(self) if self.flavor == "bs" else t_mz(self)


def _unpack(args, flavor):
    if len(args) == 1 and isinstance(args[0], TwoPortParams):
        p = args[0]
        if p.flavor != flavor:
            raise ValueError(f"expected {flavor} parameters, got {p.flavor}")
        return p.args()
    if len(args) != 4:
        raise TypeError("expected TwoPortParams or four angles")
    return tuple(float(a) for a in args)


def t_bs_array(omega, alpha, beta, phi) -> np.ndarray:
    s, c = math.sin(omega), math.cos(omega)
    return np.exp(-1j * beta) * np.array(
        [
            [-1j * np.exp(-1j * (alpha + phi)) * s, np.exp(-1j * phi) * c],
            [np.exp(-1j * alpha) * c, -1j * s],
        ],
        dtype=complex,
    )


def t_mz_array(alpha, beta, omega, phi) -> np.ndarray:
    s, c = math.sin(omega / 2), math.cos(omega / 2)
    return -1j * np.exp(-1j * (beta + omega / 2)) * np.array(
        [
            [-np.exp(-1j * (alpha + phi)) * s, np.exp(-1j * phi) * c],
            [np.exp(-1j * alpha) * c, s],
        ],
        dtype=complex,
    )


def t_bs(*args) -> UnitaryOp:
    return UnitaryOp(t_bs_array(*_unpack(args, "bs")))


def t_mz(*args) -> UnitaryOp:
    return UnitaryOp(t_mz_array(*_unpack(args, "mz")))


def bs_to_mz(p: TwoPortParams) -> TwoPortParams:
    """Mach-Zehnder settings realizing the same matrix as beam-splitter settings ``p``."""
    if p.flavor != "bs":
        raise ValueError("expected bs parameters")
    return TwoPortParams.mz(p.alpha - PI / 2, p.beta - p.omega, 2 * p.omega, p.phi - PI / 2)


def canonical_to_bs(omega: float, alpha: float, beta: float, phi: float) -> TwoPortParams:
    """Beam-splitter settings for the canonical form ``e^{-i beta} T(omega, alpha, phi)``."""
    return TwoPortParams.bs(omega - PI / 2, -alpha - phi - PI / 2, beta + alpha + PI / 2, phi - alpha + PI / 2)


def u2_to_bs(p: U2Params) -> TwoPortParams:
    return canonical_to_bs(*p.as_tuple())


# gate name -> (bs settings, mz settings)
REALIZATIONS = {
    "identity": (TwoPortParams.bs(-PI / 2, -PI / 2, PI / 2, PI / 2), TwoPortParams.mz(-PI, PI, -PI, 0.0)),
    "not": (TwoPortParams.bs(0.0, 0.0, 0.0, 0.0), TwoPortParams.mz(-PI / 2, 0.0, 0.0, -PI / 2)),
    "sqrt_not": (
        TwoPortParams.bs(-PI / 4, -PI / 2, PI / 2, PI / 2),
        TwoPortParams.mz(-PI, 3 * PI / 4, -PI / 2, 0.0),
    ),
    "sqrt_not_prime": (
        TwoPortParams.bs(-PI / 4, 0.0, PI / 4, 0.0),
        TwoPortParams.mz(-PI / 2, PI / 2, -PI / 2, -PI / 2),
    ),
}
