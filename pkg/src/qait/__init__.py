"""Finite-dimensional quantum toolkit: Hilbert-space primitives, qbit coding,
U(2) gates and their optical realizations, a netlist interferometer compiler,
unitary decomposition into two-level factors, two-state dynamics, truncated
Fock spaces, and a toy prefix-free quantum machine with its halting amplitude
and program-size complexity."""

from .errors import QaitError
from .hilbert import HermitianOp, StateVector, UnitaryOp, born_probability, inner_product
from .qbit import H_STAR, Qbit, code_qbit, make_qbit
from .u2 import U2Params, fixed_point_report, gate

__version__ = "0.1.0"

__all__ = [
    "H_STAR",
    "HermitianOp",
    "QaitError",
    "Qbit",
    "StateVector",
    "U2Params",
    "UnitaryOp",
    "born_probability",
    "code_qbit",
    "fixed_point_report",
    "gate",
    "inner_product",
    "make_qbit",
]
