"""The two-splitter, one-phase Mach-Zehnder interferometer."""
from __future__ import annotations

import math

from .compiler import compile_circuit
from .netlist import parse_netlist

TOL_AGREE = 1e-12

_TEMPLATE = """\
# source L -> S1 -> (b: mirror, phase) + (c: mirror) -> S2 -> D1 (d), D2 (e)
mode a b c b2 c2 d e
source a
halfsilver a -> b c T={t!r}
phase b phi={phi!r}
mirror b -> b2
mirror c -> c2
halfsilver b2 c2 -> e d T={t!r}
detector d D1
detector e D2
"""


def mz_netlist(phi: float) -> str:
    return _TEMPLATE.format(t=1 / math.sqrt(2), phi=float(phi))


def mz_probabilities(phi: float) -> tuple[float, float]:
    """Detection probabilities ``(cos^2(phi/2), sin^2(phi/2))`` at D1 and D2.

    The closed form is cross-checked against the compiled circuit.
    """
    closed = (math.cos(phi / 2) ** 2, math.sin(phi / 2) ** 2)
    probs = compile_circuit(parse_netlist(mz_netlist(phi))).detector_probs()
    compiled = (probs["D1"], probs["D2"])
    if max(abs(x - y) for x, y in zip(closed, compiled)) > TOL_AGREE:
        raise ArithmeticError(f"compiled interferometer disagrees with closed form at phi={phi}")
    return closed
