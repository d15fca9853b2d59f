"""Compile a netlist into the single-particle unitary it implements.

Elements are applied by successive substitution in declaration order.  Modes
are wires: a mode first touched as an element input (or never touched at all)
is an input port of the circuit; once consumed it carries no amplitude until a
later element emits into it.  A one-input splitter gets an implicit vacuum
input port, so the compiled map is always square.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NetlistError, NonUnitaryComposition, NonUnitaryElement
from ..hilbert import TOL_COMPOSED, UnitaryOp, unitarity_defect
from .netlist import NONLINEAR, Circuit, Element

MIRROR_PHASES = {"omit": 1.0 + 0j, "exact": 1j}


@dataclass(frozen=True)
class CompiledCircuit:
    """Unitary from ``inputs`` (columns) to ``outputs`` (rows)."""

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    unitary: UnitaryOp
    source: str | None
    detectors: tuple[tuple[str, str], ...]

    def amplitudes(self, source: str | None = None) -> dict[str, complex]:
        """Output amplitudes for a unit amplitude injected into ``source``."""
        src = self.source if source is None else source
        if src is None:
            raise NetlistError("circuit has no source")
        if src not in self.inputs:
            raise NetlistError(f"source mode {src!r} is not an input port of the circuit")
        col = self.unitary.matrix[:, self.inputs.index(src)]
        return {mode: complex(col[k]) for k, mode in enumerate(self.outputs)}

    def detector_probs(self, source: str | None = None) -> dict[str, float]:
        amps = self.amplitudes(source)
        return {label: abs(amps[mode]) ** 2 for mode, label in self.detectors}

    def to_json(self) -> dict:
        from ..serialize import matrix_to_json

        out = {
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "unitary": matrix_to_json(self.unitary),
        }
        if self.source is not None:
            out["detector_probs"] = self.detector_probs()
        return out


def _vacuum_name(el: Element) -> str:
    return f"<vacuum:{el.line}>"


def _wire(circuit: Circuit):
    """Check mode consumption and collect the input ports in discovery order."""
    status = {m: "fresh" for m in circuit.modes}
    ports: list[str] = []
    for el in circuit.elements:
        if el.kind in NONLINEAR:
            raise NonUnitaryElement(
                f"{el.kind} is not unitary on the single-particle mode space", el.line, 1
            )
        for m in el.input_modes:
            if status[m] == "dead":
                raise NonUnitaryComposition(
                    f"mode {m!r} was already consumed and nothing emitted into it since", el.line
                )
            if status[m] == "fresh":
                ports.append(m)
            status[m] = "live" if el.kind == "phase" else "dead"
        if el.kind in ("halfsilver", "beamsplitter") and len(el.input_modes) == 1:
            ports.append(_vacuum_name(el))
        for m in el.output_modes:
            if status[m] == "live":
                raise NonUnitaryComposition(
                    f"element emits into mode {m!r}, which still carries amplitude", el.line
                )
            status[m] = "live"
    for m in circuit.modes:
        if status[m] == "fresh":
            ports.append(m)
            status[m] = "live"
    outputs = tuple(m for m in circuit.modes if status[m] == "live")
    order = {m: k for k, m in enumerate(circuit.modes)}
    inputs = tuple(sorted(ports, key=lambda p: (0, order[p]) if p in order else (1, ports.index(p))))
    return inputs, outputs


def _splitter_matrix(el: Element) -> np.ndarray:
    """Rows (out1, out2), columns (in1, in2)."""
    if el.kind == "halfsilver":
        t, r = el.params["T"], el.reflectivity
        return np.array([[t, 1j * r], [1j * r, t]], dtype=complex)
    s = 1 / math.sqrt(2)
    return np.array([[s, s], [s, -s]], dtype=complex)


def compile_circuit(circuit: Circuit, mirror_phase: str = "omit") -> CompiledCircuit:
    """Compile ``circuit``; ``mirror_phase='exact'`` keeps the factor i of mirror reflections."""
    if mirror_phase not in MIRROR_PHASES:
        raise ValueError(f"mirror_phase must be one of {sorted(MIRROR_PHASES)}")
    inputs, outputs = _wire(circuit)
    n = len(inputs)
    index = {p: k for k, p in enumerate(inputs)}
    live: dict[str, np.ndarray] = {}

    def take(mode: str) -> np.ndarray:
        if mode in live:
            return live.pop(mode)
        vec = np.zeros(n, dtype=complex)
        vec[index[mode]] = 1.0
        return vec

    for el in circuit.elements:
        if el.kind == "phase":
            live[el.input_modes[0]] = take(el.input_modes[0]) * np.exp(1j * el.params["phi"])
        elif el.kind == "mirror":
            live[el.output_modes[0]] = take(el.input_modes[0]) * MIRROR_PHASES[mirror_phase]
        else:
            ins = [take(m) for m in el.input_modes]
            if len(ins) == 1:
                ins.append(take(_vacuum_name(el)))
            s = _splitter_matrix(el)
            for row, out in enumerate(el.output_modes):
                live[out] = s[row, 0] * ins[0] + s[row, 1] * ins[1]

    matrix = np.array([live[m] if m in live else take(m) for m in outputs], dtype=complex)
    defect = unitarity_defect(matrix)
    if defect > TOL_COMPOSED:
        raise NonUnitaryComposition(f"compiled map deviates from unitarity by {defect:.3e}")

    lines = dict(zip(circuit.detectors, circuit.detector_lines))
    for det in circuit.detectors:
        if det[0] not in outputs:
            raise NetlistError(f"detector {det[1]!r} watches mode {det[0]!r}, which carries no amplitude at the end", lines.get(det))
    source = circuit.sources[0] if circuit.sources else None
    if source is not None and source not in inputs:
        raise NetlistError(f"source mode {source!r} is emitted into before it is read, so it is not an input port")
    return CompiledCircuit(inputs, outputs, UnitaryOp(matrix), source, circuit.detectors)
