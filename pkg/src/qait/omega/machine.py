"""A prefix-free toy quantum computer with a halting qbit.

Programs are bit strings read in 2-bit opcodes:

==== =====================================================
00   apply sqrt(not)' to the current target register
01   apply diag(1, e^{i pi/4}) to the current target register
10   advance the target cyclically over out_1 .. out_k, halt
11   stop
==== =====================================================

A program ends with the first ``11``, so no program is a prefix of another.
Output registers start in ``|0> = (1, 0)``, the halting register in
``(t + f)/sqrt(2)`` and the target pointer at ``out_1``.  The halting
amplitude is the overlap ``(t, h)`` of the final halting register ``h``; no
projection is performed.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidProgram, StepBudgetExceeded
from ..hilbert import inner_product
from ..qbit import Qbit
from ..u2 import gate, phase_gate

HALT = "11"
ACTIONS = ("sqrt_not_prime", "phase", "advance")
DEFAULT_OPCODES = (("00", "sqrt_not_prime"), ("01", "phase"), ("10", "advance"))
# cycle of the same three actions over the other codes; used for the variant machine
SWAPPED_OPCODES = (("00", "phase"), ("01", "sqrt_not_prime"), ("10", "advance"))

_T_STATE = np.array([1.0, 0.0], dtype=complex)


@dataclass(frozen=True, order=True)
class Program:
    """A valid program; orders by length, then lexicographically (0 < 1)."""

    length: int
    bits: str

    def __init__(self, bits: str):
        bits = str(bits)
        if not bits or len(bits) % 2 or set(bits) - {"0", "1"}:
            raise InvalidProgram(f"{bits!r} is not an even-length binary string")
        ops = [bits[k : k + 2] for k in range(0, len(bits), 2)]
        if ops[-1] != HALT or HALT in ops[:-1]:
            raise InvalidProgram(f"{bits!r} must end with its only 11 opcode")
        object.__setattr__(self, "length", len(bits))
        object.__setattr__(self, "bits", bits)

    @property
    def opcodes(self) -> tuple[str, ...]:
        return tuple(self.bits[k : k + 2] for k in range(0, self.length, 2))

    def __len__(self):
        return self.length

    def __str__(self):
        return self.bits


@dataclass(frozen=True)
class MachineModel:
    k: int = 2
    tau_max: int = 10_000
    opcodes: tuple[tuple[str, str], ...] = DEFAULT_OPCODES
    phase_angle: float = math.pi / 4

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one output register")
        codes = dict(self.opcodes)
        if sorted(codes) != ["00", "01", "10"] or sorted(codes.values()) != sorted(ACTIONS):
            raise ValueError("opcodes must map 00, 01, 10 one-to-one onto the three actions")

    def variant(self) -> "MachineModel":
        """Single-register machine with the two gate opcodes exchanged."""
        return MachineModel(k=1, tau_max=self.tau_max, opcodes=SWAPPED_OPCODES, phase_angle=self.phase_angle)

    @property
    def n_registers(self) -> int:
        return self.k + 1

    def initial_state(self) -> "MachineState":
        regs = np.zeros((self.k + 1, 2), dtype=complex)
        regs[: self.k, 0] = 1.0
        regs[self.k] = [1 / math.sqrt(2), 1 / math.sqrt(2)]
        regs.setflags(write=False)
        return MachineState(regs, 0)


@dataclass(frozen=True)
class MachineState:
    """Registers ``out_1 .. out_k, halt`` (rows) and the target pointer."""

    registers: np.ndarray
    target: int


@dataclass(frozen=True)
class MachineOutput:
    output_states: tuple[Qbit, ...]
    halting_amplitude: complex
    halting_state: Qbit
    final: MachineState

    def outputs_array(self) -> np.ndarray:
        return self.final.registers[:-1]


_GATES = {}


def _gate_matrix(action: str, m: MachineModel) -> np.ndarray:
    key = (action, m.phase_angle)
    if key not in _GATES:
        _GATES[key] = gate("sqrt_not_prime").matrix if action == "sqrt_not_prime" else phase_gate(m.phase_angle).matrix
    return _GATES[key]


def step_from(state: MachineState, p: Program, m: MachineModel) -> MachineState:
    """Execute ``p`` starting from ``state``; returns the state at its stop opcode."""
    codes = dict(m.opcodes)
    regs = np.array(state.registers, dtype=complex)
    target = state.target
    steps = 0
    for op in p.opcodes:
        steps += 1
        if steps > m.tau_max:
            raise StepBudgetExceeded(f"program exceeded {m.tau_max} steps")
        if op == HALT:
            break
        action = codes[op]
        if action == "advance":
            target = (target + 1) % m.n_registers
        else:
            regs[target] = _gate_matrix(action, m) @ regs[target]
    regs.setflags(write=False)
    return MachineState(regs, target)


def output_of(state: MachineState) -> MachineOutput:
    regs = state.registers
    halt = regs[-1]
    return MachineOutput(
        tuple(Qbit(r[0], r[1]) for r in regs[:-1]),
        inner_product(_T_STATE, halt),
        Qbit(halt[0], halt[1]),
        state,
    )


def run(p: Program | str, m: MachineModel | None = None) -> MachineOutput:
    m = m or MachineModel()
    p = p if isinstance(p, Program) else Program(p)
    return output_of(step_from(m.initial_state(), p, m))


def enumerate_programs(max_len: int) -> list[Program]:
    """Every valid program of length <= ``max_len``, shortest first, then lexicographic."""
    if max_len < 2 or max_len % 2:
        raise ValueError("max_len must be an even integer >= 2")
    out = []
    for n_ops in range(max_len // 2):
        for body in itertools.product(("00", "01", "10"), repeat=n_ops):
            out.append(Program("".join(body) + HALT))
    return out


def is_prefix_free(programs) -> bool:
    """Check via the sorted order: a prefix sorts immediately before some extension of it."""
    words = sorted(str(p) for p in programs)
    return len(set(words)) == len(words) and not any(b.startswith(a) for a, b in zip(words, words[1:]))
