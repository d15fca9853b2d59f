"""Halting amplitudes, incoherent halting probabilities and program-size
complexity over the enumerated programs of a :class:`MachineModel`.

Every sum is folded in canonical program order (shortest first, then
lexicographic), so results do not depend on how the runs were scheduled.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx
import numpy as np

from ..qbit import TOL_RAY, Qbit, overlap_phase, ray_equal
from .machine import MachineModel, MachineOutput, Program, enumerate_programs, run


@dataclass(frozen=True)
class Run:
    program: Program
    output: MachineOutput


@lru_cache(maxsize=64)
def runs(m: MachineModel, max_len: int, threads: int = 1) -> tuple[Run, ...]:
    """Run every program up to ``max_len``; results come back in canonical order."""
    programs = enumerate_programs(max_len)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outputs = list(pool.map(lambda p: run(p, m), programs))
    else:
        outputs = [run(p, m) for p in programs]
    return tuple(Run(p, o) for p, o in zip(programs, outputs))


def weight(p: Program) -> float:
    """``2^{-|p|/2}``, the amplitude weight of a program."""
    return math.ldexp(1.0, -(p.length // 2))


# -- output specifications -------------------------------------------------

def as_spec(s, m: MachineModel) -> tuple[tuple[int, np.ndarray], ...]:
    """Normalize an output specification to ``((register, vector), ...)``.

    ``s`` is either a sequence of ``k`` register states or a mapping from
    register index to state (a partial specification).
    """
    items = s.items() if isinstance(s, dict) else enumerate(s)
    spec = []
    for reg, q in items:
        if not 0 <= reg < m.k:
            raise ValueError(f"register {reg} does not exist (machine has {m.k})")
        spec.append((int(reg), np.asarray(q, dtype=complex).ravel()))
    if not isinstance(s, dict) and len(spec) != m.k:
        raise ValueError(f"output specification needs {m.k} register states, got {len(spec)}")
    return tuple(sorted(spec, key=lambda t: t[0]))


def matches(out: MachineOutput, spec, exact_phase: bool = False) -> bool:
    regs = out.outputs_array()
    for reg, vec in spec:
        if exact_phase:
            if np.linalg.norm(regs[reg] - vec) > TOL_RAY:
                return False
        elif not ray_equal(regs[reg], vec):
            return False
    return True


def ray_key(vec, exact_phase: bool = False) -> tuple[int, ...]:
    """Hashable key of a state up to global phase (1e-9 grid).

    The phase is fixed by making the first component of modulus > 0.1 real
    and positive.
    """
    v = np.asarray(vec, dtype=complex)
    if not exact_phase:
        k = int(np.argmax(np.abs(v) > 0.1))
        v = v * (abs(v[k]) / v[k])
    return tuple(int(round(x * 1e9)) for z in v for x in (z.real, z.imag))


def output_key(out: MachineOutput, registers=None, exact_phase: bool = False) -> tuple:
    regs = out.outputs_array()
    idx = range(len(regs)) if registers is None else registers
    return tuple(ray_key(regs[r], exact_phase) for r in idx)


# -- halting amplitude ------------------------------------------------------

@dataclass(frozen=True)
class OmegaAccumulator:
    omega: complex
    omega_sq: float
    kraft: float
    max_len: int
    n_programs: int


def omega(m: MachineModel | None = None, max_len: int = 8, threads: int = 1) -> OmegaAccumulator:
    """Partial sums of the halting amplitude, its incoherent square and the Kraft sum."""
    m = m or MachineModel()
    amp, sq, kraft = 0j, 0.0, 0.0
    rs = runs(m, max_len, threads)
    for r in rs:
        w = weight(r.program)
        h = r.output.halting_amplitude
        amp += w * h
        sq += w * w * abs(h) ** 2
        kraft += w * w
    return OmegaAccumulator(amp, sq, kraft, max_len, len(rs))


def upsilon(s, m: MachineModel | None = None, max_len: int = 8, exact_phase: bool = False) -> complex:
    """Halting amplitude restricted to programs whose output ray-equals ``s``."""
    m = m or MachineModel()
    spec = as_spec(s, m)
    total = 0j
    for r in runs(m, max_len):
        if matches(r.output, spec, exact_phase):
            total += weight(r.program) * r.output.halting_amplitude
    return total


def upsilon_set(states, m: MachineModel | None = None, max_len: int = 8) -> complex:
    """Halting amplitude over a set of mutually orthogonal outputs."""
    m = m or MachineModel()
    specs = [as_spec(s, m) for s in states]
    total = 0j
    for r in runs(m, max_len):
        if any(matches(r.output, sp) for sp in specs):
            total += weight(r.program) * r.output.halting_amplitude
    return total


# -- output classes ------------------------------------------------------------

@dataclass(frozen=True)
class OutputClass:
    """All enumerated programs whose full output is one ray."""

    key: tuple
    states: tuple[Qbit, ...]
    programs: tuple[Program, ...]
    upsilon: complex
    probability: float

    @property
    def canonical(self) -> Program:
        return self.programs[0]

    @property
    def complexity(self) -> int:
        return self.programs[0].length


def output_classes(m: MachineModel | None = None, max_len: int = 8, threads: int = 1) -> list[OutputClass]:
    """Group runs by output ray; classes are listed in order of their canonical program."""
    m = m or MachineModel()
    groups: dict[tuple, list[Run]] = {}
    for r in runs(m, max_len, threads):
        groups.setdefault(output_key(r.output), []).append(r)
    out = []
    for key, members in groups.items():
        amp, prob = 0j, 0.0
        for r in members:
            w = weight(r.program)
            amp += w * r.output.halting_amplitude
            prob += w * w * abs(r.output.halting_amplitude) ** 2
        first = members[0].output
        out.append(OutputClass(key, first.output_states, tuple(r.program for r in members), amp, prob))
    return out


def _orthogonal(a: OutputClass, b: OutputClass) -> bool:
    return any(abs(np.vdot(np.asarray(x), np.asarray(y))) <= TOL_RAY for x, y in zip(a.states, b.states))


@dataclass(frozen=True)
class ProbabilityTable:
    classes: tuple[OutputClass, ...]
    orthogonal_sets: tuple[tuple[int, ...], ...]
    set_probabilities: tuple[float, ...]
    omega_sq: float

    def chain_holds(self) -> bool:
        """``0 <= P(s) <= P(S) <= omega_sq <= 1`` for every listed set and its members."""
        for members, p_set in zip(self.orthogonal_sets, self.set_probabilities):
            if not p_set <= self.omega_sq <= 1.0:
                return False
            if any(not 0.0 <= self.classes[i].probability <= p_set for i in members):
                return False
        return True


def probabilities(m: MachineModel | None = None, max_len: int = 8, threads: int = 1) -> ProbabilityTable:
    """P(s) for every output class and P(S) for every maximal orthogonal set.

    Orthogonal sets are the maximal cliques of the orthogonality graph (every
    singleton included); any other orthogonal set is a subset of one of them.
    """
    m = m or MachineModel()
    classes = output_classes(m, max_len, threads)
    g = nx.Graph()
    g.add_nodes_from(range(len(classes)))
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if _orthogonal(classes[i], classes[j]):
                g.add_edge(i, j)
    cliques = {tuple(sorted(c)) for c in nx.find_cliques(g)}
    cliques |= {(i,) for i in range(len(classes))}
    sets = tuple(sorted(cliques, key=lambda c: (len(c), c)))
    set_probs = tuple(math.fsum(classes[i].probability for i in c) for c in sets)
    return ProbabilityTable(tuple(classes), sets, set_probs, omega(m, max_len, threads).omega_sq)


# -- program-size complexity -------------------------------------------------------

def complexity(s, m: MachineModel | None = None, max_len: int = 8, exact_phase: bool = False):
    """``(H(s), s*)``: length and canonical program of the shortest program producing ``s``.

    ``(math.inf, None)`` when no program up to ``max_len`` produces ``s``.
    """
    m = m or MachineModel()
    spec = as_spec(s, m)
    for r in runs(m, max_len):
        if matches(r.output, spec, exact_phase):
            return r.program.length, r.program
    return math.inf, None


def p_star(h) -> float:
    """``2^{-H}``: algorithmic probability concentrated on the minimal program."""
    return 0.0 if h == math.inf else math.ldexp(1.0, -int(h))


def complexity_from_p_star(p: float) -> float:
    return math.inf if p == 0 else -math.log2(p)
