"""Joint and conditional program-size complexity and the measured constants
of the algorithmic-information inequalities for a concrete machine.

Objects are single-qbit states.  ``H(s)`` places ``s`` in ``out_1`` (other
registers free); the joint ``H(s, t)`` places ``s`` in ``out_1`` and ``t`` in
``out_2``; the conditional ``H(s|t)`` is the shortest continuation ``p`` such
that running ``t*`` and then ``p`` (from the machine state ``t*`` left behind)
leaves ``s`` in ``out_1``.

All quantities are bounded by the enumeration budget, so each constant is the
maximum slack over the pairs where every quantity involved was found within
the budget; the number of pairs evaluated and skipped is reported with it.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from ..errors import Unreachable
from .halting import as_spec, complexity, matches, output_key, p_star, probabilities, ray_key, runs
from .machine import MachineModel, Program, enumerate_programs, output_of, step_from


def conditional_complexity(s, t, m: MachineModel | None = None, max_len: int = 8, cont_len: int | None = None):
    """``H(s|t)``: shortest ``p`` (length <= ``cont_len``) with ``t* p`` producing ``s``.

    ``s`` and ``t`` are output specifications as accepted by
    :func:`~qait.omega.halting.complexity`.  Raises :class:`Unreachable` when
    ``t`` has no program within ``max_len``.
    """
    m = m or MachineModel()
    cont_len = max_len if cont_len is None else cont_len
    h_t, t_star = complexity(t, m, max_len)
    if t_star is None:
        raise Unreachable(f"t has no program of length <= {max_len}")
    spec = as_spec(s, m)
    start = step_from(m.initial_state(), t_star, m)
    for p in enumerate_programs(cont_len):
        if matches(output_of(step_from(start, p, m)), spec):
            return p.length
    return math.inf


@dataclass(frozen=True)
class Slack:
    relation: str
    constant: int | None
    pairs: int
    skipped: int

    @property
    def finite(self) -> bool:
        return self.constant is not None


@dataclass(frozen=True)
class InequalityReport:
    max_len: int
    k: int
    slacks: tuple[Slack, ...]
    machine_independence: Slack
    p_star_constant: float | None
    witness: dict | None

    def to_json(self) -> dict:
        return {
            "max_len": self.max_len,
            "registers": self.k,
            "slacks": {s.relation: asdict(s) for s in self.slacks},
            "machine_independence": asdict(self.machine_independence),
            "p_star_constant": self.p_star_constant,
            "witness": self.witness,
        }


class _Tables:
    """Minimal lengths per object, pair and register set for one enumeration."""

    def __init__(self, m: MachineModel, max_len: int, threads: int):
        self.m = m
        self.max_len = max_len
        self.runs = runs(m, max_len, threads)
        self.single: dict[tuple, int] = {}
        self.canonical: dict[tuple, Program] = {}
        self.joint: dict[tuple, int] = {}
        self.sets: dict[frozenset, int] = {}
        self.vectors: dict[tuple, object] = {}
        for r in self.runs:
            regs = r.output.outputs_array()
            keys = [ray_key(v) for v in regs]
            for key, v in zip(keys, regs):
                self.vectors.setdefault(key, v)
            n = r.program.length
            if keys[0] not in self.single:
                self.single[keys[0]] = n
                self.canonical[keys[0]] = r.program
            if m.k >= 2:
                self.joint.setdefault((keys[0], keys[1]), n)
            self.sets.setdefault(frozenset(keys), n)

    def conditional(self) -> dict[tuple, int]:
        """``H(s|t)`` for every pair of first-register objects found within the budget."""
        conts = enumerate_programs(self.max_len)
        out = {}
        for t_key, t_star in self.canonical.items():
            start = step_from(self.m.initial_state(), t_star, self.m)
            for p in conts:
                s_key = ray_key(output_of(step_from(start, p, self.m)).outputs_array()[0])
                out.setdefault((s_key, t_key), p.length)
        return out


def _slack(relation, values, total, absolute=False) -> Slack:
    vals = [abs(v) if absolute else v for v in values]
    return Slack(relation, max(vals) if vals else None, len(vals), total - len(vals))


def inequality_report(m: MachineModel | None = None, max_len: int = 8, threads: int = 1) -> InequalityReport:
    m = m or MachineModel()
    tab = _Tables(m, max_len, threads)
    H = tab.single
    objects = list(H)
    slacks = []

    if m.k >= 2:
        J = tab.joint
        pairs = list(J)
        sym = [J[(s, t)] - J[(t, s)] for s, t in pairs if (t, s) in J]
        slacks.append(_slack("H(s,t)=H(t,s)+O(1)", sym, len(pairs), absolute=True))
    cond = tab.conditional()
    slacks.append(_slack("H(s|s)=O(1)", [cond[(s, s)] for s in objects if (s, s) in cond], len(objects)))
    if m.k >= 2:
        slacks.append(_slack("H(s)<=H(s,t)+O(1)", [H[s] - J[(s, t)] for s, t in pairs], len(pairs)))
    n_pairs = len(objects) ** 2
    slacks.append(
        _slack("H(s|t)<=H(s)+O(1)", [cond[(s, t)] - H[s] for s in objects for t in objects if (s, t) in cond], n_pairs)
    )
    if m.k >= 2:
        slacks.append(
            _slack("H(s,t)<=H(s)+H(t)+O(1)", [J[(s, t)] - H[s] - H[t] for s, t in pairs if t in H], len(pairs))
        )
        slacks.append(
            _slack("H(s,s)=H(s)+O(1)", [J[(s, s)] - H[s] for s in objects if (s, s) in J], len(objects), absolute=True)
        )

    other = _Tables(m.variant(), max_len, threads).single
    common = [s for s in objects if s in other]
    independence = _slack("|H_C(s)-H_C'(s)|=O(1)", [H[s] - other[s] for s in common], len(objects), absolute=True)

    table = probabilities(m, max_len, threads)
    ratios = [-c.complexity - math.log2(c.probability) for c in table.classes if c.probability > 0]
    p_const = max(ratios) if ratios else None

    witness = None
    for members, h_set in sorted(tab.sets.items(), key=lambda kv: (kv[1], sorted(kv[0]))):
        if len(members) < 2 or any(s not in H for s in members):
            continue
        worst = max(H[s] for s in members)
        if h_set < worst:
            witness = {
                "H_set": h_set,
                "max_H_element": worst,
                "states": [_state_json(tab.vectors[s]) for s in sorted(members)],
            }
            break

    return InequalityReport(max_len, m.k, tuple(slacks), independence, p_const, witness)


def _state_json(v) -> dict:
    from ..serialize import complex_to_json

    return {"alpha": complex_to_json(v[0]), "beta": complex_to_json(v[1])}


def joint_complexity(s, t, m: MachineModel | None = None, max_len: int = 8):
    """``H(s, t)`` with ``s`` in ``out_1`` and ``t`` in ``out_2``."""
    m = m or MachineModel()
    if m.k < 2:
        raise ValueError("joint complexity needs at least two output registers")
    return complexity({0: s, 1: t}, m, max_len)[0]


def single_complexity(s, m: MachineModel | None = None, max_len: int = 8):
    """``H(s)`` for a single-qbit object placed in ``out_1``."""
    return complexity({0: s}, m or MachineModel(), max_len)[0]


__all__ = [
    "InequalityReport",
    "Slack",
    "conditional_complexity",
    "inequality_report",
    "joint_complexity",
    "output_key",
    "p_star",
    "single_complexity",
]
