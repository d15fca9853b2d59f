"""Truncated multimode Fock space with bosonic or fermionic ladder operators,
and the no-cloning comparison between a linear amplifier and the exact square
of a qbit."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffExceeded, NotNormalized, PauliViolation
from .hilbert import TOL_INPUT

BOSON = "boson"
FERMION = "fermion"
DEFAULT_CUTOFF = 8
PRUNE = 1e-15

Ket = tuple  # occupation numbers, one per mode


class FockState:
    """Superposition of occupation-number kets; immutable."""

    __slots__ = ("statistics", "n_modes", "cutoff", "_terms")

    def __init__(self, statistics: str, n_modes: int, terms=None, cutoff: int = DEFAULT_CUTOFF):
        if statistics not in (BOSON, FERMION):
            raise ValueError("statistics must be 'boson' or 'fermion'")
        if n_modes < 1:
            raise ValueError("need at least one mode")
        limit = 1 if statistics == FERMION else cutoff
        if limit < 1:
            raise ValueError("cutoff must be positive")
        clean = {}
        for ket, amp in (terms or {}).items():
            ket = tuple(int(n) for n in ket)
            if len(ket) != n_modes or min(ket) < 0:
                raise ValueError(f"ket {ket} does not fit {n_modes} modes")
            if max(ket) > limit:
                if statistics == FERMION:
                    raise PauliViolation(f"ket {ket} puts more than one fermion in a mode")
                raise CutoffExceeded(f"ket {ket} exceeds the cutoff {cutoff}")
            amp = complex(amp)
            if abs(amp) > PRUNE:
                clean[ket] = amp
        object.__setattr__(self, "statistics", statistics)
        object.__setattr__(self, "n_modes", n_modes)
        object.__setattr__(self, "cutoff", limit)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FockState is immutable")

    @classmethod
    def vacuum(cls, statistics: str = BOSON, n_modes: int = 2, cutoff: int = DEFAULT_CUTOFF) -> "FockState":
        return cls(statistics, n_modes, {(0,) * n_modes: 1.0}, cutoff)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def amplitude(self, ket) -> complex:
        return self._terms.get(tuple(ket), 0j)

    def is_zero(self) -> bool:
        return not self._terms

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._terms.values()))

    def normalized(self) -> "FockState":
        n = self.norm()
        if n == 0:
            raise NotNormalized("cannot normalize the zero vector")
        return self._with({k: a / n for k, a in self._terms.items()})

    def inner(self, other: "FockState") -> complex:
        """``(self, other)``, linear in ``self``."""
        self._compatible(other)
        return sum((a * np.conj(other.amplitude(k)) for k, a in self._terms.items()), 0j)

    def _with(self, terms) -> "FockState":
        return FockState(self.statistics, self.n_modes, terms, self.cutoff)

    def _compatible(self, other):
        if (self.statistics, self.n_modes, self.cutoff) != (other.statistics, other.n_modes, other.cutoff):
            raise ValueError("states live in different Fock spaces")

    def __add__(self, other: "FockState") -> "FockState":
        self._compatible(other)
        out = dict(self._terms)
        for k, a in other._terms.items():
            out[k] = out.get(k, 0j) + a
        return self._with(out)

    def __sub__(self, other: "FockState") -> "FockState":
        return self + (-1) * other

    def __mul__(self, scalar) -> "FockState":
        scalar = complex(scalar)
        return self._with({k: scalar * a for k, a in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        body = " + ".join(f"({a:.6g})|{','.join(map(str, k))}>" for k, a in sorted(self._terms.items()))
        return f"FockState[{self.statistics}]({body or '0'})"

    def to_json(self) -> list:
        from .serialize import complex_to_json

        return [{"occupancy": list(k), "amp": complex_to_json(a)} for k, a in sorted(self._terms.items())]


def _fermion_sign(ket, j) -> int:
    return -1 if sum(ket[:j]) % 2 else 1


def _check_mode(s: FockState, j: int):
    if not 0 <= j < s.n_modes:
        raise IndexError(f"mode {j} does not exist (space has {s.n_modes} modes)")


def annihilate(j: int, s: FockState) -> FockState:
    """``a_j``: removes one quantum from mode ``j`` with factor ``sqrt(N_j)``."""
    _check_mode(s, j)
    out = {}
    for ket, amp in s.terms.items():
        n = ket[j]
        if n == 0:
            continue
        new = ket[:j] + (n - 1,) + ket[j + 1 :]
        factor = math.sqrt(n) if s.statistics == BOSON else _fermion_sign(ket, j)
        out[new] = out.get(new, 0j) + factor * amp
    return s._with(out)


def create(j: int, s: FockState) -> FockState:
    """``a_j^dagger``: adds one quantum to mode ``j`` with factor ``sqrt(N_j + 1)``.

    Bosonic kets already at the cutoff raise :class:`CutoffExceeded`; a second
    fermion in a mode gives zero.
    """
    _check_mode(s, j)
    out = {}
    for ket, amp in s.terms.items():
        n = ket[j]
        if s.statistics == FERMION:
            if n == 1:
                continue
            factor = _fermion_sign(ket, j)
        else:
            if n >= s.cutoff:
                raise CutoffExceeded(f"mode {j} already holds {n} quanta (cutoff {s.cutoff})")
            factor = math.sqrt(n + 1)
        new = ket[:j] + (n + 1,) + ket[j + 1 :]
        out[new] = out.get(new, 0j) + factor * amp
    return s._with(out)


def build_fock(occupancies, statistics: str = BOSON, cutoff: int = DEFAULT_CUTOFF) -> FockState:
    """``prod_i (a_i^dagger)^{N_i} / sqrt(N_i!) |0>``.

    Creation operators of higher modes act first, so fermionic kets come out
    with sign +1.
    """
    occ = [int(n) for n in occupancies]
    if any(n < 0 for n in occ):
        raise ValueError("occupancies must be non-negative")
    if statistics == FERMION and any(n > 1 for n in occ):
        raise PauliViolation("a fermionic mode holds at most one quantum")
    if statistics == BOSON and any(n > cutoff for n in occ):
        raise CutoffExceeded(f"occupancy exceeds the cutoff {cutoff}")
    state = FockState.vacuum(statistics, len(occ), cutoff)
    for j in reversed(range(len(occ))):
        for _ in range(occ[j]):
            state = create(j, state)
        state = state * (1 / math.sqrt(math.factorial(occ[j])))
    return state


def basis_kets(n_modes: int, max_occupancy: int):
    return itertools.product(range(max_occupancy + 1), repeat=n_modes)


def commutator_defect(i: int, j: int, cutoff: int = DEFAULT_CUTOFF, n_modes: int = 2) -> float:
    """``max || ([a_i, a_j^dagger] - delta_ij) |k> ||`` over bosonic kets with every occupancy below ``cutoff``."""
    worst = 0.0
    for occ in basis_kets(n_modes, cutoff - 1):
        ket = FockState(BOSON, n_modes, {occ: 1.0}, cutoff)
        v = annihilate(i, create(j, ket)) - create(j, annihilate(i, ket))
        if i == j:
            v = v - ket
        worst = max(worst, v.norm())
    return worst


def anti_commutator_defect(i: int, j: int, n_modes: int = 2) -> float:
    """Same as :func:`commutator_defect` for ``{a_i, a_j^dagger}`` on fermionic kets."""
    worst = 0.0
    for occ in basis_kets(n_modes, 1):
        ket = FockState(FERMION, n_modes, {occ: 1.0})
        v = annihilate(i, create(j, ket)) + create(j, annihilate(i, ket))
        if i == j:
            v = v - ket
        worst = max(worst, v.norm())
    return worst


@dataclass(frozen=True)
class CloningReport:
    alpha: complex
    beta: complex
    true_copy: FockState
    defect: float

    @property
    def analytic_defect(self) -> float:
        return math.sqrt(2) * abs(self.alpha * self.beta)

    def to_json(self) -> dict:
        from .serialize import complex_to_json

        return {
            "alpha": complex_to_json(self.alpha),
            "beta": complex_to_json(self.beta),
            "true_copy": self.true_copy.to_json(),
            "defect": self.defect,
            "analytic_defect": self.analytic_defect,
        }


# kets a linear amplifier can produce from the two cbit states
AMPLIFIER_REACHABLE = ((0, 2), (2, 0))


def cloning_analysis(alpha: complex, beta: complex, cutoff: int = DEFAULT_CUTOFF) -> CloningReport:
    """Compare the exact square ``(alpha a2^dag + beta a1^dag)^2 |0>`` with the
    span of ``|0,2>`` and ``|2,0>``.

    The defect is the norm of the normalized true copy outside that span.
    """
    alpha, beta = complex(alpha), complex(beta)
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1) > TOL_INPUT:
        raise NotNormalized("|alpha|^2 + |beta|^2 must equal 1")
    if cutoff < 2:
        raise ValueError("the copy needs cutoff >= 2")

    def qbit_creator(s: FockState) -> FockState:
        return alpha * create(1, s) + beta * create(0, s)

    copy = qbit_creator(qbit_creator(FockState.vacuum(BOSON, 2, cutoff))).normalized()
    outside = sum(abs(a) ** 2 for k, a in copy.terms.items() if k not in AMPLIFIER_REACHABLE)
    return CloningReport(alpha, beta, copy, math.sqrt(outside))
