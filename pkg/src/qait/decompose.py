"""Triangular decomposition of an n x n unitary into two-level U(2) factors.

Elimination order: column by column (left to right), and within column ``c``
rows ``c+1 .. n-1`` top to bottom.  The entry ``W[r, c]`` is zeroed by a
rotation ``G`` acting on rows ``(c, r)``; entries already below
``TOL_SKIP`` are skipped.  After elimination ``G_K ... G_1 U = D`` is
diagonal, so

    U = F_1 F_2 ... F_K diag(e^{i theta})      with  F_k = G_k^dagger,

which is the order :func:`recompose` multiplies in.  At most n(n-1)/2 factors
are produced.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnitary
from .hilbert import UnitaryOp, unitarity_defect
from .interferometer.twoport import t_bs_array, u2_to_bs
from .u2 import U2Params, u2_array, u2_params_from_matrix

TOL_SKIP = 1e-14
TOL_PRE = 1e-9
MAX_N = 64


@dataclass(frozen=True)
class TwoLevelFactor:
    i: int
    j: int
    params: U2Params
    residual_phases: tuple[float, ...] | None = None

    def __post_init__(self):
        if not 0 <= self.i < self.j:
            raise ValueError(f"need 0 <= i < j, got ({self.i}, {self.j})")

    def block(self) -> np.ndarray:
        return u2_array(*self.params.as_tuple())

    def embed(self, n: int) -> np.ndarray:
        if self.j >= n:
            raise IndexError(f"factor on modes ({self.i}, {self.j}) does not fit in dimension {n}")
        out = np.eye(n, dtype=complex)
        idx = np.ix_([self.i, self.j], [self.i, self.j])
        out[idx] = self.block()
        return out


def _check_input(u) -> np.ndarray:
    m = np.array(u.matrix if isinstance(u, UnitaryOp) else u, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n < 2:
        raise ValueError("decomposition needs n >= 2")
    if n > MAX_N:
        raise ValueError(f"n = {n} exceeds the supported maximum {MAX_N}")
    d = unitarity_defect(m)
    if d > TOL_PRE:
        raise NotUnitary(f"input deviates from unitarity by {d:.3e}")
    return m


def decompose(u) -> tuple[list[TwoLevelFactor], list[float]]:
    w = _check_input(u)
    n = w.shape[0]
    factors = []
    for c in range(n - 1):
        for r in range(c + 1, n):
            b = w[r, c]
            if abs(b) < TOL_SKIP:
                continue
            a = w[c, c]
            rho = math.hypot(abs(a), abs(b))
            g = np.array([[np.conj(a), np.conj(b)], [-b, a]]) / rho
            w[[c, r], :] = g @ w[[c, r], :]
            factors.append(TwoLevelFactor(c, r, u2_params_from_matrix(g.conj().T)))
    diagonal = [float(np.angle(w[k, k])) for k in range(n)]
    return factors, diagonal


def recompose(factors, diagonal, n: int) -> UnitaryOp:
    if len(diagonal) != n:
        raise ValueError(f"diagonal has {len(diagonal)} phases, expected {n}")
    out = np.eye(n, dtype=complex)
    for f in factors:
        out = out @ f.embed(n)
    out = out * np.exp(1j * np.asarray(diagonal, dtype=float))[None, :]
    return UnitaryOp(out)


def _halfsilver_group(f: np.ndarray):
    """Write a 2x2 unitary as ``diag(d) P B(T) diag(1, e1)``.

    ``B(T) = [[T, iR], [iR, T]]`` is a half-silvered mirror and ``P`` an
    optional swap of the output ports, chosen so that ``T <= 1/sqrt(2)`` (keeps
    ``R = sqrt(1 - T^2)`` well conditioned).  Returns
    ``(T, swap, e1, d0, d1)`` with the phases as angles.
    """
    swap = abs(f[0, 0]) > abs(f[1, 0])
    g = f[::-1] if swap else f
    t = float(abs(g[0, 0]))
    d1 = np.angle(g[1, 0] / 1j)
    if t > 1e-12:
        d0 = np.angle(g[0, 0])
        e1 = np.angle(g[0, 1] / 1j) - d0
    else:
        t = 0.0
        d0 = np.angle(g[0, 1] / 1j)
        e1 = 0.0
    return t, bool(swap), float(e1), float(d0), float(d1)


def _phase_line(mode: str, angle: float) -> str | None:
    angle = math.remainder(angle, 2 * math.pi)
    if abs(angle) < 1e-15:
        return None
    return f"phase {mode} phi={angle!r}"


def emit_mesh(u, prefix: str = "m") -> str:
    """Netlist of half-silvered mirrors and phase shifters implementing ``u``.

    Every mode is an input and an output port, so compiling the netlist gives
    back ``u`` itself.
    """
    factors, diagonal = decompose(u)
    n = len(diagonal)
    names = [f"{prefix}{k}" for k in range(n)]
    lines = [
        f"# {n}-mode unitary: {len(factors)} two-level factors, applied after the input phases",
        "mode " + " ".join(names),
    ]
    body = [_phase_line(names[k], diagonal[k]) for k in range(n)]
    for f in reversed(factors):
        bs = u2_to_bs(f.params)
        block = t_bs_array(*bs.args())
        t, swap, e1, d0, d1 = _halfsilver_group(block)
        a, b = names[f.i], names[f.j]
        out1, out2 = (b, a) if swap else (a, b)
        body.append(
            f"# factor on ({f.i},{f.j}): T_bs(omega={bs.omega!r}, alpha={bs.alpha!r}, beta={bs.beta!r}, phi={bs.phi!r})"
        )
        body.append(_phase_line(b, e1))
        body.append(f"halfsilver {a} {b} -> {out1} {out2} T={t!r}")
        body.append(_phase_line(out1, d0))
        body.append(_phase_line(out2, d1))
    lines.extend(line for line in body if line)
    return "\n".join(lines) + "\n"
