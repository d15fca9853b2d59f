"""Finite-dimensional Hilbert space primitives.

The inner product is linear in its first argument and antilinear in the second,
``(x, y) = sum_i x_i * conj(y_i)``.  All values are immutable: the arrays held
by :class:`StateVector` and the operator classes are marked read-only.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotNormalized, NotUnitary

# entrywise checks
TOL_ENTRY = 1e-12
# composed / Frobenius checks
TOL_COMPOSED = 1e-10
# inputs that must be normalized are rejected beyond this deviation
TOL_INPUT = 1e-9
# eigenvalues closer than this share one projector
TOL_DEGENERATE = 1e-9


def _frozen(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


class StateVector:
    """A vector of complex amplitudes."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes):
        arr = _frozen(amplitudes, 1)
        if arr.size == 0:
            raise ValueError("a state vector needs at least one amplitude")
        object.__setattr__(self, "amplitudes", arr)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = TOL_ENTRY) -> bool:
        return abs(inner_product(self, self).real - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0:
            raise NotNormalized("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"StateVector({self.amplitudes.tolist()})"


class Operator:
    """A square complex matrix; base class for the checked operator types."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        arr = _frozen(matrix, 2)
        if arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"operator must be square, got {arr.shape}")
        object.__setattr__(self, "matrix", arr)
        self._check()

    def _check(self):
        pass

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self.matrix

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            return StateVector(self.matrix @ other.amplitudes)
        return self.matrix @ np.asarray(other)

    def __repr__(self):
        return f"{type(self).__name__}({self.matrix.tolist()})"


class HermitianOp(Operator):
    __slots__ = ()

    def _check(self):
        m = self.matrix
        if not np.allclose(m, m.conj().T, rtol=0, atol=TOL_ENTRY):
            raise NotHermitian("matrix is not self-adjoint within 1e-12")


class UnitaryOp(Operator):
    __slots__ = ()

    def _check(self):
        d = unitarity_defect(self.matrix)
        if d > TOL_COMPOSED:
            raise NotUnitary(f"U U^dagger deviates from identity by {d:.3e}")


def unitarity_defect(matrix) -> float:
    """Frobenius norm of ``U U^dagger - I``."""
    m = np.asarray(matrix, dtype=complex)
    return float(np.linalg.norm(m @ m.conj().T - np.eye(m.shape[0])))


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...] = field(repr=False)

    def reconstruct(self) -> np.ndarray:
        dim = self.projectors[0].shape[0]
        out = np.zeros((dim, dim), dtype=complex)
        for value, proj in zip(self.eigenvalues, self.projectors):
            out += value * proj
        return out


def _as_matrix(op) -> np.ndarray:
    if isinstance(op, Operator):
        return op.matrix
    return np.asarray(op, dtype=complex)


def _as_hermitian(op) -> HermitianOp:
    return op if isinstance(op, HermitianOp) else HermitianOp(_as_matrix(op))


def _as_unitary(op) -> UnitaryOp:
    return op if isinstance(op, UnitaryOp) else UnitaryOp(_as_matrix(op))


def _as_state(x) -> StateVector:
    return x if isinstance(x, StateVector) else StateVector(x)


def _check_normalized(x: StateVector, what: str = "state"):
    dev = abs(x.norm() ** 2 - 1.0)
    if dev > TOL_INPUT:
        raise NotNormalized(f"{what} norm^2 deviates from 1 by {dev:.3e}")


def inner_product(x, y) -> complex:
    x, y = _as_state(x), _as_state(y)
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions differ: {x.dim} vs {y.dim}")
    return complex(np.sum(x.amplitudes * np.conj(y.amplitudes)))


def born_probability(x, y) -> float:
    """Probability ``|(x, y)|^2`` of finding a system prepared in ``x`` in ``y``."""
    x, y = _as_state(x), _as_state(y)
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions differ: {x.dim} vs {y.dim}")
    _check_normalized(x, "x")
    _check_normalized(y, "y")
    return min(1.0, abs(inner_product(x, y)) ** 2)


def spectral_decompose(op) -> SpectralDecomposition:
    """Eigenvalues (ascending) and orthogonal projectors of a Hermitian operator.

    Eigenvalues within ``TOL_DEGENERATE`` of their neighbour are merged so that
    degenerate eigenspaces get a single projector.
    """
    a = _as_hermitian(op).matrix
    values, vectors = np.linalg.eigh(a)
    groups: list[list[int]] = []
    for k, v in enumerate(values):
        if groups and v - values[groups[-1][-1]] <= TOL_DEGENERATE:
            groups[-1].append(k)
        else:
            groups.append([k])
    eigenvalues, projectors = [], []
    for g in groups:
        vs = vectors[:, g]
        proj = vs @ vs.conj().T
        proj.setflags(write=False)
        eigenvalues.append(float(np.mean(values[g])))
        projectors.append(proj)
    return SpectralDecomposition(tuple(eigenvalues), tuple(projectors))


def expectation(op, x) -> float:
    """Expectation value ``sum_i a_i (x, P_i x)`` of an observable in state ``x``."""
    a = _as_hermitian(op)
    x = _as_state(x)
    if x.dim != a.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {x.dim}")
    _check_normalized(x)
    dec = spectral_decompose(a)
    total = 0.0
    for value, proj in zip(dec.eigenvalues, dec.projectors):
        total += value * inner_product(x.amplitudes, proj @ x.amplitudes).real
    return float(total)


def commutator(a, b) -> np.ndarray:
    ma, mb = _as_matrix(a), _as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"shapes differ: {ma.shape} vs {mb.shape}")
    return ma @ mb - mb @ ma


def evolve(u, x) -> StateVector:
    u, x = _as_unitary(u), _as_state(x)
    if u.dim != x.dim:
        raise DimensionMismatch(f"dimensions differ: {u.dim} vs {x.dim}")
    _check_normalized(x)
    return StateVector(u.matrix @ x.amplitudes)


def matrix_exponential_evolution(h, t: float, hbar: float = 1.0) -> UnitaryOp:
    """``exp(-i H t / hbar)`` built from the spectral decomposition of ``H``."""
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    dec = spectral_decompose(h)
    dim = dec.projectors[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    for value, proj in zip(dec.eigenvalues, dec.projectors):
        out += np.exp(-1j * value * t / hbar) * proj
    return UnitaryOp(out)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-style random unitary: QR of a complex Gaussian matrix, phases fixed."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return StateVector(z / np.linalg.norm(z))
