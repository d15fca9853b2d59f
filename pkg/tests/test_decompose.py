import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qait.decompose import TwoLevelFactor, decompose, emit_mesh, recompose
from qait.errors import NotUnitary
from qait.hilbert import random_unitary
from qait.interferometer import compile_circuit, parse_netlist
from qait.u2 import U2Params

seeds = st.integers(0, 2**32 - 1)


def _frob(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def _compile_back(netlist):
    return compile_circuit(parse_netlist(netlist)).unitary.matrix


def test_two_by_two_uses_one_factor():
    u = random_unitary(2, np.random.default_rng(5))
    factors, diag = decompose(u)
    assert len(factors) == 1 and len(diag) == 2
    assert _frob(recompose(factors, diag, 2).matrix, u) <= 1e-10


def test_identity_has_no_factors():
    factors, diag = decompose(np.eye(5))
    assert factors == []
    assert np.allclose(diag, 0)


@pytest.mark.parametrize("n", [3, 4, 8, 12])
def test_random_unitary_round_trip(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        u = random_unitary(n, rng)
        factors, diag = decompose(u)
        assert len(factors) <= n * (n - 1) // 2
        assert _frob(recompose(factors, diag, n).matrix, u) <= 1e-10
        for f in factors:
            e = f.embed(n)
            assert np.max(np.abs(e @ e.conj().T - np.eye(n))) <= 1e-12


@given(seeds, st.integers(2, 6))
def test_round_trip_property(seed, n):
    u = random_unitary(n, np.random.default_rng(seed))
    assert _frob(recompose(*decompose(u), n).matrix, u) <= 1e-10


def test_sparse_unitary_skips_zero_entries():
    # a permutation needs fewer factors than the bound
    p = np.eye(4)[[1, 0, 2, 3]]
    factors, diag = decompose(p)
    assert len(factors) == 1
    assert _frob(recompose(factors, diag, 4).matrix, p) <= 1e-12


def test_recompose_empty_is_diagonal():
    phases = [0.1, -0.4, 2.0]
    assert np.allclose(recompose([], phases, 3).matrix, np.diag(np.exp(1j * np.array(phases))))


def test_embedded_not_permutes_first_two_modes():
    f = TwoLevelFactor(0, 1, U2Params(math.pi / 2, 0, 0, math.pi))
    assert np.allclose(np.abs(f.embed(3)), np.eye(3)[[1, 0, 2]], atol=1e-12)


def test_factor_index_checks():
    with pytest.raises(ValueError):
        TwoLevelFactor(1, 1, U2Params())
    with pytest.raises(IndexError):
        recompose([TwoLevelFactor(0, 3, U2Params())], [0, 0, 0], 3)


@pytest.mark.parametrize("bad", [np.ones((2, 2)), np.eye(1), np.eye(65), np.ones((2, 3))])
def test_decompose_rejects(bad):
    with pytest.raises((NotUnitary, ValueError)):
        decompose(bad)


def test_accepts_slightly_perturbed_input():
    u = random_unitary(4, np.random.default_rng(1)) * (1 + 1e-11)
    decompose(u)


@pytest.mark.parametrize(
    "u",
    [np.eye(2), np.array([[0, 1], [1, 0]]), np.eye(3)[[2, 0, 1]]],
    ids=["identity", "not", "cycle"],
)
def test_emit_mesh_simple(u):
    assert _frob(_compile_back(emit_mesh(u)), u) <= 1e-8


@given(seeds, st.integers(2, 6))
def test_emit_mesh_round_trip(seed, n):
    u = random_unitary(n, np.random.default_rng(seed))
    text = emit_mesh(u)
    assert text.splitlines()[1].startswith("mode ")
    assert _frob(_compile_back(text), u) <= 1e-8


def test_emit_mesh_prefix():
    text = emit_mesh(random_unitary(3, np.random.default_rng(2)), prefix="w")
    cc = compile_circuit(parse_netlist(text))
    assert cc.inputs == ("w0", "w1", "w2") == cc.outputs
