import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qait.errors import InvalidProgram
from qait.omega import (
    MachineModel,
    Program,
    complexity,
    complexity_from_p_star,
    enumerate_programs,
    is_prefix_free,
    omega,
    output_classes,
    p_star,
    probabilities,
    run,
    upsilon,
    upsilon_set,
)
from qait.qbit import ray_equal

R2 = 1 / math.sqrt(2)
ZERO = [1, 0]
SQ = [(1 + 1j) / 2, (1 - 1j) / 2]


# -- independent oracles ------------------------------------------------------------


def oracle_programs(max_len):
    """Brute force: every even-length binary string whose only 11 opcode is the last."""
    out = []
    for n in range(2, max_len + 1, 2):
        for bits in itertools.product("01", repeat=n):
            s = "".join(bits)
            ops = [s[i : i + 2] for i in range(0, n, 2)]
            if ops[-1] == "11" and "11" not in ops[:-1]:
                out.append(s)
    return out


def oracle_run(bits, k=2):
    """Plain-Python machine: lists of complex pairs, gates written out by hand."""
    regs = [[1 + 0j, 0j] for _ in range(k)] + [[R2 + 0j, R2 + 0j]]
    target = 0
    ph = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
    for i in range(0, len(bits), 2):
        op = bits[i : i + 2]
        a, b = regs[target]
        if op == "00":
            regs[target] = [((1 + 1j) * a + (1 - 1j) * b) / 2, ((1 - 1j) * a + (1 + 1j) * b) / 2]
        elif op == "01":
            regs[target] = [a, ph * b]
        elif op == "10":
            target = (target + 1) % (k + 1)
        else:
            break
    return regs[:k], regs[k][0].conjugate()


# -- programs ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "max_len, expected", [(2, ["11"]), (4, ["11", "0011", "0111", "1011"])]
)
def test_enumeration_examples(max_len, expected):
    assert [p.bits for p in enumerate_programs(max_len)] == expected


@pytest.mark.parametrize("max_len", [2, 4, 6, 8, 10])
def test_enumeration_against_brute_force(max_len):
    got = [p.bits for p in enumerate_programs(max_len)]
    want = sorted(oracle_programs(max_len), key=lambda s: (len(s), s))
    assert got == want
    assert is_prefix_free(enumerate_programs(max_len))
    # exhaustive pairwise check
    assert not any(a != b and b.startswith(a) for a in got for b in got)


@pytest.mark.parametrize("max_len", [0, 3, -2])
def test_enumeration_rejects_bad_budget(max_len):
    with pytest.raises(ValueError):
        enumerate_programs(max_len)


@pytest.mark.parametrize("bits", ["", "1", "0110", "1100", "111", "0a11"])
def test_invalid_programs(bits):
    with pytest.raises(InvalidProgram):
        Program(bits)


def test_is_prefix_free_detects_prefix():
    class P:
        def __init__(self, s):
            self.s = s

        def __str__(self):
            return self.s

    assert not is_prefix_free([P("11"), P("1100")])
    assert not is_prefix_free([P("0011"), P("0011")])


def test_program_order_is_shortlex():
    ps = [Program(b) for b in ["1011", "11", "0011", "000011"]]
    assert [p.bits for p in sorted(ps)] == ["11", "0011", "1011", "000011"]


# -- machine ----------------------------------------------------------------------


def test_run_examples():
    out = run("11")
    assert all(ray_equal(q, ZERO) for q in out.output_states)
    assert out.halting_amplitude == pytest.approx(R2, abs=1e-15)
    out = run("0011")
    assert np.allclose(np.asarray(out.output_states[0]), SQ, atol=1e-15)
    assert out.halting_amplitude == pytest.approx(R2)
    # pointer reaches the halting register; h* is fixed by sqrt(not)'
    assert run("10100011").halting_amplitude == pytest.approx(R2, abs=1e-15)


def test_phase_then_root_moves_halting_amplitude():
    amp = run("1010010011").halting_amplitude
    assert abs(amp - R2) > 0.1
    assert abs(amp) <= 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_run_against_oracle(k):
    m = MachineModel(k=k)
    for p in enumerate_programs(10):
        out = run(p, m)
        regs, amp = oracle_run(p.bits, k)
        assert abs(out.halting_amplitude - amp) <= 1e-12
        assert abs(out.halting_amplitude) <= 1 + 1e-12
        for q, r in zip(out.output_states, regs):
            assert np.allclose(np.asarray(q), r, atol=1e-12)


def test_variant_machine():
    v = MachineModel().variant()
    assert v.k == 1
    # the swapped machine's 01 is the old 00
    assert np.allclose(np.asarray(run("0111", v).output_states[0]), SQ)
    with pytest.raises(ValueError):
        MachineModel(opcodes=(("00", "phase"), ("01", "phase"), ("10", "advance")))


# -- halting amplitude --------------------------------------------------------------


def test_omega_at_two():
    acc = omega(max_len=2)
    assert acc.omega == pytest.approx(0.5 * R2)
    assert acc.kraft == 0.25
    assert acc.omega_sq == pytest.approx(0.125, abs=1e-15)


@pytest.mark.parametrize("max_len", [2, 4, 6, 8, 10, 12])
def test_kraft_closed_form(max_len):
    # 3^m programs carry m body opcodes, each with weight 4^-(m+1)
    assert omega(max_len=max_len).kraft == 1 - 0.75 ** (max_len // 2)


def test_accumulators_against_oracle():
    for max_len in (2, 4, 6, 8):
        acc = omega(max_len=max_len)
        amps = [(2 ** (-len(b) / 2), oracle_run(b)[1]) for b in oracle_programs(max_len)]
        assert abs(acc.omega - sum(w * a for w, a in amps)) <= 1e-12
        assert abs(acc.omega_sq - sum(w * w * abs(a) ** 2 for w, a in amps)) <= 1e-12


def test_monotone_from_below():
    accs = [omega(max_len=n) for n in (2, 4, 6, 8, 10)]
    for a, b in zip(accs, accs[1:]):
        assert b.kraft > a.kraft
        assert b.omega_sq >= a.omega_sq
    assert all(0 <= a.omega_sq <= a.kraft < 1 for a in accs)


def test_thread_count_does_not_change_results():
    assert omega(max_len=10, threads=1) == omega(max_len=10, threads=4)


def test_upsilon():
    assert upsilon([ZERO, ZERO], max_len=2) == omega(max_len=2).omega
    assert upsilon([[0, 1], ZERO], max_len=4) == 0
    # sqrt(not)' applied twice is not, so |1> appears at length 6
    assert upsilon([[0, 1], ZERO], max_len=6) == pytest.approx(0.125 * R2)
    classes = output_classes(max_len=8)
    total = upsilon_set([[np.asarray(q) for q in c.states] for c in classes], max_len=8)
    assert abs(total - omega(max_len=8).omega) <= 1e-12


def test_probability_chain():
    for max_len in (2, 4, 6, 8):
        table = probabilities(max_len=max_len)
        assert table.chain_holds()
        assert abs(sum(c.probability for c in table.classes) - table.omega_sq) <= 1e-12
    assert probabilities(max_len=2).classes[0].probability == pytest.approx(0.125)


def test_orthogonal_sets_are_orthogonal():
    table = probabilities(max_len=8)
    for members in table.orthogonal_sets:
        for i, j in itertools.combinations(members, 2):
            a, b = table.classes[i], table.classes[j]
            assert any(abs(np.vdot(np.asarray(x), np.asarray(y))) <= 1e-9 for x, y in zip(a.states, b.states))


# -- complexity -------------------------------------------------------------------


def test_complexity_examples():
    assert complexity([ZERO, ZERO]) == (2, Program("11"))
    h, p = complexity({0: SQ})
    assert (h, p.bits) == (4, "0011")
    assert complexity({0: [0, 1]}, max_len=4) == (math.inf, None)


def test_phase_is_ignored_unless_exact():
    # e^{i pi/4}-rotated copy of SQ in register 0
    shifted = np.exp(1j * math.pi / 4) * np.array(SQ)
    assert complexity({0: shifted})[0] == 4
    assert complexity({0: shifted}, exact_phase=True)[0] != 4


def test_canonical_program_is_lexicographically_first():
    for c in output_classes(max_len=8):
        shortest = [p for p in c.programs if p.length == c.complexity]
        assert c.canonical == min(shortest)
        assert c.complexity == min(p.length for p in c.programs)


def test_h_equals_minus_log_p_star():
    for c in output_classes(max_len=8):
        assert complexity_from_p_star(p_star(c.complexity)) == c.complexity
    assert p_star(math.inf) == 0.0


@given(st.sampled_from(enumerate_programs(8)))
def test_complexity_never_exceeds_a_producing_program(p):
    out = run(p)
    h, star = complexity([np.asarray(q) for q in out.output_states])
    assert h <= p.length
    assert star <= p


def test_spec_validation():
    with pytest.raises(ValueError):
        complexity([ZERO])
    with pytest.raises(ValueError):
        complexity({5: ZERO})
