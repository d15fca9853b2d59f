import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qait.errors import (
    DuplicateLabel,
    NetlistError,
    NetlistSyntaxError,
    NonUnitaryComposition,
    NonUnitaryElement,
    UndeclaredMode,
)
from qait.interferometer import (
    REALIZATIONS,
    TwoPortParams,
    bs_to_mz,
    canonical_to_bs,
    compile_circuit,
    parse_netlist,
    t_bs,
    t_mz,
)
from qait.interferometer.mach_zehnder import mz_netlist, mz_probabilities
from qait.interferometer.netlist import eval_number
from qait.interferometer.twoport import t_bs_array, t_mz_array
from qait.u2 import gate, u2_array

PI = math.pi
angles = st.floats(-10, 10, allow_nan=False)


def _compile(text, **kw):
    return compile_circuit(parse_netlist(text), **kw)


# -- parsing ----------------------------------------------------------------------


def test_minimal_netlist():
    c = parse_netlist("mode a b\nphase a phi=0\ndetector b D1")
    assert c.modes == ("a", "b")
    assert len(c.elements) == 1
    assert c.detectors == (("b", "D1"),)


def test_mach_zehnder_netlist_has_five_elements():
    c = parse_netlist(mz_netlist(0.3))
    assert [e.kind for e in c.elements] == ["halfsilver", "phase", "mirror", "mirror", "halfsilver"]
    assert c.sources == ("a",)


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("mode a b c\nhalfsilver a -> b c T=1.5", NetlistSyntaxError, 2),
        ("mode a b\nphase a phi=", NetlistSyntaxError, 2),
        ("mode a b\nphase a", NetlistSyntaxError, 2),
        ("mode a b\nphase a theta=1", NetlistSyntaxError, 2),
        ("mode a b\nmirror a b", NetlistSyntaxError, 2),
        ("mode a\nwidget a", NetlistSyntaxError, 2),
        ("mode a\nmirror a -> z", UndeclaredMode, 2),
        ("mode a b\ndetector a D\ndetector b D", DuplicateLabel, 3),
        ("mode a a", NetlistSyntaxError, 1),
    ],
)
def test_parse_errors_carry_position(text, exc, line):
    with pytest.raises(exc) as info:
        parse_netlist(text)
    assert info.value.line == line
    assert info.value.col is not None


def test_comments_and_blank_lines_ignored():
    c = parse_netlist("# header\n\nmode a  # two spaces\nphase a phi=pi/2 # quarter\n")
    assert c.elements[0].params["phi"] == pytest.approx(PI / 2)


@pytest.mark.parametrize(
    "text, value",
    [("0.25", 0.25), ("pi", PI), ("-3*pi/4", -3 * PI / 4), ("sqrt(1/2)", math.sqrt(0.5)), ("2**-1", 0.5)],
)
def test_eval_number(text, value):
    assert eval_number(text) == pytest.approx(value, abs=1e-15)


@pytest.mark.parametrize("text", ["__import__('os')", "x", "pi()", "1/0", "[1]"])
def test_eval_number_rejects(text):
    with pytest.raises(ValueError):
        eval_number(text)


# -- compilation ------------------------------------------------------------------


@given(angles)
def test_single_phase_shifter(phi):
    u = _compile(f"mode a\nphase a phi={phi!r}").unitary.matrix
    assert u.shape == (1, 1)
    assert abs(u[0, 0] - cmath.exp(1j * phi)) <= 1e-12


@given(st.floats(-2 * PI, 2 * PI))
def test_mach_zehnder_amplitudes(phi):
    cc = _compile(mz_netlist(phi))
    amps = cc.amplitudes()
    e = cmath.exp(1j * phi)
    assert abs(amps["d"] - 1j * (e + 1) / 2) <= 1e-12
    assert abs(amps["e"] - (e - 1) / 2) <= 1e-12


def test_mach_zehnder_probability_grid():
    for phi in np.linspace(-PI, 3 * PI, 1000):
        probs = _compile(mz_netlist(phi)).detector_probs()
        assert abs(probs["D1"] - math.cos(phi / 2) ** 2) <= 1e-12
        assert abs(probs["D2"] - math.sin(phi / 2) ** 2) <= 1e-12
        assert abs(probs["D1"] + probs["D2"] - 1) <= 1e-12


@pytest.mark.parametrize("phi, expected", [(0.0, (1, 0)), (PI, (0, 1)), (PI / 2, (0.5, 0.5))])
def test_mz_probabilities(phi, expected):
    assert np.allclose(mz_probabilities(phi), expected, atol=1e-12)


def test_mirror_phase_flag():
    text = "mode a b\nmirror a -> b"
    assert _compile(text).unitary.matrix[0, 0] == 1
    assert _compile(text, mirror_phase="exact").unitary.matrix[0, 0] == 1j
    with pytest.raises(ValueError):
        _compile(text, mirror_phase="bogus")


def test_halfsilver_extremes():
    # T = 1 transmits straight through, T = 0 is a pure i-reflection
    through = _compile("mode a b x y\nhalfsilver a b -> x y T=1")
    assert np.allclose(through.unitary.matrix, np.eye(2))
    refl = _compile("mode a b x y\nhalfsilver a b -> x y T=0")
    assert np.allclose(refl.unitary.matrix, [[0, 1j], [1j, 0]])


def test_one_input_splitter_gets_vacuum_port():
    cc = _compile("mode a b c\nsource a\nbeamsplitter a -> b c")
    assert cc.inputs == ("a", "<vacuum:3>")
    assert cc.outputs == ("b", "c")
    assert np.allclose(cc.unitary.matrix, np.array([[1, 1], [1, -1]]) / math.sqrt(2))


def test_untouched_mode_passes_through():
    cc = _compile("mode a b z\nmirror a -> b")
    assert cc.inputs == ("a", "z") and cc.outputs == ("b", "z")
    assert np.allclose(cc.unitary.matrix, np.eye(2))


@pytest.mark.parametrize("kind", ["amplify a -> b G=2 N=0", "downconvert a -> b c eta=1e-6"])
def test_nonlinear_rejected(kind):
    with pytest.raises(NonUnitaryElement) as info:
        _compile(f"mode a b c\n{kind}")
    assert info.value.line == 2


def test_reusing_consumed_mode():
    with pytest.raises(NonUnitaryComposition):
        _compile("mode a b c\nmirror a -> b\nmirror a -> c")


def test_emitting_into_live_mode():
    with pytest.raises(NonUnitaryComposition):
        _compile("mode a b c\nmirror a -> b\nmirror c -> b")


def test_detector_on_consumed_mode():
    with pytest.raises(NetlistError):
        _compile("mode a b\nmirror a -> b\ndetector a D")


@st.composite
def chains(draw):
    """Random straight-line meshes over four modes."""
    lines = ["mode a b c d"]
    for _ in range(draw(st.integers(1, 8))):
        x, y = draw(st.permutations("abcd"))[:2]
        if draw(st.booleans()):
            lines.append(f"phase {x} phi={draw(angles)!r}")
        else:
            lines.append(f"halfsilver {x} {y} -> {x} {y} T={draw(st.floats(0, 1))!r}")
    return "\n".join(lines)


@given(chains())
def test_compiled_unitary_for_random_meshes(text):
    u = _compile(text).unitary.matrix
    assert np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])) <= 1e-10


def test_compile_json():
    out = _compile(mz_netlist(0.0)).to_json()
    assert out["detector_probs"]["D1"] == pytest.approx(1.0)
    assert out["unitary"]["n"] == 2


# -- two-port devices -------------------------------------------------------------


@pytest.mark.parametrize(
    "params, expected",
    [
        ((0, 0, 0, 0), [[0, 1], [1, 0]]),
        ((-PI / 2, -PI / 2, PI / 2, PI / 2), np.eye(2)),
        ((-PI / 4, 0, PI / 4, 0), 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])),
    ],
)
def test_t_bs_golden(params, expected):
    assert np.max(np.abs(t_bs(*params).matrix - expected)) <= 1e-12


@pytest.mark.parametrize(
    "params, expected",
    [((-PI / 2, 0, 0, -PI / 2), [[0, 1], [1, 0]]), ((-PI, PI, -PI, 0), np.eye(2))],
)
def test_t_mz_golden(params, expected):
    assert np.max(np.abs(t_mz(*params).matrix - expected)) <= 1e-12


def test_t_bs_formula_oracle():
    w, a, b, f = 0.3, -1.1, 0.7, 2.2
    e = cmath.exp
    want = e(-1j * b) * np.array(
        [[-1j * e(-1j * (a + f)) * math.sin(w), e(-1j * f) * math.cos(w)], [e(-1j * a) * math.cos(w), -1j * math.sin(w)]]
    )
    assert np.allclose(t_bs_array(w, a, b, f), want, atol=1e-15)


def test_correspondence_many_draws():
    rng = np.random.default_rng(99)
    for w, a, b, f in rng.uniform(-PI, PI, size=(10_000, 4)):
        lhs = t_bs_array(w, a, b, f)
        assert np.max(np.abs(lhs - t_mz_array(a - PI / 2, b - w, 2 * w, f - PI / 2))) <= 1e-12
        assert np.max(np.abs(u2_array(w, a, b, f) - t_bs_array(*canonical_to_bs(w, a, b, f).args()))) <= 1e-12


@pytest.mark.parametrize("name", ["identity", "not", "sqrt_not", "sqrt_not_prime"])
def test_realizations_match_gate_catalog(name):
    bs, mz = REALIZATIONS[name]
    assert np.max(np.abs(bs.matrix().matrix - gate(name).matrix)) <= 1e-12
    assert np.max(np.abs(mz.matrix().matrix - gate(name).matrix)) <= 1e-12
    m = bs_to_mz(bs)
    assert np.allclose(m.args(), mz.args(), atol=1e-15)


def test_bs_to_mz_requires_bs():
    with pytest.raises(ValueError):
        bs_to_mz(TwoPortParams.mz(0, 0, 0, 0))


@given(angles, angles, angles, angles)
def test_t_mz_unitary(a, b, w, f):
    m = t_mz_array(a, b, w, f)
    assert np.max(np.abs(m @ m.conj().T - np.eye(2))) <= 1e-12


def test_canonical_identity_and_not():
    assert np.allclose(canonical_to_bs(0, 0, 0, 0).matrix().matrix, np.eye(2), atol=1e-12)
    # the canonical not is [[0,-1],[1,0]] with omega = pi/2 and a phase pi on the upper row
    m = canonical_to_bs(PI / 2, 0, 0, PI).matrix().matrix
    assert np.allclose(m, u2_array(PI / 2, 0, 0, PI), atol=1e-12)
    assert np.allclose(np.abs(m), [[0, 1], [1, 0]], atol=1e-12)
