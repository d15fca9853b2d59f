"""Line-oriented netlist format for lossless optical elements.

::

    mode <name>+
    source <mode>
    mirror <in> -> <out>
    beamsplitter <in> [<in2>] -> <out1> <out2>
    halfsilver <in> [<in2>] -> <out1> <out2> T=<expr>
    phase <mode> phi=<expr>
    downconvert <in> -> <out1> <out2> eta=<expr>
    upconvert <in1> <in2> -> <out> eta=<expr>
    amplify <in> -> <out> G=<expr> N=<expr>
    detector <mode> <label>

``#`` starts a comment.  Parameter values are decimal literals or small
arithmetic expressions over ``pi`` and ``sqrt`` (``pi/2``, ``-3*pi/4``,
``sqrt(1/2)``).  The optional second input of the two splitters is an
extension used for two-port devices; when it is absent the unused port is
vacuum.
"""
from __future__ import annotations

import ast
import math
import operator
import re
from dataclasses import dataclass, field

from ..errors import DuplicateLabel, NetlistSyntaxError, UndeclaredMode

KINDS = ("mirror", "beamsplitter", "halfsilver", "phase", "downconvert", "upconvert", "amplify")
NONLINEAR = frozenset({"downconvert", "upconvert", "amplify"})

# kind -> (allowed input counts, output count, required params)
_SHAPES = {
    "mirror": ((1,), 1, ()),
    "beamsplitter": ((1, 2), 2, ()),
    "halfsilver": ((1, 2), 2, ("T",)),
    "phase": ((1,), 0, ("phi",)),
    "downconvert": ((1,), 2, ("eta",)),
    "upconvert": ((2,), 1, ("eta",)),
    "amplify": ((1,), 1, ("G", "N")),
}

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class Element:
    kind: str
    input_modes: tuple[str, ...]
    output_modes: tuple[str, ...]
    params: dict = field(default_factory=dict, hash=False)
    line: int = 0

    @property
    def reflectivity(self) -> float:
        """``R = sqrt(1 - T^2)`` of a half-silvered mirror."""
        t = self.params["T"]
        return math.sqrt(max(0.0, 1.0 - t * t))


@dataclass(frozen=True)
class Circuit:
    modes: tuple[str, ...]
    elements: tuple[Element, ...]
    sources: tuple[str, ...] = ()
    detectors: tuple[tuple[str, str], ...] = ()
    detector_lines: tuple[int, ...] = field(default=(), compare=False)


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and not node.keywords
    ):
        return math.sqrt(_eval_node(node.args[0]))
    raise ValueError("unsupported expression")


def eval_number(text: str) -> float:
    """Evaluate a numeric literal or a ``pi``/``sqrt`` expression."""
    try:
        value = _eval_node(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"cannot evaluate {text!r}") from exc
    if not math.isfinite(value):
        raise ValueError(f"{text!r} is not finite")
    return value


def _tokens(line: str):
    """Whitespace-separated tokens with 1-based start columns."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _check_param_range(key: str, value: float) -> str | None:
    if key == "T" and not 0.0 <= value <= 1.0:
        return "T must lie in [0, 1]"
    if key == "eta" and not 0.0 <= value <= 1.0:
        return "eta must lie in [0, 1]"
    if key == "G" and value <= 0:
        return "G must be positive"
    if key == "N" and value < 0:
        return "N must be non-negative"
    return None


def _parse_element(kind, toks, lineno, eol_col):
    """Parse the tokens after the keyword of an element line."""
    allowed_in, n_out, required = _SHAPES[kind]
    params = {}
    plain = []
    for tok, col in toks:
        if "=" in tok:
            key, _, raw = tok.partition("=")
            if key not in required:
                raise NetlistSyntaxError(
                    f"unknown parameter {key!r} for {kind}", lineno, col, expected=" ".join(f"{r}=" for r in required) or "no parameters"
                )
            if key in params:
                raise NetlistSyntaxError(f"parameter {key!r} given twice", lineno, col)
            try:
                value = eval_number(raw)
            except ValueError as exc:
                raise NetlistSyntaxError(str(exc), lineno, col + len(key) + 1, expected="number or pi-expression") from None
            problem = _check_param_range(key, value)
            if problem:
                raise NetlistSyntaxError(problem, lineno, col + len(key) + 1)
            params[key] = value
        else:
            if params:
                raise NetlistSyntaxError(f"mode name {tok!r} after parameters", lineno, col, expected="key=value")
            plain.append((tok, col))
    for key in required:
        if key not in params:
            raise NetlistSyntaxError(f"{kind} is missing parameter {key}", lineno, eol_col, expected=f"{key}=<value>")

    if kind == "phase":
        if len(plain) != 1:
            col = plain[1][1] if len(plain) > 1 else eol_col
            raise NetlistSyntaxError("phase takes exactly one mode", lineno, col, expected="phi=<value>")
        ins, outs = [plain[0]], []
    else:
        arrows = [k for k, (tok, _) in enumerate(plain) if tok == "->"]
        if len(arrows) != 1:
            col = plain[arrows[1]][1] if len(arrows) > 1 else (plain[-1][1] if plain else eol_col)
            raise NetlistSyntaxError(f"{kind} needs one '->'", lineno, col, expected="'->'")
        ins, outs = plain[: arrows[0]], plain[arrows[0] + 1 :]
        if len(ins) not in allowed_in:
            col = ins[-1][1] if ins else plain[arrows[0]][1]
            want = " or ".join(str(a) for a in allowed_in)
            raise NetlistSyntaxError(f"{kind} takes {want} input mode(s), got {len(ins)}", lineno, col, expected="'->'")
        if len(outs) != n_out:
            col = outs[n_out][1] if len(outs) > n_out else eol_col
            raise NetlistSyntaxError(f"{kind} takes {n_out} output mode(s), got {len(outs)}", lineno, col, expected="mode name")
    for tok, col in ins + outs:
        if not _NAME.match(tok):
            raise NetlistSyntaxError(f"invalid mode name {tok!r}", lineno, col, expected="mode name")
    for group, what in ((ins, "input"), (outs, "output")):
        names = [t for t, _ in group]
        for k, (tok, col) in enumerate(group):
            if tok in names[:k]:
                raise NetlistSyntaxError(f"{what} mode {tok!r} repeated", lineno, col)
    return (
        Element(kind, tuple(t for t, _ in ins), tuple(t for t, _ in outs), params, lineno),
        ins + outs,
    )


def parse_netlist(text: str) -> Circuit:
    modes: list[str] = []
    elements: list[Element] = []
    sources: list[str] = []
    detectors: list[tuple[str, str]] = []
    detector_lines: list[int] = []
    uses: list[tuple[str, int, int]] = []
    labels: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        eol_col = len(line.rstrip()) + 1
        head, col0 = toks[0]
        rest = toks[1:]
        if head == "mode":
            if not rest:
                raise NetlistSyntaxError("mode declaration without names", lineno, eol_col, expected="mode name")
            for tok, col in rest:
                if not _NAME.match(tok):
                    raise NetlistSyntaxError(f"invalid mode name {tok!r}", lineno, col, expected="mode name")
                if tok in modes:
                    raise NetlistSyntaxError(f"mode {tok!r} declared twice", lineno, col)
                modes.append(tok)
        elif head == "source":
            if len(rest) != 1:
                col = rest[1][1] if len(rest) > 1 else eol_col
                raise NetlistSyntaxError("source takes exactly one mode", lineno, col, expected="mode name")
            if sources:
                raise NetlistSyntaxError("only one source is supported", lineno, col0)
            sources.append(rest[0][0])
            uses.append((rest[0][0], lineno, rest[0][1]))
        elif head == "detector":
            if len(rest) != 2:
                col = rest[2][1] if len(rest) > 2 else eol_col
                raise NetlistSyntaxError("detector takes a mode and a label", lineno, col, expected="<mode> <label>")
            (mode, mcol), (label, lcol) = rest
            if label in labels:
                raise DuplicateLabel(f"detector label {label!r} already used on line {labels[label]}", lineno, lcol)
            labels[label] = lineno
            detectors.append((mode, label))
            detector_lines.append(lineno)
            uses.append((mode, lineno, mcol))
        elif head in KINDS:
            element, mode_toks = _parse_element(head, rest, lineno, eol_col)
            elements.append(element)
            uses.extend((tok, lineno, col) for tok, col in mode_toks)
        else:
            raise NetlistSyntaxError(f"unknown statement {head!r}", lineno, col0, expected="mode, source, detector or an element kind")

    declared = set(modes)
    for name, lineno, col in uses:
        if name not in declared:
            raise UndeclaredMode(f"mode {name!r} is not declared", lineno, col)
    return Circuit(tuple(modes), tuple(elements), tuple(sources), tuple(detectors), tuple(detector_lines))
