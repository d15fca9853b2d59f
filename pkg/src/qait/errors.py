"""Exception hierarchy shared by every module.

Each exception carries a short ``kind`` string; the CLI reports it verbatim in
its ``{"error": kind, "detail": ...}`` payload.
"""


class QaitError(Exception):
    kind = "domain_error"


class DimensionMismatch(QaitError, ValueError):
    kind = "dimension_mismatch"


class NotNormalized(QaitError, ValueError):
    kind = "not_normalized"


class NotHermitian(QaitError, ValueError):
    kind = "not_hermitian"


class NotUnitary(QaitError, ValueError):
    kind = "not_unitary"


class UnknownGate(QaitError, KeyError):
    kind = "unknown_gate"

    def __str__(self):
        return Exception.__str__(self)


class NetlistError(QaitError):
    """Base for netlist problems; ``line``/``col`` are 1-based when known."""

    kind = "netlist_error"

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class NetlistSyntaxError(NetlistError):
    kind = "syntax_error"

    def __init__(self, message, line=None, col=None, expected=None):
        self.expected = expected
        if expected:
            message = f"{message} (expected {expected})"
        super().__init__(message, line, col)


class UndeclaredMode(NetlistError):
    kind = "undeclared_mode"


class DuplicateLabel(NetlistError):
    kind = "duplicate_label"


class NonUnitaryElement(NetlistError):
    kind = "non_unitary_element"


class NonUnitaryComposition(NetlistError):
    kind = "non_unitary_composition"


class CutoffExceeded(QaitError):
    kind = "cutoff_exceeded"


class PauliViolation(QaitError, ValueError):
    kind = "pauli_violation"


class StepBudgetExceeded(QaitError):
    kind = "step_budget_exceeded"


class InvalidProgram(QaitError, ValueError):
    kind = "invalid_program"


class Unreachable(QaitError):
    kind = "unreachable"
