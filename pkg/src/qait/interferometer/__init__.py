from .compiler import CompiledCircuit, compile_circuit
from .mach_zehnder import mz_netlist, mz_probabilities
from .netlist import Circuit, Element, eval_number, parse_netlist
from .twoport import (
    REALIZATIONS,
    TwoPortParams,
    bs_to_mz,
    canonical_to_bs,
    t_bs,
    t_mz,
    u2_to_bs,
)

compile = compile_circuit  # noqa: A001 - name used by the netlist docs

__all__ = [
    "Circuit",
    "CompiledCircuit",
    "Element",
    "REALIZATIONS",
    "TwoPortParams",
    "bs_to_mz",
    "canonical_to_bs",
    "compile_circuit",
    "eval_number",
    "mz_netlist",
    "mz_probabilities",
    "parse_netlist",
    "t_bs",
    "t_mz",
    "u2_to_bs",
]
