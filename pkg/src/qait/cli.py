"""Command-line entry point: ``qait <subcommand> ...``.

Every subcommand prints a short human-readable summary by default and a
deterministic JSON document with ``--json``.  Exit codes: 0 success, 1 domain
error (JSON ``{"error": kind, "detail": ...}`` on stdout), 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import decompose as dec
from . import dynamics, fock, qbit, u2
from .errors import QaitError
from .interferometer import REALIZATIONS, compile_circuit, parse_netlist
from .interferometer.mach_zehnder import mz_probabilities
from .omega import MachineModel, inequality_report, omega, output_classes
from .serialize import complex_from_json, complex_to_json, dumps, matrix_from_json, matrix_to_json

DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


def _floats(text: str, n: int, what: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what}: expected {n} comma-separated numbers, got {len(vals)}")
    return vals


def _complex_arg(text: str, what: str) -> complex:
    re, im = _floats(text, 2, what)
    return complex(re, im)


def _emit(args, payload: dict, text: str) -> None:
    print(dumps(payload) if args.json else text)


# -- subcommands ------------------------------------------------------------------


def cmd_compile(args) -> None:
    source = Path(args.file).read_text()
    compiled = compile_circuit(parse_netlist(source), mirror_phase=args.mirror_phase)
    payload = compiled.to_json()
    lines = [f"inputs:  {' '.join(compiled.inputs)}", f"outputs: {' '.join(compiled.outputs)}"]
    lines += [f"P({label}) = {p:.12g}" for label, p in sorted(payload["detector_probs"].items())]
    _emit(args, payload, "\n".join(lines))


def cmd_mz(args) -> None:
    if args.scan is not None:
        if args.scan < 2:
            raise UsageError("--scan needs at least 2 points")
        rows = []
        for k in range(args.scan):
            phi = 2 * math.pi * k / (args.scan - 1)
            p1, p2 = mz_probabilities(phi)
            rows.append({"phi": phi, "P_D1": p1, "P_D2": p2})
        text = "phi,P_D1,P_D2\n" + "\n".join(f"{r['phi']!r},{r['P_D1']!r},{r['P_D2']!r}" for r in rows)
        _emit(args, {"scan": rows}, text)
        return
    p1, p2 = mz_probabilities(args.phi)
    _emit(args, {"P_D1": p1, "P_D2": p2}, f"P_D1 = {p1!r}\nP_D2 = {p2!r}")


def cmd_gate(args) -> None:
    g = u2.gate(args.name)
    report = u2.fixed_point_report(g)
    bs, mz = REALIZATIONS[args.name]
    payload = {
        "name": args.name,
        "matrix": matrix_to_json(g),
        "bs": list(bs.args()),
        "mz": list(mz.args()),
        "eigenphases": list(report.eigenphases),
        "fixed_points": [[complex_to_json(a) for a in v.amplitudes] for v in report.fixed_vectors],
    }
    text = "\n".join(
        [
            f"{args.name} =",
            np.array2string(g.matrix, precision=6, suppress_small=True),
            f"T_bs(omega, alpha, beta, phi) = {tuple(bs.args())}",
            f"T_mz(alpha, beta, omega, phi) = {tuple(mz.args())}",
            f"fixed points: {len(report.fixed_vectors)}",
        ]
    )
    _emit(args, payload, text)


def cmd_decompose(args) -> None:
    import json

    try:
        obj = json.loads(Path(args.input).read_text())
    except json.JSONDecodeError as e:
        raise ValueError(f"{args.input}: not valid JSON ({e})") from None
    m = matrix_from_json(obj)
    factors, diagonal = dec.decompose(m)
    n = m.shape[0]
    err = float(np.linalg.norm(dec.recompose(factors, diagonal, n).matrix - m))
    payload = {
        "n": n,
        "factors": [{"i": f.i, "j": f.j, "params": list(f.params.as_tuple())} for f in factors],
        "diagonal": list(diagonal),
        "recomposition_error": err,
    }
    lines = [f"{len(factors)} two-level factors (bound {n * (n - 1) // 2})"]
    lines += [f"  ({f.i},{f.j}) {f.params.as_tuple()}" for f in factors]
    lines.append(f"recomposition error {err:.3e}")
    if args.emit_netlist:
        netlist = dec.emit_mesh(m)
        payload["netlist"] = netlist
        lines = [netlist.rstrip("\n")]
    _emit(args, payload, "\n".join(lines))


def cmd_evolve(args) -> None:
    p = dynamics.TwoStateProblem(args.E, args.A, hbar=args.hbar)
    if args.grid is None:
        p1, p2 = dynamics.ammonia_probs(p, args.t)
        _emit(args, {"t": args.t, "P1": p1, "P2": p2}, f"t,P1,P2\n{args.t!r},{p1!r},{p2!r}")
        return
    if args.grid < 2:
        raise UsageError("--grid needs at least 2 points")
    rows = dynamics.time_grid(p, args.t, args.grid)
    text = "t,P1,P2\n" + "\n".join(f"{t!r},{a!r},{b!r}" for t, a, b in rows)
    _emit(args, {"grid": [{"t": t, "P1": a, "P2": b} for t, a, b in rows]}, text)


def cmd_fock(args) -> None:
    alpha = _complex_arg(args.alpha, "--alpha")
    beta = _complex_arg(args.beta, "--beta")
    r = fock.cloning_analysis(alpha, beta, cutoff=args.cutoff)
    terms = ", ".join(f"{v.real:+.6f}{v.imag:+.6f}i |{k[0]},{k[1]}>" for k, v in sorted(r.true_copy.terms.items()))
    _emit(args, r.to_json(), f"exact copy: {terms}\ndefect = {r.defect!r}  (sqrt(2)|alpha beta| = {r.analytic_defect!r})")


def _omega_payload(m: MachineModel, args) -> dict:
    acc = omega(m, args.maxlen, args.threads)
    complexities = [
        {"state": [q.to_json() for q in c.states], "H": c.complexity, "canonical": c.canonical.bits}
        for c in output_classes(m, args.maxlen, args.threads)
    ]
    payload = {
        "omega": complex_to_json(acc.omega),
        "omega_sq": acc.omega_sq,
        "kraft": acc.kraft,
        "max_len": acc.max_len,
        "programs": acc.n_programs,
        "complexities": complexities,
        "slacks": {},
    }
    if args.report == "relations":
        payload.update(inequality_report(m, args.maxlen, args.threads).to_json())
    return payload


def cmd_omega(args) -> None:
    if args.maxlen < 2 or args.maxlen % 2:
        raise UsageError("--maxlen must be an even integer >= 2")
    if args.registers < 1:
        raise UsageError("--registers must be >= 1")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    payload = _omega_payload(MachineModel(k=args.registers), args)
    lines = [
        f"programs: {payload['programs']}",
        f"kraft:    {payload['kraft']!r}",
        f"omega:    {complex_from_json(payload['omega'])!r}",
        f"omega_sq: {payload['omega_sq']!r}",
        f"distinct outputs: {len(payload['complexities'])}",
    ]
    for rel, s in payload["slacks"].items():
        lines.append(f"  {rel:<26} constant={s['constant']} pairs={s['pairs']} skipped={s['skipped']}")
    _emit(args, payload, "\n".join(lines))


def cmd_qbit(args) -> None:
    if args.code is None and args.sample is None:
        raise UsageError("qbit needs --code and/or --sample")
    q = qbit.H_STAR
    payload: dict = {}
    lines = []
    if args.code is not None:
        w, phi, delta = _floats(args.code, 3, "--code")
        q = qbit.code_qbit(w, phi, delta)
        pt, pf = qbit.measure_probs(q)
        cls = qbit.classify(q).value
        payload.update({"qbit": q.to_json(), "class": cls, "probs": [pt, pf]})
        lines.append(f"alpha = {q.alpha!r}\nbeta  = {q.beta!r}\nclass: {cls}\nP(t) = {pt!r}, P(f) = {pf!r}")
    if args.sample is not None:
        seed = args.seed if args.seed is not None else int(os.environ.get("QAIT_SEED", DEFAULT_SEED))
        n_t, n_f = qbit.sample_measurements(q, args.sample, seed)
        payload.update({"seed": seed, "n": args.sample, "counts": {"t": n_t, "f": n_f}, "freq_t": n_t / args.sample})
        lines.append(f"seed {seed}: t={n_t} f={n_f} freq_t={n_t / args.sample!r}")
    _emit(args, payload, "\n".join(lines))


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qait", description="Quantum-optics and quantum algorithmic information toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func)
        return p

    p = add("compile", cmd_compile, "compile a netlist file")
    p.add_argument("file")
    p.add_argument("--mirror-phase", choices=("exact", "omit"), default="omit")

    p = add("mz", cmd_mz, "Mach-Zehnder detection probabilities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--phi", type=float)
    g.add_argument("--scan", type=int, metavar="N")

    p = add("gate", cmd_gate, "inspect a named gate")
    p.add_argument("name", choices=u2.GATE_NAMES)

    p = add("decompose", cmd_decompose, "two-level decomposition of a unitary")
    p.add_argument("--input", required=True, metavar="matrix.json")
    p.add_argument("--emit-netlist", action="store_true")

    p = add("evolve", cmd_evolve, "two-state (ammonia) dynamics")
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--t", type=float, required=True, help="time, or grid end with --grid")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--grid", type=int, metavar="N")

    p = add("fock", cmd_fock, "Fock-space demos")
    p.add_argument("--demo", choices=("cloning",), required=True)
    p.add_argument("--alpha", required=True, metavar="RE,IM")
    p.add_argument("--beta", required=True, metavar="RE,IM")
    p.add_argument("--cutoff", type=int, default=fock.DEFAULT_CUTOFF)

    p = add("omega", cmd_omega, "halting amplitude and complexity tables")
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--registers", type=int, default=2)
    p.add_argument("--report", choices=("relations",))
    p.add_argument("--threads", type=int, default=1)

    p = add("qbit", cmd_qbit, "qbit coding and measurement sampling")
    p.add_argument("--code", metavar="OMEGA,PHI,DELTA")
    p.add_argument("--sample", type=int, metavar="N")
    p.add_argument("--seed", type=int)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except UsageError as e:
        print(f"qait: usage error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (QaitError, ValueError, KeyError, IndexError, OSError, ArithmeticError) as e:
        kind = getattr(e, "kind", type(e).__name__)
        detail = str(e.args[0]) if isinstance(e, KeyError) and e.args else str(e)
        print(dumps({"error": kind, "detail": detail}))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
