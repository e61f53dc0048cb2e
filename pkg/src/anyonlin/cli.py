"""Command-line front end: parse networks and kets, evolve, emit JSON.

Network DSL, one element per line, applied top to bottom::

    modes 3
    bs 2 3 pi/2
    ps 1 pi

Angles accept decimal radians and rational multiples of pi (``pi``,
``pi/2``, ``-pi/2``, ``3*pi/4``).  Kets are ASCII, ``|1,0,1>``, and
linear combinations use ``a*|...> + b*|...>`` with complex literals like
``0.5+0.5i``.  Output is deterministic JSON (stable basis order, floats
at 17 significant digits) or an aligned table.

Exit codes: 0 success, 2 validation or parse error, 3 numerical
tolerance failure in a self-check mode.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from .coherent import Truncation, cat_closed_form, mirror_cat, mirror_network
from .dualrail import CP, LogicalLayout, Rx, Rz, U1, decode, euler_zxz, run_circuit
from .fock import AnyonSpec, ParticleClass, StateVector, enumerate_sector, state_to_jsonable
from .network import BeamSplitter, Network, PhaseShifter, build_braiding_network, \
    element_unitary, evolve, single_particle_matrix

__all__ = [
    "CliError",
    "parse_angle",
    "parse_complex",
    "parse_network",
    "serialize_network",
    "parse_state",
    "main",
]


class CliError(ValueError):
    """Validation or parse failure; maps to exit code 2."""


_PI_RE = re.compile(r"^([+-]?)(?:(\d+)\s*\*\s*)?pi(?:\s*/\s*(\d+))?$", re.IGNORECASE)


def parse_angle(text: str) -> float:
    """Decimal radians or a rational multiple of pi."""
    t = text.strip()
    m = _PI_RE.match(t)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        num = int(m.group(2)) if m.group(2) else 1
        den = int(m.group(3)) if m.group(3) else 1
        if den == 0:
            raise CliError(f"zero denominator in angle {text!r}")
        return sign * num * math.pi / den
    try:
        return float(t)
    except ValueError:
        raise CliError(f"malformed angle {text!r}") from None


def parse_complex(text: str) -> complex:
    """Complex literal in ``re``, ``imi``, or ``re+imi`` form."""
    t = text.replace(" ", "").replace("i", "j")
    if t in ("", "+"):
        return 1.0 + 0.0j
    if t == "-":
        return -1.0 + 0.0j
    try:
        return complex(t)
    except ValueError:
        raise CliError(f"malformed complex literal {text!r}") from None


def parse_network(text: str) -> Network:
    """Parse the network DSL; line order is application order."""
    m: int | None = None
    elements: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0].lower()
        try:
            if keyword == "modes":
                if m is not None:
                    raise CliError("duplicate 'modes' line")
                if len(tokens) != 2:
                    raise CliError("expected: modes <m>")
                m = int(tokens[1])
                if m < 1:
                    raise CliError("mode count must be >= 1")
            elif keyword == "ps":
                if m is None:
                    raise CliError("'modes' must come first")
                if len(tokens) != 3:
                    raise CliError("expected: ps <i> <angle>")
                i = int(tokens[1])
                if not 1 <= i <= m:
                    raise CliError(f"mode {i} out of range 1..{m}")
                elements.append(PhaseShifter(i, parse_angle(tokens[2])))
            elif keyword == "bs":
                if m is None:
                    raise CliError("'modes' must come first")
                if len(tokens) != 4:
                    raise CliError("expected: bs <i> <j> <angle>")
                i, j = int(tokens[1]), int(tokens[2])
                for mode in (i, j):
                    if not 1 <= mode <= m:
                        raise CliError(f"mode {mode} out of range 1..{m}")
                if i == j:
                    raise CliError("beam splitter modes must differ")
                elements.append(BeamSplitter(i, j, parse_angle(tokens[3])))
            else:
                raise CliError(f"unknown keyword {tokens[0]!r}")
        except CliError as err:
            raise CliError(f"line {lineno}: {err}") from None
        except ValueError as err:
            raise CliError(f"line {lineno}: {err}") from None
    if m is None:
        raise CliError("network is missing a 'modes' line")
    return Network(m, tuple(elements))


def serialize_network(network: Network) -> str:
    """DSL text whose parse reproduces the network exactly."""
    lines = [f"modes {network.m}"]
    for el in network.elements:
        if isinstance(el, PhaseShifter):
            lines.append(f"ps {el.mode} {el.tau!r}")
        else:
            lines.append(f"bs {el.mode_i} {el.mode_j} {el.theta!r}")
    return "\n".join(lines) + "\n"


_KET_RE = re.compile(r"\|\s*([0-9]+(?:\s*,\s*[0-9]+)*)\s*>")


def parse_state(text: str, m: int, spec: AnyonSpec, normalize: bool = True) -> StateVector:
    """Parse ``a*|n1,...,nm> + b*|...>`` into a sector state.

    All kets must share one total particle number; fermionic occupancies
    above one are rejected.  The result is normalized unless disabled.
    """
    matches = list(_KET_RE.finditer(text))
    if not matches:
        raise CliError(f"no ket found in {text!r}")
    head = text[: matches[0].start()].strip()
    terms: list[tuple[complex, tuple[int, ...]]] = []
    for pos, match in enumerate(matches):
        coef_text = text[matches[pos - 1].end(): match.start()] if pos else head
        coef_text = coef_text.strip()
        if coef_text.endswith("*"):
            coef_text = coef_text[:-1]
        coef = parse_complex(coef_text)
        occ = tuple(int(tok) for tok in match.group(1).replace(" ", "").split(","))
        if len(occ) != m:
            raise CliError(f"ket |{match.group(1)}> has {len(occ)} modes, expected {m}")
        if spec.is_fermionic and any(n > 1 for n in occ):
            raise CliError(f"fermionic occupation above 1 in |{match.group(1)}>")
        terms.append((coef, occ))
    tail = text[matches[-1].end():].strip()
    if tail:
        raise CliError(f"trailing junk after last ket: {tail!r}")
    totals = {sum(occ) for _, occ in terms}
    if len(totals) > 1:
        raise CliError("all kets must carry the same total particle number")
    sector = enumerate_sector(m, totals.pop(), spec)
    amps: dict[tuple[int, ...], complex] = {}
    for coef, occ in terms:
        amps[occ] = amps.get(occ, 0.0) + coef
    state = StateVector(sector, amps)
    if normalize:
        if state.norm() == 0.0:
            raise CliError("state has zero norm")
        state = state.normalized()
    return state


def _fmt(x: float) -> float:
    """Round-trip through 17 significant digits (identity for doubles)."""
    return float(format(float(x), ".17g"))


def _amplitude_entries(state: StateVector) -> list[dict]:
    return [{"occ": entry["occ"], "re": _fmt(entry["re"]), "im": _fmt(entry["im"])}
            for entry in state_to_jsonable(state, eps=1e-12)]


def _emit(doc: dict, table: bool) -> None:
    if not table:
        print(json.dumps(doc))
        return
    meta = {k: v for k, v in doc.items() if not isinstance(v, (list, dict))}
    print("  ".join(f"{k}={v}" for k, v in meta.items()))
    for key, rows in ((k, v) for k, v in doc.items() if isinstance(v, list)):
        label = "occ" if rows and "occ" in rows[0] else "bits"
        print(f"{label:>16s}  {'re':>24s}  {'im':>24s}")
        for row in rows:
            tag = ",".join(map(str, row[label])) if label == "occ" else row[label]
            print(f"{tag:>16s}  {row['re']:>24.17g}  {row['im']:>24.17g}")


def _make_spec(args: argparse.Namespace) -> AnyonSpec:
    return AnyonSpec(ParticleClass(args.particle_class), parse_angle(args.phi))


def _state_doc(args: argparse.Namespace, input_text: str, state: StateVector) -> dict:
    return {
        "input": input_text,
        "phi": _fmt(parse_angle(args.phi)),
        "class": args.particle_class,
        "amplitudes": _amplitude_entries(state),
    }


def _check_norm(state: StateVector) -> None:
    if abs(state.norm() - 1.0) > 1e-10:
        raise ArithmeticError(f"evolved norm {state.norm()!r} deviates from 1")


def _cmd_hom(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    theta = parse_angle(args.theta)
    input_text = "|1,1>"
    state = parse_state(input_text, 2, spec)
    out = evolve(Network(2, (BeamSplitter(1, 2, theta),)), state)
    if args.self_check:
        _check_norm(out)
        if abs(out.amplitude((1, 1))) > 1e-12:
            raise ArithmeticError("coincidence amplitude failed to cancel")
    _emit(_state_doc(args, input_text, out), args.table)
    return 0


def _cmd_braid(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    state = parse_state(args.input, 3, spec, normalize=not args.no_normalize)
    out = evolve(build_braiding_network(), state)
    if args.self_check:
        _check_norm(out)
        if len(state.amps) == 1:
            (occ,) = state.amps
            if abs(abs(out.amplitude(occ)) - 1.0) > 1e-10:
                raise ArithmeticError("braiding network was not diagonal on a basis state")
    _emit(_state_doc(args, args.input, out), args.table)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    try:
        with open(args.network, "r", encoding="utf-8") as handle:
            network = parse_network(handle.read())
    except OSError as err:
        raise CliError(f"cannot read network file: {err}") from None
    state = parse_state(args.input, network.m, spec, normalize=not args.no_normalize)
    out = evolve(network, state)
    if args.self_check:
        _check_norm(out)
    doc = _state_doc(args, args.input, out)
    if args.dump_unitary:
        mat = np.eye(state.sector.dim, dtype=np.complex128)
        for el in network.elements:
            mat = element_unitary(state.sector, el).mat @ mat
        doc["unitary"] = {
            "basis": [list(occ) for occ in state.sector.basis],
            "re": [[_fmt(v.real) for v in row] for row in mat],
            "im": [[_fmt(v.imag) for v in row] for row in mat],
        }
    _emit(doc, args.table)
    return 0


_GATE_KEYS = {"rz": ("q", "beta"), "rx": ("q", "gamma"),
              "u1": ("q", "alpha", "beta", "gamma", "delta"), "cp": ("a", "b")}


def _parse_circuit(doc: dict) -> tuple[AnyonSpec, LogicalLayout, list]:
    try:
        qubits = int(doc["qubits"])
        spec = AnyonSpec(ParticleClass(doc.get("class", "bosonic")), float(doc["phi"]))
        raw_gates = doc["gates"]
    except (KeyError, TypeError, ValueError) as err:
        raise CliError(f"bad circuit document: {err}") from None
    layout = LogicalLayout(qubits)

    def angle(value) -> float:
        return parse_angle(value) if isinstance(value, str) else float(value)

    gates = []
    for pos, entry in enumerate(raw_gates):
        kind = entry.get("type")
        if kind not in _GATE_KEYS:
            raise CliError(f"gate {pos}: unknown type {kind!r}")
        missing = [key for key in _GATE_KEYS[kind] if key not in entry]
        if missing:
            raise CliError(f"gate {pos}: missing fields {missing}")
        if kind == "rz":
            gates.append(Rz(int(entry["q"]), angle(entry["beta"])))
        elif kind == "rx":
            gates.append(Rx(int(entry["q"]), angle(entry["gamma"])))
        elif kind == "u1":
            gates.append(U1(int(entry["q"]), angle(entry["alpha"]), angle(entry["beta"]),
                            angle(entry["gamma"]), angle(entry["delta"])))
        else:
            gates.append(CP(int(entry["a"]), int(entry["b"])))
    return spec, layout, gates


def _haar_check(args: argparse.Namespace) -> int:
    from .dualrail import logical_unitary

    rng = np.random.default_rng(args.seed)
    layout = LogicalLayout(1)
    spec = AnyonSpec.bosonic(parse_angle(args.phi)) if args.phi else AnyonSpec.bosonic(1.0)
    worst = 0.0
    for _ in range(args.haar_check):
        z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2)
        q, r = np.linalg.qr(z)
        target = q * (np.diag(r) / np.abs(np.diag(r)))
        got = logical_unitary(spec, layout, [U1(1, *euler_zxz(target))])
        flat = np.argmax(np.abs(target))
        aligned = got * (target.flat[flat] / got.flat[flat])
        worst = max(worst, float(np.max(np.abs(aligned - target))))
    doc = {"targets": args.haar_check, "seed": args.seed, "max_deviation": _fmt(worst)}
    _emit(doc, args.table)
    if worst > 1e-9:
        raise ArithmeticError(f"random-target compilation deviation {worst!r}")
    return 0


def _cmd_compile(args: argparse.Namespace) -> int:
    if args.haar_check:
        return _haar_check(args)
    if not args.circuit:
        raise CliError("compile needs --circuit FILE (or --haar-check N)")
    try:
        with open(args.circuit, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as err:
        raise CliError(f"cannot read circuit file: {err}") from None
    spec, layout, gates = _parse_circuit(doc)
    bits = args.input or "0" * layout.num_qubits
    if len(bits) != layout.num_qubits or any(b not in "01" for b in bits):
        raise CliError(f"input must be {layout.num_qubits} bits of 0/1")
    final = run_circuit(spec, layout, gates, bits)
    amps, leakage = decode(layout, final)
    if args.self_check and leakage > 1e-10:
        raise ArithmeticError(f"leakage {leakage!r} above tolerance")
    entries = []
    for idx, amp in enumerate(amps):
        if abs(amp) > 1e-12:
            entries.append({"bits": format(idx, f"0{layout.num_qubits}b"),
                            "re": _fmt(amp.real), "im": _fmt(amp.imag)})
    doc = {
        "input": bits,
        "phi": _fmt(spec.phi),
        "class": spec.particle_class.value,
        "qubits": layout.num_qubits,
        "logical_amplitudes": entries,
        "leakage": _fmt(leakage),
    }
    _emit(doc, args.table)
    return 0


def _cmd_cat(args: argparse.Namespace) -> int:
    spec = AnyonSpec.bosonic(parse_angle(args.phi))
    truncation = Truncation(args.nmax)
    u = parse_complex(args.u)
    state = mirror_cat(u, spec, truncation)
    mirror_u = single_particle_matrix(mirror_network())
    reference = cat_closed_form(mirror_u[1, 0] * u, truncation, mode=2)
    entries = []
    for l in range(args.nmax + 1):
        for k in range(args.nmax + 1):
            amp = state.amps[l, k]
            if abs(amp) > 1e-12:
                entries.append({"occ": [l, k], "re": _fmt(amp.real), "im": _fmt(amp.imag)})
    doc = {
        "input": args.u,
        "phi": _fmt(spec.phi),
        "class": "bosonic",
        "nmax": args.nmax,
        "fidelity": _fmt(state.fidelity(reference)),
        "amplitudes": entries,
    }
    _emit(doc, args.table)
    return 0


def _add_common(parser: argparse.ArgumentParser, phi_default: str | None = None) -> None:
    if phi_default is None:
        parser.add_argument("--phi", required=True, help="exchange phase (radians or pi-expr)")
    else:
        parser.add_argument("--phi", default=phi_default,
                            help=f"exchange phase (default {phi_default})")
    parser.add_argument("--class", dest="particle_class", default="bosonic",
                        choices=["bosonic", "fermionic"], help="particle class")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", dest="table", action="store_false", default=False,
                       help="JSON output (default)")
    group.add_argument("--table", dest="table", action="store_true", help="aligned text table")
    parser.add_argument("--self-check", action="store_true",
                        help="verify numerical invariants; exit 3 on failure")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anyonlin",
        description="linear-optical dynamics of one-dimensional anyons")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hom = sub.add_parser("hom", help="two-particle interference at a beam splitter")
    _add_common(p_hom)
    p_hom.add_argument("--theta", default="pi/4", help="beam splitter angle (default pi/4)")
    p_hom.set_defaults(func=_cmd_hom)

    p_braid = sub.add_parser("braid", help="three-mode braiding network")
    _add_common(p_braid)
    p_braid.add_argument("--input", default="|1,1,0>", help="input ket expression")
    p_braid.add_argument("--no-normalize", action="store_true")
    p_braid.set_defaults(func=_cmd_braid)

    p_run = sub.add_parser("run", help="evolve a state through a network file")
    _add_common(p_run)
    p_run.add_argument("--network", required=True, help="network DSL file")
    p_run.add_argument("--input", required=True, help="input ket expression")
    p_run.add_argument("--no-normalize", action="store_true")
    p_run.add_argument("--dump-unitary", action="store_true",
                       help="include the sector matrix of the whole network")
    p_run.set_defaults(func=_cmd_run)

    p_compile = sub.add_parser("compile", help="compile and simulate a dual-rail circuit")
    p_compile.add_argument("--circuit", help="circuit JSON file")
    p_compile.add_argument("--input", help="logical input bitstring")
    p_compile.add_argument("--haar-check", type=int, default=0, metavar="N",
                           help="compile N random single-qubit targets instead")
    p_compile.add_argument("--seed", type=int, default=0, help="seed for --haar-check")
    p_compile.add_argument("--phi", default="", help="exchange phase for --haar-check")
    group = p_compile.add_mutually_exclusive_group()
    group.add_argument("--json", dest="table", action="store_false", default=False)
    group.add_argument("--table", dest="table", action="store_true")
    p_compile.add_argument("--self-check", action="store_true")
    p_compile.set_defaults(func=_cmd_compile)

    p_cat = sub.add_parser("cat", help="cat state from the mirror at phi = pi")
    p_cat.add_argument("--u", required=True, help="coherent amplitude (complex literal)")
    p_cat.add_argument("--phi", default="pi", help="exchange phase (must be pi)")
    p_cat.add_argument("--nmax", type=int, default=40, help="per-mode Fock cutoff")
    group = p_cat.add_mutually_exclusive_group()
    group.add_argument("--json", dest="table", action="store_false", default=False)
    group.add_argument("--table", dest="table", action="store_true")
    p_cat.add_argument("--self-check", action="store_true")
    p_cat.set_defaults(func=_cmd_cat)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ArithmeticError as err:
        print(f"anyonlin: self-check failed: {err}", file=sys.stderr)
        return 3
    except (CliError, ValueError) as err:
        print(f"anyonlin: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
