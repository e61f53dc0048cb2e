"""Dual-rail qubits on anyonic modes and gate compilation to networks.

A logical qubit is one particle shared by a pair of neighboring modes,
|0_L> = |1,0> and |1_L> = |0,1>.  On a pair, a phase shifter on the
second mode is a logical Z rotation and a beam splitter across the pair
is a logical X rotation, so any single-qubit gate compiles into the
PS-BS-PS sandwich of the ZXZ Euler decomposition

    U = e^{i alpha} e^{-i beta Z / 2} e^{-i gamma X / 2} e^{-i delta Z / 2}.

Between every adjacent qubit pair the layout inserts one auxiliary mode
holding exactly one particle.  Applying the three-mode braiding network
to (second mode of the left qubit, auxiliary, first mode of the right
qubit) turns the lattice Aharonov-Bohm phase into the deterministic
entangling gate CP(phi) = diag(1, 1, 1, e^{i phi}); the auxiliary
particle returns to its mode on every logical input and never leaves
the circuit.  This works for both particle classes and any phi != 0.

Angle conventions used by the compiler (fixed once, verified against
random targets): PS_2(tau) acts as diag(1, e^{i tau}) ~ Rz(tau) up to
global phase, and BS_12(theta) acts as exp(i theta X), so Rx(gamma) is
realized with theta = -gamma / 2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .fock import AnyonSpec, StateVector, enumerate_sector, number_expectation
from .network import BeamSplitter, Network, PhaseShifter, build_braiding_network, evolve

__all__ = [
    "CompileError",
    "LogicalLayout",
    "Rz",
    "Rx",
    "U1",
    "CP",
    "LogicalGate",
    "encode",
    "decode",
    "euler_zxz",
    "compile_single_qubit",
    "compile_cp",
    "compile_gate",
    "compile_circuit",
    "run_circuit",
    "simulate_circuit",
    "logical_unitary",
]


class CompileError(ValueError):
    """Gate cannot be compiled on this layout (e.g. non-adjacent CP)."""


@dataclass(frozen=True)
class LogicalLayout:
    """Mode bookkeeping for n dual-rail qubits with interleaved auxiliaries.

    Qubit q (1-based) lives on modes (3q - 2, 3q - 1); mode 3q is the
    auxiliary sitting between qubits q and q + 1.  Total modes
    m = 3n - 1, total particles n_qubits + n_aux, conserved throughout.
    """

    num_qubits: int

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("need at least one qubit")

    @property
    def m(self) -> int:
        return 3 * self.num_qubits - 1

    @property
    def qubit_modes(self) -> tuple[tuple[int, int], ...]:
        return tuple((3 * q - 2, 3 * q - 1) for q in range(1, self.num_qubits + 1))

    @property
    def aux_modes(self) -> tuple[int, ...]:
        return tuple(3 * q for q in range(1, self.num_qubits))

    @property
    def n_particles(self) -> int:
        return self.num_qubits + self.num_qubits - 1

    def code_occupation(self, bits: str) -> tuple[int, ...]:
        """Occupation vector of the code-space state |bits>_L."""
        if len(bits) != self.num_qubits or any(b not in "01" for b in bits):
            raise ValueError(f"bitstring must be {self.num_qubits} characters of 0/1")
        occ = [0] * self.m
        for q, bit in enumerate(bits, start=1):
            lo, hi = self.qubit_modes[q - 1]
            occ[(hi if bit == "1" else lo) - 1] = 1
        for aux in self.aux_modes:
            occ[aux - 1] = 1
        return tuple(occ)


@dataclass(frozen=True)
class Rz:
    qubit: int
    beta: float


@dataclass(frozen=True)
class Rx:
    qubit: int
    gamma: float


@dataclass(frozen=True)
class U1:
    """General single-qubit gate by ZXZ Euler angles (alpha is global phase)."""

    qubit: int
    alpha: float
    beta: float
    gamma: float
    delta: float


@dataclass(frozen=True)
class CP:
    """Controlled phase diag(1, 1, 1, e^{i phi}); phi is the exchange phase."""

    qubit_a: int
    qubit_b: int


LogicalGate = Union[Rz, Rx, U1, CP]


def encode(spec: AnyonSpec, layout: LogicalLayout, bits: str) -> StateVector:
    """Product Fock state for the logical bitstring, auxiliaries occupied."""
    sector = enumerate_sector(layout.m, layout.n_particles, spec)
    return StateVector.basis_state(sector, layout.code_occupation(bits))


def decode(layout: LogicalLayout, state: StateVector) -> tuple[np.ndarray, float]:
    """Amplitudes on the code space plus leakage 1 - sum |amp|^2.

    The code space consists of dual-rail basis states with every
    auxiliary back at occupation one; anything else counts as leakage
    (the state is assumed normalized).
    """
    n = layout.num_qubits
    amps = np.zeros(2 ** n, dtype=np.complex128)
    for idx in range(2 ** n):
        bits = format(idx, f"0{n}b")
        amps[idx] = state.amplitude(layout.code_occupation(bits))
    leakage = 1.0 - float(np.sum(np.abs(amps) ** 2))
    return amps, leakage


def euler_zxz(u: np.ndarray) -> tuple[float, float, float, float]:
    """ZXZ Euler angles (alpha, beta, gamma, delta) of a 2x2 unitary.

    Satisfies u = e^{i alpha} Rz(beta) Rx(gamma) Rz(delta) up to a
    possible overall sign from the determinant square root, which a
    global-phase comparison absorbs.
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    alpha = cmath.phase(det) / 2.0
    su = u * cmath.exp(-1j * alpha)
    # su is special unitary: [[a, b], [-conj(b), conj(a)]] with
    # a = e^{-i (beta + delta) / 2} cos(gamma / 2),
    # b = -i e^{-i (beta - delta) / 2} sin(gamma / 2).
    gamma = 2.0 * math.atan2(abs(su[1, 0]), abs(su[1, 1]))
    sum_bd = 2.0 * cmath.phase(su[1, 1]) if abs(su[1, 1]) > 1e-12 else 0.0
    diff_bd = 2.0 * (cmath.phase(su[1, 0]) + math.pi / 2.0) \
        if abs(su[1, 0]) > 1e-12 else 0.0
    beta = (sum_bd + diff_bd) / 2.0
    delta = (sum_bd - diff_bd) / 2.0
    return alpha, beta, gamma, delta


def _check_qubit(layout: LogicalLayout, qubit: int) -> None:
    if not 1 <= qubit <= layout.num_qubits:
        raise CompileError(f"qubit {qubit} outside 1..{layout.num_qubits}")


def compile_single_qubit(layout: LogicalLayout, qubit: int, alpha: float,
                         beta: float, gamma: float, delta: float) -> Network:
    """PS-BS-PS network realizing the ZXZ gate on one qubit pair.

    alpha only contributes a global phase and is dropped.
    """
    _check_qubit(layout, qubit)
    lo, hi = layout.qubit_modes[qubit - 1]
    return Network(layout.m, (
        PhaseShifter(hi, delta),
        BeamSplitter(lo, hi, -gamma / 2.0),
        PhaseShifter(hi, beta),
    ))


def compile_cp(layout: LogicalLayout, qubit_a: int, qubit_b: int) -> Network:
    """Braiding network between adjacent qubits through their auxiliary.

    The three braided modes are (second mode of qubit_a, auxiliary,
    first mode of qubit_b).  Non-adjacent qubits raise CompileError:
    routing is out of scope, chain CPs or compile SWAPs explicitly.
    """
    _check_qubit(layout, qubit_a)
    _check_qubit(layout, qubit_b)
    if qubit_b != qubit_a + 1:
        raise CompileError(
            f"CP needs adjacent qubits sharing an auxiliary, got {qubit_a}, {qubit_b}")
    braid_modes = (layout.qubit_modes[qubit_a - 1][1],
                   layout.aux_modes[qubit_a - 1],
                   layout.qubit_modes[qubit_b - 1][0])
    elements = []
    for el in build_braiding_network().elements:
        if isinstance(el, PhaseShifter):
            elements.append(PhaseShifter(braid_modes[el.mode - 1], el.tau))
        else:
            elements.append(BeamSplitter(braid_modes[el.mode_i - 1],
                                         braid_modes[el.mode_j - 1], el.theta))
    return Network(layout.m, tuple(elements))


def compile_gate(layout: LogicalLayout, gate: LogicalGate) -> Network:
    if isinstance(gate, Rz):
        return compile_single_qubit(layout, gate.qubit, 0.0, gate.beta, 0.0, 0.0)
    if isinstance(gate, Rx):
        return compile_single_qubit(layout, gate.qubit, 0.0, 0.0, gate.gamma, 0.0)
    if isinstance(gate, U1):
        return compile_single_qubit(layout, gate.qubit, gate.alpha, gate.beta,
                                    gate.gamma, gate.delta)
    if isinstance(gate, CP):
        return compile_cp(layout, gate.qubit_a, gate.qubit_b)
    raise CompileError(f"unknown gate {gate!r}")


def compile_circuit(layout: LogicalLayout, gates: Sequence[LogicalGate]) -> Network:
    """Concatenation of the per-gate networks, in circuit order."""
    elements: list = []
    for gate in gates:
        elements.extend(compile_gate(layout, gate).elements)
    return Network(layout.m, tuple(elements))


def run_circuit(spec: AnyonSpec, layout: LogicalLayout,
                gates: Sequence[LogicalGate], bits: str) -> StateVector:
    """Physical state after evolving the encoded input through the circuit."""
    return evolve(compile_circuit(layout, gates), encode(spec, layout, bits))


def simulate_circuit(spec: AnyonSpec, layout: LogicalLayout,
                     gates: Sequence[LogicalGate], bits: str) -> np.ndarray:
    """Logical amplitudes after the compiled circuit on the given input."""
    amps, _leak = decode(layout, run_circuit(spec, layout, gates, bits))
    return amps


def logical_unitary(spec: AnyonSpec, layout: LogicalLayout,
                    gates: Sequence[LogicalGate]) -> np.ndarray:
    """2^n x 2^n matrix of the compiled circuit on the code space."""
    n = layout.num_qubits
    network = compile_circuit(layout, gates)
    mat = np.zeros((2 ** n, 2 ** n), dtype=np.complex128)
    for col in range(2 ** n):
        bits = format(col, f"0{n}b")
        out = evolve(network, encode(spec, layout, bits))
        mat[:, col], _ = decode(layout, out)
    return mat


def auxiliary_occupations(layout: LogicalLayout, state: StateVector) -> list[float]:
    """Expectation of each auxiliary mode number in the given state."""
    return [number_expectation(state, aux) for aux in layout.aux_modes]
