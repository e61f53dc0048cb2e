"""Coherent states of bosonic anyons on a truncated Fock space.

A single anyonic mode obeys the ordinary bosonic algebra, so single-mode
coherent states, displacement operators D(g) = exp(g b† - g* b) and the
coherence functions

    c(n) = <(b†)^n b^n> / <n>^n

behave exactly as in standard quantum optics (full coherence means
c(n) = 1 for all n).  The anyonic exchange phase only shows up with two
or more modes, where it splits the notion of coherence into inequivalent
families over a mode pair (amplitudes u on mode 1, v on mode 2):

* exact coherent states, ordered displacement products
  D1(u) D2(v) |0>  ("less") and  D2(v) D1(u) |0>  ("greater"),
  whose Fock expansion carries a cross phase e^{-i phi k l} in the
  "greater" order and none in the "less" order;

* type-1 / type-2 dynamically coherent states, the orbits of
  single-mode coherent states under two-mode linear optics, with
  occupation-dependent phases

      type 1: e^{-i phi (l k + k (k - 1) / 2)},
      type 2: e^{+i phi l (l - 1) / 2}

  on the |l, k> amplitude.  Linear optics rotates the (u, v) pair of a
  type-1/2 state by the network's single-particle matrix but never maps
  one family into another; the diagonal Kerr unitary exp(i phi n(n-1)/2)
  with n = n_1 + n_2 converts type 1 into type 2 exactly.

At phi = pi the mirror network PS1(pi/2) BS12(pi/2) PS2(pi/2) reflects a
single-mode coherent state into an equal-weight superposition of two
coherent branches, i.e. a cat state.

States here are dense amplitude arrays over a per-mode occupation cutoff
n_max.  All shipped routines keep |amplitude| <= 1 with n_max = 40 by
default, which makes every truncation tail irrelevant at the 1e-8 level.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from math import comb
from typing import Union

import numpy as np

from .fock import AnyonSpec, StateVector, enumerate_sector
from .network import BeamSplitter, Network, PhaseShifter, evolve, single_particle_matrix

__all__ = [
    "DEFAULT_N_MAX",
    "Truncation",
    "DegenerateStateError",
    "NotClosedUnderLinearOpticsError",
    "TruncationRiskWarning",
    "TruncatedState",
    "ExactLess",
    "ExactGreater",
    "Type1",
    "Type2",
    "SingleMode",
    "CoherentFamily",
    "displacement",
    "coherent_amplitudes",
    "coherent_state",
    "generalized_coherent_state",
    "coherence_function",
    "displacement_product_factor",
    "two_mode_family_state",
    "evolve_family",
    "evolve_truncated",
    "kerr_interconvert",
    "mirror_network",
    "mirror_cat",
    "cat_closed_form",
    "deformed_binomial_coeffs",
    "deformed_binomial_prefactor",
    "family_to_jsonable",
    "family_from_jsonable",
]

DEFAULT_N_MAX = 40


class DegenerateStateError(ValueError):
    """Coherence function undefined: the mean occupation vanishes."""


class NotClosedUnderLinearOpticsError(ValueError):
    """Exact coherent families leave their family under linear optics."""


class TruncationRiskWarning(UserWarning):
    """The cutoff is too close to the coherent amplitude for comfort."""


@dataclass(frozen=True)
class Truncation:
    """Per-mode Fock cutoff; amplitudes with any occupation > n_max are dropped."""

    n_max: int = DEFAULT_N_MAX

    def __post_init__(self) -> None:
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")


class TruncatedState:
    """Dense complex amplitudes over one or two cut-off modes.

    ``amps[l]`` (one mode) or ``amps[l, k]`` (two modes) is the amplitude
    on occupation |l> or |l, k>.  Treated as immutable.
    """

    __slots__ = ("amps",)

    def __init__(self, amps: np.ndarray):
        amps = np.asarray(amps, dtype=np.complex128)
        if amps.ndim not in (1, 2):
            raise ValueError("expected a 1- or 2-mode amplitude array")
        if amps.ndim == 2 and amps.shape[0] != amps.shape[1]:
            raise ValueError("two-mode amplitudes must share one cutoff")
        amps.setflags(write=False)
        self.amps = amps

    @property
    def num_modes(self) -> int:
        return self.amps.ndim

    @property
    def n_max(self) -> int:
        return self.amps.shape[0] - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "TruncatedState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return TruncatedState(self.amps / n)

    def overlap(self, other: "TruncatedState") -> complex:
        """<self|other>."""
        if self.amps.shape != other.amps.shape:
            raise ValueError("states live on different truncated spaces")
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "TruncatedState") -> float:
        return abs(self.overlap(other)) ** 2 / (self.norm() ** 2 * other.norm() ** 2)

    def occupations(self, mode: int) -> np.ndarray:
        """Occupation value of each amplitude entry along the given mode."""
        if not 1 <= mode <= self.num_modes:
            raise ValueError(f"mode {mode} outside 1..{self.num_modes}")
        n = np.arange(self.amps.shape[mode - 1])
        if self.num_modes == 1:
            return n
        return n[:, None] if mode == 1 else n[None, :]


def _ladder(n_max: int) -> np.ndarray:
    """Truncated annihilation matrix a with a[n-1, n] = sqrt(n)."""
    a = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    for n in range(1, n_max + 1):
        a[n - 1, n] = math.sqrt(n)
    return a


def displacement(g: complex, truncation: Truncation = Truncation()) -> np.ndarray:
    """Truncated single-mode displacement D(g) = exp(g b† - g* b).

    Built by exponentiating the truncated anti-Hermitian generator
    through its spectral decomposition, so the matrix is exactly unitary
    and D(-g) = D(g)† holds to roundoff; only its action near the cutoff
    boundary deviates from the untruncated operator.  Emits a
    TruncationRiskWarning when |g|^2 > n_max / 4.
    """
    g = complex(g)
    n_max = truncation.n_max
    if abs(g) ** 2 > n_max / 4.0:
        warnings.warn(
            f"|g|^2 = {abs(g) ** 2:.3g} is large for cutoff n_max = {n_max}",
            TruncationRiskWarning, stacklevel=2)
    a = _ladder(n_max)
    herm = -1j * (g * a.conj().T - g.conjugate() * a)
    vals, vecs = np.linalg.eigh(herm)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def coherent_amplitudes(g: complex, n_max: int) -> np.ndarray:
    """Closed-form amplitudes e^{-|g|^2 / 2} g^n / sqrt(n!) up to the cutoff."""
    amps = np.zeros(n_max + 1, dtype=np.complex128)
    amps[0] = math.exp(-0.5 * abs(g) ** 2)
    for n in range(1, n_max + 1):
        amps[n] = amps[n - 1] * g / math.sqrt(n)
    return amps


def coherent_state(g: complex, truncation: Truncation = Truncation()) -> TruncatedState:
    """Single-mode coherent state, normalized after truncation."""
    return TruncatedState(coherent_amplitudes(g, truncation.n_max)).normalized()


def generalized_coherent_state(g: complex, rho, truncation: Truncation = Truncation()
                               ) -> TruncatedState:
    """Coherent state with arbitrary per-occupation phases rho_n.

    The amplitude on |n> is e^{i rho_n} times the standard coherent one;
    any such state has c(n) = 1 at every order.  Missing trailing phases
    are taken to be zero, so rho = [] reproduces ``coherent_state``.
    """
    base = coherent_amplitudes(g, truncation.n_max)
    phases = np.zeros(truncation.n_max + 1)
    rho = np.asarray(rho, dtype=np.float64)
    phases[: min(rho.size, phases.size)] = rho[: phases.size]
    return TruncatedState(base * np.exp(1j * phases)).normalized()


def coherence_function(state: TruncatedState, mode: int, n: int) -> float:
    """n-th order coherence c(n) = <(b†)^n b^n> / <n_mode>^n of one mode.

    Both factors are diagonal in the occupation basis, so only the
    probabilities enter; string phases cancel.  Raises
    DegenerateStateError when the mean occupation vanishes.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    probs = np.abs(state.amps) ** 2
    total = probs.sum()
    occ = state.occupations(mode)
    mean = float((probs * occ).sum() / total)
    if mean <= 0.0:
        raise DegenerateStateError("mean occupation is zero")
    falling = np.ones_like(occ, dtype=np.float64)
    for k in range(n):
        falling = falling * np.maximum(occ - k, 0)
    moment = float((probs * falling).sum() / total)
    return moment / mean ** n


def displacement_product_factor(g: complex, h: complex,
                                truncation: Truncation = Truncation()) -> complex:
    """Scalar lambda with D(g) D(h) = lambda D(g + h) on truncated matrices.

    Measured numerically on the sub-block n <= n_max / 2 (away from
    cutoff edge effects) by least squares, not assumed from any algebra
    convention; with these matrices it comes out as the half-exponent
    form e^{(g h* - h g*) / 2}.
    """
    product = displacement(g, truncation) @ displacement(h, truncation)
    reference = displacement(g + h, truncation)
    block = truncation.n_max // 2 + 1
    pb = product[:block, :block]
    rb = reference[:block, :block]
    return complex(np.vdot(rb, pb) / np.vdot(rb, rb))


@dataclass(frozen=True)
class ExactLess:
    """D1(u) D2(v) |0>: mode-1 displacement applied after mode-2."""

    u: complex
    v: complex


@dataclass(frozen=True)
class ExactGreater:
    """D2(v) D1(u) |0>: opposite displacement order, cross phase e^{-i phi k l}."""

    u: complex
    v: complex


@dataclass(frozen=True)
class Type1:
    """Linear-optics orbit of a mode-1 coherent state."""

    u: complex
    v: complex


@dataclass(frozen=True)
class Type2:
    """Linear-optics orbit of a mode-2 coherent state."""

    u: complex
    v: complex


@dataclass(frozen=True)
class SingleMode:
    """Coherent amplitude g on one mode, vacuum on the other."""

    g: complex
    mode: int

    def __post_init__(self) -> None:
        if self.mode not in (1, 2):
            raise ValueError("mode must be 1 or 2")


CoherentFamily = Union[ExactLess, ExactGreater, Type1, Type2, SingleMode]


def _family_phase(family: CoherentFamily, phi: float, n_max: int) -> np.ndarray:
    l = np.arange(n_max + 1)[:, None]
    k = np.arange(n_max + 1)[None, :]
    if isinstance(family, ExactLess):
        return np.ones((n_max + 1, n_max + 1), dtype=np.complex128)
    if isinstance(family, ExactGreater):
        return np.exp(-1j * phi * k * l)
    if isinstance(family, Type1):
        return np.exp(-1j * phi * (l * k + k * (k - 1) / 2.0))
    if isinstance(family, Type2):
        return np.exp(1j * phi * l * (l - 1) / 2.0)
    raise TypeError(f"no phase profile for {family!r}")


def two_mode_family_state(family: CoherentFamily, spec: AnyonSpec,
                          truncation: Truncation = Truncation()) -> TruncatedState:
    """Two-mode amplitudes of a coherent family, normalized after truncation.

    Built directly from the double-sum expansion: the |l, k> amplitude is
    the family phase times u^l v^k / sqrt(l! k!).
    """
    if spec.is_fermionic:
        raise ValueError("coherent families are defined for bosonic anyons")
    n_max = truncation.n_max
    if isinstance(family, SingleMode):
        axis = coherent_amplitudes(family.g, n_max)
        vac = np.zeros(n_max + 1, dtype=np.complex128)
        vac[0] = 1.0
        amps = np.outer(axis, vac) if family.mode == 1 else np.outer(vac, axis)
        return TruncatedState(amps).normalized()
    raw_u = coherent_amplitudes(family.u, n_max)
    raw_v = coherent_amplitudes(family.v, n_max)
    base = np.outer(raw_u, raw_v)
    return TruncatedState(base * _family_phase(family, spec.phi, n_max)).normalized()


def evolve_family(family: CoherentFamily, network: Network, spec: AnyonSpec
                  ) -> CoherentFamily:
    """Image of a dynamically coherent family under a two-mode network.

    The (u, v) amplitude pair rotates by the network's single-particle
    matrix while the family tag is preserved; a single-mode state enters
    the type-1 orbit from mode 1 and the type-2 orbit from mode 2.
    Exact coherent families are not closed under linear optics and
    raise NotClosedUnderLinearOpticsError.
    """
    if spec.is_fermionic:
        raise ValueError("coherent families are defined for bosonic anyons")
    if network.m != 2:
        raise ValueError("family evolution is defined over two-mode networks")
    if isinstance(family, (ExactLess, ExactGreater)):
        raise NotClosedUnderLinearOpticsError(
            "ordered displacement products do not stay in their family under linear optics")
    if isinstance(family, SingleMode):
        pair = (family.g, 0.0) if family.mode == 1 else (0.0, family.g)
        family = Type1(*pair) if family.mode == 1 else Type2(*pair)
    a = single_particle_matrix(network)
    u = a[0, 0] * family.u + a[0, 1] * family.v
    v = a[1, 0] * family.u + a[1, 1] * family.v
    return type(family)(u, v)


def evolve_truncated(state: TruncatedState, network: Network, spec: AnyonSpec
                     ) -> TruncatedState:
    """Brute-force evolution of a two-mode truncated state, shell by shell.

    Phase shifters and beam splitters conserve total particle number, so
    each total-occupation shell evolves independently through the exact
    sector machinery.  Amplitude pushed past the per-mode cutoff (only
    possible on shells above n_max) is dropped with a warning.
    """
    if state.num_modes != 2:
        raise ValueError("expected a two-mode state")
    if network.m != 2:
        raise ValueError("expected a two-mode network")
    n_max = state.n_max
    out = np.zeros_like(state.amps)
    lost = 0.0
    for n in range(0, 2 * n_max + 1):
        entries = {}
        for l in range(max(0, n - n_max), min(n, n_max) + 1):
            amp = state.amps[l, n - l]
            if amp != 0.0:
                entries[(l, n - l)] = amp
        if not entries:
            continue
        sector = enumerate_sector(2, n, spec)
        evolved = evolve(network, StateVector(sector, entries))
        for (l, k), amp in evolved.amps.items():
            if l <= n_max and k <= n_max:
                out[l, k] += amp
            else:
                lost += abs(amp) ** 2
    if lost > 1e-12:
        warnings.warn(f"dropped probability {lost:.3g} past the cutoff",
                      TruncationRiskWarning, stacklevel=2)
    return TruncatedState(out)


def kerr_interconvert(state: TruncatedState, spec: AnyonSpec,
                      truncation: Truncation | None = None) -> TruncatedState:
    """Apply the Kerr unitary exp(i phi n (n - 1) / 2), n = n_1 + n_2.

    Diagonal in the occupation basis; maps a type-1 family state onto
    the type-2 state with the same (u, v).
    """
    if state.num_modes != 2:
        raise ValueError("expected a two-mode state")
    if truncation is not None and truncation.n_max != state.n_max:
        raise ValueError("truncation disagrees with the state's cutoff")
    n = np.arange(state.n_max + 1)
    total = n[:, None] + n[None, :]
    phase = np.exp(1j * spec.phi * total * (total - 1) / 2.0)
    return TruncatedState(state.amps * phase)


def mirror_network() -> Network:
    """The two-mode mirror: PS2(pi/2), then BS12(pi/2), then PS1(pi/2).

    Its single-particle matrix is [[0, -i], [i, 0]], i.e. it reflects
    mode 1 into mode 2 with amplitude u -> i u and mode 2 into mode 1
    with v -> -i v.
    """
    half_pi = math.pi / 2.0
    return Network(2, (
        PhaseShifter(2, half_pi),
        BeamSplitter(1, 2, half_pi),
        PhaseShifter(1, half_pi),
    ))


def cat_closed_form(w: complex, truncation: Truncation = Truncation(),
                    mode: int = 2) -> TruncatedState:
    """Normalized e^{i pi/4} |-i w> - e^{3 i pi/4} |+i w> on one mode.

    This is the two-branch resolution of a type-1 or type-2 profile at
    phi = pi, with the quarter roots of -1 on the principal branch.
    """
    n_max = truncation.n_max
    branch = (cmath.exp(1j * math.pi / 4.0) * coherent_amplitudes(-1j * w, n_max)
              - cmath.exp(3j * math.pi / 4.0) * coherent_amplitudes(1j * w, n_max))
    vac = np.zeros(n_max + 1, dtype=np.complex128)
    vac[0] = 1.0
    amps = np.outer(branch, vac) if mode == 1 else np.outer(vac, branch)
    return TruncatedState(amps).normalized()


def mirror_cat(u: complex, spec: AnyonSpec,
               truncation: Truncation = Truncation(), mode: int = 1) -> TruncatedState:
    """Cat state produced by the mirror at phi = pi on a coherent input.

    Evolves the single-mode coherent state through the mirror network by
    brute force, then checks fidelity >= 1 - 1e-8 against the two-branch
    closed form at the reflected amplitude (i u onto mode 2 for a mode-1
    input, -i u onto mode 1 for a mode-2 input); an ArithmeticError
    signals a failed self-check.  Returns the evolved state.
    """
    if spec.is_fermionic:
        raise ValueError("the mirror cat construction needs bosonic anyons")
    if not math.isclose(spec.phi, math.pi, abs_tol=1e-12):
        raise ValueError("the two-branch cat form holds at phi = pi only")
    mirror = mirror_network()
    state = two_mode_family_state(SingleMode(u, mode), spec, truncation)
    evolved = evolve_truncated(state, mirror, spec).normalized()
    a = single_particle_matrix(mirror)
    w = a[1, 0] * u if mode == 1 else a[0, 1] * u
    reference = cat_closed_form(w, truncation, mode=2 if mode == 1 else 1)
    fidelity = evolved.fidelity(reference)
    if fidelity < 1.0 - 1e-8:
        raise ArithmeticError(
            f"mirror output missed the cat closed form: fidelity {fidelity!r}")
    return evolved


def deformed_binomial_coeffs(n: int, phi: float) -> np.ndarray:
    """Coefficients of the anyonic binomial expansion.

    prod_{k=0}^{n-1} (e^{i k phi} a b†_i + b b†_j)  expands into
    sum_l  C(n, l) e^{i phi l (l - 1) / 2} (a b†_i)^l (b b†_j)^{n-l};
    the returned entry l is the coefficient of the l-th monomial.  At
    phi = 0 these are the ordinary binomial coefficients.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return np.array([comb(n, l) * cmath.exp(1j * phi * l * (l - 1) / 2.0)
                     for l in range(n + 1)], dtype=np.complex128)


def deformed_binomial_prefactor(n: int, phi: float) -> complex:
    """Phase relating the two ordered product forms.

    prod_{k} (a b†_i + e^{-i k phi} b b†_j)
        = e^{-i phi n (n - 1) / 2} prod_{k} (e^{i k phi} a b†_i + b b†_j).
    """
    return cmath.exp(-1j * phi * n * (n - 1) / 2.0)


_FAMILY_TAGS = {"exact_less": ExactLess, "exact_greater": ExactGreater,
                "type1": Type1, "type2": Type2, "single": SingleMode}


def _complex_doc(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def family_to_jsonable(family: CoherentFamily,
                       truncation: Truncation = Truncation()) -> dict:
    """JSON document for a coherent-family spec, e.g.
    {"family": "type1", "u": {"re": 0.5, "im": 0}, "v": ..., "nmax": 40}."""
    tag = {v: k for k, v in _FAMILY_TAGS.items()}[type(family)]
    doc: dict = {"family": tag}
    if isinstance(family, SingleMode):
        doc["g"] = _complex_doc(complex(family.g))
        doc["mode"] = family.mode
    else:
        doc["u"] = _complex_doc(complex(family.u))
        doc["v"] = _complex_doc(complex(family.v))
    doc["nmax"] = truncation.n_max
    return doc


def family_from_jsonable(doc: dict) -> tuple[CoherentFamily, Truncation]:
    """Inverse of ``family_to_jsonable``."""
    try:
        kind = _FAMILY_TAGS[doc["family"]]
        truncation = Truncation(int(doc.get("nmax", DEFAULT_N_MAX)))

        def as_complex(key: str) -> complex:
            entry = doc[key]
            return complex(float(entry["re"]), float(entry["im"]))

        if kind is SingleMode:
            family: CoherentFamily = SingleMode(as_complex("g"), int(doc["mode"]))
        else:
            family = kind(as_complex("u"), as_complex("v"))
    except (KeyError, TypeError, ValueError) as err:
        raise ValueError(f"bad coherent-family document: {err}") from None
    return family, truncation
