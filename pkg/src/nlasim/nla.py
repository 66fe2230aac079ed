"""Closed-form noiseless-linear-amplifier operators and coherent-state runs.

Two heralded amplifier families are covered, each acting diagonally in the
Fock basis once the ancilla and detection pattern are fixed:

* quantum scissors (QS): N two-level scissors units between a symmetric
  N-splitter pair; amplitude gain g = sqrt((1-T)/T), output support
  truncated at N photons;
* photon catalysis (PC): N single-photon catalysis units in the same
  parallel arrangement, gain g = (1-2T)/sqrt(T) onto the phase-flipped
  target (amplifying for T < 1/4), plus the N-fold cascaded variant.

The alternating sums in the parallel-catalysis coefficients are evaluated in
exact rational arithmetic before the final float rounding, so no
catastrophic cancellation occurs anywhere in the supported parameter range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .fock import (DiagonalOperator, PureStateVector, coherent_state,
                   guard_truncation)

NlaKind = Literal["QS", "PC", "CascadedPC"]

VALID_KINDS = ("QS", "PC", "CascadedPC")


@dataclass(frozen=True)
class NlaSpec:
    """Amplifier family, number of units N and internal transmissivity T."""

    kind: NlaKind
    n_units: int
    transmissivity: float

    def __post_init__(self):
        if self.kind not in VALID_KINDS:
            raise ValueError(f"kind must be one of {VALID_KINDS}")
        if self.n_units < 1:
            raise ValueError("n_units must be >= 1")
        if not 0.0 < self.transmissivity < 1.0:
            raise ValueError("transmissivity must lie strictly in (0, 1)")


@dataclass(frozen=True)
class AmplifyResult:
    """Heralded output state, success probability and optional fidelity."""

    out_state: PureStateVector
    success_prob: float
    fidelity: float | None = None


def qs_gain(transmissivity: float) -> float:
    """Amplitude gain sqrt((1-T)/T) of the quantum-scissors amplifier."""
    t = transmissivity
    if not 0.0 < t < 1.0:
        raise ValueError("transmissivity must lie strictly in (0, 1)")
    return math.sqrt((1.0 - t) / t)


def pc_gain(transmissivity: float) -> float:
    """Amplitude gain (1-2T)/sqrt(T) of the photon-catalysis amplifier.

    Exceeds 1 (true amplification) only for T < 1/4; the heralded target is
    the phase-flipped coherent state |-g alpha>.
    """
    t = transmissivity
    if not 0.0 < t < 1.0:
        raise ValueError("transmissivity must lie strictly in (0, 1)")
    return (1.0 - 2.0 * t) / math.sqrt(t)


def equal_gain_transmissivity(kind: str, gain: float) -> float:
    """Transmissivity at which the given amplifier reaches amplitude ``gain``.

    For QS this inverts g = sqrt((1-T)/T); for PC it takes the smaller root
    of 4 T^2 - (4 + g^2) T + 1 = 0, which lies in (0, 1/4) for g > 1.
    """
    if gain <= 0.0:
        raise ValueError("gain must be positive")
    if kind == "QS":
        return 1.0 / (1.0 + gain * gain)
    if kind in ("PC", "CascadedPC"):
        b = 4.0 + gain * gain
        return (b - math.sqrt(b * b - 16.0)) / 8.0
    raise ValueError(f"kind must be one of {VALID_KINDS}")


def qs_nla_diagonal(n_units: int, transmissivity: float,
                    n_max: int) -> DiagonalOperator:
    """Fock coefficients of the N-unit parallel quantum-scissors amplifier.

    d_n = sqrt(T)^N * N!/((N-n)! N^n) * g^n for n <= N and zero above; the
    combinatorial factor is evaluated with exact integers.
    """
    n_units = int(n_units)
    t = transmissivity
    if n_units < 1:
        raise ValueError("n_units must be >= 1")
    if not 0.0 < t < 1.0:
        raise ValueError("transmissivity must lie strictly in (0, 1)")
    coeffs = np.zeros(n_max + 1)
    for n in range(min(n_units, n_max) + 1):
        comb_factor = Fraction(math.perm(n_units, n), n_units ** n)
        # sqrt(T)^N g^n = T^((N-n)/2) (1-T)^(n/2)
        coeffs[n] = float(comb_factor) * t ** ((n_units - n) / 2.0) \
            * (1.0 - t) ** (n / 2.0)
    return DiagonalOperator(coeffs)


def _pc_sum(n_units: int, n: int, p: Fraction) -> Fraction:
    # sum_j C(N,j) n!/(n-j)! (p/N)^j, exact; empty terms drop via perm() = 0
    total = Fraction(0)
    for j in range(min(n_units, n) + 1):
        total += math.comb(n_units, j) * math.perm(n, j) * \
            (p / n_units) ** j
    return total


def pc_nla_diagonal(n_units: int, transmissivity: float,
                    n_max: int) -> DiagonalOperator:
    """Fock coefficients of the N-unit parallel photon-catalysis amplifier.

    d_n = sqrt(T)^(N+n) * sum_j C(N,j) n!/(n-j)! (p/N)^j with p = (T-1)/T;
    the alternating sum is done in exact rationals (p taken at the binary
    float value of T) and rounded once at the end.

    The 1/N^n of the (p/N)^j and permutation factors is the splitter
    fan-out normalisation; it is pinned against the explicit path
    enumeration (oracle.pc_nla_multinomial), which carries that factor as a
    literal /N^n.
    """
    n_units = int(n_units)
    t = transmissivity
    if n_units < 1:
        raise ValueError("n_units must be >= 1")
    if not 0.0 < t < 1.0:
        raise ValueError("transmissivity must lie strictly in (0, 1)")
    tf = Fraction(t)
    p = (tf - 1) / tf
    root_t = math.sqrt(t)
    coeffs = np.empty(n_max + 1)
    for n in range(n_max + 1):
        coeffs[n] = root_t ** (n_units + n) * float(_pc_sum(n_units, n, p))
    return DiagonalOperator(coeffs)


def single_pc_diagonal(transmissivity: float, n_max: int) -> DiagonalOperator:
    """One catalysis unit: d_n = sqrt(T) (1 - n (1-T)/T) sqrt(T)^n."""
    t = transmissivity
    if not 0.0 < t < 1.0:
        raise ValueError("transmissivity must lie strictly in (0, 1)")
    n = np.arange(n_max + 1)
    return DiagonalOperator(
        math.sqrt(t) * (1.0 - n * (1.0 - t) / t) * math.sqrt(t) ** n)


def cascaded_pc_diagonal(n_units: int, transmissivity: float,
                         n_max: int) -> DiagonalOperator:
    """N catalysis units in series: the single-unit diagonal raised to N."""
    if n_units < 1:
        raise ValueError("n_units must be >= 1")
    single = single_pc_diagonal(transmissivity, n_max)
    return DiagonalOperator(single.coeffs ** int(n_units))


def nla_diagonal(spec: NlaSpec, n_max: int) -> DiagonalOperator:
    """Dispatch the closed-form diagonal for an amplifier specification."""
    if spec.kind == "QS":
        return qs_nla_diagonal(spec.n_units, spec.transmissivity, n_max)
    if spec.kind == "PC":
        return pc_nla_diagonal(spec.n_units, spec.transmissivity, n_max)
    return cascaded_pc_diagonal(spec.n_units, spec.transmissivity, n_max)


def fidelity_to_coherent(state: PureStateVector, beta: complex) -> float:
    """|<beta|psi>|^2 against a coherent state representable at psi's cutoff."""
    target = coherent_state(beta, state.n_max)
    return float(abs(np.vdot(target.amps, state.amps)) ** 2)


def _target_sign(spec: NlaSpec) -> float:
    # PC heralds onto the phase-flipped target; a cascade flips once per unit
    if spec.kind == "QS":
        return 1.0
    if spec.kind == "PC":
        return -1.0
    return (-1.0) ** spec.n_units


def amplify_coherent(alpha: complex, spec: NlaSpec, n_max: int = 30,
                     target_gain: float | None = None) -> AmplifyResult:
    """Run one heralded amplifier on |alpha> and report the heralded output.

    ``success_prob`` is the squared norm of the unnormalised heralded state.
    When ``target_gain`` is given, ``fidelity`` is computed against the
    amplified coherent target with the sign convention of the family
    (+g alpha for QS, -g alpha for PC, (-1)^N g alpha for the cascade).
    """
    psi = coherent_state(alpha, n_max)
    diag = nla_diagonal(spec, n_max)
    unnorm = diag.coeffs * psi.amps
    prob = float(np.vdot(unnorm, unnorm).real)
    if prob <= 0.0:
        raise ValueError("herald has zero probability at these parameters")
    out = PureStateVector(unnorm / math.sqrt(prob))
    guard_truncation(out.populations(), what="amplified state")
    fid = None
    if target_gain is not None:
        beta = _target_sign(spec) * target_gain * alpha
        fid = fidelity_to_coherent(out, beta)
    return AmplifyResult(out, prob, fid)
