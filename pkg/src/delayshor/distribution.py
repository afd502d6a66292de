"""Closed-form outcome distributions for delayed order finding.

Conditioned on auxiliary outcome a**s mod N, the work register holds the
w+1 states {l*r + s : l = 0..w} with w = floor((q-s-1)/r), each carrying
its accumulated dynamical phase. The Fourier transform then interferes
them, and outcome k appears with probability

    P(k | s) = |sum_l exp(-i*phi(l*r+s) + 2*pi*i*l*k*r/q)|^2 / (q*(w+1)).

This module evaluates that sum directly (no FFT; the state-vector pipeline
in `statevector` is the independent cross-check), plus the derived
success-probability bookkeeping and the two-qubit closed form.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NormalizationError
from .number_theory import FactoringInstance, continued_fraction_order_candidates
from .phase_model import PhaseConvention, all_state_phases

NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class FixedResidue:
    """Condition on the auxiliary register having collapsed to a**s mod N."""

    s: int


@dataclass(frozen=True)
class AveragedOverS:
    """Weight each residue class by its Born probability (w_s+1)/q.

    This is the distribution an experiment that ignores the auxiliary
    outcome actually observes.
    """


Conditioning = FixedResidue | AveragedOverS


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probability vector over work-register outcomes k in [0, q)."""

    q: int
    probs: np.ndarray
    conditioning: Conditioning

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=float)
        probs.setflags(write=False)
        object.__setattr__(self, 'probs', probs)
        if probs.shape != (self.q,):
            raise ValueError(f'expected {self.q} probabilities, got shape {probs.shape}')
        if np.any(probs < 0):
            raise NormalizationError('negative probability in outcome distribution')
        total = math.fsum(probs.tolist())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(f'probabilities sum to {total!r}, expected 1')


class CorrectSetDefinition(enum.Enum):
    NEAREST_MULTIPLE = 'nearest-multiple'
    CONTINUED_FRACTION = 'continued-fraction'


@dataclass(frozen=True)
class CorrectSet:
    """Outcomes counted as successful order-finding results."""

    kes: tuple[int, ...]
    definition_used: CorrectSetDefinition


@functools.lru_cache(maxsize=64)
def _fourier_kernel(q: int, r: int, num_terms: int) -> np.ndarray:
    """Matrix exp(2*pi*i*l*k*r/q), shape (num_terms, q), cached read-only."""
    l = np.arange(num_terms)
    k = np.arange(q)
    kernel = np.exp(2j * np.pi * (r / q) * np.outer(l, k))
    kernel.setflags(write=False)
    return kernel


def _residue_probs(q: int, r: int, s: int, phases: np.ndarray) -> np.ndarray:
    """P(k | s) for all k, given the per-state phase vector over [0, q)."""
    states = np.arange(s, q, r)
    coeff = np.exp(-1j * phases[states])
    kernel = _fourier_kernel(q, r, len(states))
    # numpy's axis reduction is pairwise, keeping rounding bounded and the
    # accumulation order fixed per k.
    amplitudes = np.sum(coeff[:, None] * kernel, axis=0)
    return (amplitudes.real**2 + amplitudes.imag**2) / (q * len(states))


def outcome_distribution(
    inst: FactoringInstance,
    deltas,
    tau: float,
    conditioning: Conditioning = AveragedOverS(),
    convention: PhaseConvention = PhaseConvention.HAMMING,
) -> OutcomeDistribution:
    """Measurement distribution over k for a delayed run.

    Args:
        inst: the order-finding instance.
        deltas: resolved per-qubit work-register splittings, length inst.L.
        tau: total effective delay before the final readout.
        conditioning: FixedResidue(s) for one auxiliary outcome, or
            AveragedOverS() for the Born-weighted mixture.
        convention: phase bookkeeping convention.

    Returns:
        An OutcomeDistribution (validated non-negative, normalized to 1e-10).

    Raises:
        ValueError: wrong deltas length, negative tau, or s out of range.
    """
    deltas = np.asarray(deltas, dtype=float)
    if len(deltas) != inst.L:
        raise ValueError(f'expected {inst.L} splittings, got {len(deltas)}')
    if not (math.isfinite(tau) and tau >= 0):
        raise ValueError(f'tau must be finite and >= 0, got {tau}')

    q, r = inst.q, inst.r
    phases = all_state_phases(deltas, tau, convention)
    # With a small L override r may exceed q; residue classes s >= q then
    # hold no work states and have zero Born weight.
    populated = min(r, q)
    if isinstance(conditioning, FixedResidue):
        if not 0 <= conditioning.s < r:
            raise ValueError(f's must be in [0, {r}), got {conditioning.s}')
        if conditioning.s >= populated:
            raise ValueError(
                f'residue class s={conditioning.s} has no support for q={q}'
            )
        probs = _residue_probs(q, r, conditioning.s, phases)
    else:
        probs = np.zeros(q)
        for s in range(populated):
            weight = len(range(s, q, r)) / q  # Born probability (w_s+1)/q
            probs += weight * _residue_probs(q, r, s, phases)
    return OutcomeDistribution(q=q, probs=probs, conditioning=conditioning)


def _round_half_down(num: int, den: int) -> int:
    """Nearest integer to num/den with exact-half ties rounded down."""
    quotient, rem = divmod(num, den)
    return quotient + 1 if 2 * rem > den else quotient


def correct_set(
    inst: FactoringInstance,
    definition: CorrectSetDefinition = CorrectSetDefinition.NEAREST_MULTIPLE,
) -> CorrectSet:
    """The outcomes counted as correct for this instance.

    NEAREST_MULTIPLE takes the r integers nearest j*q/r (ties down); it is
    the convention used for all figure reproduction here. CONTINUED_FRACTION
    instead keeps every k whose continued-fraction convergents of k/q
    include denominator exactly r, plus k=0. k=0 is conventionally counted
    correct in both, though it carries no order information.

    Returns:
        CorrectSet with sorted, distinct outcomes.
    """
    if definition is CorrectSetDefinition.NEAREST_MULTIPLE:
        kes = sorted({_round_half_down(j * inst.q, inst.r) % inst.q for j in range(inst.r)})
        if len(kes) != inst.r:
            raise ValueError(
                f'nearest multiples of q/r collide for q={inst.q}, r={inst.r}; '
                'work register too small'
            )
    else:
        kes = [0]
        for k in range(1, inst.q):
            if inst.r in continued_fraction_order_candidates(k, inst.q, inst.N):
                kes.append(k)
    return CorrectSet(kes=tuple(kes), definition_used=definition)


def success_probabilities(
    dist: OutcomeDistribution,
    cset: CorrectSet,
) -> tuple[dict[int, float], float]:
    """Per-outcome success probabilities p_e(k_e) and their total P_e.

    Raises:
        ValueError: if any k_e is outside [0, dist.q).
    """
    for ke in cset.kes:
        if not 0 <= ke < dist.q:
            raise ValueError(f'correct outcome {ke} out of range [0, {dist.q})')
    pe_per_k = {ke: float(dist.probs[ke]) for ke in cset.kes}
    Pe = math.fsum(pe_per_k.values())
    return pe_per_k, Pe


def analytic_n4(tau: float, delta: float) -> float:
    """Success probability per correct outcome for the two-qubit instance.

    Factoring N=4 with a=3 on a two-qubit work register admits a closed
    form: each of the two correct outcomes (k=0 and k=2) appears with
    probability (1 + cos(tau*delta)) / 4, so matching (tau*delta = 2*n*pi)
    gives the ideal 1/2 and the worst case (odd multiples of pi) gives 0.
    """
    return (1.0 + math.cos(tau * delta)) / 4.0
