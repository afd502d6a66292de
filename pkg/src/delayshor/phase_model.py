"""Qubit energy splittings and the dynamical phases they generate.

During an idle interval tau, a basis state accrues phase from every qubit
sitting in its excited level. With per-qubit splittings Delta_k, the phase
of state |j> relative to the all-ground state is sum_k bit_k(j) * Delta_k
* tau. Phase-matching (tau * Delta an exact multiple of 2*pi) makes these
phases act trivially.

Splitting assignments come in three flavors: a single shared value, an
explicit per-qubit list, or qubit values drawn from a Gaussian ensemble.
Gaussian draws are deterministic: each qubit's value comes from a PCG64
generator keyed by (ensemble seed, qubit index), so a sample never depends
on how work was scheduled or split.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

DEFAULT_MATCHING_TOL = 1e-9


class PhaseConvention(enum.Enum):
    """How per-state dynamical phases are counted.

    HAMMING counts excited qubits: phi(j) = sum_k bit_k(j) * Delta_k * tau.
    EXCITATION_DIFFERENCE counts excited minus ground qubits:
    phi(j) = sum_k (2*bit_k(j) - 1) * Delta_k * tau. The two differ by a
    j-independent offset plus a factor of two, so EXCITATION_DIFFERENCE
    distributions at tau*Delta = x reproduce HAMMING ones at 2*x. HAMMING
    is the default everywhere; the alternative exists for comparison runs.
    """

    HAMMING = 'hamming'
    EXCITATION_DIFFERENCE = 'excitation-difference'


@dataclass(frozen=True)
class Identical:
    """All qubits share one energy splitting."""

    delta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.delta):
            raise ValueError(f'splitting must be finite, got {self.delta}')


@dataclass(frozen=True)
class PerQubit:
    """Explicit per-qubit energy splittings, index k <-> bit k."""

    deltas: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'deltas', tuple(float(d) for d in self.deltas))
        if not all(math.isfinite(d) for d in self.deltas):
            raise ValueError('all splittings must be finite')


@dataclass(frozen=True)
class GaussianEnsemble:
    """Splittings drawn independently per qubit from N(mean, sigma**2).

    sigma = 0 degenerates to Identical(mean) exactly. Draws are a pure
    function of (seed, qubit index).
    """

    mean: float
    sigma: float
    seed: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean) or not math.isfinite(self.sigma):
            raise ValueError('mean and sigma must be finite')
        if self.sigma < 0:
            raise ValueError(f'sigma must be >= 0, got {self.sigma}')


SplittingModel = Identical | PerQubit | GaussianEnsemble


def sample_splittings(ensemble: GaussianEnsemble, L: int) -> np.ndarray:
    """Draws L qubit splittings from a Gaussian ensemble, deterministically.

    Qubit k's value comes from PCG64 seeded with SeedSequence(entropy=seed,
    spawn_key=(k,)); repeated calls with the same seed and L are identical,
    and qubit k's draw does not depend on L.

    Args:
        ensemble: the distribution and seed.
        L: number of qubits, at least 1.

    Returns:
        Array of L splittings.
    """
    if L < 1:
        raise ValueError(f'L must be >= 1, got {L}')
    if ensemble.sigma == 0.0:
        return np.full(L, ensemble.mean)
    values = np.empty(L)
    for k in range(L):
        seq = np.random.SeedSequence(entropy=ensemble.seed, spawn_key=(k,))
        values[k] = np.random.default_rng(seq).normal(ensemble.mean, ensemble.sigma)
    return values


def resolve_splittings(model: SplittingModel, L: int) -> np.ndarray:
    """Resolves any splitting model to a concrete length-L array."""
    if isinstance(model, Identical):
        return np.full(L, model.delta)
    if isinstance(model, PerQubit):
        if len(model.deltas) != L:
            raise ValueError(f'expected {L} per-qubit splittings, got {len(model.deltas)}')
        return np.asarray(model.deltas, dtype=float)
    if isinstance(model, GaussianEnsemble):
        return sample_splittings(model, L)
    raise TypeError(f'not a splitting model: {model!r}')


@dataclass(frozen=True)
class DelaySchedule:
    """Idle intervals around the four operation blocks.

    tau1..tau3 precede the final measurement-basis readout and are the only
    ones that matter: outcomes depend on tau_total = tau1 + tau2 + tau3 and
    never on tau4 or the individual splits.
    """

    tau1: float = 0.0
    tau2: float = 0.0
    tau3: float = 0.0
    tau4: float = 0.0

    def __post_init__(self) -> None:
        for name in ('tau1', 'tau2', 'tau3', 'tau4'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f'{name} must be finite and >= 0, got {value}')

    @property
    def tau_total(self) -> float:
        return self.tau1 + self.tau2 + self.tau3


def state_phase(
    j: int,
    deltas,
    tau: float,
    convention: PhaseConvention = PhaseConvention.HAMMING,
) -> float:
    """Dynamical phase of basis state |j> after idling for tau.

    The state's amplitude gets multiplied by exp(-i * phase). Offsets common
    to every j (global phases) are excluded by construction under HAMMING.

    Args:
        j: computational-basis index, 0 <= j < 2**len(deltas).
        deltas: resolved per-qubit splittings (bit k <-> deltas[k]).
        tau: idle time, in units where hbar = 1.
        convention: phase bookkeeping convention.

    Returns:
        The accumulated phase in radians.
    """
    deltas = np.asarray(deltas, dtype=float)
    L = len(deltas)
    if not 0 <= j < 2**L:
        raise ValueError(f'j={j} out of range for {L} qubits')
    phase = 0.0
    for k in range(L):
        bit = (j >> k) & 1
        if convention is PhaseConvention.HAMMING:
            phase += bit * deltas[k]
        else:
            phase += (2 * bit - 1) * deltas[k]
    return phase * tau


def all_state_phases(
    deltas,
    tau: float,
    convention: PhaseConvention = PhaseConvention.HAMMING,
) -> np.ndarray:
    """Vector of state_phase(j, ...) for every j in [0, 2**L).

    Computed from the bit matrix in one shot; agrees with state_phase
    elementwise (that equivalence is property-tested).
    """
    deltas = np.asarray(deltas, dtype=float)
    L = len(deltas)
    j = np.arange(2**L, dtype=np.int64)
    bits = (j[:, None] >> np.arange(L)[None, :]) & 1
    if convention is PhaseConvention.EXCITATION_DIFFERENCE:
        bits = 2 * bits - 1
    return (bits @ deltas) * tau


def is_phase_matched(delta: float, tau: float, tol: float = DEFAULT_MATCHING_TOL) -> bool:
    """Whether tau * delta sits within tol of a multiple of 2*pi.

    The multiple n = 0 (no delay) counts as matched.

    Args:
        delta: qubit energy splitting.
        tau: total effective delay.
        tol: radians of allowed mismatch, > 0.

    Returns:
        True iff distance from tau*delta to the nearest 2*n*pi is < tol.
    """
    if tol <= 0:
        raise ValueError(f'tol must be > 0, got {tol}')
    x = delta * tau
    return abs(x - TWO_PI * round(x / TWO_PI)) < tol


def per_qubit_phase_matched(deltas, taus, tol: float = DEFAULT_MATCHING_TOL) -> bool:
    """Whether every qubit individually satisfies the matching condition.

    Each qubit may match at a different multiple n_k. Empty inputs are
    vacuously matched.

    Raises:
        ValueError: if the lists have different lengths.
    """
    deltas = list(deltas)
    taus = list(taus)
    if len(deltas) != len(taus):
        raise ValueError(f'length mismatch: {len(deltas)} splittings vs {len(taus)} delays')
    return all(is_phase_matched(d, t, tol) for d, t in zip(deltas, taus))
