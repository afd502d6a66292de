"""Brute-force joint-register simulation of the delayed pipeline.

Runs the five operation blocks (Hadamard layer, entangler, auxiliary
measurement, Fourier transform, readout) on the full work x auxiliary
state vector, inserting diagonal free evolution for each idle interval.
Exists to cross-check the closed forms in `distribution`: the two paths
share only the phase bookkeeping, not the interference arithmetic.

Memory layout is work-index major, auxiliary-index minor, so projecting on
an auxiliary outcome is a contiguous column slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComputationError, NormalizationError, ZeroProbabilityError
from .number_theory import FactoringInstance, mod_pow
from .phase_model import DelaySchedule, PhaseConvention, all_state_phases

MAX_TOTAL_QUBITS = 24

NORM_TOL = 1e-10


@dataclass(frozen=True)
class Forced:
    """Project the auxiliary measurement onto outcome a**s mod N."""

    s: int


@dataclass(frozen=True)
class BornSample:
    """Sample the auxiliary outcome from its Born distribution."""

    seed: int


AuxOutcome = Forced | BornSample


def qft(amplitudes: np.ndarray) -> np.ndarray:
    """Fourier transform with positive-exponent kernel.

    out[k] = (1/sqrt(q)) * sum_j in[j] * exp(2*pi*i*j*k/q). The exponent
    sign is load-bearing (a sign flip silently mirrors the spectrum) and is
    pinned by tests.

    Raises:
        ValueError: if the length is not a power of two.
    """
    amplitudes = np.asarray(amplitudes, dtype=complex)
    q = amplitudes.shape[-1]
    if amplitudes.ndim != 1 or q < 1 or q & (q - 1) != 0:
        raise ValueError(f'expected a 1-D power-of-two-length vector, got shape {amplitudes.shape}')
    return np.fft.ifft(amplitudes) * math.sqrt(q)


def _check_norm(amplitudes: np.ndarray, stage: str) -> None:
    total = float(np.sum(np.abs(amplitudes) ** 2))
    if abs(total - 1.0) > NORM_TOL:
        raise NormalizationError(f'norm drifted to {total!r} after {stage}')


def run_pipeline(
    inst: FactoringInstance,
    deltas_work,
    deltas_aux,
    schedule: DelaySchedule,
    aux_outcome: AuxOutcome,
    convention: PhaseConvention = PhaseConvention.HAMMING,
) -> tuple[int, np.ndarray]:
    """Executes the full delayed pipeline on the joint state vector.

    Stages: Hadamard layer on the work register; free evolution tau1 on
    both registers; entangler |j>|0> -> |j>|a**j mod N>; free evolution
    tau2; projective auxiliary measurement (forced or Born-sampled) with
    renormalization; free evolution tau3 on the work register; Fourier
    transform; free evolution tau4; readout probabilities.

    Args:
        inst: the order-finding instance; inst.L + inst.Lprime <= 24.
        deltas_work: per-qubit splittings for the work register (length L).
        deltas_aux: per-qubit splittings for the auxiliary register
            (length Lprime). Affect nothing observable; accepting them lets
            tests verify exactly that.
        schedule: the four idle intervals.
        aux_outcome: Forced(s) or BornSample(seed).
        convention: phase bookkeeping convention.

    Returns:
        (s_measured, work_distribution): the residue index s of the
        auxiliary outcome and the length-q probability vector over k.

    Raises:
        ValueError: register/deltas size mismatch or instance too large.
        ZeroProbabilityError: Forced(s) outcome has no support.
        NormalizationError: internal norm drift beyond 1e-10.
    """
    if inst.L + inst.Lprime > MAX_TOTAL_QUBITS:
        raise ValueError(
            f'instance needs {inst.L + inst.Lprime} qubits, limit is {MAX_TOTAL_QUBITS}'
        )
    deltas_work = np.asarray(deltas_work, dtype=float)
    deltas_aux = np.asarray(deltas_aux, dtype=float)
    if len(deltas_work) != inst.L:
        raise ValueError(f'expected {inst.L} work splittings, got {len(deltas_work)}')
    if len(deltas_aux) != inst.Lprime:
        raise ValueError(f'expected {inst.Lprime} auxiliary splittings, got {len(deltas_aux)}')

    q = inst.q
    q_aux = 2**inst.Lprime

    def joint_evolution(psi: np.ndarray, tau: float) -> np.ndarray:
        if tau == 0.0:
            return psi
        work_phases = all_state_phases(deltas_work, tau, convention)
        aux_phases = all_state_phases(deltas_aux, tau, convention)
        return psi * np.exp(-1j * (work_phases[:, None] + aux_phases[None, :]))

    # Hadamard layer: uniform work register, auxiliary in |0>.
    psi = np.zeros((q, q_aux), dtype=complex)
    psi[:, 0] = 1.0 / math.sqrt(q)
    _check_norm(psi, 'initialization')

    psi = joint_evolution(psi, schedule.tau1)
    _check_norm(psi, 'first delay')

    # Entangler: permutation (j, 0) -> (j, a**j mod N). Inputs with the
    # auxiliary register outside |0> are unreachable here; verify rather
    # than define a mapping for them.
    if np.any(psi[:, 1:] != 0):
        raise ComputationError('entangler input has support outside auxiliary |0>')
    residue_values = np.array([mod_pow(inst.a, s, inst.N) for s in range(inst.r)])
    f = residue_values[np.arange(q) % inst.r]  # a**j mod N, period r in j
    entangled = np.zeros_like(psi)
    entangled[np.arange(q), f] = psi[:, 0]
    psi = entangled
    _check_norm(psi, 'entangler')

    psi = joint_evolution(psi, schedule.tau2)
    _check_norm(psi, 'second delay')

    # Projective measurement of the auxiliary register.
    if isinstance(aux_outcome, Forced):
        if not 0 <= aux_outcome.s < inst.r:
            raise ValueError(f's must be in [0, {inst.r}), got {aux_outcome.s}')
        s_measured = aux_outcome.s
    else:
        marginal = np.sum(np.abs(psi) ** 2, axis=0)
        rng = np.random.default_rng(aux_outcome.seed)
        value = int(rng.choice(q_aux, p=marginal / marginal.sum()))
        hits = np.nonzero(residue_values == value)[0]
        if len(hits) == 0:
            raise ComputationError(f'sampled auxiliary value {value} is not a residue of a')
        s_measured = int(hits[0])
    kept = psi[:, residue_values[s_measured]]
    kept_norm_sq = math.fsum((kept.real**2 + kept.imag**2).tolist())
    if kept_norm_sq <= 0.0:
        raise ZeroProbabilityError(
            f'auxiliary outcome s={s_measured} has zero probability'
        )
    work = kept / math.sqrt(kept_norm_sq)
    _check_norm(work, 'measurement')
    # From here the auxiliary register sits in one basis state, so its
    # later free evolution is a global phase; it is dropped, and the
    # deltas_aux-irrelevance of the returned distribution is tested.

    work = work * np.exp(-1j * all_state_phases(deltas_work, schedule.tau3, convention))
    _check_norm(work, 'third delay')

    work = qft(work)
    _check_norm(work, 'fourier transform')

    work = work * np.exp(-1j * all_state_phases(deltas_work, schedule.tau4, convention))
    _check_norm(work, 'fourth delay')

    return s_measured, np.abs(work) ** 2
