import math

import numpy as np
import pytest

from delayshor.distribution import FixedResidue, outcome_distribution
from delayshor.errors import ZeroProbabilityError
from delayshor.number_theory import make_instance
from delayshor.phase_model import DelaySchedule, PhaseConvention
from delayshor.statevector import BornSample, Forced, qft, run_pipeline

from reference import naive_dft

ORACLE_TOL = 1e-10


# ------------------------------------------------------------------- qft


def test_qft_basis_and_uniform():
    q = 16
    basis0 = np.zeros(q, dtype=complex)
    basis0[0] = 1.0
    np.testing.assert_allclose(qft(basis0), np.full(q, 1 / math.sqrt(q)), atol=1e-14)
    uniform = np.full(q, 1 / math.sqrt(q), dtype=complex)
    out = qft(uniform)
    expected = np.zeros(q, dtype=complex)
    expected[0] = 1.0
    np.testing.assert_allclose(out, expected, atol=1e-14)


def test_qft_comb_support():
    q, r = 16, 4
    comb = np.zeros(q, dtype=complex)
    comb[::r] = 0.5
    out = np.abs(qft(comb)) ** 2
    support = np.nonzero(out > 1e-20)[0]
    assert sorted(support.tolist()) == [0, 4, 8, 12]


def test_qft_positive_exponent_convention():
    # a single excited basis state |1> maps to ascending phases e^{2 pi i k/q}
    q = 8
    basis1 = np.zeros(q, dtype=complex)
    basis1[1] = 1.0
    out = qft(basis1)
    expected = np.exp(2j * math.pi * np.arange(q) / q) / math.sqrt(q)
    np.testing.assert_allclose(out, expected, atol=1e-14)


def test_qft_matches_naive_dft_and_is_unitary():
    rng = np.random.default_rng(7)
    amps = rng.normal(size=32) + 1j * rng.normal(size=32)
    amps /= np.linalg.norm(amps)
    np.testing.assert_allclose(qft(amps), naive_dft(amps.tolist()), atol=1e-12)
    assert abs(np.linalg.norm(qft(amps)) - 1.0) < 1e-12


def test_qft_rejects_bad_lengths():
    with pytest.raises(ValueError):
        qft(np.ones(12, dtype=complex))
    with pytest.raises(ValueError):
        qft(np.ones((4, 4), dtype=complex))


# -------------------------------------------------------------- pipeline


def _zero_schedule():
    return DelaySchedule()


def test_ideal_pipeline_is_textbook_shor():
    inst = make_instance(15, 13, L=4)
    s, work = run_pipeline(
        inst, np.ones(4), np.ones(inst.Lprime), _zero_schedule(), Forced(0)
    )
    assert s == 0
    expected = np.zeros(16)
    expected[[0, 4, 8, 12]] = 0.25
    np.testing.assert_allclose(work, expected, atol=1e-12)


def test_two_qubit_worst_case_kills_correct_outcomes():
    inst = make_instance(4, 3, L=2, Lprime=2)
    schedule = DelaySchedule(tau1=math.pi)
    _, work = run_pipeline(inst, np.ones(2), np.zeros(2), schedule, Forced(1))
    assert work[0] < 1e-12
    assert work[2] < 1e-12


@pytest.mark.parametrize('N,a,L', [(15, 13, 4), (15, 13, 6), (21, 5, 6), (21, 5, 9), (33, 5, 7)])
@pytest.mark.parametrize('tau_delta_pi', [0.0, 0.4, 1.0, 5 / 3])
def test_oracle_matches_closed_form(N, a, L, tau_delta_pi):
    inst = make_instance(N, a, L=L)
    deltas = np.linspace(0.9, 1.1, inst.L)
    tau = tau_delta_pi * math.pi
    schedule = DelaySchedule(tau1=0.2 * tau, tau2=0.5 * tau, tau3=0.3 * tau, tau4=0.77)
    for s in range(min(inst.r, inst.q)):
        _, work = run_pipeline(inst, deltas, np.zeros(inst.Lprime), schedule, Forced(s))
        closed = outcome_distribution(inst, deltas, tau, FixedResidue(s))
        assert np.max(np.abs(work - closed.probs)) < ORACLE_TOL


def test_oracle_matches_closed_form_excitation_convention():
    inst = make_instance(15, 13, L=5)
    deltas = np.full(5, 1.0)
    tau = 0.9
    convention = PhaseConvention.EXCITATION_DIFFERENCE
    schedule = DelaySchedule(tau3=tau)
    for s in range(inst.r):
        _, work = run_pipeline(inst, deltas, np.zeros(4), schedule, Forced(s), convention)
        closed = outcome_distribution(inst, deltas, tau, FixedResidue(s), convention)
        assert np.max(np.abs(work - closed.probs)) < ORACLE_TOL


def test_partition_invariance():
    inst = make_instance(21, 5, L=6)
    deltas = np.linspace(0.8, 1.2, 6)
    partitions = [
        DelaySchedule(1.0, 2.0, 3.0),
        DelaySchedule(6.0, 0.0, 0.0),
        DelaySchedule(0.0, 0.0, 6.0),
        DelaySchedule(2.0, 2.0, 2.0),
    ]
    results = [
        run_pipeline(inst, deltas, np.zeros(inst.Lprime), p, Forced(2))[1] for p in partitions
    ]
    for other in results[1:]:
        assert np.max(np.abs(other - results[0])) < ORACLE_TOL


def test_tau4_invariance():
    inst = make_instance(15, 13, L=5)
    deltas = np.ones(5)
    base = None
    for tau4 in (0.0, 0.31, 4.0, 250.0):
        schedule = DelaySchedule(tau1=1.1, tau2=0.4, tau3=0.8, tau4=tau4)
        _, work = run_pipeline(inst, deltas, np.zeros(4), schedule, Forced(1))
        if base is None:
            base = work
        else:
            assert np.max(np.abs(work - base)) < ORACLE_TOL


def test_auxiliary_splittings_irrelevant():
    inst = make_instance(21, 5, L=6)
    deltas = np.full(6, 1.07)
    schedule = DelaySchedule(tau1=0.9, tau2=1.3, tau3=0.2, tau4=0.5)
    for s in (0, 3):
        _, quiet = run_pipeline(inst, deltas, np.zeros(inst.Lprime), schedule, Forced(s))
        _, noisy = run_pipeline(
            inst, deltas, np.linspace(-2.0, 3.0, inst.Lprime), schedule, Forced(s)
        )
        assert np.max(np.abs(noisy - quiet)) < ORACLE_TOL


def test_born_sampling_statistics():
    # non-uniform residue weights: q=32, r=6 gives Pr(s) = 6/32, 6/32, then 5/32
    inst = make_instance(21, 5, L=5)
    deltas = np.ones(5)
    counts = np.zeros(inst.r)
    runs = 10**4
    for seed in range(runs):
        s, _ = run_pipeline(
            inst, deltas, np.zeros(inst.Lprime), _zero_schedule(), BornSample(seed)
        )
        counts[s] += 1
    for s in range(inst.r):
        expected = len(range(s, inst.q, inst.r)) / inst.q
        sigma = math.sqrt(expected * (1 - expected) / runs)
        assert abs(counts[s] / runs - expected) < 3 * sigma


def test_born_sampling_deterministic_by_seed():
    inst = make_instance(15, 13, L=4)
    args = (inst, np.ones(4), np.zeros(4), DelaySchedule(tau1=0.7), BornSample(99))
    s1, w1 = run_pipeline(*args)
    s2, w2 = run_pipeline(*args)
    assert s1 == s2
    np.testing.assert_array_equal(w1, w2)


def test_forced_outcome_without_support_errors():
    # L=2 gives q=4 < r=6: residue classes s >= 4 hold no work states
    inst = make_instance(21, 5, L=2)
    with pytest.raises(ZeroProbabilityError):
        run_pipeline(inst, np.ones(2), np.zeros(5), _zero_schedule(), Forced(5))


def test_size_limit_enforced():
    inst = make_instance(33, 5)  # L=11, Lprime=6: 17 qubits, fine
    assert inst.L + inst.Lprime == 17
    with pytest.raises(ValueError):
        run_pipeline(
            make_instance(33, 5, L=19),
            np.ones(19), np.zeros(6), _zero_schedule(), Forced(0),
        )


def test_deltas_length_validation():
    inst = make_instance(15, 13, L=4)
    with pytest.raises(ValueError):
        run_pipeline(inst, np.ones(3), np.zeros(4), _zero_schedule(), Forced(0))
    with pytest.raises(ValueError):
        run_pipeline(inst, np.ones(4), np.zeros(3), _zero_schedule(), Forced(0))
