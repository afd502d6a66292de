"""Shor order-finding with operational delays between operation blocks.

Computes measurement distributions in closed form with dynamical-phase
errors included, cross-checks them against a full state-vector simulation,
and sweeps delays, register sizes, and splitting inhomogeneity.
"""

from .distribution import (
    AveragedOverS,
    CorrectSet,
    CorrectSetDefinition,
    FixedResidue,
    OutcomeDistribution,
    analytic_n4,
    correct_set,
    outcome_distribution,
    success_probabilities,
)
from .errors import ComputationError, NormalizationError, ZeroProbabilityError
from .montecarlo import (
    EnsembleSweepSpec,
    LineFit,
    SweepResult,
    decay_with_qubits,
    ensemble_Pe,
    fit_line,
)
from .number_theory import (
    FactoringInstance,
    continued_fraction_order_candidates,
    default_register_sizes,
    make_instance,
    mod_pow,
    multiplicative_order,
)
from .phase_model import (
    DelaySchedule,
    GaussianEnsemble,
    Identical,
    PerQubit,
    PhaseConvention,
    SplittingModel,
    all_state_phases,
    is_phase_matched,
    per_qubit_phase_matched,
    resolve_splittings,
    sample_splittings,
    state_phase,
)
from .statevector import BornSample, Forced, qft, run_pipeline

__version__ = '0.1.0'

__all__ = [
    'AveragedOverS',
    'BornSample',
    'ComputationError',
    'CorrectSet',
    'CorrectSetDefinition',
    'DelaySchedule',
    'EnsembleSweepSpec',
    'FactoringInstance',
    'FixedResidue',
    'Forced',
    'GaussianEnsemble',
    'Identical',
    'LineFit',
    'NormalizationError',
    'OutcomeDistribution',
    'PerQubit',
    'PhaseConvention',
    'SplittingModel',
    'SweepResult',
    'ZeroProbabilityError',
    'all_state_phases',
    'analytic_n4',
    'continued_fraction_order_candidates',
    'correct_set',
    'decay_with_qubits',
    'default_register_sizes',
    'ensemble_Pe',
    'fit_line',
    'is_phase_matched',
    'make_instance',
    'mod_pow',
    'multiplicative_order',
    'outcome_distribution',
    'per_qubit_phase_matched',
    'qft',
    'resolve_splittings',
    'run_pipeline',
    'sample_splittings',
    'state_phase',
    'success_probabilities',
]
