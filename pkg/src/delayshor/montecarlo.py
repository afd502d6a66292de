"""Ensemble averages over inhomogeneous qubit splittings, and qubit-count
scaling of the success probability.

Splitting inhomogeneity is static (a device has fixed, slightly different
qubits), so each ensemble member is one draw of per-qubit splittings and
the reported quantity is the mean success probability with its standard
error. Seeding is hierarchical: every (sigma, tau, sample) cell derives its
own 64-bit seed from the root seed, so results are bitwise reproducible no
matter how the loop is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distribution import (
    AveragedOverS,
    CorrectSetDefinition,
    correct_set,
    outcome_distribution,
    success_probabilities,
)
from .number_theory import FactoringInstance, make_instance
from .phase_model import GaussianEnsemble, sample_splittings

DEFAULT_SAMPLES = 1000

# Half-width (in units of tau*delta) and point count of the default grid
# swept around each matching point.
DEFAULT_GRID_HALFWIDTH = 0.2 * math.pi
DEFAULT_GRID_POINTS = 81

# ln p_e is meaningless this far down; such rows are excluded from fits.
FIT_FLOOR = 1e-300


@dataclass(frozen=True)
class LineFit:
    """Ordinary least squares of y against x."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int


@dataclass
class SweepResult:
    """A column-named table of sweep rows, ready for CSV emission."""

    columns: tuple[str, ...]
    rows: list[tuple]
    metadata: dict[str, str] = field(default_factory=dict)
    fit: LineFit | None = None


@dataclass(frozen=True)
class EnsembleSweepSpec:
    """What to sweep when averaging over splitting ensembles.

    Attributes:
        inst: the order-finding instance.
        mean_delta: ensemble mean splitting.
        sigmas: sigma / mean_delta ratios to sweep.
        matching_orders: multiples n defining matching points tau*mean = 2*n*pi.
        tau_delta_grid: explicit grid of tau*mean_delta offsets applied
            around each matching point 2*n*pi ((0.0,) evaluates exactly at
            the matching points); when None, DEFAULT_GRID_POINTS points
            spanning +-DEFAULT_GRID_HALFWIDTH.
        samples: ensemble size per grid point, >= 1.
        seed: root seed for all derived draws.
    """

    inst: FactoringInstance
    mean_delta: float
    sigmas: tuple[float, ...]
    matching_orders: tuple[int, ...]
    tau_delta_grid: tuple[float, ...] | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int = 0

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f'samples must be >= 1, got {self.samples}')
        if any(s < 0 for s in self.sigmas):
            raise ValueError('sigma ratios must be >= 0')
        if self.mean_delta == 0:
            raise ValueError('mean_delta must be nonzero')


def _derived_seed(root: int, *indices: int) -> int:
    seq = np.random.SeedSequence(entropy=root, spawn_key=tuple(indices))
    return int(seq.generate_state(1, np.uint64)[0])


def _default_grid_offsets() -> np.ndarray:
    return np.linspace(-DEFAULT_GRID_HALFWIDTH, DEFAULT_GRID_HALFWIDTH, DEFAULT_GRID_POINTS)


def ensemble_Pe(spec: EnsembleSweepSpec) -> SweepResult:
    """Mean and standard error of P_e over Gaussian splitting ensembles.

    For every (matching order, sigma ratio, tau) grid cell, draws
    spec.samples splitting vectors, evaluates the full outcome distribution
    for each, and aggregates P_e over the nearest-multiple correct set.
    Deterministic given spec.seed.

    Returns:
        SweepResult with columns (n, sigma_ratio, tau_delta, Pe_mean,
        Pe_stderr). tau_delta is tau * mean_delta.
    """
    inst = spec.inst
    cset = correct_set(inst, CorrectSetDefinition.NEAREST_MULTIPLE)
    if spec.tau_delta_grid is not None:
        offsets = np.asarray(spec.tau_delta_grid, dtype=float)
    else:
        offsets = _default_grid_offsets()
    rows: list[tuple] = []
    for i_n, n in enumerate(spec.matching_orders):
        grid = 2.0 * math.pi * n + offsets
        for i_sigma, sigma_ratio in enumerate(spec.sigmas):
            sigma = sigma_ratio * abs(spec.mean_delta)
            for i_tau, tau_delta in enumerate(grid):
                tau = float(tau_delta) / spec.mean_delta
                values = np.empty(spec.samples)
                for i_sample in range(spec.samples):
                    ensemble = GaussianEnsemble(
                        mean=spec.mean_delta,
                        sigma=sigma,
                        seed=_derived_seed(spec.seed, i_n, i_sigma, i_tau, i_sample),
                    )
                    deltas = sample_splittings(ensemble, inst.L)
                    dist = outcome_distribution(inst, deltas, tau, AveragedOverS())
                    _, Pe = success_probabilities(dist, cset)
                    values[i_sample] = Pe
                mean = float(np.mean(values))
                stderr = (
                    float(np.std(values, ddof=1) / math.sqrt(spec.samples))
                    if spec.samples > 1
                    else 0.0
                )
                rows.append((n, sigma_ratio, float(tau_delta), mean, stderr))
    return SweepResult(
        columns=('n', 'sigma_ratio', 'tau_delta', 'Pe_mean', 'Pe_stderr'),
        rows=rows,
        metadata={
            'N': str(inst.N), 'a': str(inst.a), 'L': str(inst.L),
            'samples': str(spec.samples), 'seed': str(spec.seed),
        },
    )


def fit_line(xs, ys) -> LineFit:
    """OLS fit y = slope*x + intercept with coefficient of determination."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(xs, ys, 1)
    predicted = slope * xs + intercept
    ss_res = float(np.sum((ys - predicted) ** 2))
    ss_tot = float(np.sum((ys - np.mean(ys)) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return LineFit(float(slope), float(intercept), r_squared, len(xs))


def decay_with_qubits(N: int, a: int, tau_delta: float, L_range) -> SweepResult:
    """Per-correct-outcome probabilities versus work-register size.

    Runs the instance at each L with identical unit splittings and
    tau = tau_delta, collects p_e(k_e) over the nearest-multiple correct
    set, and fits ln p_e against L. Rows with p_e below FIT_FLOOR are
    excluded from the fit. A single L (or all rows floored) leaves fit=None.

    Returns:
        SweepResult with columns (L, k_e, p_e) and the fit attached.
    """
    L_range = list(L_range)
    if sorted(L_range) != L_range:
        raise ValueError('L_range must be ascending')
    rows: list[tuple] = []
    for L in L_range:
        inst = make_instance(N, a, L=L)
        deltas = np.ones(inst.L)
        dist = outcome_distribution(inst, deltas, tau_delta, AveragedOverS())
        cset = correct_set(inst, CorrectSetDefinition.NEAREST_MULTIPLE)
        pe_per_k, _ = success_probabilities(dist, cset)
        for ke in cset.kes:
            rows.append((L, ke, pe_per_k[ke]))
    fit = None
    fit_rows = [(L, pe) for L, _, pe in rows if pe >= FIT_FLOOR]
    if len({L for L, _ in fit_rows}) >= 2:
        fit = fit_line([L for L, _ in fit_rows], [math.log(pe) for _, pe in fit_rows])
    return SweepResult(
        columns=('L', 'k_e', 'p_e'),
        rows=rows,
        metadata={'N': str(N), 'a': str(a), 'tau_delta': repr(tau_delta)},
        fit=fit,
    )
