"""Command-line front end.

Subcommands map one-to-one onto the library's experiment surfaces:
`order` and `sizes` for the integer bookkeeping, `distribution` for
outcome distributions at chosen delays, `sweep-delay` / `sweep-qubits` /
`sweep-sigma` for the delay, register-size, and inhomogeneity sweeps, and
`oracle-check` for closed-form versus state-vector validation.

Every command is deterministic given its config (seeds are explicit
inputs). Results go to CSV (long format, LF endings, `.` decimals, 12
significant digits) with one `# key=value, ...` metadata header line, or
to JSON. Delay angles are always given as tau*Delta in units of pi.

Exit codes: 0 success, 1 usage or config error, 2 computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, config
from .distribution import (
    AveragedOverS,
    CorrectSetDefinition,
    FixedResidue,
    analytic_n4,
    correct_set,
    outcome_distribution,
    success_probabilities,
)
from .errors import ComputationError
from .montecarlo import EnsembleSweepSpec, SweepResult, decay_with_qubits, ensemble_Pe
from .number_theory import default_register_sizes, make_instance, multiplicative_order
from .phase_model import DelaySchedule, PhaseConvention
from .statevector import Forced, run_pipeline


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exceptions, not exit(2)."""

    def error(self, message):
        raise _UsageError(message)


def _format_value(value) -> str:
    """Locale-independent cell formatting: 12 significant digits for floats."""
    if isinstance(value, bool):
        raise TypeError('booleans have no CSV representation here')
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f'{float(value):.11e}'
    return str(value)


def _render_csv(columns, rows, metadata: dict[str, str]) -> str:
    header = '# ' + ', '.join(f'{k}={v}' for k, v in metadata.items())
    lines = [header, ','.join(columns)]
    lines.extend(','.join(_format_value(cell) for cell in row) for row in rows)
    return '\n'.join(lines) + '\n'


def _render_json(columns, rows, metadata: dict[str, str]) -> str:
    payload = {
        'metadata': metadata,
        'columns': list(columns),
        'rows': [[float(c) if isinstance(c, (float, np.floating)) else int(c) for c in row]
                 for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + '\n'


def _write_output(path: str, text: str) -> None:
    # Rendered fully before the file is touched, so failures leave nothing
    # partial behind.
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(text)


def _emit_table(args, result: SweepResult, command: str) -> None:
    metadata = dict(result.metadata)
    metadata['command'] = command
    metadata['version'] = __version__
    if args.format == 'json':
        text = _render_json(result.columns, result.rows, metadata)
    else:
        text = _render_csv(result.columns, result.rows, metadata)
    _write_output(args.out, text)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError as exc:
        raise _UsageError(f'expected comma-separated numbers, got {text!r}') from exc


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError as exc:
        raise _UsageError(f'expected comma-separated integers, got {text!r}') from exc


def _require(args, *names: str) -> None:
    missing = [name for name in names if getattr(args, name, None) is None]
    if missing:
        flags = ', '.join('--' + name.replace('_', '-') for name in missing)
        raise _UsageError(f'missing required option(s): {flags}')


def _instance_from(args):
    _require(args, 'N', 'a')
    return make_instance(args.N, args.a, L=args.L, Lprime=args.Lprime)


def _instance_metadata(inst) -> dict[str, str]:
    return {
        'N': str(inst.N), 'a': str(inst.a), 'L': str(inst.L),
        'Lprime': str(inst.Lprime), 'q': str(inst.q), 'r': str(inst.r),
    }


def _convention(args) -> PhaseConvention:
    return PhaseConvention(args.phase_convention)


# ---------------------------------------------------------------- commands


def _cmd_order(args) -> int:
    _require(args, 'N', 'a')
    r = multiplicative_order(args.a, args.N)
    print(f'r = {r}')
    return 0


def _cmd_sizes(args) -> int:
    _require(args, 'N')
    L, Lprime = default_register_sizes(args.N)
    print(f'L = {L}')
    print(f'Lprime = {Lprime}')
    print(f'q = {2**L}')
    return 0


def _cmd_distribution(args) -> int:
    _require(args, 'out')
    inst = _instance_from(args)
    conditioning = AveragedOverS() if args.s is None else FixedResidue(args.s)
    deltas = np.full(inst.L, args.delta)
    rows = []
    for tau_delta_pi in _parse_floats(args.tau_delta_pi):
        tau_delta = tau_delta_pi * math.pi
        dist = outcome_distribution(
            inst, deltas, tau_delta / args.delta, conditioning, _convention(args)
        )
        rows.extend((tau_delta, k, float(p)) for k, p in enumerate(dist.probs))
    metadata = _instance_metadata(inst)
    metadata.update({
        'delta': repr(args.delta),
        'conditioning': 'averaged' if args.s is None else f's={args.s}',
        'phase_convention': args.phase_convention,
    })
    _emit_table(args, SweepResult(('tau_delta', 'k', 'P'), rows, metadata), 'distribution')
    return 0


def _cmd_sweep_delay(args) -> int:
    _require(args, 'out')
    inst = _instance_from(args)
    deltas = np.full(inst.L, args.delta)
    cset = correct_set(inst, CorrectSetDefinition(args.correct_set))
    grid = np.linspace(args.grid_start_pi * math.pi, args.grid_stop_pi * math.pi,
                       args.grid_points)
    rows = []
    for tau_delta in grid:
        dist = outcome_distribution(
            inst, deltas, float(tau_delta) / args.delta, AveragedOverS(), _convention(args)
        )
        _, Pe = success_probabilities(dist, cset)
        rows.append((float(tau_delta), Pe))
    metadata = _instance_metadata(inst)
    metadata.update({'delta': repr(args.delta), 'correct_set': args.correct_set})
    _emit_table(args, SweepResult(('tau_delta', 'Pe'), rows, metadata), 'sweep-delay')
    return 0


def _cmd_sweep_qubits(args) -> int:
    _require(args, 'N', 'a', 'tau_delta_pi', 'L_min', 'L_max', 'out')
    L_range = list(range(args.L_min, args.L_max + 1))
    result = decay_with_qubits(args.N, args.a, args.tau_delta_pi * math.pi, L_range)
    metadata = dict(result.metadata)
    if result.fit is not None:
        metadata.update({
            'fit_slope': repr(result.fit.slope),
            'fit_intercept': repr(result.fit.intercept),
            'fit_r_squared': repr(result.fit.r_squared),
        })
    result.metadata = metadata
    _emit_table(args, result, 'sweep-qubits')
    sidecar = args.sidecar or str(Path(args.out).with_suffix('.json'))
    fit_payload = {
        'N': args.N, 'a': args.a, 'tau_delta': args.tau_delta_pi * math.pi,
        'L_range': L_range,
        'fit': None if result.fit is None else {
            'slope': result.fit.slope,
            'intercept': result.fit.intercept,
            'r_squared': result.fit.r_squared,
            'n_points': result.fit.n_points,
        },
    }
    _write_output(sidecar, json.dumps(fit_payload, indent=2, sort_keys=True) + '\n')
    return 0


def _cmd_sweep_sigma(args) -> int:
    _require(args, 'out')
    inst = _instance_from(args)
    if args.grid_points == 1:
        offsets = (0.0,)
    else:
        offsets = tuple(
            np.linspace(-args.grid_halfwidth_pi * math.pi, args.grid_halfwidth_pi * math.pi,
                        args.grid_points)
        )
    spec = EnsembleSweepSpec(
        inst=inst,
        mean_delta=args.mean_delta,
        sigmas=tuple(_parse_floats(args.sigma_ratios)),
        matching_orders=tuple(_parse_ints(args.matching_orders)),
        tau_delta_grid=offsets,
        samples=args.samples,
        seed=args.seed,
    )
    result = ensemble_Pe(spec)
    result.metadata.update({
        'Lprime': str(inst.Lprime), 'q': str(inst.q), 'r': str(inst.r),
        'mean_delta': repr(args.mean_delta),
    })
    _emit_table(args, result, 'sweep-sigma')
    return 0


def _cmd_oracle_check(args) -> int:
    _require(args, 'out')
    inst = _instance_from(args)
    deltas = np.full(inst.L, args.delta)
    deltas_aux = np.zeros(inst.Lprime)
    convention = _convention(args)
    checks = []
    worst = 0.0
    for tau_delta_pi in _parse_floats(args.tau_delta_pi):
        tau = tau_delta_pi * math.pi / args.delta
        schedule = DelaySchedule(tau1=0.5 * tau, tau2=0.3 * tau, tau3=0.2 * tau, tau4=0.25)
        for s in range(min(inst.r, inst.q)):
            closed = outcome_distribution(inst, deltas, tau, FixedResidue(s), convention)
            _, simulated = run_pipeline(
                inst, deltas, deltas_aux, schedule, Forced(s), convention
            )
            deviation = float(np.max(np.abs(simulated - closed.probs)))
            worst = max(worst, deviation)
            checks.append({
                's': s, 'tau_delta': tau_delta_pi * math.pi, 'max_deviation': deviation,
            })
    report = {
        'instance': {k: int(v) for k, v in _instance_metadata(inst).items()},
        'checks': checks,
        'max_deviation': worst,
        'tolerance': 1e-10,
        'passed': bool(worst < 1e-10),
    }
    if (inst.N, inst.a, inst.L) == (4, 3, 2):
        analytic_dev = 0.0
        for tau_delta_pi in _parse_floats(args.tau_delta_pi):
            tau = tau_delta_pi * math.pi / args.delta
            expected = analytic_n4(tau, args.delta)
            closed = outcome_distribution(inst, deltas, tau, FixedResidue(1), convention)
            schedule = DelaySchedule(tau1=tau, tau4=0.25)
            _, simulated = run_pipeline(
                inst, deltas, deltas_aux, schedule, Forced(1), convention
            )
            for k in (0, 2):
                analytic_dev = max(
                    analytic_dev,
                    abs(closed.probs[k] - expected),
                    abs(float(simulated[k]) - expected),
                )
        report['analytic_two_qubit_max_deviation'] = analytic_dev
        report['passed'] = bool(report['passed'] and analytic_dev < 1e-12)
    _write_output(args.out, json.dumps(report, indent=2, sort_keys=True) + '\n')
    return 0 if report['passed'] else 2


# ------------------------------------------------------------ parser setup


def _add_instance_options(parser):
    parser.add_argument('--N', type=int, default=None, help='composite to factor')
    parser.add_argument('--a', type=int, default=None, help='base coprime with N')
    parser.add_argument('--L', type=int, default=None, help='work-register qubits (default: canonical)')
    parser.add_argument('--Lprime', type=int, default=None, help='auxiliary-register qubits (default: canonical)')


def _add_output_options(parser):
    parser.add_argument('--out', default=None, help='output file path')
    parser.add_argument('--format', choices=('csv', 'json'), default='csv')


def _add_convention_option(parser):
    parser.add_argument(
        '--phase-convention',
        choices=tuple(c.value for c in PhaseConvention),
        default=PhaseConvention.HAMMING.value,
    )


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog='delayshor', description=__doc__.splitlines()[0])
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    registry: dict[str, _Parser] = {}

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument('--config', default=None, help='key=value config file; flags win')
        p.add_argument('--emit-config', default=None, help='write the resolved config here')
        registry[name] = p
        return p

    p = command('order', _cmd_order, 'multiplicative order of a mod N')
    p.add_argument('--N', type=int, default=None)
    p.add_argument('--a', type=int, default=None)

    p = command('sizes', _cmd_sizes, 'canonical register sizes for N')
    p.add_argument('--N', type=int, default=None)

    p = command('distribution', _cmd_distribution, 'outcome distribution P(k) at chosen delays')
    _add_instance_options(p)
    p.add_argument('--tau-delta-pi', default='0',
                   help='comma-separated tau*Delta values in units of pi')
    p.add_argument('--delta', type=float, default=1.0, help='identical qubit splitting')
    p.add_argument('--s', type=int, default=None,
                   help='condition on auxiliary residue s (default: average over s)')
    _add_convention_option(p)
    _add_output_options(p)

    p = command('sweep-delay', _cmd_sweep_delay, 'success probability P_e over a delay grid')
    _add_instance_options(p)
    p.add_argument('--delta', type=float, default=1.0)
    p.add_argument('--grid-start-pi', type=float, default=0.0)
    p.add_argument('--grid-stop-pi', type=float, default=4.0)
    p.add_argument('--grid-points', type=int, default=401)
    p.add_argument('--correct-set', choices=tuple(d.value for d in CorrectSetDefinition),
                   default=CorrectSetDefinition.NEAREST_MULTIPLE.value)
    _add_convention_option(p)
    _add_output_options(p)

    p = command('sweep-qubits', _cmd_sweep_qubits, 'p_e(k_e) versus work-register size')
    p.add_argument('--N', type=int, default=None)
    p.add_argument('--a', type=int, default=None)
    p.add_argument('--tau-delta-pi', type=float, default=None)
    p.add_argument('--L-min', type=int, default=None)
    p.add_argument('--L-max', type=int, default=None)
    p.add_argument('--sidecar', default=None, help='fit JSON path (default: out with .json)')
    _add_output_options(p)

    p = command('sweep-sigma', _cmd_sweep_sigma, 'ensemble-mean P_e under Gaussian splittings')
    _add_instance_options(p)
    p.add_argument('--mean-delta', type=float, default=1.0)
    p.add_argument('--sigma-ratios', default='0.005',
                   help='comma-separated sigma/mean ratios')
    p.add_argument('--matching-orders', default='1,2,3,4',
                   help='comma-separated matching multiples n')
    p.add_argument('--grid-halfwidth-pi', type=float, default=0.2)
    p.add_argument('--grid-points', type=int, default=81)
    p.add_argument('--samples', type=int, default=1000)
    p.add_argument('--seed', type=int, default=0)
    _add_output_options(p)

    p = command('oracle-check', _cmd_oracle_check,
                'closed form versus state-vector pipeline deviations')
    _add_instance_options(p)
    p.add_argument('--delta', type=float, default=1.0)
    p.add_argument('--tau-delta-pi', default='0,0.4,1,1.6666666666666667,2',
                   help='comma-separated tau*Delta values in units of pi')
    _add_convention_option(p)
    p.add_argument('--out', default=None, help='JSON report path')

    return parser, registry


_CONFIG_ONLY_KEYS = {'config', 'emit_config', 'func', 'command'}


def _apply_config(argv: list[str], registry: dict[str, _Parser]) -> None:
    pre = _Parser(add_help=False)
    pre.add_argument('--config', default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    name = next((token for token in argv if not token.startswith('-')), None)
    sub = registry.get(name)
    if sub is None:
        raise _UsageError(f'--config requires a known subcommand, got {name!r}')
    values = config.load_file(known.config)
    valid = {action.dest for action in sub._actions} - _CONFIG_ONLY_KEYS
    dests = {}
    for key, value in values.items():
        dest = key.replace('-', '_')
        if dest not in valid:
            raise _UsageError(f'unknown config key {key!r} for command {name!r}')
        dests[dest] = value
    sub.set_defaults(**dests)


def _emit_config_if_requested(args, registry: dict[str, _Parser]) -> None:
    if not getattr(args, 'emit_config', None):
        return
    sub = registry[args.command]
    values = {}
    for action in sub._actions:
        dest = action.dest
        if dest in _CONFIG_ONLY_KEYS or dest == 'help':
            continue
        value = getattr(args, dest, None)
        if value is None:
            continue
        key = dest.replace('_', '-')
        values[key] = repr(value) if isinstance(value, float) else str(value)
    config.save_file(args.emit_config, values)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser, registry = build_parser()
        _apply_config(argv, registry)
        args = parser.parse_args(argv)
        if getattr(args, 'func', None) is None:
            raise _UsageError('a subcommand is required (see --help)')
        _emit_config_if_requested(args, registry)
        return args.func(args)
    except _UsageError as exc:
        print(f'delayshor: error: {exc}', file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f'delayshor: error: {exc}', file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f'delayshor: computation error: {exc}', file=sys.stderr)
        return 2


if __name__ == '__main__':
    raise SystemExit(main())
