"""
cli.py - Command line front end

Subcommands:
    profile      p_x, p_z (and the classical level) along one or both wings
    force        per-wing and total forces, ratio, W_x and torque
    sweep        any output against r, R, phi or dx
    find-reff    wing length with the largest expulsion effectiveness
    find-angle   opening angle with the largest expulsion force
    reproduce    canned data files of a published figure

Geometry comes from built-in defaults, then an optional --config file, then
explicit flags, each overriding the previous. Results go to stdout or --out;
logs go to stderr. Any error prints one JSON line to stderr and exits with 2.

Usage:
    casimir-expulsion profile --R 4e-6 --dx 4e-7 --side both
    casimir-expulsion find-reff --a 4e-10 --R 2e-9 --phi-deg 1
    casimir-expulsion find-reff --a 4e-10 --R 1e-9 --dx 2e-10 --side right
    casimir-expulsion reproduce fig2a --out-dir data/
"""

import argparse
import json
import logging
import math
import sys
from typing import Dict, Optional, Sequence

from cavity import __version__
from cavity.errors import CavityError, UnknownFigureTag
from cavity.forces import SCAN_POINTS, find_optimal_angle, find_reff
from cavity.geometry import CavityConfig, WingSide, validate

from .catalog import list_figures, reproduce
from .config import load_config
from .emit import emit_csv, emit_json, write_text
from .sweep import FORCE_OUTPUTS, OUTPUT_ORDER, SweepSpec, SweptQuantity, run_sweep, sweep_values

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2

# flag destination -> scenario document key
GEOMETRY_FLAGS = {'a': 'a_m', 'R': 'R_m', 'L': 'L_m', 'phi_deg': 'phi_deg', 'dx': 'dx_m'}

SIDE_CHOICES = {'right': (WingSide.RIGHT,), 'left': (WingSide.LEFT,),
                'both': (WingSide.RIGHT, WingSide.LEFT)}


def _geometry_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group('geometry (SI units, scientific notation accepted)')
    group.add_argument('--a', type=float, help='separation at the narrow end (m), default 4e-7')
    group.add_argument('--R', type=float, help='wing length (m)')
    group.add_argument('--L', type=float, help='cavity width (m), default 1')
    group.add_argument('--phi-deg', dest='phi_deg', type=float,
                       help='opening angle (degrees), default 0')
    group.add_argument('--dx', type=float, help='shift of the left wing (m), default 0')
    group.add_argument('--config', help='scenario file with key=value lines')
    return parent


def _output_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--out', default='-', help="output file, '-' for stdout")
    parent.add_argument('--format', choices=('csv', 'json'), default='csv')
    parent.add_argument('--workers', type=int, default=1, help='worker processes for rows')
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='casimir-expulsion',
        description='Casimir expulsion forces of shifted trapezoid and parallel cavities.')
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--log-level', default='WARNING',
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))
    commands = parser.add_subparsers(dest='command', required=True)
    geometry, output = _geometry_parent(), _output_parent()

    profile = commands.add_parser('profile', parents=[geometry, output],
                                  help='specific forces along the wings')
    profile.add_argument('--side', choices=sorted(SIDE_CHOICES), default='right')
    profile.add_argument('--samples', type=int, default=512)

    commands.add_parser('force', parents=[geometry, output],
                        help='integrated forces and torque of one configuration')

    sweep = commands.add_parser('sweep', parents=[geometry, output],
                                help='outputs against one swept quantity')
    sweep.add_argument('--swept', choices=[q.value for q in SweptQuantity], required=True)
    sweep.add_argument('--start', type=float, required=True,
                       help='first value (m, degrees for phi, fraction of R if --relative)')
    sweep.add_argument('--stop', type=float, required=True)
    sweep.add_argument('--samples', type=int, default=64, help='number of values')
    sweep.add_argument('--log', action='store_true', help='log-spaced values')
    sweep.add_argument('--relative', action='store_true',
                       help='r or dx values are fractions of R')
    sweep.add_argument('--outputs', default='f_x',
                       help=f"comma separated subset of {','.join(OUTPUT_ORDER)}")
    sweep.add_argument('--side', choices=sorted(SIDE_CHOICES), default='right')
    sweep.add_argument('--per-wing', action='store_true')
    sweep.add_argument('--dx-ratio', type=float, help='R sweeps: keep dx = ratio * R')

    reff = commands.add_parser('find-reff', parents=[geometry],
                               help='wing length maximizing W_x = |F_x| / R')
    reff.add_argument('--r-min', type=float, help='bracket start (m), default 0.1 a')
    reff.add_argument('--r-max', type=float, help='bracket end (m), default 100 a')
    reff.add_argument('--samples', type=int, default=SCAN_POINTS, help='scan points')
    reff.add_argument('--side', choices=('total', 'right', 'left'), default='total',
                      help='maximize the total x force or that of one wing')
    reff.add_argument('--out', default='-')

    angle = commands.add_parser('find-angle', parents=[geometry],
                                help='opening angle maximizing |F_x|')
    angle.add_argument('--phi-min-deg', type=float, default=0.0)
    angle.add_argument('--phi-max-deg', type=float, default=10.0)
    angle.add_argument('--samples', type=int, default=SCAN_POINTS, help='scan points')
    angle.add_argument('--out', default='-')

    repro = commands.add_parser('reproduce', help='data files of a published figure')
    repro.add_argument('tag', nargs='?', help='catalog tag, e.g. fig2a')
    repro.add_argument('--list', action='store_true', help='print the catalog and exit')
    repro.add_argument('--out-dir', default='.')
    repro.add_argument('--a-override', type=float,
                       help='separation for the fig5-fig8 families (m), default 4e-10')
    repro.add_argument('--samples', type=int, help='grid size instead of the default')
    repro.add_argument('--workers', type=int, default=1)
    return parser


def resolve_config(args: argparse.Namespace, **fallback: float) -> CavityConfig:
    """
    Defaults < --config file < explicit flags.

    Keyword arguments supply document keys (e.g. R_m) that neither the file
    nor the flags set.
    """
    overrides = {key: getattr(args, flag) for flag, key in GEOMETRY_FLAGS.items()
                 if getattr(args, flag, None) is not None}
    return load_config(args.config, overrides, fallback)


def _emit(result, args: argparse.Namespace) -> None:
    writer = emit_json if args.format == 'json' else emit_csv
    writer(result, sys.stdout if args.out == '-' else args.out)


def _write_document(document: Dict, out: str) -> None:
    text = json.dumps(document, indent=2) + '\n'
    write_text(text, sys.stdout if out == '-' else out)


def _run_profile(args: argparse.Namespace) -> None:
    config = validate(resolve_config(args))
    outputs = ['p_x', 'p_z'] + (['p_classical'] if config.a > 0 else [])
    first = config.r_start / config.R
    spec = SweepSpec(swept=SweptQuantity.r, values=sweep_values(first, 1.0, args.samples),
                     base=config, outputs=tuple(outputs), sides=SIDE_CHOICES[args.side],
                     relative=True)
    _emit(run_sweep(spec, workers=args.workers), args)


def _run_force(args: argparse.Namespace) -> None:
    config = validate(resolve_config(args))
    spec = SweepSpec(swept=SweptQuantity.R, values=(config.R,), base=config,
                     outputs=tuple(FORCE_OUTPUTS), per_wing=True)
    _emit(run_sweep(spec), args)


def _run_sweep(args: argparse.Namespace) -> None:
    swept = SweptQuantity(args.swept)
    start, stop = args.start, args.stop
    if swept is SweptQuantity.phi:
        start, stop = math.radians(start), math.radians(stop)
    values = sweep_values(start, stop, args.samples, log=args.log)
    if swept is SweptQuantity.R:
        # R comes from the sweep itself
        base = resolve_config(args, R_m=values[0])
    else:
        base = resolve_config(args)
    outputs = tuple(name.strip() for name in args.outputs.split(',') if name.strip())
    spec = SweepSpec(swept=swept, values=values, base=base, outputs=outputs,
                     sides=SIDE_CHOICES[args.side], per_wing=args.per_wing,
                     relative=args.relative, dx_ratio=args.dx_ratio)
    _emit(run_sweep(spec, workers=args.workers), args)


def _run_find_reff(args: argparse.Namespace) -> None:
    config = validate(resolve_config(args))
    r_min = args.r_min if args.r_min is not None else 0.1 * config.a
    r_max = args.r_max if args.r_max is not None else 100.0 * config.a
    side = None if args.side == 'total' else WingSide(args.side)
    result = find_reff(config, r_min, r_max, n_scan=args.samples, side=side)
    _write_document({'r_eff': result.r_eff, 'w_x': result.w_x, 'side': args.side,
                     'f_at_reff': result.f_at_reff, 'interior': result.interior,
                     'config': config.to_dict()}, args.out)


def _run_find_angle(args: argparse.Namespace) -> None:
    config = validate(resolve_config(args))
    result = find_optimal_angle(config, math.radians(args.phi_min_deg),
                                math.radians(args.phi_max_deg), n_scan=args.samples)
    _write_document({'phi': result.phi, 'phi_deg': math.degrees(result.phi),
                     'f_x': result.f_x, 'interior': result.interior,
                     'config': config.to_dict()}, args.out)


def _run_reproduce(args: argparse.Namespace) -> None:
    if args.list:
        for tag, description in list_figures():
            print(f"{tag}\t{description}")
        return
    if not args.tag:
        raise UnknownFigureTag("A figure tag is required unless --list is given")
    manifests = reproduce(args.tag, args.out_dir, a_override=args.a_override,
                          workers=args.workers, samples=args.samples)
    for manifest in manifests:
        print(f"{manifest.figure_tag}\t{manifest.scenario}\t{manifest.input_hash}\t"
              f"{manifest.csv_path}\t{manifest.json_path}")


COMMANDS = {
    'profile': _run_profile,
    'force': _run_force,
    'sweep': _run_sweep,
    'find-reff': _run_find_reff,
    'find-angle': _run_find_angle,
    'reproduce': _run_reproduce,
}


def _report(payload: Dict) -> None:
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name; sys.argv[1:] if None

    Returns:
        int: 0 on success, 2 on any error
    """
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        COMMANDS[args.command](args)
    except CavityError as exc:
        _report(exc.to_dict())
        return EXIT_ERROR
    except OSError as exc:
        _report({'error': type(exc).__name__, 'message': str(exc)})
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
