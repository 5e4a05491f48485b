"""
catalog.py - Canned sweeps, one tag per published subfigure

Every tag maps to one or more scenarios, each a SweepSpec factory. The
profile figures (fig2-fig4) use the pressure-plot baseline a = 4e-7 m and
R = 4e-6 m. The force figures (fig5-fig8) depend on a separation that the
source figures leave ambiguous; they default to a = 4e-10 m and accept an
override, with every length of the scenario expressed relative to a.

reproduce() runs the scenarios of one tag and writes, per scenario, a CSV and
a JSON file plus one ``<tag>.manifest.json`` with the input and output
fingerprints.
"""

import json
import logging
import math
import os
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from cavity.errors import UnknownFigureTag
from cavity.geometry import CavityConfig, WingSide

from .emit import emit_csv, emit_json, write_text
from .hashing import compute_file_hash, compute_input_hash
from .sweep import SweepSpec, SweptQuantity, run_sweep, sweep_values

logger = logging.getLogger(__name__)

PROFILE_A = 4e-7
PROFILE_R = 4e-6
FORCE_A = 4e-10
PROFILE_SAMPLES = 512
R_SWEEP_POINTS = 64
SHIFT_SWEEP_POINTS = 64
ANGLE_SWEEP_POINTS = 41
# R_eff = 1.85e-9 m at a = 4e-10 m
REFF_OVER_A = 4.625

BOTH = (WingSide.RIGHT, WingSide.LEFT)


@dataclass(frozen=True)
class Scenario:
    """One data file of a figure; build(a, samples) returns its sweep."""

    name: str
    build: Callable[[float, int], SweepSpec]


@dataclass(frozen=True)
class FigureEntry:
    tag: str
    description: str
    scenarios: Tuple[Scenario, ...]
    uses_a_override: bool = False
    default_a: float = PROFILE_A


@dataclass(frozen=True)
class RunManifest:
    """Record of one scenario written by reproduce."""

    scenario: str
    figure_tag: str
    input_hash: str
    csv_path: str
    json_path: str

    @property
    def output_path(self) -> str:
        return self.csv_path


def _profile_entry(tag: str, description: str, phi_deg: float, dx: float,
                   outputs: Tuple[str, ...], sides=(WingSide.RIGHT,)) -> FigureEntry:
    def build(a: float, samples: int) -> SweepSpec:
        return SweepSpec(
            swept=SweptQuantity.r, values=sweep_values(0.0, 1.0, samples),
            base=CavityConfig(a=a, R=PROFILE_R, L=1.0, phi=math.radians(phi_deg), dx=dx),
            outputs=outputs, sides=sides, relative=True, figure_tag=tag)
    return FigureEntry(tag, description, (Scenario('profile', build),))


def _length_sweep(tag: str, a: float, samples: int, r_max_over_a: float, dx: float = 0.0,
                  dx_ratio: Optional[float] = None, outputs=('f_x',),
                  per_wing: bool = False) -> SweepSpec:
    return SweepSpec(
        swept=SweptQuantity.R,
        values=sweep_values(0.1 * a, r_max_over_a * a, samples, log=True),
        base=CavityConfig(a=a, R=a, L=1.0, phi=math.radians(1.0), dx=dx),
        outputs=outputs, per_wing=per_wing, dx_ratio=dx_ratio, figure_tag=tag)


def _build_catalog() -> Dict[str, FigureEntry]:
    entries: List[FigureEntry] = []

    # fig2: parallel plates, right wing, shift of the left wing
    for (x_tag, p_tag), dx in zip((('a', 'b'), ('c', 'd'), ('e', 'f')), (0.0, 4e-7, 1e-6)):
        entries.append(_profile_entry(
            f"fig2{x_tag}", f"p_x along the right wing, phi=0, dx={dx:g} m", 0.0, dx, ('p_x',)))
        entries.append(_profile_entry(
            f"fig2{p_tag}", f"p_z along the right wing with the classical level, dx={dx:g} m",
            0.0, dx, ('p_z', 'p_classical')))

    # fig3: parallel plates at relative shifts; fig4: the same at phi = 1 degree
    for figure, phi_deg, ratios in (('fig3', 0.0, (0.05, 0.4, 1.2, 2.0)),
                                    ('fig4', 1.0, (0.05, 0.4, 1.2))):
        letters = iter('abcdefghijkl')
        for ratio in ratios:
            dx = ratio * PROFILE_R
            label = f"phi={phi_deg:g} deg, dx/R={ratio:g}"
            entries.append(_profile_entry(f"{figure}{next(letters)}",
                                          f"p_x along the right wing, {label}",
                                          phi_deg, dx, ('p_x',)))
            entries.append(_profile_entry(f"{figure}{next(letters)}",
                                          f"p_z along both wings, {label}",
                                          phi_deg, dx, ('p_z',), BOTH))
            entries.append(_profile_entry(f"{figure}{next(letters)}",
                                          f"p_x along both wings, {label}",
                                          phi_deg, dx, ('p_x',), BOTH))

    # fig5: one wing pair at phi = 1 degree against R, unshifted and dx/a = 0.5
    for letter, outputs, per_wing, what in (('a', ('f_x',), True, 'expulsion force'),
                                            ('b', ('f_z',), True, 'compression force'),
                                            ('c', ('w_x',), False, 'effectiveness W_x'),
                                            ('d', ('ratio',), False, 'ratio F_x/F_z')):
        tag = f"fig5{letter}"
        scenarios = []
        for name, dx_over_a in (('dx0', 0.0), ('dx0.5a', 0.5)):
            def build(a, samples, tag=tag, dx_over_a=dx_over_a, outputs=outputs,
                      per_wing=per_wing):
                return _length_sweep(tag, a, samples, 100.0, dx=dx_over_a * a,
                                     outputs=outputs, per_wing=per_wing)
            scenarios.append(Scenario(name, build))
        entries.append(FigureEntry(tag, f"{what} against R at phi=1 deg", tuple(scenarios),
                                   uses_a_override=True, default_a=FORCE_A))

    # fig6: whole configuration fixed after the shift, dx/R held constant along R
    letters = iter('abcdefgh')
    for ratio in (0.0, 0.05, 0.4, 1.2):
        for per_wing in (False, True):
            tag = f"fig6{next(letters)}"

            def build(a, samples, tag=tag, ratio=ratio, per_wing=per_wing):
                return _length_sweep(tag, a, samples, 40.0, dx_ratio=ratio,
                                     outputs=('f_x',), per_wing=per_wing)
            what = 'per-wing and total' if per_wing else 'total'
            entries.append(FigureEntry(
                tag, f"{what} expulsion force against R, phi=1 deg, dx/R={ratio:g}",
                (Scenario('length', build),), uses_a_override=True, default_a=FORCE_A))

    # fig7: forces against the relative shift for three opening angles
    for letter, phi_deg in zip('abc', (0.5, 1.0, 2.0)):
        tag = f"fig7{letter}"

        def build(a, samples, tag=tag, phi_deg=phi_deg):
            return SweepSpec(
                swept=SweptQuantity.dx, values=sweep_values(0.0, 5.0, samples),
                base=CavityConfig(a=a, R=REFF_OVER_A * a, L=1.0, phi=math.radians(phi_deg)),
                outputs=('f_x',), per_wing=True, relative=True, figure_tag=tag)
        entries.append(FigureEntry(
            tag, f"right, left and total expulsion force against dx/R, phi={phi_deg:g} deg",
            (Scenario('shift', build),), uses_a_override=True, default_a=FORCE_A))

    # fig8: angle dependence for several wing lengths
    letters = iter('abcdefghi')
    for dx_over_a in (0.0, 0.05, 0.3):
        for output in ('f_x', 'f_z', 'ratio'):
            tag = f"fig8{next(letters)}"
            scenarios = []
            for r_over_a in (0.5, 1.0, 2.0, 5.0):
                def build(a, samples, tag=tag, dx_over_a=dx_over_a, output=output,
                          r_over_a=r_over_a):
                    return SweepSpec(
                        swept=SweptQuantity.phi,
                        values=sweep_values(0.0, math.radians(10.0), samples),
                        base=CavityConfig(a=a, R=r_over_a * a, L=1.0, dx=dx_over_a * a),
                        outputs=(output,), figure_tag=tag)
                scenarios.append(Scenario(f"R{r_over_a:g}a", build))
            entries.append(FigureEntry(
                tag, f"{output} against phi, dx/a={dx_over_a:g}", tuple(scenarios),
                uses_a_override=True, default_a=FORCE_A))

    return {entry.tag: entry for entry in entries}


CATALOG: Dict[str, FigureEntry] = _build_catalog()

DEFAULT_SAMPLES = {'fig2': PROFILE_SAMPLES, 'fig3': PROFILE_SAMPLES, 'fig4': PROFILE_SAMPLES,
                   'fig5': R_SWEEP_POINTS, 'fig6': R_SWEEP_POINTS,
                   'fig7': SHIFT_SWEEP_POINTS, 'fig8': ANGLE_SWEEP_POINTS}


def get_entry(tag: str) -> FigureEntry:
    try:
        return CATALOG[tag]
    except KeyError:
        raise UnknownFigureTag(f"No figure {tag!r} in the catalog", tag=tag) from None


def list_figures() -> List[Tuple[str, str]]:
    """(tag, description) pairs in catalog order."""
    return [(entry.tag, entry.description) for entry in CATALOG.values()]


def build_specs(tag: str, a_override: Optional[float] = None,
                samples: Optional[int] = None) -> List[Tuple[str, SweepSpec]]:
    """Sweeps of one figure as (scenario name, spec) pairs."""
    entry = get_entry(tag)
    a = entry.default_a
    if a_override is not None:
        if entry.uses_a_override:
            a = a_override
        else:
            logger.warning("%s uses the fixed separation a = %g m; override ignored",
                           tag, entry.default_a)
    count = samples if samples is not None else DEFAULT_SAMPLES[tag[:4]]
    return [(scenario.name, scenario.build(a, count)) for scenario in entry.scenarios]


def reproduce(tag: str, out_dir: str, a_override: Optional[float] = None,
              workers: int = 1, samples: Optional[int] = None) -> List[RunManifest]:
    """
    Run the canned sweeps of one figure and write their data files.

    Args:
        tag: Catalog tag, e.g. 'fig2a'
        out_dir: Directory for the CSV, JSON and manifest files
        a_override: Separation used instead of the default (fig5-fig8)
        workers: Worker processes per sweep
        samples: Grid size instead of the figure family's default

    Returns:
        List[RunManifest]: One record per scenario

    Raises:
        UnknownFigureTag: If the tag is not in the catalog
    """
    entry = get_entry(tag)
    specs = build_specs(tag, a_override, samples)
    os.makedirs(out_dir, exist_ok=True)

    manifests: List[RunManifest] = []
    runs = []
    for name, spec in specs:
        stem = tag if len(specs) == 1 else f"{tag}_{name}"
        csv_path = os.path.join(out_dir, f"{stem}.csv")
        json_path = os.path.join(out_dir, f"{stem}.json")
        result = run_sweep(spec, workers=workers)
        emit_csv(result, csv_path)
        emit_json(result, json_path)
        input_hash = compute_input_hash(spec)
        manifests.append(RunManifest(scenario=name, figure_tag=tag, input_hash=input_hash,
                                     csv_path=csv_path, json_path=json_path))
        runs.append({
            'scenario': name,
            'input_hash': input_hash,
            'spec': spec.to_dict(),
            'outputs': {os.path.basename(path): compute_file_hash(path)
                        for path in (csv_path, json_path)},
        })

    document = {'figure_tag': tag, 'description': entry.description, 'runs': runs}
    manifest_path = os.path.join(out_dir, f"{tag}.manifest.json")
    write_text(json.dumps(document, indent=2, sort_keys=True) + '\n', manifest_path)
    logger.info("Reproduced %s: %d scenario(s) in %s", tag, len(specs), out_dir)
    return manifests
