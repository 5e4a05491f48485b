"""
sweep.py - Parameter sweeps over r, R, phi and dx

A SweepSpec names the swept quantity, its values, the base configuration and
the requested outputs. run_sweep evaluates every value independently: a row
that fails records its error code and the sweep carries on. Rows can be
evaluated in worker processes; results are always collected in input order,
so the output does not depend on the degree of parallelism.
"""

import functools
import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cavity import __version__
from cavity.constants import CONSTANTS
from cavity.errors import AllRowsFailed, CavityError, DivisionByZeroForce, EmptySweep, InvalidSweep
from cavity.forces import RTOL, total_force
from cavity.geometry import APEX_CUTOFF, CavityConfig, ValidatedConfig, WingSide, describe, validate
from cavity.kernel import classical_casimir_pressure, specific_force

logger = logging.getLogger(__name__)

TOOL_NAME = "casimir-expulsion"

# Fixed column order of the outputs.
OUTPUT_ORDER = ('p_x', 'p_z', 'p_classical', 'f_x', 'f_z', 'ratio', 'w_x', 'torque')
PROFILE_OUTPUTS = frozenset({'p_x', 'p_z', 'p_classical'})
FORCE_OUTPUTS = frozenset({'f_x', 'f_z', 'ratio', 'w_x', 'torque'})
SIDED_OUTPUTS = frozenset({'p_x', 'p_z'})
PER_WING_OUTPUTS = frozenset({'f_x', 'f_z'})


class SweptQuantity(Enum):
    r = "r"
    R = "R"
    phi = "phi"
    dx = "dx"


@dataclass(frozen=True)
class SweepSpec:
    """
    Description of one sweep.

    Attributes:
        swept: Quantity that varies along the rows
        values: Strictly increasing values of the swept quantity; r and dx
            are fractions of R when relative is set, phi is in radians
        base: Configuration that supplies every non-swept parameter
        outputs: Requested outputs, a subset of OUTPUT_ORDER
        sides: Wings reported by profile (r) sweeps
        per_wing: Add right and left columns next to f_x and f_z
        relative: Read r or dx values as fractions of R
        dx_ratio: For R sweeps, keep dx = dx_ratio * R instead of base.dx
        figure_tag: Catalog tag recorded in the metadata
    """

    swept: SweptQuantity
    values: Tuple[float, ...]
    base: CavityConfig
    outputs: Tuple[str, ...]
    sides: Tuple[WingSide, ...] = (WingSide.RIGHT,)
    per_wing: bool = False
    relative: bool = False
    dx_ratio: Optional[float] = None
    figure_tag: Optional[str] = None

    def __post_init__(self):
        requested = set(self.outputs)
        unknown = requested - set(OUTPUT_ORDER)
        if unknown:
            raise InvalidSweep(f"Unknown outputs: {sorted(unknown)}")
        object.__setattr__(self, 'values', tuple(float(v) for v in self.values))
        object.__setattr__(self, 'outputs',
                           tuple(name for name in OUTPUT_ORDER if name in requested))
        object.__setattr__(self, 'sides', tuple(self.sides))
        if not self.values:
            raise EmptySweep("A sweep needs at least one value")
        if not self.outputs:
            raise EmptySweep("A sweep needs at least one output")
        self._check()

    def _check(self) -> None:
        if any(not math.isfinite(v) for v in self.values):
            raise InvalidSweep("Sweep values must be finite")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise InvalidSweep("Sweep values must be strictly increasing")

        allowed = PROFILE_OUTPUTS if self.swept is SweptQuantity.r else FORCE_OUTPUTS
        misplaced = set(self.outputs) - allowed
        if misplaced:
            raise InvalidSweep(
                f"Outputs {sorted(misplaced)} are not available for a {self.swept.value} sweep")
        if not self.sides:
            raise InvalidSweep("A profile sweep needs at least one side")
        if self.dx_ratio is not None and self.swept is not SweptQuantity.R:
            raise InvalidSweep("dx_ratio only applies to R sweeps")
        if self.relative and self.swept not in (SweptQuantity.r, SweptQuantity.dx):
            raise InvalidSweep("Relative values only apply to r and dx sweeps")

        # every row must describe a valid cavity before anything runs
        for value in self.values:
            try:
                config = self.config_at(value)
            except CavityError as exc:
                raise InvalidSweep(f"Value {value!r} gives an invalid cavity: {exc}",
                                   value=value, cause=exc.code) from exc
            if self.swept is SweptQuantity.r:
                r = self.position(config, value)
                # rounding slack on the apex cutoff of a triangle
                if not config.r_start * (1.0 - 1e-12) <= r <= config.R:
                    raise InvalidSweep(f"r = {r!r} lies outside the wing", value=value)

    def config_at(self, value: float) -> ValidatedConfig:
        """Validated configuration of the row with the given swept value."""
        base = self.base
        if self.swept is SweptQuantity.R:
            dx = base.dx if self.dx_ratio is None else self.dx_ratio * value
            return validate(base.evolve(R=value, dx=dx))
        if self.swept is SweptQuantity.phi:
            return validate(base.evolve(phi=value))
        if self.swept is SweptQuantity.dx:
            return validate(base.evolve(dx=value * base.R if self.relative else value))
        return validate(base)

    def position(self, config: ValidatedConfig, value: float) -> float:
        """Wing position of an r-sweep row."""
        return value * config.R if self.relative else value

    @property
    def columns(self) -> List[str]:
        """Value columns in output order, without swept_value and error."""
        columns: List[str] = []
        for name in self.outputs:
            if name in SIDED_OUTPUTS:
                columns.extend(f"{name}_{side.value}" for side in self.sides)
            elif name in PER_WING_OUTPUTS and self.per_wing:
                columns.extend([f"{name}_right", f"{name}_left", name])
            else:
                columns.append(name)
        return columns

    def to_dict(self) -> Dict[str, Any]:
        """Canonical description, used for metadata and the input hash."""
        return {
            'swept': self.swept.value,
            'values': list(self.values),
            'base': self.base.to_dict(),
            'outputs': list(self.outputs),
            'sides': [side.value for side in self.sides],
            'per_wing': self.per_wing,
            'relative': self.relative,
            'dx_ratio': self.dx_ratio,
        }


@dataclass(frozen=True)
class SweepRow:
    """Result of one swept value; error holds the error code of a failed row."""

    value: float
    values: Dict[str, Optional[float]]
    quadrature_error: Optional[float] = None
    error: Optional[str] = None
    message: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: List[SweepRow]
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def columns(self) -> List[str]:
        columns = ['swept_value'] + self.spec.columns
        if any(row.failed for row in self.rows):
            columns.append('error')
        return columns

    @property
    def failed_rows(self) -> List[SweepRow]:
        return [row for row in self.rows if row.failed]


def _profile_row(spec: SweepSpec, config: ValidatedConfig, value: float) -> SweepRow:
    r = spec.position(config, value)
    forces = {side: specific_force(config, r, side) for side in spec.sides}
    values: Dict[str, Optional[float]] = {}
    for name in spec.outputs:
        if name == 'p_classical':
            values[name] = classical_casimir_pressure(config.a)
            continue
        for side in spec.sides:
            values[f"{name}_{side.value}"] = getattr(forces[side], name)
    return SweepRow(value=value, values=values)


def _force_row(spec: SweepSpec, config: ValidatedConfig, value: float) -> SweepRow:
    total = total_force(config)
    right, left = total.per_wing
    values: Dict[str, Optional[float]] = {}
    for name in spec.outputs:
        if name in PER_WING_OUTPUTS:
            if spec.per_wing:
                values[f"{name}_right"] = getattr(right, name)
                values[f"{name}_left"] = getattr(left, name)
            values[name] = getattr(total, f"{name}_total")
        elif name == 'ratio':
            if total.f_z_total == 0:
                raise DivisionByZeroForce("Total z force is zero")
            values[name] = total.f_x_total / total.f_z_total
        elif name == 'w_x':
            values[name] = abs(total.f_x_total) / config.R
        elif name == 'torque':
            values[name] = total.torque_y
    return SweepRow(value=value, values=values,
                    quadrature_error=right.quadrature_error + left.quadrature_error)


def evaluate_row(spec: SweepSpec, value: float) -> SweepRow:
    """
    Evaluate one row, turning any CavityError into an in-row error code.

    Args:
        spec: Sweep the row belongs to
        value: Swept value of the row

    Returns:
        SweepRow: Values, or the error code and message of the failure
    """
    started = time.perf_counter()
    try:
        config = spec.config_at(value)
        if spec.swept is SweptQuantity.r:
            row = _profile_row(spec, config, value)
        else:
            row = _force_row(spec, config, value)
    except CavityError as exc:
        logger.warning("Row %s=%r failed: %s: %s", spec.swept.value, value, exc.code, exc)
        return SweepRow(value=value, values={column: None for column in spec.columns},
                        error=exc.code, message=str(exc))
    logger.debug("Row %s=%r done in %.3f s", spec.swept.value, value,
                 time.perf_counter() - started)
    return row


def _map_rows(spec: SweepSpec, workers: int) -> List[SweepRow]:
    runner = functools.partial(evaluate_row, spec)
    if workers <= 1 or len(spec.values) == 1:
        return [runner(value) for value in spec.values]
    from multiprocessing import Pool
    with Pool(min(int(workers), len(spec.values))) as pool:
        # map keeps input order whatever order the workers finish in
        return pool.map(runner, spec.values)


def build_metadata(spec: SweepSpec) -> Dict[str, Any]:
    """Run description echoed into JSON output; contains no timestamps."""
    base = spec.base
    cutoff = APEX_CUTOFF if base.a == 0 else None
    return {
        'tool': TOOL_NAME,
        'version': __version__,
        'figure_tag': spec.figure_tag,
        'swept': spec.swept.value,
        'relative': spec.relative,
        'outputs': list(spec.outputs),
        'config': describe(base),
        'dx_ratio': spec.dx_ratio,
        'constants': CONSTANTS.to_dict(),
        'apex_cutoff': cutoff,
        'quadrature_rtol': RTOL,
    }


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """
    Evaluate every row of a sweep.

    Args:
        spec: Validated sweep description
        workers: Number of worker processes; 1 evaluates in this process

    Returns:
        SweepResult: One row per value, in input order

    Raises:
        AllRowsFailed: If no row could be evaluated
    """
    logger.info("Sweeping %s over %d values (%s)", spec.swept.value, len(spec.values),
                ", ".join(spec.outputs))
    rows = _map_rows(spec, workers)
    failed = sum(row.failed for row in rows)
    if failed == len(rows):
        codes = sorted({row.error for row in rows if row.error})
        raise AllRowsFailed(f"All {failed} rows failed ({', '.join(codes)})", codes=codes)
    if failed:
        logger.warning("%d of %d rows failed", failed, len(rows))
    logger.info("Sweep finished: %d rows", len(rows))
    return SweepResult(spec=spec, rows=rows, metadata=build_metadata(spec))


def sweep_values(start: float, stop: float, count: int, log: bool = False) -> Sequence[float]:
    """Evenly spaced sweep grid, optionally log-spaced, as plain floats."""
    grid = np.geomspace(start, stop, count) if log else np.linspace(start, stop, count)
    return [float(v) for v in grid]
