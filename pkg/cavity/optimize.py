"""
optimize.py - One-dimensional maximization helpers

A coarse grid scan locates the maxima of an objective, and a golden-section
search refines a single bracketed maximum. Both are used by the wing-length
and opening-angle searches in forces.py.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

logger = logging.getLogger(__name__)

# (sqrt(5) - 1) / 2
GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GoldenResult:
    """Outcome of a golden-section search."""

    argmax: float
    maximum: float
    iterations: int
    converged: bool


def scan_maxima(values: Sequence[float], rtol: float = 1e-9) -> List[int]:
    """
    Indices of the local maxima of a sampled objective.

    Neighbouring samples closer than rtol times the largest magnitude are
    merged into one plateau; a plateau counts once, by its middle index, when
    every adjacent plateau is lower. The ends of the grid count as maxima
    when they exceed their single neighbour.

    Args:
        values: Objective sampled on an ordered grid
        rtol: Relative closeness under which two samples are treated as equal

    Returns:
        List[int]: Ascending indices of the separated local maxima
    """
    samples = np.asarray(values, dtype=float)
    if samples.size == 0:
        return []
    slack = rtol * float(np.max(np.abs(samples)))

    # plateaus as (first index, last index, representative value)
    plateaus = []
    start = 0
    for i in range(1, samples.size + 1):
        if i == samples.size or abs(samples[i] - samples[i - 1]) > slack:
            plateaus.append((start, i - 1, float(samples[start])))
            start = i

    maxima = []
    for k, (first, last, value) in enumerate(plateaus):
        lower_left = k == 0 or plateaus[k - 1][2] < value
        lower_right = k == len(plateaus) - 1 or plateaus[k + 1][2] < value
        if lower_left and lower_right:
            maxima.append((first + last) // 2)
    return maxima


def golden_section_maximize(f: Callable[[float], float], lo: float, hi: float,
                            tol: float = 1e-8, max_iterations: int = 200) -> GoldenResult:
    """
    Maximize a unimodal function on [lo, hi] by golden-section search.

    The bracket shrinks by the golden ratio per step until it is narrower
    than tol. If an end of the original bracket beats the interior estimate,
    that end is returned.
    """
    x_lo, x_hi = lo, hi
    x1 = x_hi - GOLDEN_RATIO * (x_hi - x_lo)
    x2 = x_lo + GOLDEN_RATIO * (x_hi - x_lo)
    f1, f2 = f(x1), f(x2)
    iteration = 0
    while iteration < max_iterations and abs(x_hi - x_lo) > tol:
        if f2 > f1:
            x_lo, x1, f1 = x1, x2, f2
            x2 = x_lo + GOLDEN_RATIO * (x_hi - x_lo)
            f2 = f(x2)
        else:
            x_hi, x2, f2 = x2, x1, f1
            x1 = x_hi - GOLDEN_RATIO * (x_hi - x_lo)
            f1 = f(x1)
        iteration += 1

    if f1 >= f2:
        argmax, maximum = x1, f1
    else:
        argmax, maximum = x2, f2
    f_lo, f_hi = f(lo), f(hi)
    if f_lo > maximum:
        argmax, maximum = lo, f_lo
    if f_hi > maximum:
        argmax, maximum = hi, f_hi

    converged = abs(x_hi - x_lo) <= tol and math.isfinite(maximum)
    logger.debug("golden section: argmax=%.10g after %d iterations (converged=%s)",
                 argmax, iteration, converged)
    return GoldenResult(argmax=argmax, maximum=maximum, iterations=iteration,
                        converged=converged)
