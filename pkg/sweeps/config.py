"""
config.py - Scenario documents

A scenario is a flat UTF-8 ``key=value`` document. ``#`` starts a comment,
blank lines are ignored, and lengths are in metres with the opening angle in
degrees:

    # force profile baseline
    a_m=4e-7
    R_m=4e-6
    phi_deg=0

Unknown keys are rejected rather than ignored so that a typo never silently
falls back to a default.
"""

import logging
import math
from typing import Dict, Optional

from cavity.errors import DuplicateKey, MalformedLine, MalformedNumber, MissingKey, UnknownKey
from cavity.geometry import CavityConfig

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, float] = {
    'a_m': 4e-7,
    'L_m': 1.0,
    'phi_deg': 0.0,
    'dx_m': 0.0,
}
REQUIRED = ('R_m',)
KNOWN_KEYS = frozenset(DEFAULTS) | frozenset(REQUIRED)


def parse_values(text: str) -> Dict[str, float]:
    """
    Parse the key/value pairs of a scenario document without applying defaults.

    Raises:
        MalformedLine: If a non-comment line has no '='
        UnknownKey: If a key is not one of a_m, R_m, L_m, phi_deg, dx_m
        DuplicateKey: If a key appears twice
        MalformedNumber: If a value is not a finite number
    """
    values: Dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise MalformedLine(f"Line {lineno} is not a key=value pair: {raw!r}", line=lineno)
        key, value = (part.strip() for part in line.split('=', 1))
        if key not in KNOWN_KEYS:
            raise UnknownKey(f"Unknown key {key!r} on line {lineno}", key=key, line=lineno)
        if key in values:
            raise DuplicateKey(f"Key {key!r} repeated on line {lineno}", key=key, line=lineno)
        try:
            number = float(value)
        except ValueError:
            raise MalformedNumber(f"Value of {key!r} is not a number: {value!r}",
                                  key=key, line=lineno) from None
        if not math.isfinite(number):
            raise MalformedNumber(f"Value of {key!r} must be finite, got {value!r}",
                                  key=key, line=lineno)
        values[key] = number
    return values


def to_config(values: Dict[str, float]) -> CavityConfig:
    """Fill defaults into parsed values and convert to a CavityConfig."""
    for key in REQUIRED:
        if key not in values:
            raise MissingKey(f"Required key {key!r} is missing", key=key)
    merged = dict(DEFAULTS)
    merged.update(values)
    return CavityConfig(a=merged['a_m'], R=merged['R_m'], L=merged['L_m'],
                        phi=math.radians(merged['phi_deg']), dx=merged['dx_m'])


def parse_config(text: str) -> CavityConfig:
    """
    Parse a scenario document into an unvalidated configuration.

    Range checks (positive R, admissible angle, ...) are left to
    cavity.geometry.validate.

    Args:
        text: Document contents

    Returns:
        CavityConfig: Configuration in SI units and radians
    """
    config = to_config(parse_values(text))
    logger.debug("Parsed scenario: %s", config)
    return config


def load_config(path: Optional[str], overrides: Optional[Dict[str, float]] = None,
                fallback: Optional[Dict[str, float]] = None) -> CavityConfig:
    """
    Read a scenario file; explicit overrides win over the file's values.

    Args:
        path: Scenario file, or None for the built-in defaults only
        overrides: Document keys that replace the file's values
        fallback: Document keys used only where neither the file nor the
            overrides set them (e.g. R_m of an R sweep)

    Returns:
        CavityConfig: Configuration in SI units and radians
    """
    values: Dict[str, float] = {}
    if path:
        with open(path, 'r', encoding='utf-8') as handle:
            values.update(parse_values(handle.read()))
    values.update(overrides or {})
    for key, value in (fallback or {}).items():
        values.setdefault(key, value)
    return to_config(values)
