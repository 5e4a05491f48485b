"""
Sweeps package for the Casimir expulsion project.

Scenario documents, parameter sweeps, CSV/JSON output, the catalog of
published figures and the command line front end built on top of the
cavity package.
"""

from .config import parse_config
from .sweep import SweepResult, SweepSpec, SweptQuantity, run_sweep
from .emit import emit_csv, emit_json
from .catalog import RunManifest, reproduce

__all__ = ['parse_config', 'SweepSpec', 'SweepResult', 'SweptQuantity', 'run_sweep',
           'emit_csv', 'emit_json', 'RunManifest', 'reproduce']
