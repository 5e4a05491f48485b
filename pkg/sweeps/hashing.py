"""
hashing.py - Input and output fingerprints for reproduction runs

A run is identified by the SHA-256 of the canonical JSON form of its sweep
description (sorted keys, no whitespace). Manifests also record the SHA-256
of every file they list, so a later check can tell whether a data file still
belongs to the inputs it claims.
"""

import hashlib
import hmac
import json
import logging
import os
from typing import Any, Dict

from .sweep import SweepSpec

logger = logging.getLogger(__name__)

CHUNK_SIZE = 1 << 16


def canonical_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, separators=(',', ':'), allow_nan=False)


def compute_input_hash(spec: SweepSpec) -> str:
    """
    Fingerprint of a sweep description.

    Args:
        spec: Sweep to fingerprint

    Returns:
        str: Hex SHA-256 of the canonical JSON of spec.to_dict()
    """
    return hashlib.sha256(canonical_json(spec.to_dict()).encode('utf-8')).hexdigest()


def compute_file_hash(path: str) -> str:
    """Hex SHA-256 of a file's contents."""
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(CHUNK_SIZE), b''):
            digest.update(chunk)
    return digest.hexdigest()


def secure_compare(a: str, b: str) -> bool:
    """Compare two digests in constant time."""
    return hmac.compare_digest(a.encode(), b.encode())


def verify_manifest(path: str) -> bool:
    """
    Check a manifest written by reproduce against its inputs and outputs.

    The input hash is re-derived from the recorded sweep description, and
    every listed output file is re-hashed. Missing files count as a mismatch.

    Args:
        path: Manifest JSON file

    Returns:
        bool: True if every fingerprint matches
    """
    with open(path, 'r', encoding='utf-8') as handle:
        manifest = json.load(handle)

    base_dir = os.path.dirname(os.path.abspath(path))
    for run in manifest.get('runs', []):
        expected = hashlib.sha256(canonical_json(run['spec']).encode('utf-8')).hexdigest()
        if not secure_compare(expected, run['input_hash']):
            logger.warning("Input hash mismatch for %s", run.get('scenario'))
            return False
        for name, digest in sorted(run.get('outputs', {}).items()):
            output = os.path.join(base_dir, name)
            if not os.path.exists(output):
                logger.warning("Missing output %s", output)
                return False
            if not secure_compare(compute_file_hash(output), digest):
                logger.warning("Output %s changed since the manifest was written", output)
                return False
    return True
