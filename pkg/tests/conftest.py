"""
conftest.py - pytest configuration and shared fixtures
"""

import math
import os
import shutil
import tempfile

import numpy as np
import pytest

from cavity.geometry import CavityConfig, validate

TMP_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "tmp")


@pytest.fixture(scope="session", autouse=True)
def session_setup():
    """Setup and teardown for the entire test session."""
    # Make sure temp dir for tests exists
    os.makedirs(TMP_DIR, exist_ok=True)

    yield

    # Teardown code - cleanup temp files
    shutil.rmtree(TMP_DIR, ignore_errors=True)


@pytest.fixture
def temp_file():
    """Create a temporary file."""
    fd, path = tempfile.mkstemp(suffix='.tmp', dir=TMP_DIR)
    os.close(fd)
    yield path
    try:
        os.unlink(path)
    except OSError:
        pass


@pytest.fixture
def output_dir():
    """Create a temporary output directory."""
    path = tempfile.mkdtemp(dir=TMP_DIR)
    yield path
    shutil.rmtree(path, ignore_errors=True)


@pytest.fixture
def rng():
    """Seeded generator for randomized property tests."""
    return np.random.default_rng(20241018)


@pytest.fixture
def parallel_plates():
    """Parallel wings of the pressure-profile figures, no shift."""
    return validate(CavityConfig(a=4e-7, R=4e-6, L=1.0, phi=0.0, dx=0.0))


@pytest.fixture
def shifted_plates():
    """Parallel wings with the left wing shifted by a."""
    return validate(CavityConfig(a=4e-7, R=4e-6, L=1.0, phi=0.0, dx=4e-7))


@pytest.fixture
def trapezoid():
    """Trapezoid cavity opened by one degree at the nanometre scale."""
    return validate(CavityConfig(a=4e-10, R=1.85e-9, L=1.0, phi=math.radians(1.0), dx=0.0))
