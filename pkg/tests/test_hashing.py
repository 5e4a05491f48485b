"""
Test suite for run fingerprints.
"""

import hashlib

import pytest

from cavity.geometry import CavityConfig
from sweeps.hashing import canonical_json, compute_file_hash, compute_input_hash, secure_compare
from sweeps.sweep import SweepSpec, SweptQuantity


def make_spec(**changes):
    arguments = dict(swept=SweptQuantity.R, values=(1e-9, 2e-9),
                     base=CavityConfig(a=4e-10, R=1e-9, phi=0.01), outputs=('f_x',))
    arguments.update(changes)
    return SweepSpec(**arguments)


def test_canonical_json():
    """Test sorted keys and compact separators."""
    assert canonical_json({'b': 1, 'a': [1.5, None]}) == '{"a":[1.5,null],"b":1}'

    # non-finite numbers have no canonical form
    with pytest.raises(ValueError):
        canonical_json({'a': float('nan')})


def test_input_hash():
    """Test that the input hash follows the sweep description."""
    digest = compute_input_hash(make_spec())

    assert len(digest) == 64
    assert digest == compute_input_hash(make_spec())
    assert digest != compute_input_hash(make_spec(values=(1e-9, 3e-9)))
    assert digest != compute_input_hash(make_spec(per_wing=True))
    # the catalog tag is not an input
    assert digest == compute_input_hash(make_spec(figure_tag='fig5a'))


def test_file_hash(temp_file):
    """Test file hashing against hashlib."""
    data = b"swept_value,f_x\n" * 10000
    with open(temp_file, 'wb') as handle:
        handle.write(data)

    assert compute_file_hash(temp_file) == hashlib.sha256(data).hexdigest()


def test_secure_comparison():
    """Test constant-time digest comparison."""
    # Equal strings
    assert secure_compare("test-string", "test-string")

    # Different strings
    assert not secure_compare("test-string", "other-string")

    # Different length strings
    assert not secure_compare("test-string", "test-string-extra")

    # Case sensitivity
    assert not secure_compare("Test-String", "test-string")
