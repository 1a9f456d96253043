"""Shared fixtures: built tables and homology structures, cached per key
across the whole session so the acceptance module and the unit modules
reuse the same (expensive) constructions."""

import pytest

from cooperad_lab.homology import build_homology_structure
from cooperad_lab.instances import build_cooperad, builtin

BIALGEBRA_NAMES = ("Q_Z2", "F2_Z2", "Q_Z3", "sweedler4")
FROBENIUS_NAMES = ("dual_numbers", "mat2", "group_frobenius_Z2")
ALL_NAMES = BIALGEBRA_NAMES + FROBENIUS_NAMES

# dimensions of H_0..H_N for the documented instances
EXPECTED_DIMS = {
    "Q_Z2": (1, 0, 0, 0, 0),
    "F2_Z2": (1, 1, 1, 1, 1),
    "dual_numbers": (2, 1, 1, 1),
    "mat2": (1, 0, 0, 0),
}

_built_cache = {}
_homology_cache = {}


def _get_built(name, N):
    key = (name, N)
    if key not in _built_cache:
        _built_cache[key] = build_cooperad(builtin(name), N)
    return _built_cache[key]


def _get_homology(name, cap):
    key = (name, cap)
    if key not in _homology_cache:
        C, T = _get_built(name, cap + 2)
        _homology_cache[key] = build_homology_structure(C, T,
                                                        degree_cap=cap)
    return _homology_cache[key]


@pytest.fixture(scope="session")
def built():
    """built(name, N) -> (cooperad, comultiplication triple), cached."""
    return _get_built


@pytest.fixture(scope="session")
def homology():
    """homology(name, cap) -> HomologyStructure; the table is built with
    two extra degrees so every degree up to cap is genuine."""
    return _get_homology
