"""Shared fixtures: built MUB sets are cached per session because exact
verification of the larger ones is the dominant cost of the suite."""

from __future__ import annotations

import os

import pytest

from mubkit.hadamard import dft
from mubkit.latin import complete_mols_prime_power
from mubkit.mub import MubSet, build_mubs
from mubkit.net import net_from_mols

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

_built: dict[int, MubSet] = {}


def built_mubs(s: int) -> MubSet:
    """q + 1 bases of C^(q^2) from the complete MOLS set and the DFT."""
    if s not in _built:
        net = net_from_mols(complete_mols_prime_power(s))
        _built[s] = build_mubs(net, dft(s))
    return _built[s]


@pytest.fixture(scope="session")
def mols26_path() -> str:
    path = os.path.join(DATA_DIR, "mols26.json")
    assert os.path.exists(path), "run scripts/find_mols26.py to regenerate"
    return path
