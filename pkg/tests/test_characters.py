import json
import os
from fractions import Fraction as Q
from itertools import combinations

import numpy as np
import pytest

from coxstokes.characters import (
    CharacterScaleError,
    character_value,
    fundamental_characters,
    weight_pairing,
)
from coxstokes.rootcore import build_root_system

KNOWN_DIMS = {
    "A2": [3, 3],
    "A3": [4, 6, 4],
    "B3": [7, 21, 8],
    "C3": [6, 14, 14],
    "D4": [8, 28, 8, 8],
    "G2": [7, 14],
    "F4": [52, 1274, 273, 26],
    "E6": [27, 78, 351, 2925, 351, 27],
}


@pytest.mark.parametrize("name", sorted(KNOWN_DIMS))
def test_fundamental_dimensions(name):
    rs = build_root_system(name)
    dims = [fundamental_characters(name, i + 1).dim for i in range(rs.rank)]
    assert dims == KNOWN_DIMS[name]


def test_a2_standard_weights():
    tb = fundamental_characters("A2", 1)
    assert tb.dim == 3
    assert len(tb.weights) == 3 and all(m == 1 for _, m in tb.weights)


def test_weyl_invariance_of_multiplicities():
    rs = build_root_system("C3")
    from coxstokes.characters import _lattice

    lat = _lattice("C3")
    tb = fundamental_characters("C3", 2)
    mult = dict(tb.weights)
    for w, m in tb.weights:
        for i in range(rs.rank):
            assert mult[lat.reflect(i, w)] == m


def test_dimension_cap():
    # E8's fourth fundamental representation is far beyond desk scale
    with pytest.raises(CharacterScaleError):
        fundamental_characters("E8", 4, dim_cap=10**6)


def test_torus_values_a2():
    rs = build_root_system("A2")
    y = tuple(c / 3 for c in rs.r_coeffs)   # y = x0/s at m = 0
    for i in (1, 2):
        t = character_value(rs, fundamental_characters("A2", i), y)
        assert abs(t) < 1e-12
    at_zero = [
        character_value(rs, fundamental_characters("A2", i), (Q(0), Q(0))) for i in (1, 2)
    ]
    assert all(abs(v - 3) < 1e-12 for v in at_zero)


def _ext_trace(g: np.ndarray, k: int) -> complex:
    idx = list(combinations(range(g.shape[0]), k))
    return sum(np.linalg.det(g[np.ix_(r, r)]) for r in idx)


def test_a3_exterior_power_oracle():
    # character values at a torus point vs traces of exterior powers of the
    # standard-representation torus matrix
    rs = build_root_system("A3")
    rng = np.random.default_rng(1)
    y = [Q(int(x), 12) for x in rng.integers(-6, 7, size=3)]
    tb1 = fundamental_characters("A3", 1)
    diag = np.diag(
        [np.exp(2j * np.pi * float(weight_pairing(rs, w, y))) for w, _ in tb1.weights]
    )
    for j in (1, 2, 3):
        via_table = character_value(rs, fundamental_characters("A3", j), y)
        via_minors = _ext_trace(diag, j)
        assert abs(via_table - via_minors) < 1e-12


def test_disk_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("COXSTOKES_CACHE", str(tmp_path))
    fundamental_characters.cache_clear()
    tb = fundamental_characters("B2", 1)
    files = os.listdir(tmp_path)
    assert any("B2" in f for f in files)
    fundamental_characters.cache_clear()
    tb2 = fundamental_characters("B2", 1)
    assert tb2.weights == tb.weights and tb2.dim == tb.dim
    fundamental_characters.cache_clear()
    monkeypatch.delenv("COXSTOKES_CACHE")
