"""Weight multiplicities of the basic irreducible representations.

Dominant multiplicities come from the Freudenthal recursion, full weight
lists from Weyl-orbit expansion, with the Weyl dimension formula as an
independent cross-check.  Weights are handled in Dynkin (fundamental-weight)
coordinates, where dominance and reflections are integer operations.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, List, Tuple

from .rootcore import RootSystem, build_root_system
from .scalars import mat_inv, mat_mul

Weight = Tuple[int, ...]

CACHE_ENV = "COXSTOKES_CACHE"
DEFAULT_DIM_CAP = 10**6


class CharacterScaleError(ValueError):
    """Requested representation exceeds the configured dimension cap."""


@dataclass(frozen=True)
class CharacterTable:
    type_name: str
    fundamental_index: int          # 1-based
    highest_weight: Weight
    weights: Tuple[Tuple[Weight, int], ...]
    dim: int


class _Lattice:
    """Dynkin-coordinate weight arithmetic for one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        l = rs.rank
        A = [[Q(rs.cartan[i][j]) for j in range(l)] for i in range(l)]
        Ainv = mat_inv(A)
        G = [[rs.form[i][j] for j in range(l)] for i in range(l)]
        AinvT = [[Ainv[j][i] for j in range(l)] for i in range(l)]
        self.W = mat_mul(mat_mul(Ainv, G), AinvT)  # (mu,nu) = mu W nu^T
        self.Ainv = Ainv
        self.pos_dyn = [self.to_dyn(r) for r in rs.positive_roots]
        self.rho = tuple([1] * l)

    def to_dyn(self, root) -> Weight:
        l = self.rs.rank
        return tuple(
            sum(root[j] * self.rs.cartan[j][i] for j in range(l)) for i in range(l)
        )

    def to_simple_coords(self, d: Weight) -> Tuple[Q, ...]:
        l = self.rs.rank
        return tuple(sum(Q(d[i]) * self.Ainv[i][j] for i in range(l)) for j in range(l))

    def inner(self, a, b) -> Q:
        l = self.rs.rank
        return sum(Q(a[i]) * self.W[i][j] * Q(b[j]) for i in range(l) for j in range(l))

    def reflect(self, i: int, d: Weight) -> Weight:
        l = self.rs.rank
        return tuple(d[j] - d[i] * self.rs.cartan[i][j] for j in range(l))

    def dominant_conjugate(self, d: Weight) -> Weight:
        while True:
            for i, c in enumerate(d):
                if c < 0:
                    d = self.reflect(i, d)
                    break
            else:
                return d

    def orbit(self, d: Weight) -> List[Weight]:
        seen = {d}
        frontier = [d]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(self.rs.rank):
                    v = self.reflect(i, w)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return sorted(seen)

    def weyl_dim(self, lam: Weight) -> int:
        num = den = Q(1)
        lr = tuple(a + b for a, b in zip(lam, self.rho))
        for a in self.pos_dyn:
            num *= self.inner(lr, a)
            den *= self.inner(self.rho, a)
        d = num / den
        assert d.denominator == 1
        return int(d)


@lru_cache(maxsize=None)
def _lattice(type_name: str) -> _Lattice:
    return _Lattice(build_root_system(type_name))


def _dominant_weights(lat: _Lattice, lam: Weight) -> List[Weight]:
    """All dominant weights below lam, sorted by decreasing height of mu."""
    found = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for a in lat.pos_dyn:
                v = tuple(x - y for x, y in zip(w, a))
                if all(c >= 0 for c in v) and v not in found:
                    found.add(v)
                    nxt.append(v)
        frontier = nxt

    def level(mu):
        # height of lam - mu in simple-root coordinates
        diff = lat.to_simple_coords(tuple(a - b for a, b in zip(lam, mu)))
        return sum(diff)

    return sorted(found, key=lambda mu: (level(mu), mu))


def _freudenthal(lat: _Lattice, lam: Weight) -> Dict[Weight, int]:
    doms = _dominant_weights(lat, lam)
    mult: Dict[Weight, int] = {lam: 1}
    lam_rho = tuple(a + b for a, b in zip(lam, lat.rho))
    c_top = lat.inner(lam_rho, lam_rho)
    for mu in doms[1:]:
        acc = Q(0)
        for a in lat.pos_dyn:
            k = 1
            while True:
                w = tuple(m + k * x for m, x in zip(mu, a))
                m_w = mult.get(lat.dominant_conjugate(w), 0)
                if m_w == 0:
                    break  # weight strings are unbroken: first gap ends the ray
                acc += 2 * m_w * lat.inner(w, a)
                k += 1
        mu_rho = tuple(a + b for a, b in zip(mu, lat.rho))
        denom = c_top - lat.inner(mu_rho, mu_rho)
        if denom == 0:
            raise ArithmeticError("Freudenthal denominator vanished")
        m = acc / denom
        assert m.denominator == 1
        if m:
            mult[mu] = int(m)
    return mult


def _cache_path(type_name: str, idx: int) -> str | None:
    base = os.environ.get(CACHE_ENV)
    if not base:
        return None
    os.makedirs(base, exist_ok=True)
    return os.path.join(base, f"chartable_{type_name}_w{idx}.json")


@lru_cache(maxsize=None)
def fundamental_characters(
    type_name: str, index: int, dim_cap: int = DEFAULT_DIM_CAP
) -> CharacterTable:
    """Weight/multiplicity table of the fundamental representation V(omega_index).

    index is 1-based.  Raises CharacterScaleError when the Weyl dimension
    exceeds dim_cap ("out of desk scale").
    """
    rs = build_root_system(type_name)
    if not 1 <= index <= rs.rank:
        raise ValueError(f"fundamental index must be 1..{rs.rank}")
    lat = _lattice(str(rs.type))
    lam = tuple(int(i == index - 1) for i in range(rs.rank))
    dim = lat.weyl_dim(lam)
    if dim > dim_cap:
        raise CharacterScaleError(
            f"character table for {type_name} omega_{index} has dimension {dim}, "
            f"out of desk scale (cap {dim_cap})"
        )

    path = _cache_path(type_name, index)
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        weights = tuple((tuple(w), m) for w, m in data["weights"])
        return CharacterTable(type_name, index, lam, weights, data["dim"])

    mult = _freudenthal(lat, lam)
    weights: List[Tuple[Weight, int]] = []
    for mu, m in mult.items():
        for w in lat.orbit(mu):
            weights.append((w, m))
    weights.sort()
    total = sum(m for _, m in weights)
    if total != dim:
        raise ArithmeticError(
            f"character table dimension {total} disagrees with Weyl formula {dim}"
        )
    table = CharacterTable(type_name, index, lam, tuple(weights), dim)
    if path:
        with open(path, "w") as fh:
            json.dump({"dim": dim, "weights": [[list(w), m] for w, m in weights]}, fh)
    return table


def weight_pairing(rs: RootSystem, weight_dyn: Weight, h_coords) -> Q:
    """mu(h) for mu in Dynkin coordinates and h in the H_{alpha_i} basis."""
    lat = _lattice(str(rs.type))
    n = lat.to_simple_coords(weight_dyn)
    if all(isinstance(c, (int, Q)) for c in h_coords):
        return rs.pairing(n, h_coords)
    l = rs.rank
    return sum(
        float(n[i]) * float(rs.form[i][j]) * float(h_coords[j])
        for i in range(l)
        for j in range(l)
    )


def character_value(rs: RootSystem, table: CharacterTable, y) -> complex:
    """chi(e^{2 pi i y}) = sum of mult * e^{2 pi i mu(y)} over the weight table."""
    import cmath

    total = 0j
    for w, m in table.weights:
        total += m * cmath.exp(2j * cmath.pi * float(weight_pairing(rs, w, y)))
    return total


@lru_cache(maxsize=None)
def _pairing_matrix(type_name: str, index: int):
    """Float (weights x l) matrix M with mu_k(y) = (M @ y)_k, plus multiplicities."""
    import numpy as np

    rs = build_root_system(type_name)
    lat = _lattice(type_name)
    table = fundamental_characters(type_name, index)
    l = rs.rank
    rows = []
    mults = []
    for w, mq in table.weights:
        n = lat.to_simple_coords(w)
        rows.append(
            [float(sum(n[i] * rs.form[i][j] for i in range(l))) for j in range(l)]
        )
        mults.append(float(mq))
    return np.array(rows), np.array(mults)


def character_value_fast(rs: RootSystem, index: int, y) -> complex:
    """Float-path character evaluation (vectorized; ~1e-15 accurate)."""
    import numpy as np

    M, mults = _pairing_matrix(str(rs.type), index)
    yv = np.array([float(c) for c in y])
    return complex(np.sum(mults * np.exp(2j * np.pi * (M @ yv))))


def all_fundamental_tables(rs: RootSystem, dim_cap: int = DEFAULT_DIM_CAP):
    return tuple(
        fundamental_characters(str(rs.type), i + 1, dim_cap) for i in range(rs.rank)
    )
