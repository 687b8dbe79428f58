"""Exact root systems for the simple types A-G.

Roots are integer coordinate tuples in the simple-root basis.  The bilinear
form is the Weyl-invariant one normalized so the highest root has squared
length 2; all arithmetic here is exact rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from .scalars import Matrix, Vector, mat_inv, mat_vec, qvec

Root = Tuple[int, ...]


class UnsupportedTypeError(ValueError):
    """Raised for (family, rank) pairs outside the supported simple types."""


_MIN_RANK = {"A": 2, "B": 2, "C": 2, "D": 3, "F": 4, "G": 2}


@dataclass(frozen=True, order=True)
class AlgebraType:
    family: str
    rank: int

    def __post_init__(self):
        fam, l = self.family, self.rank
        if fam not in "ABCDEFG":
            raise UnsupportedTypeError(f"unsupported type: unknown family {fam!r}")
        if fam == "E":
            if l not in (6, 7, 8):
                raise UnsupportedTypeError(f"unsupported type: E{l}")
        elif fam in ("F", "G"):
            if l != _MIN_RANK[fam]:
                raise UnsupportedTypeError(f"unsupported type: {fam}{l}")
        elif l < _MIN_RANK[fam]:
            raise UnsupportedTypeError(f"unsupported type: {fam}{l} (rank too small)")

    @staticmethod
    def parse(name: "str | AlgebraType") -> "AlgebraType":
        if isinstance(name, AlgebraType):
            return name
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", str(name))
        if not m:
            raise UnsupportedTypeError(f"unsupported type: cannot parse {name!r}")
        return AlgebraType(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _simple_root_vectors(t: AlgebraType) -> List[Vector]:
    """Simple roots in the standard Euclidean realization (Bourbaki numbering)."""
    l = t.rank

    def e(i, n):
        return tuple(Q(int(j == i)) for j in range(n))

    def vsub(x, y):
        return tuple(a - b for a, b in zip(x, y))

    if t.family == "A":
        return [vsub(e(i, l + 1), e(i + 1, l + 1)) for i in range(l)]
    if t.family == "B":
        return [vsub(e(i, l), e(i + 1, l)) for i in range(l - 1)] + [e(l - 1, l)]
    if t.family == "C":
        return [vsub(e(i, l), e(i + 1, l)) for i in range(l - 1)] + [
            tuple(2 * x for x in e(l - 1, l))
        ]
    if t.family == "D":
        return [vsub(e(i, l), e(i + 1, l)) for i in range(l - 1)] + [
            tuple(a + b for a, b in zip(e(l - 2, l), e(l - 1, l)))
        ]
    if t.family == "G":
        return [
            (Q(1), Q(-1), Q(0)),
            (Q(-2), Q(1), Q(1)),
        ]
    if t.family == "F":
        return [
            (Q(0), Q(1), Q(-1), Q(0)),
            (Q(0), Q(0), Q(1), Q(-1)),
            (Q(0), Q(0), Q(0), Q(1)),
            (Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)),
        ]
    # E6/E7/E8 as subsets of the E8 realization in R^8.
    a1 = (Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(1, 2))
    a2 = qvec([1, 1, 0, 0, 0, 0, 0, 0])
    rest = [
        qvec([-1, 1, 0, 0, 0, 0, 0, 0]),
        qvec([0, -1, 1, 0, 0, 0, 0, 0]),
        qvec([0, 0, -1, 1, 0, 0, 0, 0]),
        qvec([0, 0, 0, -1, 1, 0, 0, 0]),
        qvec([0, 0, 0, 0, -1, 1, 0, 0]),
        qvec([0, 0, 0, 0, 0, -1, 1, 0]),
    ]
    return [a1, a2] + rest[: l - 2]


def _root_key(root: Root) -> tuple:
    """Canonical order: by height, then so lower-index simple roots come first."""
    return (sum(root), tuple(-c for c in root))


@dataclass(frozen=True)
class RootSystem:
    type: AlgebraType
    cartan: Tuple[Tuple[int, ...], ...]          # A[i][j] = 2(a_i,a_j)/(a_j,a_j)
    form: Tuple[Tuple[Q, ...], ...]              # Gram matrix (a_i, a_j), (psi,psi)=2
    simple_roots: Tuple[Root, ...]
    roots: Tuple[Root, ...]                      # all of Delta, canonical order
    positive_roots: Tuple[Root, ...]
    psi: Root
    marks: Tuple[int, ...]                       # (q_0, q_1, .., q_l) with q_0 = 1
    coxeter_number: int
    exponents: Tuple[int, ...]
    r_coeffs: Tuple[Q, ...]                      # x_0 = sum r_i H_{a_i}
    epsilon_basis: Tuple[Tuple[Q, ...], ...]     # eps_j in the H_{a_i} basis (column j)
    _root_set: frozenset = field(repr=False, default=frozenset())

    @property
    def rank(self) -> int:
        return self.type.rank

    def is_root(self, v: Root) -> bool:
        return v in self._root_set

    def height(self, root: Root) -> int:
        return sum(root)

    def inner(self, x: Root, y: Root) -> Q:
        G = self.form
        n = self.rank
        return sum(x[i] * G[i][j] * y[j] for i in range(n) for j in range(n))

    def pairing(self, root, h_coords) -> Q:
        """alpha(h) for h = sum h_j H_{alpha_j}; alpha may be any weight vector."""
        G = self.form
        n = self.rank
        return sum(Q(root[i]) * G[i][j] * Q(h_coords[j]) for i in range(n) for j in range(n))

    def reflect(self, j: int, root: Root) -> Root:
        """Simple reflection R_{alpha_j} (j is 0-based) acting on root coordinates."""
        c = sum(root[i] * self.cartan[i][j] for i in range(self.rank))
        out = list(root)
        out[j] -= c
        return tuple(out)

    @property
    def x0_coords(self) -> Tuple[Q, ...]:
        return self.r_coeffs

    @property
    def alpha0(self) -> Root:
        return tuple(-c for c in self.psi)


def _reflection_closure(rs_cartan: List[List[int]], l: int) -> List[Root]:
    simples = [tuple(int(i == j) for j in range(l)) for i in range(l)]

    def reflect(j, root):
        c = sum(root[i] * rs_cartan[i][j] for i in range(l))
        out = list(root)
        out[j] -= c
        return tuple(out)

    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for j in range(l):
                s = reflect(j, r)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen, key=_root_key)


def _coxeter_matrix(cartan, l) -> np.ndarray:
    """Product of all simple reflections, as an integer matrix on root coords."""
    mats = []
    for j in range(l):
        Rj = np.eye(l, dtype=np.int64)
        for i in range(l):
            Rj[i][j] -= cartan[i][j]
        mats.append(Rj.T)  # acts on column vectors of coordinates
    out = np.eye(l, dtype=np.int64)
    for M in mats:
        out = M @ out
    return out


def _exponents_from_angles(cartan, l: int, s: int) -> Tuple[int, ...]:
    """Exponents read off the eigenvalue angles of a Coxeter element matrix."""
    C = _coxeter_matrix(cartan, l)
    eig = np.linalg.eigvals(C.astype(np.complex128))
    exps = []
    for lam in eig:
        ang = np.angle(lam) % (2 * np.pi)
        m = ang * s / (2 * np.pi)
        mi = int(round(m))
        if abs(m - mi) > 1e-8 or not (1 <= mi <= s - 1):
            raise AssertionError(f"Coxeter eigenvalue angle {m} not of the form m/s")
        exps.append(mi)
    return tuple(sorted(exps))


@lru_cache(maxsize=None)
def build_root_system(type_name) -> RootSystem:
    """Construct the full root system with exact Cartan data for one type."""
    t = AlgebraType.parse(type_name)
    l = t.rank
    vecs = _simple_root_vectors(t)

    def dot(x, y):
        return sum(a * b for a, b in zip(x, y))

    gram_euc = [[dot(vecs[i], vecs[j]) for j in range(l)] for i in range(l)]
    cartan = [
        [int(2 * gram_euc[i][j] / gram_euc[j][j]) for j in range(l)] for i in range(l)
    ]
    for i in range(l):
        for j in range(l):
            assert Q(2) * gram_euc[i][j] / gram_euc[j][j] == cartan[i][j]

    roots = _reflection_closure(cartan, l)
    positives = [r for r in roots if sum(r) > 0]
    psi = max(positives, key=_root_key)
    for r in positives:
        assert all(c >= 0 for c in r), f"mixed-sign root {r}"

    # normalize the form so (psi, psi) = 2
    psi_len = sum(
        psi[i] * gram_euc[i][j] * psi[j] for i in range(l) for j in range(l)
    )
    scale = Q(2) / psi_len
    form = tuple(tuple(scale * gram_euc[i][j] for j in range(l)) for i in range(l))

    marks = (1,) + tuple(psi)
    s = 1 + sum(psi)
    assert len(roots) == l * s, f"|Delta| = {len(roots)} != l*s = {l * s}"
    assert sum(psi) == s - 1

    exps = _exponents_from_angles(cartan, l, s)
    assert exps[0] == 1 and exps[-1] == s - 1
    assert all(exps[i] + exps[l - 1 - i] == s for i in range(l))

    ginv = mat_inv(form)
    r_coeffs = mat_vec(ginv, [Q(1)] * l)
    eps = tuple(tuple(ginv[i][j] for i in range(l)) for j in range(l))

    return RootSystem(
        type=t,
        cartan=tuple(tuple(row) for row in cartan),
        form=form,
        simple_roots=tuple(tuple(int(i == j) for j in range(l)) for i in range(l)),
        roots=tuple(roots),
        positive_roots=tuple(positives),
        psi=psi,
        marks=marks,
        coxeter_number=s,
        exponents=exps,
        r_coeffs=tuple(r_coeffs),
        epsilon_basis=eps,
        _root_set=frozenset(roots),
    )


def highest_root_marks(rs: RootSystem):
    """Highest root, its marks (with q_0 = 1 for alpha_0 = -psi) and Coxeter number."""
    return rs.psi, rs.marks, rs.coxeter_number


@dataclass(frozen=True)
class DualData:
    h_vectors: Dict[Root, Tuple[Q, ...]]
    epsilon_basis: Tuple[Tuple[Q, ...], ...]
    r_coeffs: Tuple[Q, ...]
    x0: Tuple[Q, ...]


def dual_data(rs: RootSystem) -> DualData:
    """H_alpha vectors, the basis dual to the simple roots, and x0 = sum eps_i.

    Everything is expressed in the H_{alpha_i} coordinate basis of the Cartan
    subalgebra, where H_{alpha} has coordinates equal to alpha's own root
    coordinates.
    """
    hvecs = {r: qvec(r) for r in rs.roots}
    x0 = rs.r_coeffs
    for i in range(rs.rank):
        assert rs.pairing(rs.simple_roots[i], x0) == 1
    assert rs.pairing(rs.psi, x0) == rs.coxeter_number - 1
    return DualData(hvecs, rs.epsilon_basis, rs.r_coeffs, x0)


def diagram_involution(rs: RootSystem) -> Tuple[int, ...]:
    """The permutation nu (1-based, as a tuple indexed 0..l-1) induced by sigma.

    Nontrivial exactly for A_l, D_odd and E6; identity otherwise.
    """
    t = rs.type
    l = t.rank
    nu = list(range(1, l + 1))
    if t.family == "A":
        nu = [l + 1 - i for i in range(1, l + 1)]
    elif t.family == "D" and l % 2 == 1:
        nu[l - 2], nu[l - 1] = l, l - 1
    elif t.family == "E" and l == 6:
        nu = [6, 2, 5, 4, 3, 1]
    return tuple(nu)
