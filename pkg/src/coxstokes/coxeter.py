"""Coxeter-element combinatorics and the enhanced Coxeter plane.

The bipartition 2-colors the Dynkin diagram, gamma = tau_2 tau_1 is the
associated Coxeter element, and the plane carries the 2s singular-direction
rays with their root assignments R(d_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from .rootcore import Root, RootSystem, _root_key

RAY_TOL = 1e-9


class TheoremCheckError(AssertionError):
    """A combinatorial identity asserted by the theory failed to verify."""


@dataclass(frozen=True)
class Bipartition:
    i1: Tuple[int, ...]  # 1-based node indices, contains node 1
    i2: Tuple[int, ...]

    def side(self, node: int) -> int:
        return 1 if node in self.i1 else 2


def bipartition(rs: RootSystem) -> Bipartition:
    """Proper 2-coloring of the Dynkin diagram; node 1 lands in I1.

    Within each class the simple roots are mutually orthogonal (tree
    2-coloring), and the partition is unique up to swapping the labels.
    """
    l = rs.rank
    color = {0: 1}
    frontier = [0]
    seen = {0}
    while frontier:
        nxt = []
        for i in frontier:
            for j in range(l):
                if j != i and rs.cartan[i][j] != 0 and j not in seen:
                    color[j] = 3 - color[i]
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    assert len(seen) == l, "Dynkin diagram not connected"
    i1 = tuple(i + 1 for i in range(l) if color[i] == 1)
    i2 = tuple(i + 1 for i in range(l) if color[i] == 2)
    for part in (i1, i2):
        for a in part:
            for b in part:
                if a != b:
                    assert rs.cartan[a - 1][b - 1] == 0
    return Bipartition(i1, i2)


def apply_word(rs: RootSystem, word: Sequence[int], root: Root) -> Root:
    """Apply a reflection word (1-based indices, leftmost acts last)."""
    for j in reversed(word):
        root = rs.reflect(j - 1, root)
    return root


def word_matrix(rs: RootSystem, word: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    l = rs.rank
    cols = []
    for i in range(l):
        e = tuple(int(k == i) for k in range(l))
        cols.append(apply_word(rs, word, e))
    return tuple(tuple(cols[j][i] for j in range(l)) for i in range(l))


@dataclass(frozen=True)
class CoxeterElement:
    word: Tuple[int, ...]                     # Pi_2 block then Pi_1 block
    matrix: Tuple[Tuple[int, ...], ...]       # action on root coordinates

    def apply(self, root: Root) -> Root:
        M = self.matrix
        l = len(root)
        return tuple(sum(M[i][j] * root[j] for j in range(l)) for i in range(l))

    def power(self, root: Root, k: int) -> Root:
        if k < 0:
            # gamma has finite order; implemented via repeated inverse action
            for _ in range(-k):
                root = self._apply_inv(root)
            return root
        for _ in range(k):
            root = self.apply(root)
        return root

    def _apply_inv(self, root: Root) -> Root:
        M = np.array(self.matrix, dtype=np.int64)
        v = np.linalg.solve(M.astype(float), np.array(root, dtype=float))
        out = tuple(int(round(x)) for x in v)
        return out


def coxeter_element(rs: RootSystem, bip: Bipartition) -> CoxeterElement:
    """gamma = tau_2 tau_1 for the given bipartition."""
    word = tuple(sorted(bip.i2)) + tuple(sorted(bip.i1))
    M = word_matrix(rs, word)
    ce = CoxeterElement(word, M)
    s = rs.coxeter_number
    probe = rs.simple_roots[0]
    r, order = probe, None
    for k in range(1, s + 1):
        r = ce.apply(r)
    assert r == probe, "gamma^s != identity on probe root"
    return ce


def inversion_set(rs: RootSystem, word: Sequence[int]) -> FrozenSet[Root]:
    """Positive roots sent to negative roots by the word's Weyl element."""
    out = []
    for beta in rs.positive_roots:
        if sum(apply_word(rs, word, beta)) < 0:
            out.append(beta)
    return frozenset(out)


def _tau_word(rs: RootSystem, bip: Bipartition, i: int) -> Tuple[int, ...]:
    return tuple(sorted(bip.i1 if i % 2 == 1 else bip.i2))


def kostant_chain(rs: RootSystem, n: int, bip: Bipartition | None = None):
    """Blocks tau^{(0)}Pi_1, tau^{(-1)}Pi_2, ... whose union is Lambda(tau^{(n)}).

    Verifies the disjoint-union identity against an independent inversion-set
    computation and returns the list of blocks.
    """
    if bip is None:
        bip = bipartition(rs)
    s = rs.coxeter_number
    if not 1 <= n <= s:
        raise ValueError(f"n must be in 1..s = 1..{s}")
    l = rs.rank

    # tau^{(k)} = tau_k ... tau_1 as a word (leftmost acts last)
    def chain_word(k: int) -> Tuple[int, ...]:
        w: Tuple[int, ...] = ()
        for i in range(k, 0, -1):
            w = w + _tau_word(rs, bip, i)
        return w

    blocks: List[FrozenSet[Root]] = []
    for j in range(1, n + 1):
        pi_j = [rs.simple_roots[i - 1] for i in (bip.i1 if j % 2 == 1 else bip.i2)]
        # tau^{(-(j-1))} = inverse of tau^{(j-1)}: reverse the word
        w = tuple(reversed(chain_word(j - 1)))
        blocks.append(frozenset(apply_word(rs, w, b) for b in pi_j))

    union: set = set()
    total = 0
    for b in blocks:
        total += len(b)
        union |= b
    lam = inversion_set(rs, chain_word(n))
    if total != len(union) or union != lam:
        raise TheoremCheckError(
            f"Kostant chain mismatch for n={n}: blocks give {len(union)} roots "
            f"(sum {total}), inversion set has {len(lam)}"
        )
    return blocks


@dataclass(frozen=True)
class CoxeterPlaneDiagram:
    coord: Dict[Root, complex]
    ray_angles: Tuple[float, ...]              # angle of d_1 .. d_{2s}, clockwise
    assignment: Tuple[FrozenSet[Root], ...]    # R(d_1) .. R(d_{2s})
    wheel_radii: Tuple[float, ...]
    sector_offset: int = 0

    @property
    def num_rays(self) -> int:
        return len(self.ray_angles)

    def positive_sector(self) -> Tuple[FrozenSet[Root], ...]:
        s = len(self.ray_angles) // 2
        return self.assignment[:s]


def _cluster(values: Sequence[float], tol: float) -> List[List[int]]:
    """Group indices of scalar values within tol of each other (sorted input)."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    groups = [[order[0]]]
    for i in order[1:]:
        if values[i] - values[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def coxeter_plane(
    rs: RootSystem,
    bip: Bipartition | None = None,
    sector_offset: int = 0,
    ray_tol: float = RAY_TOL,
) -> CoxeterPlaneDiagram:
    """Project all roots onto the plane of the Coxeter element's m_1 = 1 eigenvalue.

    coord(gamma a) = e^{-2 pi i/s} coord(a); the global phase puts the Pi_2 roots
    on angle 0 (ray d_1 when sector_offset = 0) and rays are labeled clockwise.
    """
    if rs.rank < 2:
        raise ValueError("rank > 1 required")
    if bip is None:
        bip = bipartition(rs)
    s = rs.coxeter_number
    gamma = coxeter_element(rs, bip)
    M = np.array(gamma.matrix, dtype=np.float64)

    vals, vecs = np.linalg.eig(M.T)
    target = np.exp(-2j * np.pi / s)
    k = int(np.argmin(np.abs(vals - target)))
    if abs(vals[k] - target) > 1e-8:
        raise ArithmeticError(f"eigenplane for e^(-2 pi i/s) not found: {vals}")
    u = vecs[:, k]

    coord = {r: complex(np.dot(u, np.array(r, dtype=float))) for r in rs.roots}

    # rotate so Pi_2 roots sit on angle 0; they must share one argument
    pi2 = [rs.simple_roots[i - 1] for i in bip.i2]
    phase = coord[pi2[0]] / abs(coord[pi2[0]])
    u = u / phase
    coord = {r: c / phase for r, c in coord.items()}
    args = [np.angle(coord[b]) for b in pi2]
    if max(args) - min(args) > 1e-9:
        raise TheoremCheckError(f"Pi_2 roots do not share one ray: args={args}")

    # verify the equivariance coord(gamma a) = e^{-2 pi i /s} coord(a)
    rot = np.exp(-2j * np.pi / s)
    for r in rs.roots:
        if abs(coord[gamma.apply(r)] - rot * coord[r]) > 1e-8 * max(1.0, abs(coord[r])):
            raise ArithmeticError("projection is not gamma-equivariant")

    # cluster root arguments into rays (circularly) and check there are 2s of them
    angles = {r: float(np.angle(coord[r]) % (2 * np.pi)) for r in rs.roots}
    avals = sorted(set(angles.values()))
    ray_groups: List[List[float]] = [[avals[0]]]
    for a in avals[1:]:
        if a - ray_groups[-1][-1] <= ray_tol:
            ray_groups[-1].append(a)
        else:
            ray_groups.append([a])
    if len(ray_groups) > 1 and (2 * np.pi - ray_groups[-1][-1]) + ray_groups[0][0] <= ray_tol:
        wrap = ray_groups.pop()
        ray_groups[0] = [a - 2 * np.pi for a in wrap] + ray_groups[0]
    ray_angle_list = sorted(float(np.mean(g)) for g in ray_groups)
    if len(ray_groups) != 2 * s:
        raise TheoremCheckError(
            f"expected 2s = {2*s} singular directions, found {len(ray_groups)}"
        )
    gaps = np.diff(ray_angle_list + [ray_angle_list[0] + 2 * np.pi])
    if np.max(np.abs(gaps - np.pi / s)) > ray_tol:
        raise TheoremCheckError(f"ray gaps deviate from pi/s: {gaps}")

    # label d_1.. d_{2s} clockwise from angle 0 (shifted by the sector offset)
    ray_angles = tuple(
        float((-(sector_offset + i) * np.pi / s) % (2 * np.pi)) for i in range(2 * s)
    )

    def ray_index(angle: float) -> int:
        diffs = [
            min(abs(angle - a), 2 * np.pi - abs(angle - a)) for a in ray_angles
        ]
        i = int(np.argmin(diffs))
        if diffs[i] > ray_tol:
            raise TheoremCheckError(f"root angle {angle} not on any expected ray")
        return i

    assign: List[set] = [set() for _ in range(2 * s)]
    for r in rs.roots:
        assign[ray_index(angles[r])].add(r)

    radii = sorted(abs(c) for c in coord.values())
    wheel_groups = _cluster(radii, ray_tol * max(radii))
    wheels = tuple(sorted(float(np.mean([radii[i] for i in g])) for g in wheel_groups))

    return CoxeterPlaneDiagram(
        coord=coord,
        ray_angles=ray_angles,
        assignment=tuple(frozenset(a) for a in assign),
        wheel_radii=wheels,
        sector_offset=sector_offset,
    )


@dataclass(frozen=True)
class SingularDirectionReport:
    type_name: str
    num_rays: int
    head: FrozenSet[Root]      # R(d_1) = Pi_2
    tail: FrozenSet[Root]      # R(d_s) = Pi_1
    per_ray_orthogonal: bool
    positive_sector_is_delta_plus: bool
    fundamental_domain_ok: bool


def singular_directions(
    rs: RootSystem, bip: Bipartition, plane: CoxeterPlaneDiagram
) -> SingularDirectionReport:
    """Verify the ray assignments predicted by the head-and-tail theorem.

    R(d_1) = Pi_2, R(d_{2k+1}) = gamma^k(Pi_2), R(d_{2k+2}) = gamma^{k+1}(-Pi_1),
    R(d_{s-1}) = gamma^{-1}(-Pi_2), R(d_s) = Pi_1, and the positive sector is
    exactly Delta_+.  Any mismatch raises TheoremCheckError.
    """
    if plane.sector_offset != 0:
        raise ValueError("theorem checks require a plane with sector_offset = 0")
    s = rs.coxeter_number
    gamma = coxeter_element(rs, bip)
    pi1 = frozenset(rs.simple_roots[i - 1] for i in bip.i1)
    pi2 = frozenset(rs.simple_roots[i - 1] for i in bip.i2)

    expected: List[FrozenSet[Root]] = [frozenset()] * (2 * s)
    cur = pi2
    for k in range(s):
        expected[2 * k] = frozenset(cur)
        cur = frozenset(gamma.apply(r) for r in cur)
    cur = frozenset(gamma.apply(tuple(-c for c in r)) for r in pi1)
    for k in range(s):
        expected[2 * k + 1] = frozenset(cur)
        cur = frozenset(gamma.apply(r) for r in cur)

    for i in range(2 * s):
        if plane.assignment[i] != expected[i]:
            raise TheoremCheckError(
                f"R(d_{i+1}) mismatch: plane has {sorted(plane.assignment[i])}, "
                f"theorem predicts {sorted(expected[i])}"
            )

    if plane.assignment[s - 1] != pi1:
        raise TheoremCheckError("R(d_s) != Pi_1")
    gamma_inv_neg_pi2 = frozenset(
        gamma.power(tuple(-c for c in r), -1) for r in pi2
    )
    if plane.assignment[s - 2] != gamma_inv_neg_pi2:
        raise TheoremCheckError("R(d_{s-1}) != gamma^{-1}(-Pi_2)")

    union: set = set()
    for i in range(s):
        union |= plane.assignment[i]
    pos_ok = union == set(rs.positive_roots)
    if not pos_ok:
        raise TheoremCheckError("positive sector union is not Delta_+")

    for i in range(2 * s):
        rays = sorted(plane.assignment[i])
        for a in range(len(rays)):
            for b in range(a + 1, len(rays)):
                if rs.inner(rays[a], rays[b]) != 0:
                    raise TheoremCheckError(
                        f"roots on d_{i+1} not orthogonal: {rays[a]}, {rays[b]}"
                    )

    # R(d_1) u R(d_2) is a fundamental domain for the gamma-orbits
    dom = set(plane.assignment[0]) | set(plane.assignment[1])
    orbits = _gamma_orbits(rs, gamma)
    fd_ok = len(dom) == rs.rank and all(len(dom & o) == 1 for o in orbits)
    if not fd_ok:
        raise TheoremCheckError("R(d_1) u R(d_2) is not a fundamental domain")

    return SingularDirectionReport(
        type_name=str(rs.type),
        num_rays=2 * s,
        head=plane.assignment[0],
        tail=plane.assignment[s - 1],
        per_ray_orthogonal=True,
        positive_sector_is_delta_plus=pos_ok,
        fundamental_domain_ok=fd_ok,
    )


def _gamma_orbits(rs: RootSystem, gamma: CoxeterElement) -> List[FrozenSet[Root]]:
    seen: set = set()
    orbits = []
    for r in rs.roots:
        if r in seen:
            continue
        orb = [r]
        cur = gamma.apply(r)
        while cur != r:
            orb.append(cur)
            cur = gamma.apply(cur)
        seen |= set(orb)
        orbits.append(frozenset(orb))
    s = rs.coxeter_number
    assert len(orbits) == rs.rank and all(len(o) == s for o in orbits)
    return orbits


def gamma_orbits(rs: RootSystem, bip: Bipartition | None = None) -> List[FrozenSet[Root]]:
    """The l gamma-orbits on Delta, each of size s."""
    if bip is None:
        bip = bipartition(rs)
    return _gamma_orbits(rs, coxeter_element(rs, bip))
