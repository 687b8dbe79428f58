"""Matrix models of small highest-weight representations.

The module realizes V(lambda) on a basis of lowering-operator words using the
contravariant (Shapovalov) form: a word is a basis vector iff it increases the
Gram rank of its weight space, and matrix entries come from exact rational
Gram solves.  This yields Chevalley-generator matrices for any type, which is
how the registered faithful representations (standard / 7-dim for G2 /
26-dim for F4 / 27-dim for E6) are produced uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .characters import _lattice, fundamental_characters, weight_pairing
from .chevalley import ChevalleyAlgebra, build_chevalley
from .rootcore import Root, RootSystem, build_root_system
from .scalars import Sq

Word = Tuple[int, ...]  # f_{i1} f_{i2} ... applied to the highest vector
Weight = Tuple[int, ...]


class UnsupportedRepresentationError(ValueError):
    """No registered matrix representation for this type."""


def _solve_gram(gram: List[List[Q]], rhs: List[Q]) -> List[Q]:
    n = len(gram)
    M = [row[:] + [rhs[i]] for i, row in enumerate(gram)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [M[r][k] - f * M[c][k] for k in range(n + 1)]
    return [M[r][n] for r in range(n)]


class _VermaWords:
    """Shapovalov-form bookkeeping on lowering words for one highest weight."""

    def __init__(self, rs: RootSystem, lam: Weight):
        self.rs = rs
        self.lam = lam
        self.lat = _lattice(str(rs.type))
        self._e_memo: Dict[Tuple[int, Word], Dict[Word, Q]] = {}
        self._form_memo: Dict[Tuple[Word, Word], Q] = {}

    def weight(self, w: Word) -> Weight:
        d = list(self.lam)
        for i in w:
            for j in range(self.rs.rank):
                d[j] -= self.rs.cartan[i][j]
        return tuple(d)

    def e_act(self, i: int, w: Word) -> Dict[Word, Q]:
        """e_i applied to the word w, as a combination of shorter words."""
        if not w:
            return {}
        key = (i, w)
        got = self._e_memo.get(key)
        if got is not None:
            return got
        j, rest = w[0], w[1:]
        out: Dict[Word, Q] = {}
        for w2, c in self.e_act(i, rest).items():
            k = (j,) + w2
            out[k] = out.get(k, Q(0)) + c
        if i == j:
            h = Q(self.weight(rest)[i])
            if h:
                out[rest] = out.get(rest, Q(0)) + h
        out = {k: v for k, v in out.items() if v}
        self._e_memo[key] = out
        return out

    def form(self, u: Word, w: Word) -> Q:
        """Contravariant form <u, w>; nonzero only within one weight space."""
        if len(u) != len(w):
            return Q(0)
        if not u:
            return Q(1)
        key = (u, w)
        got = self._form_memo.get(key)
        if got is not None:
            return got
        i, rest = u[0], u[1:]
        tot = Q(0)
        for w2, c in self.e_act(i, w).items():
            tot += c * self.form(rest, w2)
        self._form_memo[key] = tot
        return tot


@dataclass
class Representation:
    rs: RootSystem
    highest_weight: Weight
    dim: int
    basis_words: Tuple[Word, ...]
    basis_weights: Tuple[Weight, ...]
    e_chev: Tuple[np.ndarray, ...]      # object arrays of Fractions
    f_chev: Tuple[np.ndarray, ...]
    _root_mats: Dict[Root, np.ndarray] = field(default_factory=dict)
    _alg: ChevalleyAlgebra | None = None

    @property
    def name(self) -> str:
        lam = "".join(str(c) for c in self.highest_weight)
        return f"{self.rs.type}-hw{lam}-dim{self.dim}"

    def h_diag(self, i: int) -> np.ndarray:
        return np.diag([float(w[i]) for w in self.basis_weights])

    def weight_values(self, h_coords) -> np.ndarray:
        """mu(h) per basis vector, for h in H_{alpha_i} coordinates."""
        return np.array(
            [float(weight_pairing(self.rs, w, h_coords)) for w in self.basis_weights]
        )

    def p0_matrix(self) -> np.ndarray:
        """The principal element exp(2 pi i x0/s) in this representation."""
        s = self.rs.coxeter_number
        vals = self.weight_values(self.rs.x0_coords)
        return np.diag(np.exp(2j * np.pi * vals / s))

    def e_float(self, i: int) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.e_chev[i]])

    def f_float(self, i: int) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.f_chev[i]])

    def algebra(self) -> ChevalleyAlgebra:
        if self._alg is None:
            self._alg = build_chevalley(str(self.rs.type))
        return self._alg

    def root_matrix(self, root: Root) -> np.ndarray:
        """Matrix of the normalized root vector e_root (complex entries).

        Simple root vectors are L_i e_i / f_i; composite ones are built by
        bracket chains following the algebra's own structure constants.
        """
        got = self._root_mats.get(root)
        if got is not None:
            return got
        rs = self.rs
        alg = self.algebra()
        ht = sum(root)
        if ht == 1 and root in rs.simple_roots:
            i = rs.simple_roots.index(root)
            li = rs.inner(root, root) / 2
            out = float(li) * self.e_float(i).astype(np.complex128)
        elif ht == -1 and tuple(-c for c in root) in rs.simple_roots:
            i = rs.simple_roots.index(tuple(-c for c in root))
            out = self.f_float(i).astype(np.complex128)
        else:
            sign = 1 if ht > 0 else -1
            for j, aj in enumerate(rs.simple_roots):
                step = aj if sign > 0 else tuple(-c for c in aj)
                rest = tuple(r - s_ for r, s_ in zip(root, step))
                if rs.is_root(rest):
                    n = alg.nval(step, rest)
                    a, b = self.root_matrix(step), self.root_matrix(rest)
                    out = (a @ b - b @ a) / complex(n)
                    break
            else:
                raise ValueError(f"cannot decompose root {root}")
        self._root_mats[root] = out
        return out


def _build_representation(rs: RootSystem, lam: Weight) -> Representation:
    vw = _VermaWords(rs, lam)
    l = rs.rank

    # grow the word basis level by level, keeping Gram-independent words
    basis: List[Word] = [()]
    by_weight: Dict[Weight, List[Word]] = {lam: [()]}
    grams: Dict[Weight, List[List[Q]]] = {lam: [[Q(1)]]}
    level = [()]
    while level:
        nxt: List[Word] = []
        for w in level:
            for i in range(l):
                cand = (i,) + w
                mu = vw.weight(cand)
                bw = by_weight.setdefault(mu, [])
                gram = grams.setdefault(mu, [])
                col = [vw.form(b, cand) for b in bw]
                self_ip = vw.form(cand, cand)
                if bw:
                    x = _solve_gram(gram, col)
                    schur = self_ip - sum(col[k] * x[k] for k in range(len(bw)))
                else:
                    schur = self_ip
                if schur != 0:
                    for k, b in enumerate(bw):
                        gram[k].append(col[k])
                    gram.append(col + [self_ip])
                    bw.append(cand)
                    basis.append(cand)
                    nxt.append(cand)
        level = nxt

    dim = len(basis)
    index = {w: k for k, w in enumerate(basis)}
    weights = tuple(vw.weight(w) for w in basis)

    def coords_of(combo: Dict[Word, Q], mu: Weight) -> Dict[int, Q]:
        bw = by_weight.get(mu, [])
        if not bw:
            assert not combo or all(
                vw.form(b, w) == 0 for w in combo for b in bw
            )
            return {}
        rhs = [Q(0)] * len(bw)
        for w, c in combo.items():
            for k, b in enumerate(bw):
                rhs[k] += c * vw.form(b, w)
        x = _solve_gram(grams[mu], rhs)
        return {index[bw[k]]: x[k] for k in range(len(bw)) if x[k]}

    fmats = [[[Q(0)] * dim for _ in range(dim)] for _ in range(l)]
    emats = [[[Q(0)] * dim for _ in range(dim)] for _ in range(l)]
    for col, w in enumerate(basis):
        mu = vw.weight(w)
        for i in range(l):
            down = (i,) + w
            mu_dn = tuple(m - c for m, c in zip(mu, vw.lat.to_dyn(rs.simple_roots[i])))
            for row, v in coords_of({down: Q(1)}, mu_dn).items():
                fmats[i][row][col] = v
            mu_up = tuple(m + c for m, c in zip(mu, vw.lat.to_dyn(rs.simple_roots[i])))
            for row, v in coords_of(vw.e_act(i, w), mu_up).items():
                emats[i][row][col] = v

    e_chev = tuple(np.array(m, dtype=object) for m in emats)
    f_chev = tuple(np.array(m, dtype=object) for m in fmats)
    rep = Representation(rs, lam, dim, tuple(basis), weights, e_chev, f_chev)
    _verify_representation(rep)
    return rep


def _verify_representation(rep: Representation):
    """Exact Chevalley-relation checks: [e_i, f_j] = delta_ij h_i, [h, e] = <.,.> e."""
    l = rep.rs.rank
    dim = rep.dim
    for i in range(l):
        for j in range(l):
            e, f = rep.e_chev[i], rep.f_chev[j]
            comm = e @ f - f @ e
            for r in range(dim):
                for c in range(dim):
                    want = Q(0)
                    if i == j and r == c:
                        want = Q(rep.basis_weights[r][i])
                    if comm[r][c] != want:
                        raise AssertionError(
                            f"[e_{i}, f_{j}] deviates at ({r},{c}): {comm[r][c]} != {want}"
                        )
    # e_i, f_i shift weights by +-alpha_i
    lat = _lattice(str(rep.rs.type))
    for i in range(l):
        ai = lat.to_dyn(rep.rs.simple_roots[i])
        for r in range(dim):
            for c in range(dim):
                if rep.e_chev[i][r][c] != 0:
                    assert tuple(
                        a + b for a, b in zip(rep.basis_weights[c], ai)
                    ) == rep.basis_weights[r]
                if rep.f_chev[i][r][c] != 0:
                    assert tuple(
                        a - b for a, b in zip(rep.basis_weights[c], ai)
                    ) == rep.basis_weights[r]


@lru_cache(maxsize=None)
def fundamental_representation(type_name: str, index: int) -> Representation:
    """V(omega_index) as explicit matrices (index 1-based)."""
    rs = build_root_system(type_name)
    lam = tuple(int(i == index - 1) for i in range(rs.rank))
    expected = fundamental_characters(type_name, index).dim
    rep = _build_representation(rs, lam)
    if rep.dim != expected:
        raise AssertionError(
            f"constructed dimension {rep.dim} != character dimension {expected}"
        )
    return rep


@lru_cache(maxsize=None)
def registered_representation(type_name: str) -> Representation:
    """The faithful matrix representation used by the group-level pipeline.

    The minimal-dimension fundamental representation (lowest index on ties):
    standard for A-D, 7-dim for G2, 26-dim for F4, 27-dim for E6.  E7/E8 are
    not registered; the combinatorial modules still cover them.
    """
    rs = build_root_system(type_name)
    if rs.type.family == "E" and rs.rank >= 7:
        raise UnsupportedRepresentationError(
            f"no registered representation for {type_name}"
        )
    if rs.type.family in "ABCD":
        idx = 1
    else:
        dims = [fundamental_characters(type_name, i + 1).dim for i in range(rs.rank)]
        idx = int(np.argmin(dims)) + 1
    return fundamental_representation(type_name, idx)
