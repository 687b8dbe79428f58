"""Concrete Lie-algebra arithmetic over the root-system data.

Basis {H_{a_1},..,H_{a_l}} u {e_a : a in Delta}, normalized so that
B(e_a, e_{-a}) = 1.  Structure constants then satisfy
N(a,b)^2 = q(p+1)(a,a)/2 (root-string numbers p,q), which is irrational for
some short-root pairs, so exact values live in Q(sqrt d), d in {1,2,3}.

Signs follow the extraspecial-pair convention over the canonical root order:
extraspecial constants are positive, everything else is derived from the
two invariance identities

    x+y+z = 0           =>  N(x,y) = N(y,z) = N(z,x)
    a+b+c+d = 0 (generic) =>  N(a,b)N(c,d) + N(b,c)N(a,d) + N(c,a)N(b,d) = 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, Sequence, Tuple

import numpy as np

from .rootcore import Root, RootSystem, build_root_system, diagram_involution
from .scalars import Sq

Element = Dict[int, object]  # basis index -> scalar (Sq/Fraction/complex)


class InvariantViolation(AssertionError):
    """An exact build-time identity (Jacobi, magnitude, ...) failed."""


def _neg(r: Root) -> Root:
    return tuple(-c for c in r)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


class ChevalleyAlgebra:
    """Bracket tables and adjoint action for one simple type."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        l = rs.rank
        self.dim = l + len(rs.roots)
        self.root_index = {r: l + k for k, r in enumerate(rs.roots)}
        self.basis_labels = [("h", i + 1) for i in range(l)] + [
            ("e", r) for r in rs.roots
        ]
        self._pos_rank = {r: k for k, r in enumerate(rs.positive_roots)}
        self._half_len = {r: rs.inner(r, r) / 2 for r in rs.roots}
        self._init_index_tables()
        self._npos: Dict[Tuple[Root, Root], Sq] = {}
        self._nfull: Dict[Tuple[int, int], Sq] = {}
        self._build_constants()
        self._verify_magnitudes()
        self._verify_jacobi()

    def _init_index_tables(self):
        """Integer index tables for root sums (-1: not a root, -2: zero)."""
        rs = self.rs
        roots = rs.roots
        self._ridx = {r: i for i, r in enumerate(roots)}
        self._neg_idx = [self._ridx[_neg(r)] for r in roots]
        self._hts = [sum(r) for r in roots]
        sum_idx = []
        zero = (0,) * rs.rank
        for a in roots:
            row = []
            for b in roots:
                s = _add(a, b)
                row.append(-2 if s == zero else self._ridx.get(s, -1))
            sum_idx.append(row)
        self._sum_idx = sum_idx
        Gv = [
            tuple(sum(rs.form[p][q] * r[q] for q in range(rs.rank)) for p in range(rs.rank))
            for r in roots
        ]
        self._inner_idx = [
            [sum(a[p] * gb[p] for p in range(rs.rank)) for gb in Gv] for a in roots
        ]

    # -- structure constants ------------------------------------------------

    def _string_pq(self, a: Root, b: Root) -> Tuple[int, int]:
        """Root-string numbers (p, q) of the a-string through b."""
        is_root = self.rs.is_root
        p = 0
        cur = _sub(b, a)
        while is_root(cur):
            p += 1
            cur = _sub(cur, a)
        q = 0
        cur = _add(b, a)
        while is_root(cur):
            q += 1
            cur = _add(cur, a)
        return p, q

    def _nsq(self, a: Root, b: Root) -> Q:
        p, q = self._string_pq(a, b)
        return Q(q * (p + 1)) * self._half_len[a]

    def _build_constants(self):
        rs = self.rs
        rank = self._pos_rank
        posset = set(rs.positive_roots)
        for gamma in rs.positive_roots:
            if sum(gamma) == 1:
                continue
            pairs = []
            for a in rs.positive_roots:
                if rank[a] >= rank.get(_sub(gamma, a), len(rank)):
                    continue
                b = _sub(gamma, a)
                if b in posset:
                    pairs.append((a, b))
            pairs.sort(key=lambda ab: rank[ab[0]])
            a1, b1 = pairs[0]
            n1 = Sq.sqrt(self._nsq(a1, b1))
            self._npos[(a1, b1)] = n1
            for a, b in pairs[1:]:
                t = Sq(0)
                if rs.is_root(_sub(b1, b)) and rs.is_root(_sub(a1, a)):
                    t = t + self.nval(b1, _neg(b)) * self.nval(a1, _neg(a))
                if rs.is_root(_sub(a1, b)) and rs.is_root(_sub(b1, a)):
                    t = t + self.nval(_neg(b), a1) * self.nval(b1, _neg(a))
                self._npos[(a, b)] = -t / n1

    def _npos_lookup(self, a: Root, b: Root) -> Sq:
        if self._pos_rank[a] < self._pos_rank[b]:
            return self._npos[(a, b)]
        return -self._npos[(b, a)]

    def nval(self, x: Root, y: Root) -> Sq:
        """N(x,y) for arbitrary roots with x+y a root (0 if x+y not a root)."""
        return self.nval_idx(self._ridx[x], self._ridx[y])

    def nval_idx(self, i: int, j: int) -> Sq:
        key = (i, j)
        got = self._nfull.get(key)
        if got is not None:
            return got
        d = self._sum_idx[i][j]
        if d < 0:
            val = Sq(0)
        else:
            hi, hj = self._hts[i], self._hts[j]
            roots = self.rs.roots
            if hi > 0 and hj > 0:
                val = self._npos_lookup(roots[i], roots[j])
            elif hi < 0 and hj < 0:
                val = -self.nval_idx(self._neg_idx[i], self._neg_idx[j])
            elif hi < 0:
                val = -self.nval_idx(j, i)
            elif self._hts[d] > 0:
                val = -self._npos_lookup(roots[self._neg_idx[j]], roots[d])
            else:
                val = self._npos_lookup(roots[self._neg_idx[d]], roots[i])
        self._nfull[key] = val
        return val

    # -- verification --------------------------------------------------------

    def _nsq_idx(self, i: int, j: int) -> Q:
        S, ni = self._sum_idx, self._neg_idx[i]
        p = 0
        cur = S[j][ni]
        while cur >= 0:
            p += 1
            cur = S[cur][ni]
        q = 0
        cur = S[j][i]
        while cur >= 0:
            q += 1
            cur = S[cur][i]
        return Q(q * (p + 1)) * self._half_len[self.rs.roots[i]]

    def _verify_magnitudes(self):
        n = len(self.rs.roots)
        S, neg = self._sum_idx, self._neg_idx
        for i in range(n):
            for j in range(n):
                if S[i][j] >= 0:
                    v = self.nval_idx(i, j)
                    if v * v != Sq(self._nsq_idx(i, j)):
                        raise InvariantViolation(
                            f"N^2 mismatch at roots {self.rs.roots[i]}, {self.rs.roots[j]}"
                        )
                    if self.nval_idx(neg[i], neg[j]) != -v:
                        raise InvariantViolation(
                            f"N(-a,-b) != -N(a,b) at {self.rs.roots[i]}, {self.rs.roots[j]}"
                        )

    def _verify_jacobi(self):
        """Exact Jacobi check on every basis triple that is not structurally zero.

        The only triples with nonvanishing terms are root triples (a, b, c)
        with some pairwise sum in Delta u {0} and a+b+c in Delta u {0};
        triples involving Cartan elements hold by linearity of the root
        functionals.  Each unordered root triple is visited once, through its
        first bracketable pair.
        """
        S = self._sum_idx
        n = len(self.rs.roots)
        partners = [[j for j in range(n) if S[i][j] != -1] for i in range(n)]
        for i in range(n):
            for j in partners[i]:
                if j <= i:
                    continue
                s = S[i][j]
                for k in range(n):
                    if k == i or k == j:
                        continue
                    if s != -2 and S[s][k] == -1:
                        continue
                    p, q, r = sorted((i, j, k))
                    if S[p][q] != -1:
                        first = (p, q)
                    elif S[p][r] != -1:
                        first = (p, r)
                    else:
                        first = (q, r)
                    if first != (i, j):
                        continue
                    self._jacobi_triple_idx(i, j, k)

    def _jacobi_triple_idx(self, i: int, j: int, k: int):
        S = self._sum_idx
        l = self.rs.rank
        epart: Dict[int, Sq] = {}
        hsurd = [Sq(0)] * l
        use_surd = False
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            s = S[x][y]
            if s == -1:
                continue
            if s == -2:
                c = self._inner_idx[z][x]
                if c:
                    epart[z] = epart.get(z, Sq(0)) + Sq(c)
                continue
            n1 = self.nval_idx(x, y)
            t = S[s][z]
            if t == -1:
                continue
            if t == -2:
                use_surd = True
                coords = self.rs.roots[s]
                for m in range(l):
                    if coords[m]:
                        hsurd[m] = hsurd[m] + n1 * coords[m]
            else:
                epart[t] = epart.get(t, Sq(0)) + n1 * self.nval_idx(s, z)
        bad = any(bool(v) for v in epart.values()) or (
            use_surd and any(bool(v) for v in hsurd)
        )
        if bad:
            raise InvariantViolation(
                f"Jacobi fails on roots {self.rs.roots[i]}, {self.rs.roots[j]}, "
                f"{self.rs.roots[k]}"
            )

    # -- elements and brackets ------------------------------------------------

    def h(self, coeffs: Sequence) -> Element:
        return {i: c for i, c in enumerate(coeffs) if _nz(c)}

    def e(self, root: Root, coeff=1) -> Element:
        return {self.root_index[root]: coeff}

    def add(self, *els: Element) -> Element:
        out: Element = {}
        for el in els:
            for k, v in el.items():
                w = out.get(k, 0) + v
                if _nz(w):
                    out[k] = w
                elif k in out:
                    del out[k]
        return out

    def scale(self, el: Element, c) -> Element:
        return {k: c * v for k, v in el.items()} if _nz(c) else {}

    def label(self, idx: int):
        return self.basis_labels[idx]

    def _pair_bracket(self, i: int, j: int) -> Element:
        """Bracket of basis elements i, j."""
        rs = self.rs
        l = rs.rank
        if i < l and j < l:
            return {}
        if i < l:  # [H_i, e_b]
            c = self._inner_idx[j - l][self._ridx[rs.simple_roots[i]]]
            return {j: c} if c else {}
        if j < l:
            out = self._pair_bracket(j, i)
            return {k: -v for k, v in out.items()}
        ia, ib = i - l, j - l
        s = self._sum_idx[ia][ib]
        if s == -2:
            a = rs.roots[ia]
            return self.h([Q(x) for x in a])
        if s >= 0:
            n = self.nval_idx(ia, ib)
            return {l + s: n} if n else {}
        return {}

    def bracket(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for i, cx in x.items():
            for j, cy in y.items():
                for k, v in self._pair_bracket(i, j).items():
                    w = out.get(k, 0) + cx * cy * v
                    if _nz(w):
                        out[k] = w
                    elif k in out:
                        del out[k]
        return out

    def ad_dense(self, x: Element) -> np.ndarray:
        """Adjoint matrix of x on the full basis, as a complex array."""
        n = self.dim
        out = np.zeros((n, n), dtype=np.complex128)
        for j in range(n):
            col = self.bracket(x, {j: 1})
            for i, v in col.items():
                out[i, j] = complex(v)
        return out

    def ad_sparse(self, x: Element) -> Dict[Tuple[int, int], object]:
        ent: Dict[Tuple[int, int], object] = {}
        for j in range(self.dim):
            for i, v in self.bracket(x, {j: 1}).items():
                ent[(i, j)] = v
        return ent

    def killing(self, x: Element, y: Element):
        """tr(ad x ad y), exact for exact inputs."""
        ax, ay = self.ad_sparse(x), self.ad_sparse(y)
        tot = Sq(0)
        for (i, j), v in ax.items():
            w = ay.get((j, i))
            if w is not None:
                tot = tot + v * w
        return tot

    def form(self, x: Element, y: Element):
        """The normalized invariant form B on elements."""
        rs = self.rs
        l = rs.rank
        tot = 0
        for i, cx in x.items():
            for j, cy in y.items():
                if i < l and j < l:
                    tot = tot + cx * cy * rs.form[i][j]
                elif i >= l and j >= l:
                    a, b = rs.roots[i - l], rs.roots[j - l]
                    if _add(a, b) == (0,) * l:
                        tot = tot + cx * cy
        return tot

    def height_of_index(self, idx: int) -> int:
        if idx < self.rs.rank:
            return 0
        return sum(self.rs.roots[idx - self.rs.rank])


def _nz(v) -> bool:
    if isinstance(v, complex):
        return v != 0
    return bool(v)


@lru_cache(maxsize=None)
def _build_chevalley_cached(type_name: str) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(build_root_system(type_name))


def build_chevalley(rs_or_type) -> ChevalleyAlgebra:
    """Build (and exactly verify) the Chevalley-type algebra for one type.

    Accepts a RootSystem, an AlgebraType or a type string; one verified
    instance is cached per type.
    """
    name = str(getattr(rs_or_type, "type", rs_or_type))
    return _build_chevalley_cached(name)


# -- principal TDS -----------------------------------------------------------


@dataclass
class PrincipalTriple:
    x0: Element
    e0: Element
    f0: Element
    coefficients: Tuple


def principal_tds(alg: ChevalleyAlgebra, a: Sequence | None = None) -> PrincipalTriple:
    """The sl2-triple (x0, e0, f0) with e0 = sum a_i e_{a_i}, f0 = sum (r_i/a_i) e_{-a_i}."""
    rs = alg.rs
    l = rs.rank
    r = rs.r_coeffs
    if a is None:
        a = [float(ri) ** 0.5 for ri in r]
    a = list(a)
    if len(a) != l or any(not _nz(c) for c in a):
        raise ValueError("need l nonzero coefficients")
    x0 = alg.h(r)
    e0 = alg.add(*(alg.e(rs.simple_roots[i], a[i]) for i in range(l)))
    exact = all(isinstance(c, (int, Q, Sq)) for c in a)
    inv = [Sq(r[i]) / Sq(a[i]) if exact else float(r[i]) / a[i] for i in range(l)]
    f0 = alg.add(*(alg.e(_neg(rs.simple_roots[i]), inv[i]) for i in range(l)))

    checks = [
        alg.add(alg.bracket(x0, e0), alg.scale(e0, -1)),
        alg.add(alg.bracket(x0, f0), f0),
        alg.add(alg.bracket(e0, f0), alg.scale(x0, -1)),
    ]
    for res in checks:
        if exact:
            if any(_nz(v) for v in res.values()):
                raise InvariantViolation(f"TDS relation failed exactly: {res}")
        else:
            if any(abs(complex(v)) > 1e-10 for v in res.values()):
                raise InvariantViolation(f"TDS relation failed numerically: {res}")
    return PrincipalTriple(x0, e0, f0, tuple(a))


def tau_diagonal(alg: ChevalleyAlgebra) -> np.ndarray:
    """Ad(P0) on the basis: phase e^{2 pi i ht/s} on e_a, 1 on the Cartan part."""
    s = alg.rs.coxeter_number
    return np.array(
        [np.exp(2j * np.pi * alg.height_of_index(i) / s) for i in range(alg.dim)]
    )


@dataclass
class PrincipalElement:
    order: int                     # s; tau^s = Ad(P0)^s = identity
    tau: np.ndarray                # diagonal of Ad(P0) on the algebra basis
    matrix: np.ndarray | None      # P0 itself in a registered representation


def principal_element(alg: ChevalleyAlgebra, rep=None) -> PrincipalElement:
    """P0 = exp(2 pi i x0/s): its adjoint action, and its matrix in a representation.

    When no representation is passed, the registered one is used where it
    exists (E7/E8 expose the adjoint phases only).
    """
    mat = None
    if rep is None:
        from .weightrep import UnsupportedRepresentationError, registered_representation

        try:
            rep = registered_representation(str(alg.rs.type))
        except UnsupportedRepresentationError:
            rep = None
    if rep is not None:
        mat = rep.p0_matrix()
    return PrincipalElement(alg.rs.coxeter_number, tau_diagonal(alg), mat)


# -- real-form involutions, generator-level rules only ---------------------------


def involution_rules(alg: ChevalleyAlgebra) -> Dict[str, Dict]:
    """Generator-level actions of rho (compact), theta (split) and chi = sigma rho.

    These are documentation/spot-test surfaces only; no computation consumes
    them.  Keys map basis labels of the simple/highest root vectors to
    (image label, sign); conjugate-linearity is recorded per involution.
    """
    rs = alg.rs
    sd = sigma_nu(alg)
    gens = [rs.psi, _neg(rs.psi)]
    for a in rs.simple_roots:
        gens += [a, _neg(a)]

    rho = {("e", r): (("e", _neg(r)), -1) for r in gens}
    rho.update({("h", i + 1): (("h", i + 1), -1) for i in range(rs.rank)})
    theta = {("e", r): (("e", r), 1) for r in gens}
    theta.update({("h", i + 1): (("h", i + 1), 1) for i in range(rs.rank)})
    chi = {}
    for r in gens:
        img, sign = sd.signs[r]
        chi[("e", r)] = (("e", _neg(img)), -sign)  # chi = sigma o rho on root vectors
    for i in range(rs.rank):
        chi[("h", i + 1)] = (("h", sd.nu[i]), -1)
    return {
        "rho": {"conjugate_linear": True, "action": rho},
        "theta": {"conjugate_linear": True, "action": theta},
        "chi": {"conjugate_linear": True, "action": chi},
    }


# -- sigma / nu ---------------------------------------------------------------


@dataclass(frozen=True)
class SigmaData:
    nu: Tuple[int, ...]                     # 1-based permutation, nu[i-1] = nu(i)
    sigma_on_h: Tuple[Tuple[Q, ...], ...]   # matrix on H_{a_i} coordinates
    signs: Dict[Root, Tuple[Root, object]]  # e_root -> (image root, sign)

    def apply_h(self, coords: Sequence) -> Tuple:
        l = len(self.nu)
        out = [0] * l
        for i in range(l):
            out[self.nu[i] - 1] = coords[i]
        return tuple(out)

    def is_fixed_h(self, coords: Sequence) -> bool:
        return tuple(coords) == tuple(self.apply_h(coords))


def sigma_nu(alg: ChevalleyAlgebra) -> SigmaData:
    """sigma on the Cartan subalgebra, simple root vectors, and e_{+-psi}."""
    rs = alg.rs
    l = rs.rank
    nu = diagram_involution(rs)
    mat = tuple(
        tuple(Q(int(nu[j] - 1 == i)) for j in range(l)) for i in range(l)
    )
    signs: Dict[Root, Tuple[Root, int]] = {}
    for i in range(l):
        a = rs.simple_roots[i]
        img = rs.simple_roots[nu[i] - 1]
        signs[a] = (img, -1)
        signs[_neg(a)] = (_neg(img), -1)
    signs[rs.psi] = (rs.psi, -1)
    signs[_neg(rs.psi)] = (_neg(rs.psi), -1)
    assert all(nu[nu[i] - 1] == i + 1 for i in range(l)), "nu is not an involution"
    # nu-symmetry of the principal coefficients r_i
    assert all(rs.r_coeffs[i] == rs.r_coeffs[nu[i] - 1] for i in range(l))
    return SigmaData(nu, mat, signs)


# -- Toda zero-curvature identity ---------------------------------------------


def toda_bracket_identity(
    alg: ChevalleyAlgebra, w: Sequence, c_minus: Sequence, c_plus: Sequence
) -> float:
    """Max-norm residual of [Ad(e^w)E_-, Ad(e^{-w})E_+] + sum c-c+ e^{-2a_i(w)} H_{a_i}.

    w is given in H_{a_i} coordinates; the identity is the zero-curvature
    right-hand side of the Toda system and must vanish.
    """
    rs = alg.rs
    l = rs.rank
    if len(c_minus) != l + 1 or len(c_plus) != l + 1:
        raise ValueError("need coefficients for i = 0..l")
    alphas = [rs.alpha0] + list(rs.simple_roots)
    em: Element = {}
    ep: Element = {}
    hterm: Element = {}
    for i, a in enumerate(alphas):
        aw = float(rs.pairing(a, w))
        em = alg.add(em, alg.e(_neg(a), complex(c_minus[i]) * np.exp(-aw)))
        ep = alg.add(ep, alg.e(a, complex(c_plus[i]) * np.exp(-aw)))
        coeff = complex(c_minus[i]) * complex(c_plus[i]) * np.exp(-2 * aw)
        hterm = alg.add(hterm, {j: coeff * a[j] for j in range(l)})
    res = alg.add(alg.bracket(em, ep), hterm)
    return max((abs(complex(v)) for v in res.values()), default=0.0)


# -- JSON export ---------------------------------------------------------------


def _sq_str(v: Sq) -> str:
    if isinstance(v, Sq):
        return repr(v)
    return str(v)


def export_structure_constants(alg: ChevalleyAlgebra) -> str:
    """JSON table of N(a,b) over all bracketable root pairs, exact string values."""
    rs = alg.rs
    entries = []
    for a in rs.roots:
        for b in rs.roots:
            if rs.is_root(_add(a, b)):
                entries.append(
                    {"alpha": list(a), "beta": list(b), "n": _sq_str(alg.nval(a, b))}
                )
    return json.dumps(
        {
            "schema_version": 1,
            "type": str(rs.type),
            "normalization": "B(e_a, e_-a) = 1, extraspecial pairs positive",
            "entries": entries,
        },
        indent=1,
    )
