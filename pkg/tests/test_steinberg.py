import random
from fractions import Fraction as Q
from itertools import combinations

import numpy as np
import pytest

from coxstokes.coxeter import bipartition
from coxstokes.rootcore import build_root_system, diagram_involution
from coxstokes.scalars import mat_inv, mat_vec
from coxstokes.steinberg import (
    InadmissibleError,
    admissible_m,
    alcove_map,
    certify_alcove_membership,
    semisimple_spectrum_check,
    steinberg_section,
    stokes_from_asymptotics,
    torus_character_values,
    verify_factor_supports,
)
from coxstokes.characters import all_fundamental_tables
from coxstokes.weightrep import registered_representation


def rand_rational_vec(rng, l, lo=-2, hi=2, den=6):
    return tuple(Q(rng.randint(lo * den, hi * den), den) for _ in range(l))


def rand_admissible_m(rng, rs):
    while True:
        a = [Q(rng.randint(-9, 20), 10) for _ in range(rs.rank)]
        m = mat_vec(mat_inv(rs.form), a)
        if admissible_m(rs, m):
            return tuple(m)


# -- alcove ---------------------------------------------------------------------


def test_alcove_interior_at_zero():
    rs = build_root_system("A3")
    pt = alcove_map(rs, [Q(0)] * 3)
    assert pt.admissible
    assert all(sl == Q(1, 4) for sl in pt.slacks_simple)  # alpha_i(x0/s) = 1/s
    assert pt.slack_psi == Q(1, 4)                        # 1 - (s-1)/s


def test_alcove_boundary_face():
    rs = build_root_system("A2")
    # alpha_1(m) = -1 exactly: boundary with zero slack on that face
    a = [Q(-1), Q(1, 3)]
    m = mat_vec(mat_inv(rs.form), a)
    pt = alcove_map(rs, m)
    assert pt.admissible and pt.slacks_simple[0] == 0


@pytest.mark.parametrize(
    "name", ["A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "C3", "D4"]
)
def test_alcove_equivalence_random(name):
    # admissibility alpha_i(m) >= -1 agrees with the alcove inequalities, exactly
    rs = build_root_system(name)
    rng = random.Random(name)
    for _ in range(100):
        m = rand_rational_vec(rng, rs.rank)
        pt = alcove_map(rs, m)   # asserts agreement internally
        assert pt.admissible == admissible_m(rs, m)


@pytest.mark.parametrize("name,needs_sigma", [("A3", True), ("D5", True), ("E6", True), ("B3", False)])
def test_sigma_fixed_filter(name, needs_sigma):
    rs = build_root_system(name)
    nu = diagram_involution(rs)
    rng = random.Random(7)
    m_sym = rand_admissible_m(rng, rs)
    # symmetrize in H-coordinates
    m_sym = tuple((m_sym[i] + m_sym[nu[i] - 1]) / 2 for i in range(rs.rank))
    assert alcove_map(rs, m_sym).sigma_fixed
    assert certify_alcove_membership(rs, m_sym) == admissible_m(rs, m_sym)
    if needs_sigma and nu != tuple(range(1, rs.rank + 1)):
        moved = next(i for i in range(rs.rank) if nu[i] != i + 1)
        m_asym = list(m_sym)
        m_asym[moved] += Q(1, 17)
        if admissible_m(rs, m_asym):
            assert not alcove_map(rs, m_asym).sigma_fixed
            assert not certify_alcove_membership(rs, m_asym)


# -- cross-section ----------------------------------------------------------------


def _ext_trace(g, k):
    idx = list(combinations(range(g.shape[0]), k))
    return sum(np.linalg.det(g[np.ix_(r, r)]) for r in idx)


@pytest.mark.parametrize("name", ["A2", "A3", "A4"])
def test_cross_section_identity_exterior_power_oracle(name):
    # chi(C^Gamma(t)) = t for 50 random t, chi via exterior-power traces
    rs = build_root_system(name)
    rep = registered_representation(name)
    bip = bipartition(rs)
    order = tuple(sorted(bip.i2)) + tuple(sorted(bip.i1))
    rng = np.random.default_rng(12)
    for _ in range(50 if name != "A4" else 10):
        t = rng.normal(size=rs.rank) + 1j * rng.normal(size=rs.rank)
        C = steinberg_section(rep, bip, t).full()
        chi = [_ext_trace(C, j) for j in range(1, rs.rank + 1)]
        for pos, node in enumerate(order):
            assert abs(chi[node - 1] - t[pos]) < 1e-10


def test_cross_section_at_zero_is_coxeter_representative():
    rs = build_root_system("A2")
    rep = registered_representation("A2")
    cs = steinberg_section(rep, bipartition(rs), [0, 0])
    assert np.max(np.abs(cs.full() - cs.a_gamma())) < 1e-14
    w = np.linalg.matrix_power(cs.a_gamma(), 3)
    assert np.max(np.abs(np.abs(w) - np.eye(3))) < 1e-12  # order 3 in PSL


# -- torus character values ---------------------------------------------------------


def test_torus_character_values_a2():
    rs = build_root_system("A2")
    tables = all_fundamental_tables(rs)
    y = tuple(c / 3 for c in rs.r_coeffs)
    t = torus_character_values(rs, tables, y)
    assert np.max(np.abs(t)) < 1e-12
    t0 = torus_character_values(rs, tables, (Q(0), Q(0)))
    assert np.allclose(t0, [3, 3])


# -- Stokes pipeline -----------------------------------------------------------------


def test_stokes_a2_zero():
    sd = stokes_from_asymptotics("A2", [Q(0), Q(0)])
    assert np.max(np.abs(np.array(sd.t))) < 1e-12
    assert np.max(np.abs(sd.k1 - np.eye(3))) < 1e-12
    assert np.max(np.abs(sd.k2 - np.eye(3))) < 1e-12
    assert np.max(np.abs(sd.m0 - sd.a_gamma)) < 1e-12
    chk = semisimple_spectrum_check(sd)
    want = sorted(np.angle(np.exp(2j * np.pi * np.array([1, 0, -1]) / 3)))
    got = sorted(np.angle(np.linalg.eigvals(sd.m0)))
    assert np.allclose(got, want, atol=1e-9)
    assert chk.ok and chk.charpoly_residual < 1e-9


def test_stokes_sl3_generic_k1_support():
    # K1 is unipotent supported on the alpha_2 root space only
    rng = random.Random(3)
    rs = build_root_system("A2")
    m = rand_admissible_m(rng, rs)
    sd = stokes_from_asymptotics("A2", m)
    assert sd.k1_support == ((0, 1),)
    k1 = sd.k1 - np.eye(3)
    nz = {(i, j) for i in range(3) for j in range(3) if abs(k1[i, j]) > 1e-12}
    assert nz <= {(1, 2)}  # e_{alpha_2} = E_{1,2} in the standard rep
    sup = verify_factor_supports(sd)
    assert max(sup.values()) < 1e-8


def test_stokes_inadmissible_raises():
    with pytest.raises(InadmissibleError):
        stokes_from_asymptotics("A2", [Q(-5), Q(0)])


@pytest.mark.parametrize("name", ["A3", "B2", "C3", "D4", "G2"])
def test_stokes_pipeline_generic(name):
    rng = random.Random(name)
    rs = build_root_system(name)
    m = rand_admissible_m(rng, rs)
    sd = stokes_from_asymptotics(name, m)
    assert sd.factorization_residual < 1e-8
    assert sd.class_residual < 1e-8
    chk = semisimple_spectrum_check(sd)
    assert chk.ok
    sup = verify_factor_supports(sd)
    assert max(sup.values()) < 1e-8


def test_stokes_boundary_resonance():
    # m on an alcove wall: eigenvalues collide, charpoly comparison still holds
    rs = build_root_system("A3")
    a = [Q(-1), Q(1, 2), Q(1, 3)]
    m = mat_vec(mat_inv(rs.form), a)
    sd = stokes_from_asymptotics("A3", m)
    chk = semisimple_spectrum_check(sd)
    assert not chk.regular
    assert chk.eigenvalue_residual is None
    assert chk.ok and chk.charpoly_residual < 1e-7


def test_stokes_d4_support_sets():
    from coxstokes.coxeter import coxeter_element

    rs = build_root_system("D4")
    bip = bipartition(rs)
    gamma = coxeter_element(rs, bip)
    sd = stokes_from_asymptotics("D4", [Q(1, 5)] * 4)
    assert set(sd.k1_support) == {rs.simple_roots[i - 1] for i in bip.i2}
    want_k2 = {
        gamma.apply(tuple(-c for c in rs.simple_roots[i - 1])) for i in bip.i1
    }
    assert set(sd.k2_support) == want_k2
    # K2's support lies on the second singular direction: positive roots
    assert all(sum(r) > 0 for r in sd.k2_support)
