"""Cartan subalgebras in apposition: the ad(E_+) spectrum is the Coxeter plane.

With E_+ = sum sqrt(q_i) e_{alpha_i} (the i = 0 term uses e_{-psi}), the
nonzero adjoint eigenvalues fall on 2s equally spaced rays and coincide,
after one complex rescaling kappa, with the plane coordinates of the roots.
"""

import numpy as np

from coxstokes import (
    ad_spectrum,
    bipartition,
    build_chevalley,
    build_e_plus,
    coxeter_plane,
    match_plane,
)

for name in ["A3", "B3", "G2", "F4"]:
    alg = build_chevalley(name)
    rs = alg.rs
    ep = build_e_plus(alg)
    sr = ad_spectrum(ep)
    plane = coxeter_plane(rs, bipartition(rs))
    m = match_plane(sr, plane)
    print(f"-- {name}: dim g = {alg.dim}")
    print(f"   kernel of ad(E_+): {sr.zero_multiplicity} = rank {rs.rank}")
    print(f"   rays: {len(sr.rays)} = 2s = {2 * rs.coxeter_number}")
    print(f"   eigenvalues per ray: {[c for _, c in sr.rays]}")
    print(f"   kappa = {m.kappa:.6f}, max residual {m.max_residual:.2e}")

print()
print("the nonzero G2 spectrum, one gamma-orbit of s-th roots of unity per wheel:")
sr = ad_spectrum(build_e_plus(build_chevalley("G2")))
for ev in sr.nonzero:
    print(f"   {ev.real:+.6f} {ev.imag:+.6f}i   |.| = {abs(ev):.6f}")
