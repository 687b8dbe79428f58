"""The enhanced Coxeter plane: 2s singular directions and their roots.

The rays are labeled d_1..d_2s clockwise from angle 0; the Coxeter element
gamma = tau_2 tau_1 rotates the picture clockwise by 2 pi/s, moving the roots
of d_i onto d_{i+2}.  The head ray carries Pi_2, the tail of the positive
sector carries Pi_1.
"""

import numpy as np

from coxstokes import (
    bipartition,
    build_root_system,
    coxeter_plane,
    kostant_chain,
    singular_directions,
)
from coxstokes.cli import render_plane_svg

rs = build_root_system("A2")
bip = bipartition(rs)
plane = coxeter_plane(rs, bip)
report = singular_directions(rs, bip, plane)
print("A2: rays and their roots")
for i, ang in enumerate(plane.ray_angles):
    roots = sorted(plane.assignment[i])
    print(f"   d_{i+1}: angle {np.degrees(ang):7.2f} deg  roots {roots}")
print("   head R(d_1) =", sorted(report.head), " tail R(d_s) =", sorted(report.tail))

print()
print("Kostant chain for A2 (n = 1, 2, 3):")
for n in (1, 2, 3):
    blocks = kostant_chain(rs, n, bip)
    print(f"   n={n}:", [sorted(b) for b in blocks])

print()
print("E8: the frontispiece statistics")
rs8 = build_root_system("E8")
plane8 = coxeter_plane(rs8, bipartition(rs8))
print(f"   spokes: {plane8.num_rays}, wheels: {len(plane8.wheel_radii)}")
with open("e8_plane.svg", "w") as fh:
    fh.write(render_plane_svg(rs8, plane8))
print("   wrote e8_plane.svg")
