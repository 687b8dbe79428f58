"""Exact root-system data: marks, Coxeter number, exponents, dual basis.

Everything here is rational arithmetic; the bilinear form is normalized so
the highest root has squared length 2.
"""

from coxstokes import build_root_system, dual_data, highest_root_marks

for name in ["A2", "A5", "B3", "C3", "D4", "G2", "F4", "E8"]:
    rs = build_root_system(name)
    psi, marks, s = highest_root_marks(rs)
    print(f"-- {name}")
    print(f"   roots: {len(rs.roots)} = l*s = {rs.rank}*{s}")
    print(f"   highest root psi = {psi}, marks q_0..q_l = {marks}")
    print(f"   exponents: {rs.exponents}")
    print(f"   r_i (x0 = sum r_i H_i): {[str(r) for r in rs.r_coeffs]}")

print()
print("A5 sanity: r_i = i(n-i+1)/2 for sl_{n+1}")
rs = build_root_system("A5")
dd = dual_data(rs)
for i, r in enumerate(dd.r_coeffs, start=1):
    print(f"   r_{i} = {r}   (formula: {i}*(5-{i}+1)/2 = {i*(5-i+1)}/2)")

print()
print("x0 pairs to 1 with every simple root, and to s-1 with psi:")
print("   alpha_i(x0) =", [str(rs.pairing(a, dd.x0)) for a in rs.simple_roots])
print("   psi(x0)     =", rs.pairing(rs.psi, dd.x0), " s-1 =", rs.coxeter_number - 1)
