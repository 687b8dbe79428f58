"""Independent numerical verification on the type-A matrix model.

Builds the lambda-plane meromorphic system with a double pole at 0 and a
simple pole at infinity, solves the formal-series recursion at the irregular
pole, integrates the monodromy numerically, and compares its characteristic
polynomial against the prediction generated by the Stokes pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from .rootcore import build_root_system
from .scalars import mat_inv, mat_vec
from .steinberg import stokes_from_asymptotics
from .weightrep import registered_representation


class SystemError_(ValueError):
    """Invalid meromorphic system data."""


@dataclass
class SlRep:
    """The standard representation of sl_{n+1}, built directly from matrix units."""

    n: int
    h: Dict[int, np.ndarray]           # H_{alpha_i}, 1-based
    e_pos: Dict[Tuple[int, int], np.ndarray]   # e_{x_i - x_j) = E_{i,j}, i < j
    x0: np.ndarray
    p0: np.ndarray

    @property
    def size(self) -> int:
        return self.n + 1


def standard_rep_sl(n: int) -> SlRep:
    """Matrix tables for sl_{n+1}: H_{x_i-x_j} = E_ii - E_jj, e_{x_i-x_j} = E_ij."""
    if n < 2:
        raise ValueError("rank must be >= 2")
    N = n + 1

    def E(i, j):
        out = np.zeros((N, N))
        out[i, j] = 1.0
        return out

    h = {i: E(i - 1, i - 1) - E(i, i) for i in range(1, n + 1)}
    e_pos = {(i, j): E(i, j) for i in range(N) for j in range(N) if i != j}
    x0 = np.diag([n / 2 - j for j in range(N)]).astype(complex)
    s = n + 1
    p0 = np.diag([np.exp(2j * np.pi * (n / 2 - j) / s) for j in range(N)])
    return SlRep(n, h, e_pos, x0, p0)


@dataclass
class MeromorphicSystem:
    n: int
    c: Tuple[float, ...]              # c_0 .. c_n, positive
    k: Tuple[Q, ...]                  # k_0 .. k_n, >= -1, nu-symmetric
    z: float
    bigN: Q                           # N = s + sum q_i k_i
    m_values: Tuple[Q, ...]           # alpha_i(m) for i = 1..n
    m_diag: np.ndarray
    eta_plus: np.ndarray
    rep: SlRep

    @property
    def s(self) -> int:
        return self.n + 1

    def m_coords(self) -> Tuple[Q, ...]:
        """m in H_{alpha_i} coordinates of the abstract root system."""
        rs = build_root_system(f"A{self.n}")
        return tuple(mat_vec(mat_inv(rs.form), list(self.m_values)))

    def coefficient(self, lam: complex) -> np.ndarray:
        return (
            -(float(self.s) / float(self.bigN)) * (self.z / lam**2) * self.eta_plus
            + self.m_diag / lam
        )


def build_system(n: int, c: Sequence, k: Sequence, z: float) -> MeromorphicSystem:
    """The lambda-plane system for sl_{n+1} with monomial data p_i = c_i z^{k_i}."""
    rep = standard_rep_sl(n)
    s = n + 1
    c = tuple(float(x) for x in c)
    k = tuple(Q(x) for x in k)
    if len(c) != n + 1 or len(k) != n + 1:
        raise SystemError_("need n+1 values c_0..c_n and k_0..k_n")
    if any(x <= 0 for x in c):
        raise SystemError_("c_i must be positive")
    if any(x < -1 for x in k):
        raise SystemError_("k_i must be >= -1")
    for i in range(n + 1):
        nu = 0 if i == 0 else n + 1 - i
        if k[i] != k[nu]:
            raise SystemError_(f"k_{i} != k_{nu} violates the diagram symmetry")
    if float(z) <= 0:
        raise SystemError_("z must be positive")
    bigN = s + sum(k)  # all marks q_i = 1 in type A
    if bigN <= 0:
        raise SystemError_(f"N = {bigN} must be positive")

    a = [Q(s) / bigN * (k[i] + 1) - 1 for i in range(1, n + 1)]
    # m = diag(m_0..m_n), m_{i-1} - m_i = a_i, trace zero
    partial = [Q(0)]
    for ai in a:
        partial.append(partial[-1] - ai)
    shift = -sum(partial) / (n + 1)
    mdiag = [p + shift for p in partial]
    m_diag = np.diag([float(x) for x in mdiag]).astype(complex)

    eta = np.zeros((n + 1, n + 1), dtype=complex)
    for i in range(1, n + 1):
        eta += c[i] * float(z) ** float(k[i]) * rep.e_pos[(i - 1, i)]
    eta += c[0] * float(z) ** float(k[0]) * rep.e_pos[(n, 0)]

    eig = np.linalg.eigvals(eta)
    if np.min(np.abs(eig[:, None] - eig[None, :]) + np.eye(n + 1)) < 1e-8:
        raise SystemError_("leading coefficient is not regular")

    return MeromorphicSystem(n, c, k, float(z), bigN, tuple(a), m_diag, eta, rep)


# -- formal solution at the irregular pole --------------------------------------


@dataclass
class FormalSolution:
    order: int
    prefactor: np.ndarray              # the torus monomial h(z) as a matrix
    t_scale: float
    lambda_minus1: np.ndarray
    lambda_coeffs: Tuple[np.ndarray, ...]   # Lambda_0, Lambda_1, ..., Lambda_{K-1}
    y_coeffs: Tuple[np.ndarray, ...]        # Y_1 .. Y_K
    residual_norms: Tuple[float, ...]       # ODE remainder coefficients xi^{-2}..xi^{K-2}

    @property
    def lambda0_norm(self) -> float:
        return float(np.max(np.abs(self.lambda_coeffs[0])))


def formal_solution(sys: MeromorphicSystem, order: int) -> FormalSolution:
    """Solve the recursion Lambda_{k-1} + [Y_k, Lambda_{-1}] = F_{k-1} to the given order.

    Torus components project onto the centralizer of the leading term; the
    off-torus parts invert ad(Lambda_{-1}).  The truncated series is then
    substituted back into the ODE and the low-order remainder coefficients
    are returned (they must vanish).
    """
    if not 1 <= order <= 30:
        raise ValueError("order must be 1..30")
    n = sys.n
    s, bigN, z = sys.s, float(sys.bigN), sys.z

    # h(z) = e^D z^r: alpha_i(r) = k_i + 1 - N/s, alpha_i(D) = log c_i - (1/s) log c
    cprod = float(np.prod(sys.c))
    r_vals = [float(sys.k[i]) + 1 - bigN / s for i in range(1, n + 1)]
    d_vals = [np.log(sys.c[i]) - np.log(cprod) / s for i in range(1, n + 1)]

    def diag_from_steps(steps):
        part = [0.0]
        for a in steps:
            part.append(part[-1] - a)
        sh = -sum(part) / (n + 1)
        return np.array([p + sh for p in part])

    rdiag = diag_from_steps(r_vals)
    ddiag = diag_from_steps(d_vals)
    P = np.diag(np.exp(ddiag + rdiag * np.log(z))).astype(complex)
    Pinv = np.linalg.inv(P)

    A_m1 = -(s / bigN) * z * sys.eta_plus
    A_0 = sys.m_diag

    lam_m1 = Pinv @ A_m1 @ P
    # internal anchor: Lambda_{-1} = -t E_+ with unit coefficients
    t_scale = (s / bigN) * cprod ** (1.0 / s) * z ** (bigN / s)
    e_plus = sum(sys.rep.e_pos[(i - 1, i)] for i in range(1, n + 1)) + sys.rep.e_pos[(n, 0)]
    if np.max(np.abs(lam_m1 + t_scale * e_plus)) > 1e-10 * max(1.0, t_scale):
        raise ArithmeticError("prefactor does not conjugate the leading term to -t E_+")

    d, V = np.linalg.eig(lam_m1)
    if np.min(np.abs(d[:, None] - d[None, :]) + np.eye(n + 1)) < 1e-10 * np.max(np.abs(d)):
        raise SystemError_("leading term not regular; cannot invert ad")
    Vinv = np.linalg.inv(V)

    def proj_parts(F):
        Fp = Vinv @ F @ V
        lam_part = V @ np.diag(np.diag(Fp)) @ Vinv
        off = Fp - np.diag(np.diag(Fp))
        Yp = np.zeros_like(off)
        for a_ in range(n + 1):
            for b_ in range(n + 1):
                if a_ != b_:
                    Yp[a_, b_] = off[a_, b_] / (d[b_] - d[a_])
        return lam_part, V @ Yp @ Vinv

    F0 = Pinv @ A_0 @ P
    lambdas: List[np.ndarray] = []
    ys: List[np.ndarray] = [np.eye(n + 1, dtype=complex)]  # Y_0 = I
    lam0, y1 = proj_parts(F0)
    lambdas.append(lam0)
    ys.append(y1)
    for kk in range(2, order + 1):
        F = F0 @ ys[kk - 1] - (kk - 1) * ys[kk - 1]
        for nn in range(1, kk):
            F = F - ys[nn] @ lambdas[kk - 1 - nn]
        lam_k, y_k = proj_parts(F)
        lambdas.append(lam_k)
        ys.append(y_k)

    # substitute the truncation into the ODE and collect remainder coefficients
    # S(xi) = P (Y'(xi) + Y(xi) Ups'(xi)) - A(xi) P Y(xi)
    K = order
    coeffs: Dict[int, np.ndarray] = {}

    def addc(mpow, mat):
        coeffs[mpow] = coeffs.get(mpow, 0) + mat

    for kk in range(1, K + 1):
        addc(kk - 1, kk * (P @ ys[kk]))
    ups = {-2: lam_m1, -1: lambdas[0]}
    for j in range(1, K):
        ups[j - 1] = ups.get(j - 1, 0) + lambdas[j]
    for kk in range(0, K + 1):
        for jp, U in ups.items():
            addc(kk + jp, P @ ys[kk] @ U)
    for kk in range(0, K + 1):
        addc(kk - 2, -(A_m1 @ P @ ys[kk]))
        addc(kk - 1, -(A_0 @ P @ ys[kk]))

    res = tuple(
        float(np.max(np.abs(coeffs.get(mp, np.zeros(1))))) for mp in range(-2, K - 1)
    )
    return FormalSolution(
        order=K,
        prefactor=P,
        t_scale=t_scale,
        lambda_minus1=lam_m1,
        lambda_coeffs=tuple(lambdas),
        y_coeffs=tuple(ys[1:]),
        residual_norms=res,
    )


# -- numerical monodromy ----------------------------------------------------------


@dataclass
class MonodromyReport:
    n: int
    k: Tuple[Q, ...]
    z: float
    radius: float
    numerical_charpoly: np.ndarray
    predicted_charpoly: np.ndarray
    max_coeff_residual: float
    central_factor: complex            # the P0^{-s} scalar in the standard rep
    nfev: int
    steps: int

    @property
    def ok(self) -> bool:
        return self.max_coeff_residual < 1e-6


def integrate_monodromy(
    sys: MeromorphicSystem,
    radius: float = 1.0,
    rtol: float = 1e-12,
    atol: float = 1e-12,
    min_steps: int = 256,
):
    """Fundamental solution continued counterclockwise around |lambda| = radius."""
    size = sys.rep.size

    def rhs(theta, y):
        lam = radius * np.exp(1j * theta)
        phi = y.reshape(size, size)
        return (1j * lam * (sys.coefficient(lam) @ phi)).reshape(-1)

    y0 = np.eye(size, dtype=complex).reshape(-1)
    sol = solve_ivp(
        rhs,
        (0.0, 2 * np.pi),
        y0,
        method="DOP853",
        rtol=rtol,
        atol=atol,
        max_step=2 * np.pi / min_steps,
        dense_output=False,
    )
    if not sol.success:
        raise ArithmeticError(f"integrator failed: {sol.message}")
    mono = sol.y[:, -1].reshape(size, size)
    return mono, sol.nfev, len(sol.t)


def numerical_monodromy(
    sys: MeromorphicSystem,
    radius: float = 1.0,
    rtol: float = 1e-12,
    atol: float = 1e-12,
) -> MonodromyReport:
    """Monodromy spectrum against the prediction P0^{-s} (M0)^s.

    The comparison is at conjugacy-class level (characteristic polynomials):
    the numerical fundamental solution differs from the canonical sector
    solutions by an unknowable constant factor.
    """
    mono, nfev, steps = integrate_monodromy(sys, radius, rtol, atol)

    sd = stokes_from_asymptotics(f"A{sys.n}", sys.m_coords())
    rep = registered_representation(f"A{sys.n}")
    s = sys.s
    m0s = np.linalg.matrix_power(sd.m0, s)
    p0_inv_s = np.linalg.matrix_power(np.linalg.inv(rep.p0_matrix()), s)
    central = complex(p0_inv_s[0, 0])
    assert np.max(np.abs(p0_inv_s - central * np.eye(rep.dim))) < 1e-9, (
        "P0^{-s} must be central in the standard representation"
    )
    pred = p0_inv_s @ m0s

    cp_num = np.poly(mono)
    cp_pred = np.poly(pred)
    resid = float(np.max(np.abs(cp_num - cp_pred)))
    return MonodromyReport(
        n=sys.n,
        k=sys.k,
        z=sys.z,
        radius=radius,
        numerical_charpoly=cp_num,
        predicted_charpoly=cp_pred,
        max_coeff_residual=resid,
        central_factor=central,
        nfev=nfev,
        steps=steps,
    )
