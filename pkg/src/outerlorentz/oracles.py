"""Slow evaluators written straight from the definitions.

Nothing here reuses the tables or batched kernels of the main modules; the
outer measure comes from brute-force covers and sizes are plain loops.
"""

from __future__ import annotations

import math

from .setting import FiniteSetting, outer_measure_bruteforce

INF = math.inf


def ell_r_value(setting: FiniteSetting, f, r, A: int, mu_A: float) -> float:
    """mu(A)^{-1/r} ||f 1_A||_{L^r(omega)}, or the omega-essential sup on A."""
    vals = []
    for i in range(setting.n):
        if (A >> i) & 1 and setting.omega[i] > 0:
            vals.append((abs(float(f[i])), float(setting.omega[i])))
    if r == INF:
        return max((v for v, _ in vals), default=0.0)
    total = sum(w * v ** r for v, w in vals)
    return (total / mu_A) ** (1.0 / r)


class DirectOracle:
    """Super-level measure of ell^r_omega(f) by exhaustive search over Omega."""

    def __init__(self, setting: FiniteSetting, r):
        self.setting = setting
        self.r = float(r)
        n = setting.n
        self.mu = [outer_measure_bruteforce(setting, A) for A in range(1 << n)]
        self.sigma_mu = [A for A in range(1, 1 << n) if 0 < self.mu[A] < INF]

    def linf(self, f, D: int) -> float:
        """||f 1_D||_{L^inf_mu(ell^r)}, recomputed from scratch."""
        g = [float(f[i]) if (D >> i) & 1 else 0.0 for i in range(self.setting.n)]
        return max((ell_r_value(self.setting, g, self.r, A, self.mu[A]) for A in self.sigma_mu), default=0.0)

    def bounded_by(self, f, D: int, lam: float) -> bool:
        """Whether ||f 1_D||_{L^inf_mu(ell^r)} <= lam, stopping at the first violation."""
        g = [float(f[i]) if (D >> i) & 1 else 0.0 for i in range(self.setting.n)]
        return all(ell_r_value(self.setting, g, self.r, A, self.mu[A]) <= lam for A in self.sigma_mu)

    def super_level(self, f, lam: float) -> float:
        """min mu(Omega) over Omega with ||f 1_{Omega^c}||_inf <= lam."""
        full = (1 << self.setting.n) - 1
        for omega in sorted(range(1 << self.setting.n), key=lambda m: self.mu[m]):
            if self.bounded_by(f, full & ~omega, lam):
                return self.mu[omega]
        return INF
