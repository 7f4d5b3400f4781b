"""Super-level measures and outer Lorentz quasi-norms.

The super-level measure lambda -> mu(S(f) > lambda) of a function on a
finite setting is a step function: the lower envelope of the pairs
(||f 1_{Omega^c}||_{L^inf_mu(S)}, mu(Omega)) over all subsets Omega. Norms
are integrated in closed form over its constancy intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._bits import submask_groups, subset_matrix
from .reports import IDENTITY_TOL, identity, inequality, combine
from .setting import FiniteSetting, mu_circle
from .sizes import INF, SizeFamily, ell_r_size, lift_size


class ExponentError(ValueError):
    pass


@dataclass(frozen=True)
class LorentzExponents:
    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (p > 0 and q > 0):
            raise ExponentError(f"exponents must be positive, got p={p}, q={q}")
        if p == INF and q != INF:
            raise ExponentError("p = inf is only defined together with q = inf")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class SuperLevelProfile:
    """Right-continuous staircase: value ``measures[i]`` on ``[lambdas[i], lambdas[i+1])``."""

    lambdas: np.ndarray
    measures: np.ndarray

    def __call__(self, lam: float) -> float:
        i = int(np.searchsorted(self.lambdas, lam, side="right")) - 1
        return float(self.measures[max(i, 0)])

    @property
    def terminal_lambda(self) -> float:
        return float(self.lambdas[-1])

    @property
    def breakpoints(self) -> list:
        return [(float(a), float(b)) for a, b in zip(self.lambdas, self.measures)]

    def to_json(self) -> dict:
        return {"breakpoints": self.breakpoints, "terminal_lambda": self.terminal_lambda}


def envelope(lams, costs) -> SuperLevelProfile:
    """Lower envelope lambda -> min{cost : lam <= lambda} of threshold/cost pairs."""
    lams = np.asarray(lams, dtype=float)
    costs = np.asarray(costs, dtype=float)
    order = np.lexsort((costs, lams))
    lams = lams[order]
    run = np.minimum.accumulate(costs[order])
    keep = np.ones(len(run), dtype=bool)
    keep[1:] = run[1:] < run[:-1]
    out_l = lams[keep]
    out_m = run[keep]
    if out_l[0] != 0.0:
        raise ArithmeticError("profile must start at lambda = 0")
    if out_m[-1] != 0.0:
        raise ArithmeticError("super-level measure does not vanish; integral would diverge")
    return SuperLevelProfile(out_l, out_m)


def linf_table(f, S: SizeFamily, chunk=4096) -> np.ndarray:
    """||f 1_D||_{L^inf_mu(S)} for every mask D."""
    f = np.asarray(f, dtype=float)
    n = S.setting.n
    bits = subset_matrix(n)
    out = np.empty(1 << n)
    for start in range(0, 1 << n, chunk):
        block = bits[start:start + chunk] * f
        out[start:start + chunk] = S.linf(block)
    return out


def linf_norm(f, S: SizeFamily) -> float:
    f = np.asarray(f, dtype=float)
    return float(S.linf(f[None, :])[0])


def super_level_profile(f, S: SizeFamily, table=None) -> SuperLevelProfile:
    setting = S.setting
    v = linf_table(f, S) if table is None else table
    omegas = np.arange(1 << setting.n, dtype=np.int64)
    return envelope(v[setting.full & ~omegas], setting.mu_table[omegas])


def restricted_profiles(f, S: SizeFamily, table=None) -> list:
    """Profile of f 1_B for every mask B.

    Only Omega inside B matter: the restricted L-infinity norm depends on
    B minus Omega, and mu is monotone.
    """
    setting = S.setting
    v = linf_table(f, S) if table is None else table
    mu = setting.mu_table
    groups = submask_groups(setting.n)
    return [envelope(v[B & ~sub], mu[sub]) for B, sub in enumerate(groups)]


def norm_from_profile(profile: SuperLevelProfile, p, q) -> float:
    exps = LorentzExponents(p, q)
    p, q = exps.p, exps.q
    lam, mu = profile.lambdas, profile.measures
    if p == INF:
        return float(lam[-1])
    if len(lam) == 1:
        return 0.0
    right = lam[1:]
    left = lam[:-1]
    level = mu[:-1]
    if q == INF:
        return float(np.max(right * level ** (1.0 / p)))
    total = np.sum((p / q) * (right ** q - left ** q) * level ** (q / p))
    return float(total ** (1.0 / q))


def decreasing_rearrangement_from_profile(profile: SuperLevelProfile, t: float) -> float:
    """inf{alpha >= 0 : mu(S(f) > alpha) <= t}."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    hits = np.flatnonzero(profile.measures <= t)
    return float(profile.lambdas[hits[0]]) if hits.size else INF


def decreasing_rearrangement(f, S: SizeFamily, t: float) -> float:
    return decreasing_rearrangement_from_profile(super_level_profile(f, S), t)


def rearrangement_norm(profile: SuperLevelProfile, p, q) -> float:
    """|| t^{1/p} f*(t) ||_{L^q(dt/t)}, integrating the step function f* directly."""
    exps = LorentzExponents(p, q)
    p, q = exps.p, exps.q
    lam, mu = profile.lambdas, profile.measures
    if p == INF:
        return decreasing_rearrangement_from_profile(profile, 0.0)
    if len(lam) == 1:
        return 0.0
    # f* equals lam[i] on [mu[i], mu[i-1]) for i >= 1
    values = lam[1:]
    t_hi = mu[:-1]
    t_lo = mu[1:]
    if q == INF:
        return float(np.max(values * t_hi ** (1.0 / p)))
    total = np.sum(values ** q * (p / q) * (t_hi ** (q / p) - t_lo ** (q / p)))
    return float(total ** (1.0 / q))


def lorentz_norm(f, S: SizeFamily, p, q) -> float:
    exps = LorentzExponents(p, q)
    if exps.p == INF:
        return linf_norm(f, S)
    return norm_from_profile(super_level_profile(f, S), exps.p, exps.q)


def restricted_norms(profiles, p, q) -> np.ndarray:
    return np.array([norm_from_profile(pr, p, q) for pr in profiles])


def _q_ratio_factor(p, q):
    """(p/q)^{1/q}, equal to 1 for q = inf."""
    return 1.0 if q == INF else (p / q) ** (1.0 / q)


def characteristic_identity_check(setting: FiniteSetting, A: int, p, q, tol=IDENTITY_TOL):
    """||1_A||_{L^{p,q}(ell^inf)} against (p/q)^{1/q} mu_circle(A)^{1/p}."""
    indicator = ((A >> np.arange(setting.n)) & 1).astype(float)
    lhs = lorentz_norm(indicator, ell_r_size(setting, INF), p, q)
    rhs = _q_ratio_factor(p, q) * mu_circle(setting, A) ** (1.0 / p)
    return identity("char-identity", lhs, rhs, tol=tol, witness={"A": A}, p=p, q=q)


def power_identity_check(f, S: SizeFamily, p, q, r, a, tol=IDENTITY_TOL):
    """||f||_{L^{p,q}(S_r)} against || |f|^a ||^{1/a}_{L^{p/a,q/a}(S_{r/a})}."""
    f = np.asarray(f, dtype=float)
    lhs = lorentz_norm(f, lift_size(S, r), p, q)
    inner = lorentz_norm(np.abs(f) ** a, lift_size(S, r / a), p / a, q / a)
    rhs = inner ** (1.0 / a)
    return identity("power-identity", lhs, rhs, tol=tol, p=p, q=q, r=r, a=a)


def lemma_aux_check(f, S: SizeFamily, r, omega_mask: int, delta, rho, K=1.0, tol=1e-9):
    """Comparison of super-level measures after discarding a small tail.

    Applies when ||f 1_{Omega^c}||_{L^inf(S_r)} <= K^{-1/r} (1 - delta^r)^{1/r} rho;
    then mu(S_r(f) > rho) <= mu(S_r(f 1_Omega) > K^{-1/r} delta rho).
    """
    from .reports import not_applicable

    f = np.asarray(f, dtype=float)
    Sr = lift_size(S, r)
    setting = S.setting
    inside = ((omega_mask >> np.arange(setting.n)) & 1).astype(bool)
    tail = linf_norm(f * ~inside, Sr)
    allowed = K ** (-1.0 / r) * (1.0 - delta ** r) ** (1.0 / r) * rho
    if tail > allowed:
        return not_applicable("lemma-aux", tail=tail, allowed=allowed)
    lhs = super_level_profile(f, Sr)(rho)
    rhs = super_level_profile(f * inside, Sr)(K ** (-1.0 / r) * delta * rho)
    return inequality("lemma-aux", lhs, rhs, tol=tol, witness={"Omega": omega_mask},
                      delta=delta, rho=rho, r=r)


__all__ = [
    "LorentzExponents",
    "SuperLevelProfile",
    "characteristic_identity_check",
    "combine",
    "decreasing_rearrangement",
    "envelope",
    "lemma_aux_check",
    "linf_norm",
    "linf_table",
    "lorentz_norm",
    "norm_from_profile",
    "power_identity_check",
    "rearrangement_norm",
    "restricted_norms",
    "restricted_profiles",
    "super_level_profile",
]
