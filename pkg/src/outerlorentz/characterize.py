"""Pairing functionals with normalized characteristic functions.

Every supremum and infimum here is an exact enumeration over subsets; on
finite settings they are attained, so the stated constants are checked
directly without epsilon slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants as C
from ._bits import indices_from_mask, submask_groups, subset_matrix
from .lorentz import (
    ExponentError,
    envelope,
    linf_norm,
    linf_table,
    norm_from_profile,
    restricted_profiles,
    super_level_profile,
)
from .reports import DEFAULT_TOL, combine, inequality, not_applicable
from .setting import FamilyDomainError, FiniteSetting
from .sizes import INF, EllSize, SizeFamily, ell_r_size

SIGMA_PRIME = "Sigma_prime"
SIGMA_DOUBLE_PRIME = "Sigma_double_prime"


class PairingTable:
    """Cached profiles of f 1_B for every mask B under one size."""

    def __init__(self, f, S: SizeFamily):
        self.f = np.asarray(f, dtype=float)
        self.S = S
        self.setting = S.setting
        self.table = linf_table(self.f, S)
        self.profiles = restricted_profiles(self.f, S, table=self.table)
        self._norms = {}

    def norms(self, p, q) -> np.ndarray:
        """||f 1_B||_{L^{p,q}(S)} for every mask B."""
        key = (float(p), float(q))
        if key not in self._norms:
            self._norms[key] = np.array([norm_from_profile(pr, p, q) for pr in self.profiles])
        return self._norms[key]

    @property
    def full_profile(self):
        return self.profiles[self.setting.full]


def _sigma_mu_array(setting):
    mu = setting.mu_table
    return np.flatnonzero((mu > 0) & np.isfinite(mu))


def _scale_exponent(p, a):
    return (0.0 if p == INF else 1.0 / p) - 1.0 / a


def charfun_sup(f, S: SizeFamily, p, a, q, pairing: PairingTable | None = None):
    """sup over A in Sigma_mu of mu(A)^{1/p - 1/a} ||f 1_A||_{L^{a,q}(S)}.

    Returns ``(value, witness_mask)``.
    """
    pairing = pairing or PairingTable(f, S)
    setting = S.setting
    cands = _sigma_mu_array(setting)
    if cands.size == 0:
        raise FamilyDomainError("Sigma_mu is empty")
    vals = setting.mu_table[cands] ** _scale_exponent(p, a) * pairing.norms(a, q)[cands]
    i = int(np.argmax(vals))
    return float(vals[i]), int(cands[i])


def charfun_supinf(f, S: SizeFamily, p, a, q, family=SIGMA_PRIME, pairing: PairingTable | None = None):
    """sup over A of inf over B in the family of mu(A)^{1/p-1/a} ||f 1_B||_{L^{a,q}(S)}.

    ``family`` is Sigma_prime (mu(A minus B) <= mu(A)/2) or Sigma_double_prime
    (mu(B) >= mu(A)/2). Returns ``(value, (A, B))``.
    """
    if family not in (SIGMA_PRIME, SIGMA_DOUBLE_PRIME):
        raise ValueError(f"unknown family {family!r}")
    pairing = pairing or PairingTable(f, S)
    setting = S.setting
    mu = setting.mu_table
    norms = pairing.norms(a, q)
    groups = submask_groups(setting.n)
    scale = _scale_exponent(p, a)
    best, best_pair = -1.0, None
    for A in _sigma_mu_array(setting):
        subs = groups[A]
        half = mu[A] / 2
        if family == SIGMA_PRIME:
            members = subs[mu[A & ~subs] <= half]
        else:
            members = subs[mu[subs] >= half]
        k = int(np.argmin(norms[members]))
        val = mu[A] ** scale * norms[members[k]]
        if val > best:
            best, best_pair = float(val), (int(A), int(members[k]))
    if best_pair is None:
        raise FamilyDomainError("Sigma_mu is empty")
    return best, best_pair


def _reduced(p, q, r, a):
    """Exponents after the power reduction f -> |f|^a."""
    return p / a, q / a, r / a


def verify_thm_second(f, setting: FiniteSetting, p, q, r, K=1.0, a=1.0, tol=DEFAULT_TOL, S=None,
                      corrected=True):
    """Two-sided weak-norm characterization for p > a, p finite.

    Constants for a != 1 come from the reduced exponents raised to 1/a.
    For finite r the lower constant is K^{p/r} p^{p/r} (p-1)^{(1-p)/r}, times
    q^{1/q} when ``corrected``: the bound ||g||_{L^{1,inf}} <= q^{1/q} ||g||_{L^{1,q}}
    is sharp, so the bare delta-infimum is too small once q > 1.
    For r = inf the lower constant is q^{1/q}, or 1 uncorrected.
    """
    if not (p != INF and p > a):
        raise ExponentError(f"need a < p < inf, got p={p}, a={a}")
    Sr = S if S is not None else ell_r_size(setting, r)
    pairing = PairingTable(f, Sr)
    weak = norm_from_profile(pairing.full_profile, p, INF)
    sup_val, witness = charfun_sup(f, Sr, p, a, q, pairing=pairing)
    P, Q, R = _reduced(p, q, r, a)
    upper = C.weak_upper_constant(P, Q) ** (1.0 / a)
    if R == INF:
        lower = 1.0
    else:
        lower = C.weak_lower_constant(P, R, K)
    if corrected:
        lower *= C.case_one_lower_constant(Q)
    lower **= 1.0 / a
    parts = [
        inequality("thm-second:upper", sup_val, weak, upper, tol=tol, witness={"A": witness}),
        inequality("thm-second:lower", weak, sup_val, lower, tol=tol, witness={"A": witness}),
    ]
    return combine("thm-second", parts, p=p, q=q, r=r, a=a, weak_norm=weak, charfun_sup=sup_val,
                   observed_ratio=_ratio(weak, sup_val))


def verify_linf_char(f, setting: FiniteSetting, q, r, tol=DEFAULT_TOL, S=None, corrected=True):
    """p = inf: ||f||_{L^inf(ell^r)} against sup over A of mu(A)^{-1} ||f 1_A||_{L^{1,q}}."""
    Sr = S if S is not None else ell_r_size(setting, r)
    pairing = PairingTable(f, Sr)
    norm = linf_norm(f, Sr)
    sup_val, witness = charfun_sup(f, Sr, INF, 1.0, q, pairing=pairing)
    lower = 1.0 if r == INF else C.linf_lower_constant(r)
    if corrected:
        lower *= C.case_one_lower_constant(q)
    upper = C.linf_upper_constant(q)
    parts = [
        inequality("linf-char:upper", sup_val, norm, upper, tol=tol, witness={"A": witness}),
        inequality("linf-char:lower", norm, sup_val, lower, tol=tol, witness={"A": witness}),
    ]
    return combine("linf-char", parts, q=q, r=r, linf_norm=norm, charfun_sup=sup_val,
                   observed_ratio=_ratio(norm, sup_val))


def verify_weak_supinf(f, setting: FiniteSetting, p, q, r, a=1.0, family=SIGMA_PRIME, tol=DEFAULT_TOL,
                       corrected=True):
    """p <= a: ||f||_{L^{p,inf}(ell^r)} against the sup-inf K' over Sigma_prime.

    With ``family=Sigma_double_prime`` only the directions that survive the
    weaker family are asserted (upper always; lower only for r = inf).
    """
    if not p <= a:
        raise ExponentError(f"need p <= a, got p={p}, a={a}")
    Sr = ell_r_size(setting, r)
    pairing = PairingTable(f, Sr)
    weak = norm_from_profile(pairing.full_profile, p, INF)
    k_val, (A, B) = charfun_supinf(f, Sr, p, a, q, family=family, pairing=pairing)
    P, Q, R = _reduced(p, q, r, a)
    if R == INF:
        upper = C.supinf_upper_case_one(P, Q)
        lower = C.supinf_lower_case_one(Q)
    else:
        upper = C.supinf_upper_case_two(P, Q)
        lower = C.supinf_lower_case_two(P, R)
        if corrected:
            lower *= C.case_one_lower_constant(Q)
    upper **= 1.0 / a
    lower **= 1.0 / a
    claim = "weak-supinf" if family == SIGMA_PRIME else "weak-supinf-double-prime"
    parts = [inequality(f"{claim}:upper", k_val, weak, upper, tol=tol, witness={"A": A, "B": B})]
    if family == SIGMA_PRIME or R == INF:
        parts.append(inequality(f"{claim}:lower", weak, k_val, lower, tol=tol, witness={"A": A, "B": B}))
    return combine(claim, parts, p=p, q=q, r=r, a=a, weak_norm=weak, supinf=k_val,
                   observed_ratio=_ratio(weak, k_val))


def _ratio(x, y):
    if y == 0:
        return 1.0 if x == 0 else INF
    return x / y


def classical_weak_char(f, setting: FiniteSetting, p, tol=DEFAULT_TOL):
    """Classical weak L^p against its pairing with characteristic functions.

    Uses only omega. Asserted constants: lhs <= rhs <= p' lhs for p > 1, and
    lhs <= 2 rhs, rhs <= 2^{1/p} lhs for p <= 1.
    """
    f = np.abs(np.asarray(f, dtype=float))
    om = setting.omega
    positive = om > 0
    if p == INF:
        lhs = float(f[positive].max()) if positive.any() else 0.0
    else:
        lhs = 0.0
        for v in np.unique(f[positive & (f > 0)]):
            lhs = max(lhs, v * om[f >= v].sum() ** (1.0 / p))
    n = setting.n
    bits = subset_matrix(n)
    om_table = setting.omega_table
    mass = bits @ (f * om)
    cands = np.flatnonzero(om_table > 0)
    e = (0.0 if p == INF else 1.0 / p) - 1.0
    if p > 1:
        vals = om_table[cands] ** e * mass[cands]
        i = int(np.argmax(vals)) if cands.size else 0
        rhs = float(vals[i]) if cands.size else 0.0
        witness = {"A": int(cands[i])} if cands.size else {}
        parts = [
            inequality("classical:lower", lhs, rhs, 1.0, tol=tol),
            inequality("classical:upper", rhs, lhs, C.conjugate(p), tol=tol),
        ]
    else:
        groups = submask_groups(n)
        rhs, witness = 0.0, {}
        for A in cands:
            subs = groups[A]
            members = subs[om_table[subs] >= om_table[A] / 2]
            k = int(np.argmin(mass[members]))
            val = om_table[A] ** e * mass[members[k]]
            if val > rhs:
                rhs, witness = float(val), {"A": int(A), "B": int(members[k])}
        parts = [
            inequality("classical:lower", lhs, rhs, 2.0, tol=tol),
            inequality("classical:upper", rhs, lhs, 2.0 ** (1.0 / p), tol=tol),
        ]
    rep = combine("classical-weak", parts, p=p, weak_norm=lhs, pairing=rhs)
    rep.witness.update(witness)
    return rep


def lemma_2_check(f, setting: FiniteSetting, r, A: int, rho, lam, tol=DEFAULT_TOL):
    """mu(A) <= ||f||^r_{L^inf(ell^r)} / (rho^r - lam^r) * mu(ell^r(f) > lam)."""
    if r == INF:
        raise ExponentError("finite r only")
    S = ell_r_size(setting, r)
    mu = setting.mu_table
    if not (0 < mu[A] < math.inf and 0 < lam < rho):
        return not_applicable("lemma-2", A=A, rho=rho, lam=lam)
    if S(f, A) < rho:
        return not_applicable("lemma-2", reason="ell^r(f)(A) < rho", A=A, rho=rho)
    norm = linf_norm(f, S)
    constant = norm ** r / (rho ** r - lam ** r)
    level = super_level_profile(f, S)(lam)
    return inequality("lemma-2", mu[A], level, constant, tol=tol, witness={"A": A}, rho=rho, lam=lam, r=r)


@dataclass
class SupportSelection:
    mask: int
    pieces: list = field(default_factory=list)
    j_sequence: list = field(default_factory=list)
    steps: int = 0
    sets_scanned: int = 0


def select_support(f, setting: FiniteSetting, r, lam, S: EllSize | None = None) -> SupportSelection:
    """Greedy exhaustion producing B with ell^r(f)(B) > lam and ||f 1_{B^c}||_inf <= lam.

    Each round picks, among sets B with ell^r(f 1_{A^c})(B) > lam for the
    current union A, one of maximal outer measure (smallest mask on ties),
    and stops when no such set is left. The candidate families shrink, so
    the dyadic exponent of their maximal measure never increases.
    """
    S = S if S is not None else ell_r_size(setting, r)
    f = np.asarray(f, dtype=float)
    if not linf_norm(f, S) > lam:
        raise ValueError(f"need ||f||_inf > lambda = {lam}")
    bits = subset_matrix(setting.n)
    coll = S.collection
    mu = S.mu
    union = 0
    sel = SupportSelection(mask=0)
    while union != setting.full:
        # each piece meets the complement of the union, so there are at most n rounds
        g = f * ~bits[union]
        vals = S.evaluate(g)
        sel.sets_scanned += len(coll)
        ok = np.flatnonzero(vals > lam)
        if ok.size == 0:
            break
        top = mu[ok].max()
        choice = int(coll[ok[mu[ok] == top]].min())
        sel.j_sequence.append(math.ceil(math.log2(top)) - 1)
        sel.pieces.append(choice)
        union |= choice
        sel.steps += 1
        if sel.steps > setting.n:
            raise RuntimeError("support selection failed to terminate")
    sel.mask = union
    return sel


def select_support_check(f, setting: FiniteSetting, r, lam, tol=0.0):
    S = ell_r_size(setting, r)
    sel = select_support(f, setting, r, lam, S=S)
    B = sel.mask
    inside = S(f, B)
    outside = ((B >> np.arange(setting.n)) & 1) == 0
    tail = linf_norm(np.asarray(f, dtype=float) * outside, S)
    nonincreasing = all(x >= y for x, y in zip(sel.j_sequence, sel.j_sequence[1:]))
    step_cap = setting.n * (1 << setting.n)
    passed = inside > lam and tail <= lam * (1 + tol) and nonincreasing and sel.sets_scanned <= step_cap
    from .reports import VerificationReport

    return VerificationReport(
        claim_id="select-support",
        lhs=inside,
        rhs=lam,
        constant_used=1.0,
        margin=min(inside - lam, lam - tail),
        passed=bool(passed),
        witness={"B": B, "pieces": sel.pieces},
        details={"tail": tail, "j_sequence": sel.j_sequence, "steps": sel.steps,
                 "sets_scanned": sel.sets_scanned},
    )


def counterexample_setting(m: int):
    """m points, every nonempty subset of outer measure 1, omega counting, f = 1."""
    if m < 1:
        raise ValueError("m must be positive")
    gens = [(list(range(m)), 1.0)] + [([i], 1.0) for i in range(m)]
    setting = FiniteSetting.from_lists([1.0] * m, gens, points=[str(j + 1) for j in range(m)])
    return setting, np.ones(m)


def counterexample_report(m: int, r=1.0, p=1.0, a=1.0, q=INF):
    """Weak norm, K' and K'' on the counterexample family.

    The setting is invariant under permutations of points, so mu(B) and
    ||1_B|| depend only on |B|; the sup-inf collapses to a scan over sizes.
    Each per-size norm is still computed from an exact profile.
    """
    setting, f = counterexample_setting(m)
    S = ell_r_size(setting, r)
    v = linf_table(f, S)
    mu = setting.mu_table
    weak = norm_from_profile(super_level_profile(f, S, table=v), p, INF)
    sizes = range(m + 1)
    prefix = [(1 << j) - 1 for j in sizes]
    N = []
    for B in prefix:
        subs = np.arange(B + 1, dtype=np.int64)
        N.append(norm_from_profile(envelope(v[B & ~subs], mu[subs]), a, q))
    mu_k = [mu[B] for B in prefix]
    scale = _scale_exponent(p, a)
    k_prime = k_dprime = 0.0
    wit_p = wit_dp = None
    for k in range(1, m + 1):
        half = mu_k[k] / 2
        dp = min((N[j], j) for j in range(k + 1) if mu_k[j] >= half)
        pr = min((N[j], j) for j in range(k + 1) if mu_k[k - j] <= half)
        if mu_k[k] ** scale * dp[0] > k_dprime:
            k_dprime, wit_dp = mu_k[k] ** scale * dp[0], (k, dp[1])
        if mu_k[k] ** scale * pr[0] > k_prime:
            k_prime, wit_p = mu_k[k] ** scale * pr[0], (k, pr[1])
    return {
        "m": m,
        "r": r,
        "p": p,
        "weak_norm": weak,
        "K_prime": k_prime,
        "K_double_prime": k_dprime,
        "ratio": _ratio(weak, k_dprime),
        "witness_K_prime": {"A_size": wit_p[0], "B_size": wit_p[1]},
        "witness_K_double_prime": {"A_size": wit_dp[0], "B_size": wit_dp[1]},
        "points": indices_from_mask(setting.full),
    }
