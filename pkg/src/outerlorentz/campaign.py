"""Seeded verification campaigns over random instances.

Each registered claim maps a per-trial generator to a VerificationReport.
Trial t of a campaign with seed s draws from ``default_rng([s, t])``, so
reports do not depend on thread scheduling and the merged file is
byte-identical across runs.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import characterize as ch
from . import heisenberg as hz
from . import holder as hd
from ._bits import MAX_EXACT_POINTS
from .lorentz import (
    characteristic_identity_check,
    lemma_aux_check,
    linf_norm,
    power_identity_check,
    super_level_profile,
)
from .oracles import DirectOracle
from .random_instances import EXPONENT_GRID, random_exponent, random_function, random_setting
from .reports import DEFAULT_TOL, VerificationReport, identity, inequality
from .sizes import INF, check_eq_new, check_k_support, ell_r_size, function_grid, lift_size

SCHEMA = 1


@dataclass
class CampaignConfig:
    claim: str
    trials: int = 100
    max_points: int = 6
    max_generators: int = 5
    seed: int = 0
    tolerance: float = DEFAULT_TOL
    threads: int = 1
    stated_constants: bool = False
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise KeyError(f"unknown claim {self.claim!r}; choose from {', '.join(sorted(CLAIMS))}")
        if self.trials < 1:
            raise ValueError("trial count must be at least 1")
        if not 1 <= self.max_points <= MAX_EXACT_POINTS:
            raise ValueError(f"max points must lie in [1, {MAX_EXACT_POINTS}]")


def _setting_and_function(rng, cfg):
    setting = random_setting(None, cfg.max_points, cfg.max_generators, rng=rng)
    f = random_function(rng, setting.n)
    return setting, f


def _trial_thm_second(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    p = float(rng.choice([x for x in EXPONENT_GRID if 1 < x < INF]))
    q, r = random_exponent(rng), random_exponent(rng)
    return ch.verify_thm_second(f, setting, p, q, r, tol=cfg.tolerance, corrected=not cfg.stated_constants)


def _trial_linf_char(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    q, r = random_exponent(rng), random_exponent(rng)
    return ch.verify_linf_char(f, setting, q, r, tol=cfg.tolerance, corrected=not cfg.stated_constants)


def _trial_weak_supinf(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    a = random_exponent(rng, finite=True)
    p = float(rng.choice([x for x in EXPONENT_GRID if x <= a]))
    q, r = random_exponent(rng), random_exponent(rng)
    return ch.verify_weak_supinf(f, setting, p, q, r, a=a, tol=cfg.tolerance, corrected=not cfg.stated_constants)


def _trial_char_identity(rng, cfg):
    setting = random_setting(None, cfg.max_points, cfg.max_generators, rng=rng)
    A = int(rng.integers(0, 1 << setting.n))
    p = float(rng.choice([1.0, 2.0, 3.0]))
    q = float(rng.choice([1.0, 2.0, INF]))
    return characteristic_identity_check(setting, A, p, q)


def _trial_power_identity(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    p, q = random_exponent(rng, finite=True), random_exponent(rng)
    r = random_exponent(rng)
    a = float(rng.choice([0.5, 1.0, 2.0]))
    return power_identity_check(f, ell_r_size(setting, 1.0), p, q, r, a)


def _trial_lemma_aux(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    r = random_exponent(rng, finite=True)
    S = ell_r_size(setting, 1.0)
    omega = int(rng.integers(0, 1 << setting.n))
    delta = float(rng.uniform(0.05, 0.95))
    outside = ((omega >> np.arange(setting.n)) & 1) == 0
    tail = linf_norm(f * outside, lift_size(S, r))
    rho = tail / (1 - delta ** r) ** (1 / r) * (1 + float(rng.uniform(0, 1)))
    if rho == 0:
        rho = float(rng.uniform(0.1, 2.0))
    return lemma_aux_check(f, S, r, omega, delta, rho, tol=cfg.tolerance)


def _trial_lemma_2(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    r = random_exponent(rng, finite=True)
    S = ell_r_size(setting, r)
    vals = S.evaluate(f)
    pick = int(rng.integers(len(S.collection)))
    A, value = int(S.collection[pick]), float(vals[pick])
    if value == 0:
        return ch.lemma_2_check(f, setting, r, A, 1.0, 0.5, tol=cfg.tolerance)
    rho = value * float(rng.uniform(0.5, 1.0))
    lam = rho * float(rng.uniform(0.01, 0.99))
    return ch.lemma_2_check(f, setting, r, A, rho, lam, tol=cfg.tolerance)


def _trial_k_support(rng, cfg):
    setting = random_setting(None, min(cfg.max_points, 5), cfg.max_generators, rng=rng)
    r = random_exponent(rng, grid=(1.0, 1.25, 1.5, 2.0, 3.0, INF))
    S = lift_size(ell_r_size(setting, 1.0), r)
    return check_k_support(S, function_grid(setting.n, rng=rng, draws=200), K=1.0, tol=cfg.tolerance)


def _trial_eq_new(rng, cfg):
    setting = random_setting(None, min(cfg.max_points, 5), cfg.max_generators, rng=rng)
    S = ell_r_size(setting, 1.0)
    return check_eq_new(S, function_grid(setting.n, rng=rng, draws=200), tol=cfg.tolerance)


def _trial_select_support(rng, cfg):
    r = random_exponent(rng)
    while True:
        # instances need ||f||_inf > lambda >= 0; omega = 0 everywhere admits none
        setting, f = _setting_and_function(rng, cfg)
        if linf_norm(f, ell_r_size(setting, r)) == 0:
            f = f + 1.0
        if linf_norm(f, ell_r_size(setting, r)) > 0:
            break
    lam = float(rng.uniform(0, 1)) * linf_norm(f, ell_r_size(setting, r))
    return ch.select_support_check(f, setting, r, lam)


def _trial_classical(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    p = float(rng.choice([0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, INF]))
    return ch.classical_weak_char(f, setting, p, tol=cfg.tolerance)


def counterexample_check(m, r=1.0, p=1.0):
    rep = ch.counterexample_report(m, r=r, p=p)
    parts = [
        identity("counterexample:norm", rep["weak_norm"], float(m), tol=1e-12),
        inequality("counterexample:K''", rep["K_double_prime"], 1.0, tol=1e-12),
        inequality("counterexample:ratio", float(m), rep["ratio"], tol=1e-12),
    ]
    from .reports import combine

    return combine("counterexample", parts, **{k: v for k, v in rep.items() if k != "points"})


def _trial_counterexample(rng, cfg):
    return counterexample_check(int(rng.integers(1, min(cfg.max_points, 12) + 1)))


def _window(rng, cfg, max_tiles=12):
    """The window fixed by ``extra["window"] = (M, L, l_min, fmax, kappa)``, else a random one."""
    shape = cfg.extra.get("window")
    if shape is None:
        return hz.random_window(rng, max_tiles=max_tiles)
    M, L, l_min, fmax, kappa = shape
    return hz.TileWindow((M, L), l_min, fmax, kappa)


def _trial_corollary(rng, cfg):
    window = _window(rng, cfg, max_tiles=min(cfg.max_points, 12) if cfg.max_points >= 4 else 4)
    F = random_function(rng, window.n)
    a, p, q = [(1.0, 2.0, INF), (1.0, 3.0, 1.0), (2.0, 3.0, INF)][int(rng.integers(3))]
    return hz.verify_corollary(window, F, p, q, a, tol=cfg.tolerance)


def random_prop_exponents(rng, grid=(1.0, 1.25, 1.5, 2.0, 3.0)):
    """(a, [p_1, ..., p_m]) with 1 < a <= p_1 and eps > 0."""
    while True:
        a = float(rng.choice([g for g in grid if g > 1]))
        p1 = float(rng.choice([g for g in grid if g >= a]))
        m = int(rng.integers(2, 4))
        ps = [p1] + [float(rng.choice(grid)) for _ in range(m - 1)]
        if sum(1 / x for x in ps) - 1 > 1e-12:
            return a, ps


def _trial_prop_3_9(rng, cfg):
    window = _window(rng, cfg)
    a, ps = random_prop_exponents(rng)
    Fs = [random_function(rng, window.n) for _ in ps]
    return hd.prop_3_9_check(window, Fs, a, ps, tol=cfg.tolerance)


def _trial_holder(rng, cfg):
    setting = random_setting(None, cfg.max_points, cfg.max_generators, rng=rng)
    r1 = float(rng.choice([1.25, 1.5, 2.0, 3.0]))
    r2 = r1 / (r1 - 1.0)
    s = ell_r_size(setting, 1.0)
    sizes = [ell_r_size(setting, r1), ell_r_size(setting, r2)]
    p1, p2 = random_exponent(rng, finite=True), random_exponent(rng)
    q1, q2 = random_exponent(rng), random_exponent(rng)
    if p2 == INF:
        q2 = INF
    Fs = [random_function(rng, setting.n), random_function(rng, setting.n)]
    return hd.outer_holder_check(hd.HolderInstance(s, sizes, [p1, p2], [q1, q2], Fs), tol=cfg.tolerance)


def profile_oracle_check(setting, f, r, lams):
    """Staircase values against the direct evaluator at the given levels; exact agreement."""
    profile = super_level_profile(f, ell_r_size(setting, r))
    oracle = DirectOracle(setting, r)
    mismatches = [(float(l), profile(l), oracle.super_level(f, l)) for l in lams
                  if profile(l) != oracle.super_level(f, l)]
    return VerificationReport(
        claim_id="profile-oracle",
        lhs=float(len(mismatches)),
        rhs=0.0,
        constant_used=1.0,
        margin=-float(len(mismatches)),
        passed=not mismatches,
        witness={"mismatches": mismatches[:5]},
        details={"r": r, "levels": len(lams)},
    )


def _trial_profile_oracle(rng, cfg):
    setting, f = _setting_and_function(rng, cfg)
    r = random_exponent(rng)
    profile = super_level_profile(f, ell_r_size(setting, r))
    top = max(profile.terminal_lambda, 1.0) * 1.25
    lams = rng.uniform(0, top, 50)
    return profile_oracle_check(setting, f, r, lams)


CLAIMS = {
    "thm-second": _trial_thm_second,
    "linf-char": _trial_linf_char,
    "weak-supinf": _trial_weak_supinf,
    "char-identity": _trial_char_identity,
    "power-identity": _trial_power_identity,
    "lemma-aux": _trial_lemma_aux,
    "lemma-2": _trial_lemma_2,
    "k-support": _trial_k_support,
    "eq-new": _trial_eq_new,
    "select-support": _trial_select_support,
    "classical-weak": _trial_classical,
    "counterexample": _trial_counterexample,
    "corollary": _trial_corollary,
    "prop-3-9": _trial_prop_3_9,
    "holder": _trial_holder,
    "profile-oracle": _trial_profile_oracle,
}


def run_trial(cfg: CampaignConfig, t: int) -> VerificationReport:
    rng = np.random.default_rng([cfg.seed, t])
    rep = CLAIMS[cfg.claim](rng, cfg)
    rep.details.setdefault("trial", t)
    return rep


def run_campaign(cfg: CampaignConfig):
    """Run all trials; returns ``(reports, summary)``."""
    trials = range(cfg.trials)
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            reports = list(pool.map(lambda t: run_trial(cfg, t), trials))
    else:
        reports = [run_trial(cfg, t) for t in trials]
    return reports, summarize(cfg, reports)


def summarize(cfg, reports) -> dict:
    applicable = [r for r in reports if r.applicable]
    worst = min(applicable, key=lambda r: r.margin) if applicable else None
    return {
        "claim": cfg.claim,
        "trials": len(reports),
        "applicable": len(applicable),
        "passed": sum(r.passed for r in reports),
        "failed": sum(not r.passed for r in reports),
        "worst_margin": worst.margin if worst is not None else 0.0,
        "worst_trial": worst.details.get("trial") if worst is not None else None,
        "worst_witness": worst.witness if worst is not None else {},
        "all_passed": all(r.passed for r in reports),
    }


def campaign_document(cfg, reports, summary) -> dict:
    config = {k: v for k, v in asdict(cfg).items() if k not in ("out", "threads")}
    return {
        "schema": SCHEMA,
        "config": config,
        "summary": summary,
        "reports": [r.to_dict() for r in reports],
    }


def dumps(doc) -> str:
    from .reports import _jsonable

    return json.dumps(_jsonable(doc), sort_keys=True, indent=1)


def write_csv(path, reports):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "claim_id", "applicable", "passed", "margin", "lhs", "rhs", "constant"])
        for r in reports:
            w.writerow([r.details.get("trial"), r.claim_id, r.applicable, r.passed,
                        _fmt(r.margin), _fmt(r.lhs), _fmt(r.rhs), _fmt(r.constant_used)])


def _fmt(x):
    return "inf" if isinstance(x, float) and math.isinf(x) else repr(float(x))


def write_report(path, doc):
    Path(path).write_text(dumps(doc) + "\n")
