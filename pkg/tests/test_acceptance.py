"""Acceptance criteria 1-10, each run at its stated tolerance.

Every test records one PASS/FAIL line, printed at the end of the session.
"""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from outerlorentz import constants as C
from outerlorentz import ell_r_size, lift_size, setting3
from outerlorentz.campaign import CampaignConfig, counterexample_check, run_campaign
from outerlorentz.characterize import lemma_2_check, verify_linf_char, verify_weak_supinf
from outerlorentz.lorentz import lemma_aux_check, linf_norm, norm_from_profile, super_level_profile
from outerlorentz.random_instances import random_function, random_setting
from outerlorentz.setting import mu_circle
from outerlorentz.sizes import INF, check_eq_new, check_k_support, function_grid


def record(n, title, passed, detail, started):
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES[n] = f"criterion {n:2d} {status}  {title}: {detail} ({time.perf_counter() - started:.1f}s)"
    print(ACCEPTANCE_LINES[n])
    return passed


def campaign(claim, trials, seed, stated=False):
    reports, summary = run_campaign(CampaignConfig(claim=claim, trials=trials, seed=seed, stated_constants=stated))
    return reports, summary


def test_criterion_01_characteristic_identity():
    t0 = time.perf_counter()
    bad = checked = 0
    for seed in range(500):
        s = random_setting(seed, max_points=6)
        S = ell_r_size(s, INF)
        for A in range(1 << s.n):
            indicator = ((A >> np.arange(s.n)) & 1).astype(float)
            prof = super_level_profile(indicator, S)
            mc = mu_circle(s, A)
            for p in (1.0, 2.0, 3.0):
                for q in (1.0, 2.0, INF):
                    lhs = norm_from_profile(prof, p, q)
                    rhs = (1.0 if q == INF else (p / q) ** (1 / q)) * mc ** (1 / p)
                    checked += 1
                    bad += abs(lhs - rhs) > 1e-10 * max(abs(lhs), abs(rhs))
    ok = record(1, "characteristic identity", bad == 0, f"{checked - bad}/{checked} exact to 1e-10", t0)
    assert ok


def test_criterion_02_weak_norm_characterization():
    t0 = time.perf_counter()
    reports, summary = campaign("thm-second", 1000, seed=2, stated=True)
    lower_fail = sum(not all(p["passed"] for p in r.details["parts"] if p["claim_id"].endswith("lower"))
                     for r in reports)
    ok = record(2, "two-sided weak-norm characterization, stated constants", summary["all_passed"],
                f"{summary['passed']}/1000 trials, {lower_fail} lower-bound violations", t0)
    assert ok


def test_criterion_03_linf_characterization():
    t0 = time.perf_counter()
    assert C.linf_lower_constant(1) == 4.0
    bad = 0
    rng = np.random.default_rng(3)
    n_trials = 1000
    for _ in range(n_trials):
        s = random_setting(None, rng=rng)
        f = random_function(rng, s.n)
        q = float(rng.choice([1, 1.25, 1.5, 2, 3, INF]))
        r = float(rng.choice([1, 1.25, 1.5, 2, 3]))
        bad += not verify_linf_char(f, s, q, r, corrected=False).passed
    ok = record(3, "L-infinity characterization, finite r, stated constants", bad == 0,
                f"{n_trials - bad}/{n_trials} trials; r=1 constant = 4", t0)
    assert ok


def _supinf_trials(rng, r_choices, n_trials):
    bad = 0
    for _ in range(n_trials):
        s = random_setting(None, rng=rng)
        f = random_function(rng, s.n)
        a = float(rng.choice([1, 1.25, 1.5, 2, 3]))
        p = float(rng.choice([x for x in (0.5, 1, 1.25, 1.5, 2, 3) if x <= a]))
        q = float(rng.choice([1, 1.5, 2, 3, INF]))
        r = float(rng.choice(r_choices))
        bad += not verify_weak_supinf(f, s, p, q, r, a=a, corrected=False).passed
    return bad


def test_criterion_04_supinf_characterization():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    bad1 = _supinf_trials(rng, [INF], 500)
    bad2 = _supinf_trials(rng, [1, 1.25, 1.5, 2, 3], 500)
    ok = record(4, "sup-inf characterization, stated constants", bad1 == bad2 == 0,
                f"Case I {500 - bad1}/500, Case II {500 - bad2}/500", t0)
    assert ok


def test_criterion_05_counterexample():
    t0 = time.perf_counter()
    reps = [counterexample_check(m) for m in (4, 8, 16)]
    detail = ", ".join(f"m={r.details['m']}: norm {r.details['weak_norm']:g}, K'' {r.details['K_double_prime']:g}"
                       for r in reps)
    ok = record(5, "counterexample family", all(r.passed for r in reps), detail, t0)
    assert ok


def _lemma_checks_setting3():
    s = setting3()
    S1 = ell_r_size(s, 1)
    grid = function_grid(3)
    bad = total = 0
    for r in (1.0, 2.0, 3.0, INF):
        total += 1
        bad += not check_k_support(lift_size(S1, r), grid, K=1.0).passed
    total += 1
    bad += not check_eq_new(S1, grid).passed
    for f in grid:
        for r in (1.0, 2.0):
            Sr = ell_r_size(s, r)
            for A in Sr.collection:
                val = Sr(f, int(A))
                for frac_rho in (0.5, 1.0):
                    for frac_lam in (0.25, 0.75):
                        rho = val * frac_rho
                        rep = lemma_2_check(f, s, r, int(A), rho, rho * frac_lam)
                        if rep.applicable:
                            total += 1
                            bad += not rep.passed
            for omega in range(8):
                for delta in (0.25, 0.5, 0.9):
                    outside = ((omega >> np.arange(3)) & 1) == 0
                    tail = linf_norm(f * outside, lift_size(S1, r))
                    for rho in {max(tail, 0.5) / (1 - delta ** r) ** (1 / r), 2.5}:
                        rep = lemma_aux_check(f, S1, r, omega, delta, rho)
                        if rep.applicable:
                            total += 1
                            bad += not rep.passed
    return bad, total


def test_criterion_06_lemmas_and_splitting():
    t0 = time.perf_counter()
    bad, total = _lemma_checks_setting3()
    per_claim = {}
    for claim in ("lemma-aux", "lemma-2", "k-support", "eq-new"):
        _, summary = campaign(claim, 200, seed=6)
        per_claim[claim] = summary["failed"]
    ok = record(6, "auxiliary lemmas, support splitting, eq-new", bad == 0 and not any(per_claim.values()),
                f"setting-3 {total - bad}/{total} checks; random failures {per_claim}", t0)
    assert ok


def test_criterion_07_select_support():
    t0 = time.perf_counter()
    reports, summary = campaign("select-support", 500, seed=7)
    steps = max(r.details["sets_scanned"] for r in reports)
    ok = record(7, "support selection", summary["all_passed"],
                f"{summary['passed']}/500 instances, max sets scanned {steps}", t0)
    assert ok


def test_criterion_08_corollary():
    from outerlorentz.heisenberg import random_window, verify_corollary

    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    bad = total = 0
    for _ in range(50):
        w = random_window(rng, max_tiles=12)
        F = random_function(rng, w.n)
        for a, p, q in ((1, 2, INF), (1, 3, 1), (2, 3, INF)):
            total += 1
            bad += not verify_corollary(w, F, p, q, a).passed
    ok = record(8, "tile-window corollary", bad == 0, f"{total - bad}/{total} checks", t0)
    assert ok


def test_criterion_09_multilinear_chain():
    t0 = time.perf_counter()
    reports, summary = campaign("prop-3-9", 200, seed=9)
    counts = {}
    for r in reports:
        for step, passed in r.details["steps"].items():
            key = step.split(":")[0] if step.startswith("log-convexity") else step
            counts.setdefault(key, [0, 0])
            counts[key][0] += passed
            counts[key][1] += 1
    detail = ", ".join(f"{k} {v[0]}/{v[1]}" for k, v in counts.items())
    ok = record(9, "multilinear chain, every step and composed", summary["all_passed"], detail, t0)
    assert ok


def test_criterion_10_oracle_consistency():
    t0 = time.perf_counter()
    reports, summary = campaign("profile-oracle", 200, seed=10)
    mismatches = int(sum(r.lhs for r in reports))
    ok = record(10, "profile against direct evaluator", summary["all_passed"],
                f"{200 * 50 - mismatches}/{200 * 50} levels exact", t0)
    assert ok
