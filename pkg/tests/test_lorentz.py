import numpy as np
import pytest

from outerlorentz import (
    characteristic_identity_check,
    decreasing_rearrangement,
    ell_r_size,
    lift_size,
    lorentz_norm,
    random_setting,
    super_level_profile,
)
from outerlorentz.lorentz import (
    ExponentError,
    LorentzExponents,
    lemma_aux_check,
    linf_norm,
    power_identity_check,
    rearrangement_norm,
)
from outerlorentz.random_instances import random_function
from outerlorentz.sizes import INF


def test_linf_examples(s3, f210):
    assert linf_norm(f210, ell_r_size(s3, INF)) == 2.0
    assert linf_norm(f210, ell_r_size(s3, 1)) == 3.0
    assert linf_norm(np.zeros(3), ell_r_size(s3, 1)) == 0.0


def test_profile_example(s3, f210):
    S = ell_r_size(s3, INF)
    prof = super_level_profile(f210, S)
    assert prof.breakpoints == [(0.0, 1.0), (2.0, 0.0)]
    assert prof(1.999) == 1.0 and prof(2.0) == 0.0
    assert prof.terminal_lambda == linf_norm(f210, S)
    zero = super_level_profile(np.zeros(3), S)
    assert zero.breakpoints == [(0.0, 0.0)]


def test_rearrangement_examples(s3, f210):
    S = ell_r_size(s3, INF)
    assert decreasing_rearrangement(f210, S, 0.5) == 2.0
    assert decreasing_rearrangement(f210, S, 1.0) == 0.0
    assert decreasing_rearrangement(np.zeros(3), S, 0.3) == 0.0
    with pytest.raises(ValueError):
        decreasing_rearrangement(f210, S, -1.0)


def test_norm_examples(s3, f210):
    S = ell_r_size(s3, INF)
    assert lorentz_norm(f210, S, 1, INF) == 2.0
    assert lorentz_norm(f210, S, 1, 1) == 2.0
    assert lorentz_norm(f210, S, INF, INF) == 2.0
    for p, q in [(1, 1), (2, INF), (0.5, 3)]:
        assert lorentz_norm(np.zeros(3), S, p, q) == 0.0


@pytest.mark.parametrize("p, q", [(0, 1), (1, 0), (-1, INF), (INF, 2)])
def test_bad_exponents(p, q):
    with pytest.raises(ExponentError):
        LorentzExponents(p, q)


def test_char_identity_examples(s3):
    rep = characteristic_identity_check(s3, s3.mask([0]), 2, 1)
    assert rep.passed and rep.lhs == pytest.approx(2.0)
    assert characteristic_identity_check(s3, 0, 2, 1).lhs == 0.0
    rep = characteristic_identity_check(s3, s3.full, 1, INF)
    assert rep.passed and rep.rhs == 1.5


def test_power_identity_example(s3, f210):
    S = ell_r_size(s3, 1)
    assert power_identity_check(f210, S, 2, INF, 2, 2).passed
    assert power_identity_check(f210, S, 3, 2, 1.5, 1).passed
    assert power_identity_check(np.zeros(3), S, 2, 2, 2, 0.5).passed


@pytest.mark.parametrize("seed", range(30))
def test_rearrangement_form_and_monotone(seed):
    rng = np.random.default_rng(seed)
    s = random_setting(None, rng=rng)
    f = random_function(rng, s.n)
    S = lift_size(ell_r_size(s, 1), float(rng.choice([0.5, 1, 2, 3, INF])))
    prof = super_level_profile(f, S)
    assert np.all(np.diff(prof.measures) < 0)
    assert np.all(np.diff(prof.lambdas) > 0)
    for p, q in [(0.5, 1), (1, 1), (2, 3), (3, INF), (1.5, 0.5)]:
        a, b = lorentz_norm(f, S, p, q), rearrangement_norm(prof, p, q)
        assert a == pytest.approx(b, rel=1e-10, abs=0)
    # weak norm attained at a corner
    corners = prof.lambdas[1:] * prof.measures[:-1] ** 0.5
    if corners.size:
        assert lorentz_norm(f, S, 2, INF) == corners.max()
        lams = np.linspace(0, prof.terminal_lambda * 1.1, 200)
        assert max(l * prof(l) ** 0.5 for l in lams) <= corners.max() + 1e-12


@pytest.mark.parametrize("seed", range(30))
def test_lemma_aux(seed):
    rng = np.random.default_rng(seed)
    s = random_setting(None, rng=rng)
    f = random_function(rng, s.n)
    r = float(rng.choice([1, 2, 3]))
    S = ell_r_size(s, 1)
    omega = int(rng.integers(0, 1 << s.n))
    delta = float(rng.uniform(0.05, 0.95))
    outside = ((omega >> np.arange(s.n)) & 1) == 0
    tail = linf_norm(f * outside, lift_size(S, r))
    rho = max(tail, 0.1) / (1 - delta ** r) ** (1 / r) * float(rng.uniform(1, 2))
    rep = lemma_aux_check(f, S, r, omega, delta, rho)
    assert rep.applicable and rep.passed


def test_lemma_aux_not_applicable(s3, f210):
    rep = lemma_aux_check(f210, ell_r_size(s3, 1), 1, 0, 0.5, 0.1)
    assert not rep.applicable
