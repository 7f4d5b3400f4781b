import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from outerlorentz import FiniteSetting, characteristic_identity_check, ell_r_size, lift_size, super_level_profile
from outerlorentz.lorentz import linf_norm, lorentz_norm, power_identity_check
from outerlorentz.oracles import DirectOracle
from outerlorentz.setting import outer_measure_bruteforce
from outerlorentz.sizes import INF

weights = st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0])
values = st.sampled_from([0.0, 0.5, 1.0, 1.5, 2.0, 3.0])
exps = st.sampled_from([0.5, 1.0, 1.5, 2.0, 3.0, INF])


@st.composite
def settings_and_functions(draw, max_points=5):
    n = draw(st.integers(1, max_points))
    omega = draw(st.lists(weights, min_size=n, max_size=n))
    full = (1 << n) - 1
    masks = draw(st.lists(st.integers(1, full), min_size=0, max_size=4))
    sigmas = draw(st.lists(st.sampled_from([0.5, 1.0, 1.5, 2.0, 4.0]), min_size=len(masks) + 1,
                           max_size=len(masks) + 1))
    gens = [(full, sigmas[0])] + list(zip(masks, sigmas[1:]))
    s = FiniteSetting(points=tuple(f"x{i}" for i in range(n)), omega=np.array(omega), generators=tuple(gens))
    f = np.array(draw(st.lists(values, min_size=n, max_size=n)))
    return s, f


@settings(max_examples=60, deadline=None)
@given(settings_and_functions())
def test_mu_matches_bruteforce(sf):
    s, _ = sf
    for A in range(1 << s.n):
        assert s.mu_table[A] == outer_measure_bruteforce(s, A)


@settings(max_examples=60, deadline=None)
@given(settings_and_functions(), exps, st.floats(0, 4))
def test_profile_matches_oracle(sf, r, lam):
    s, f = sf
    assert super_level_profile(f, ell_r_size(s, r))(lam) == DirectOracle(s, r).super_level(f, lam)


@settings(max_examples=60, deadline=None)
@given(settings_and_functions(), st.integers(0, 31), st.sampled_from([1, 2, 3]), st.sampled_from([1, 2, INF]))
def test_char_identity(sf, A, p, q):
    s, _ = sf
    assert characteristic_identity_check(s, A & s.full, p, q).passed


@settings(max_examples=60, deadline=None)
@given(settings_and_functions(), exps, st.sampled_from([0.5, 2.0, 3.0]), st.sampled_from([1, 2, INF]),
       st.sampled_from([0.5, 1.0, 2.0]))
def test_power_identity(sf, r, p, q, a):
    s, f = sf
    assert power_identity_check(f, ell_r_size(s, 1), p, q, r, a).passed


@settings(max_examples=60, deadline=None)
@given(settings_and_functions(), exps, st.floats(0.1, 10))
def test_norm_homogeneous_and_ordered(sf, r, c):
    s, f = sf
    S = lift_size(ell_r_size(s, 1), r)
    for p, q in [(1, 1), (2, INF), (3, 2)]:
        a, b = lorentz_norm(c * f, S, p, q), c * lorentz_norm(f, S, p, q)
        assert abs(a - b) <= 1e-10 * max(a, b, 1e-300)
    # L^{p,q} decreases in q: ||f||_{p,inf} <= ||f||_{p,2} <= ||f||_{p,1}
    n1, n2, ni = (lorentz_norm(f, S, 2, q) for q in (1, 2, INF))
    assert ni <= n2 * (1 + 1e-12) and n2 <= n1 * (1 + 1e-12)
    assert lorentz_norm(f, S, 2, INF) <= linf_norm(f, S) * s.mu_table[s.full] ** 0.5 * (1 + 1e-12)
