"""Explicit constants of the characterization theorems.

Each one-dimensional infimum is available both as a closed form (where one
exists) and as a ternary search over the defining expression, so the two
can be cross-checked.
"""

import math
from functools import lru_cache

INF = math.inf


def conjugate(p: float) -> float:
    """Hoelder conjugate p' with 1/p + 1/p' = 1 (negative for p < 1)."""
    if p == INF:
        return 1.0
    if p == 1:
        return INF
    return p / (p - 1.0)


def q_power(x: float, q: float) -> float:
    """x^{1/q}, read as 1 when q = inf."""
    return 1.0 if q == INF else x ** (1.0 / q)


def ternary_min(fn, lo, hi, tol=1e-10, max_iter=500):
    """Minimum of a unimodal function on the open interval (lo, hi)."""
    a, b = lo, hi
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a), abs(b)):
            break
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        if fn(m1) < fn(m2):
            b = m2
        else:
            a = m1
    x = 0.5 * (a + b)
    return x, fn(x)


# Weak-norm characterization for general sizes, p > 1, a = 1.

def weak_upper_constant(p, q):
    """2 (p'/q)^{1/q}: sup over A of mu(A)^{-1/p'} ||f 1_A||_{L^{1,q}} against ||f||_{L^{p,inf}}."""
    return 2.0 * q_power(conjugate(p) / q if q != INF else 1.0, q)


def weak_lower_constant(p, r, K=1.0):
    """K^{p/r} p^{p/r} (p-1)^{(1-p)/r}, the minimal delta-infimum for finite r."""
    if r == INF:
        raise ValueError("finite r only; use case_one_lower_constant for r = inf")
    return K ** (p / r) * p ** (p / r) * (p - 1.0) ** ((1.0 - p) / r)


def weak_lower_objective(delta, p, r):
    return 1.0 / (delta * (1.0 - delta ** r) ** (p / (r * conjugate(p))))


def weak_lower_constant_search(p, r):
    return ternary_min(lambda d: weak_lower_objective(d, p, r), 0.0, 1.0)[1]


def case_one_lower_constant(q):
    """q^{1/q}: from ||rho 1_Omega||_{L^{1,q}(ell^inf)} = q^{-1/q} rho mu(Omega)."""
    return q_power(q, q)


# p = inf, finite r.

def linf_lower_constant(r):
    """(r+1)^{(r+1)/r} / r = inf over k in (0,1) of 1/(k - k^{r+1})."""
    return (r + 1.0) ** ((r + 1.0) / r) / r


def linf_lower_constant_search(r):
    return ternary_min(lambda k: 1.0 / (k - k ** (r + 1.0)), 0.0, 1.0)[1]


def linf_upper_constant(q):
    """2 (1/q)^{1/q}: the general upper constant at p' = 1."""
    return 2.0 * q_power(1.0 / q if q != INF else 1.0, q)


# p <= a = 1, sup-inf over Sigma'.

def supinf_upper_case_one(p, q):
    return 2.0 ** (1.0 / p) * q_power(1.0 / q if q != INF else 1.0, q)


def supinf_lower_case_one(q):
    """2 q^{1/q}: mu(B) >= mu(Omega)/2 on Sigma'(Omega) and the indicator identity."""
    return 2.0 * q_power(q, q)


def supinf_upper_case_two(p, q):
    return 2.0 ** (1.0 + 1.0 / p) * q_power(1.0 / q if q != INF else 1.0, q)


def _m_objective(M, p, r):
    return M ** r * (1.0 - M ** (-p)) ** (-1.0 / p) * (1.0 - M ** r / 2.0) ** (-(r + 1.0) / r)


@lru_cache(maxsize=None)
def m_infimum(p, r):
    """inf over M in (1, 2^{1/r}) of M^r (1 - M^{-p})^{-1/p} (1 - M^r/2)^{-(r+1)/r}."""
    lo, hi = 1.0, 2.0 ** (1.0 / r)
    return ternary_min(lambda M: _m_objective(M, p, r), lo, hi, tol=1e-12)


def supinf_lower_case_two(p, r):
    """2 C with C = (r+1)^{(r+1)/r}/r times the M-infimum."""
    return 2.0 * linf_lower_constant(r) * m_infimum(p, r)[1]


# Tile spaces.

def corollary_lower_constant(p, a):
    """sqrt((p-a)/a) (p/(p-a))^{p/(2a)}; tends to 1 as p -> a."""
    if p == a:
        return 1.0
    return math.sqrt((p - a) / a) * (p / (p - a)) ** (p / (2.0 * a))


def corollary_upper_constant(p, q, a):
    """2^{1/a} (p/(q(p-a)))^{1/q}."""
    if q == INF:
        return 2.0 ** (1.0 / a)
    return 2.0 ** (1.0 / a) * (p / (q * (p - a))) ** (1.0 / q)
