"""Outer Hoelder inequality, log-convexity and the multilinear tile estimate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import constants as C
from .heisenberg import TileWindow, x_norm
from .lorentz import ExponentError, linf_norm, lorentz_norm
from .reports import DEFAULT_TOL, combine, inequality
from .setting import FiniteSetting
from .sizes import INF, EllSize, SizeFamily, ell_r_size


def _inv(x):
    return 0.0 if x == INF else 1.0 / x


def _from_inv(s):
    return INF if s == 0 else 1.0 / s


@dataclass
class HolderInstance:
    """Sizes s, s_1..s_m with exponents (p_i), (q_i) and functions F_1..F_m."""

    s: SizeFamily
    sizes: list
    ps: list
    qs: list
    functions: list

    def __post_init__(self):
        m = len(self.sizes)
        if not (m == len(self.ps) == len(self.qs) == len(self.functions)) or m == 0:
            raise ExponentError("sizes, exponents and functions must have the same positive length")
        for p, q in zip(self.ps, self.qs):
            if p == INF and q != INF:
                raise ExponentError("p_i = inf needs q_i = inf")

    @property
    def m(self) -> int:
        return len(self.sizes)

    @property
    def p(self) -> float:
        return _from_inv(sum(_inv(p) for p in self.ps))

    @property
    def q(self) -> float:
        return _from_inv(sum(_inv(q) for q in self.qs))

    @property
    def product(self) -> np.ndarray:
        return np.prod(np.asarray(self.functions, dtype=float), axis=0)


def product_condition_check(s: SizeFamily, sizes, function_lists, tol=DEFAULT_TOL):
    """s(prod F_i)(A) <= prod s_i(F_i)(A) over every tuple drawn from the lists and every A.

    ``function_lists[i]`` is an array of candidate functions for slot i;
    all sizes must share the collection of ``s``.
    """
    for S in sizes:
        if not np.array_equal(S.collection, s.collection):
            raise ValueError("sizes must share one collection")
    grids = np.meshgrid(*[np.arange(len(F)) for F in function_lists], indexing="ij")
    idx = [g.ravel() for g in grids]
    prod = np.ones((idx[0].size, s.setting.n))
    bound = np.ones((idx[0].size, len(s.collection)))
    for F, S, ix in zip(function_lists, sizes, idx):
        F = np.atleast_2d(np.asarray(F, dtype=float))
        prod *= F[ix]
        bound *= S.evaluate(F)[ix]
    lhs = s.evaluate(prod)
    scale = np.maximum(np.maximum(lhs, bound), 1e-300)
    margin = (bound - lhs) / scale
    t, a = np.unravel_index(int(np.argmin(margin)), margin.shape)
    return inequality("product-condition", lhs[t, a], bound[t, a], tol=tol,
                      witness={"tuple": [int(i[t]) for i in idx], "A": int(s.collection[a])})


def outer_holder_check(inst: HolderInstance, tol=DEFAULT_TOL):
    """||prod F_i||_{L^{p,q}(s)} <= m^{1/p} prod_i ||F_i||_{L^{p_i,q_i}(s_i)}."""
    p, q = inst.p, inst.q
    if p == INF and q != INF:
        raise ExponentError("sum of 1/q_i must vanish when all p_i are infinite")
    lhs = lorentz_norm(inst.product, inst.s, p, q)
    factors = [lorentz_norm(F, S, pi, qi) for F, S, pi, qi in zip(inst.functions, inst.sizes, inst.ps, inst.qs)]
    rhs = float(np.prod(factors))
    constant = inst.m ** _inv(p)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else INF)
    return inequality("holder", lhs, rhs, constant, tol=tol, p=p, q=q, m=inst.m, ratio=ratio)


def classical_outer_check(setting: FiniteSetting, functions, size: SizeFamily | None = None, tol=DEFAULT_TOL):
    """||prod F_j||_{L^1(omega)} <= ||prod F_j||_{L^{1,1}(ell^1)}."""
    g = np.prod(np.atleast_2d(np.asarray(functions, dtype=float)), axis=0)
    lhs = float(np.abs(g) @ setting.omega)
    S = size if size is not None else ell_r_size(setting, 1.0)
    rhs = lorentz_norm(g, S, 1.0, 1.0)
    return inequality("classical-outer", lhs, rhs, tol=tol)


def log_convexity_check(F, S: SizeFamily, p, r, q, P, eps, tol=DEFAULT_TOL):
    """||F||_{L^{r,q}(S)} <= (P/eps)^{1/q} ||F||_inf^{(r-p)/r} ||F||_{L^{p,inf}}^{p/r}, for r > p."""
    if not r > p:
        raise ExponentError(f"need r > p, got r={r}, p={p}")
    F = np.asarray(F, dtype=float)
    lhs = lorentz_norm(F, S, r, q)
    sup = linf_norm(F, S)
    weak = lorentz_norm(F, S, p, INF)
    rhs = sup ** ((r - p) / r) * weak ** (p / r)
    return inequality("log-convexity", lhs, rhs, C.q_power(P / eps, q), tol=tol, p=p, r=r, q=q)


@dataclass
class TileBookkeeping:
    """Exponents of the multilinear estimate: eps, P, q_j = p_j P, r_j = a' q_j."""

    a: float
    ps: tuple

    def __post_init__(self):
        a, p1 = self.a, self.ps[0]
        if len(self.ps) < 2:
            raise ExponentError("need m >= 2 functions")
        if not (1 < a <= p1 < INF):
            raise ExponentError("need 1 < a <= p_1 < inf")
        if any(not (1 <= p < INF) for p in self.ps[1:]):
            raise ExponentError("need p_j in [1, inf) for j >= 2")
        if not self.eps > 0:
            raise ExponentError(f"eps = sum 1/p_j - 1 must be positive, got {self.eps}")

    @property
    def m(self):
        return len(self.ps)

    @property
    def eps(self):
        return sum(1.0 / p for p in self.ps) - 1.0

    @property
    def P(self):
        return sum(1.0 / p for p in self.ps[1:])

    @property
    def qs(self):
        return [p * self.P for p in self.ps[1:]]

    @property
    def rs(self):
        return [C.conjugate(self.a) * q for q in self.qs]


def tree_ell1(window: TileWindow) -> EllSize:
    """ell^1_omega on the window trees."""
    return EllSize(window.setting, 1.0, collection=window.setting.generator_masks)


def prop_3_9_check(window: TileWindow, functions, a, ps, tol=DEFAULT_TOL):
    """The multilinear bound on a tile window, step by step and composed.

    s = s_j = ell^1 on trees for j >= 2, s_1 = size_{2,*}. The chain steps
    are the classical/outer comparison, outer Hoelder, log-convexity for each
    j >= 2, the weak-norm/X-norm comparison, and the bridge
    ||F_1||_{L^{a,inf}} <= mu(E)^{1/a - 1/p_1} ||F_1||_{L^{p_1,inf}} needed
    because the window measure is not normalized to 1.
    """
    book = TileBookkeeping(float(a), tuple(float(p) for p in ps))
    Fs = [np.asarray(F, dtype=float) for F in functions]
    if len(Fs) != book.m:
        raise ExponentError("one exponent per function")
    setting = window.setting
    s = tree_ell1(window)
    s1 = window.size_2_star
    p1, P, eps = book.ps[0], book.P, book.eps
    prod = np.prod(Fs, axis=0)
    steps = [classical_outer_check(setting, Fs, size=s, tol=tol)]
    inst = HolderInstance(s, [s1] + [s] * (book.m - 1), [a] + book.rs, [INF] + book.qs, Fs)
    steps.append(outer_holder_check(inst, tol=tol))
    for j, (F, pj, qj, rj) in enumerate(zip(Fs[1:], book.ps[1:], book.qs, book.rs), start=2):
        rep = log_convexity_check(F, s, pj, rj, qj, P, eps, tol=tol)
        rep.claim_id = f"log-convexity:{j}"
        steps.append(rep)
    weak_p1 = lorentz_norm(Fs[0], window.s2, p1, INF)
    beta, witness = x_norm(window, Fs[0], p1, INF, a)
    c1 = C.corollary_lower_constant(p1, a)
    steps.append(inequality("weak-vs-x", weak_p1, beta, c1, tol=tol, witness={"A": witness}))
    mu_E = float(setting.mu_table[setting.full])
    bridge = mu_E ** (1.0 / a - 1.0 / p1)
    weak_a = lorentz_norm(Fs[0], window.s2, a, INF)
    steps.append(inequality("bridge", weak_a, weak_p1, bridge, tol=tol))

    lhs = float(np.abs(prod) @ setting.omega)
    maxes = [max(lorentz_norm(F, s, pj, INF), linf_norm(F, s)) for F, pj in zip(Fs[1:], book.ps[1:])]
    rhs = beta * float(np.prod(maxes))
    constant = book.m * math.prod(C.q_power(P / eps, q) for q in book.qs) * c1 * bridge
    composed = inequality("prop-3-9:composed", lhs, rhs, constant, tol=tol)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else INF)
    report = combine("prop-3-9", steps + [composed], a=a, ps=list(book.ps), eps=eps, P=P,
                     assembled_constant=constant, measured_ratio=ratio,
                     stated_normalization=a / (eps * (a - 1.0)))
    report.details["steps"] = {r.claim_id: r.passed for r in steps + [composed]}
    return report
