"""Sizes S(f)(A) on a finite setting.

A size is evaluated in batch: ``evaluate(F)`` takes functions stacked along
the last axis (shape ``(..., n)``) and returns values of shape ``(..., k)``,
one per set of the size's index collection.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ._bits import subset_matrix
from .setting import FiniteSetting, sigma_mu

INF = math.inf


class SizeDomainError(ValueError):
    pass


def _check_exponent(r):
    r = float(r)
    if not r > 0:
        raise SizeDomainError(f"size exponent must be positive or infinite, got {r}")
    return r


class SizeFamily:
    """Base class: a size indexed by a finite collection of bitmasks.

    ``norm_collection`` is the subfamily whose supremum already equals the
    outer L-infinity norm; subclasses may shrink it for speed.
    """

    declared_K = 1.0
    label = "size"

    def __init__(self, setting: FiniteSetting, collection):
        self.setting = setting
        coll = np.asarray(list(collection), dtype=np.int64)
        if coll.size == 0:
            raise SizeDomainError("size collection is empty")
        self.collection = coll
        self.membership = subset_matrix(setting.n)[coll]

    @property
    def norm_collection_index(self) -> np.ndarray:
        return np.arange(len(self.collection))

    def evaluate(self, F) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, f, A: int) -> float:
        """S(f)(A) for a single function and collection member A."""
        pos = np.flatnonzero(self.collection == A)
        if pos.size == 0:
            raise SizeDomainError(f"set {A} is not in the collection of {self.label}")
        return float(self.evaluate(np.asarray(f, dtype=float))[pos[0]])

    def linf(self, F) -> np.ndarray:
        """Outer L-infinity norm sup_A S(f)(A), batched over leading axes."""
        vals = self.evaluate_norm_collection(F)
        return vals.max(axis=-1)

    def evaluate_norm_collection(self, F) -> np.ndarray:
        return self.evaluate(F)[..., self.norm_collection_index]

    def __repr__(self):
        return f"<{type(self).__name__} {self.label} on {self.setting.n} points>"


class EllSize(SizeFamily):
    """mu(A)^{-1/r} ||f 1_A||_{L^r(omega)}, or the omega-essential sup for r = inf.

    The default collection is Sigma_mu. For the outer L-infinity norm the
    supremum over Sigma_mu equals the supremum over the positive-measure
    generators (a minimal cover of A by generators T_i gives
    int_A |f|^r <= sum_i mu(T_i) V with sum_i sigma_i = mu(A)), so norms are
    computed over generators only.
    """

    def __init__(self, setting: FiniteSetting, r=1.0, collection=None):
        self.r = _check_exponent(r)
        if collection is None:
            collection = sigma_mu(setting)
            self._full_sigma_mu = True
        else:
            self._full_sigma_mu = False
        super().__init__(setting, collection)
        mu = setting.mu_table[self.collection]
        if np.any(mu <= 0):
            raise SizeDomainError("ell^r sizes need mu(A) > 0 on every collection member")
        self.mu = mu
        self.declared_K = _power_split(self.r)
        self.weighted = self.membership * setting.omega  # (k, n)
        self.ess_members = self.membership & (setting.omega > 0)
        self.label = f"ell:{'inf' if self.r == INF else _fmt(self.r)}"
        if self._full_sigma_mu:
            gens = {m for m, _ in setting.generators if setting.mu_table[m] > 0}
            self._norm_idx = np.flatnonzero(np.isin(self.collection, sorted(gens)))
        else:
            self._norm_idx = np.arange(len(self.collection))

    @property
    def norm_collection_index(self):
        return self._norm_idx

    def evaluate(self, F):
        return _ell_eval(np.abs(np.asarray(F, dtype=float)), self.r, self.weighted, self.ess_members, self.mu)

    def evaluate_norm_collection(self, F):
        i = self._norm_idx
        return _ell_eval(np.abs(np.asarray(F, dtype=float)), self.r, self.weighted[i], self.ess_members[i], self.mu[i])


def _ell_eval(absF, r, weighted, ess_members, mu):
    if r == INF:
        return np.where(ess_members, absF[..., None, :], 0.0).max(axis=-1)
    if r == 1.0:
        return (absF @ weighted.T) / mu
    return ((absF ** r) @ weighted.T / mu) ** (1.0 / r)


class LiftedSize(SizeFamily):
    """S_r(f)(A) = S(|f|^r)(A)^{1/r}; for r = inf the omega-essential sup on A."""

    def __init__(self, base: SizeFamily, r):
        self.r = _check_exponent(r)
        self.base = base
        super().__init__(base.setting, base.collection)
        self.ess_members = self.membership & (self.setting.omega > 0)
        self.declared_K = _power_split(self.r) * (1.0 if self.r == INF else base.declared_K ** (1.0 / self.r))
        self.label = f"lift:{base.label}:{'inf' if self.r == INF else _fmt(self.r)}"

    @property
    def norm_collection_index(self):
        return self.base.norm_collection_index

    def evaluate(self, F):
        absF = np.abs(np.asarray(F, dtype=float))
        if self.r == INF:
            return np.where(self.ess_members, absF[..., None, :], 0.0).max(axis=-1)
        if self.r == 1.0:
            return self.base.evaluate(absF)
        return self.base.evaluate(absF ** self.r) ** (1.0 / self.r)

    def evaluate_norm_collection(self, F):
        absF = np.abs(np.asarray(F, dtype=float))
        if self.r == INF:
            ess = self.ess_members[self.norm_collection_index]
            return np.where(ess, absF[..., None, :], 0.0).max(axis=-1)
        if self.r == 1.0:
            return self.base.evaluate_norm_collection(absF)
        return self.base.evaluate_norm_collection(absF ** self.r) ** (1.0 / self.r)


def _power_split(r):
    """(a + b)^{1/r} <= max(1, 2^{1/r - 1}) (a^{1/r} + b^{1/r})."""
    return 1.0 if r == INF or r >= 1 else 2.0 ** (1.0 / r - 1.0)


def _fmt(x):
    return f"{x:g}"


def ell_r_size(setting: FiniteSetting, r=1.0, collection=None) -> EllSize:
    return EllSize(setting, r, collection)


def lift_size(S: SizeFamily, r) -> SizeFamily:
    r = _check_exponent(r)
    if r == 1.0:
        return S
    return LiftedSize(S, r)


def split_ratios(S: SizeFamily, F) -> np.ndarray:
    """S(f)(A) / (S(f 1_B)(A) + S(f 1_{B^c})(A)) for every f, B, A.

    Shape ``(len(F), 2**n, k)``; 0/0 counts as 1.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    bits = subset_matrix(S.setting.n)
    whole = S.evaluate(F)[:, None, :]
    inside = S.evaluate(F[:, None, :] * bits[None, :, :])
    outside = S.evaluate(F[:, None, :] * ~bits[None, :, :])
    denom = inside + outside
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(denom > 0, whole / denom, np.where(whole > 0, np.inf, 1.0))
    return ratio


def estimate_split_constant(S: SizeFamily, sample_functions, chunk=256) -> float:
    """Largest observed support-splitting ratio over the samples."""
    F = np.atleast_2d(np.asarray(sample_functions, dtype=float))
    if F.shape[0] == 0:
        raise ValueError("need at least one sample function")
    worst = 0.0
    for start in range(0, F.shape[0], chunk):
        worst = max(worst, float(split_ratios(S, F[start:start + chunk]).max()))
    return worst


GRID_VALUES = (0.0, 0.5, 1.0, 2.0)


def function_grid(n: int, values=GRID_VALUES, rng=None, max_exhaustive_points=4, draws=10_000):
    """Exhaustive value grid on small settings, seeded uniform draws otherwise."""
    if n <= max_exhaustive_points:
        return np.array(list(itertools.product(values, repeat=n)), dtype=float).reshape(-1, n)
    rng = np.random.default_rng(0) if rng is None else rng
    return rng.choice(np.asarray(values, dtype=float), size=(draws, n))


def check_k_support(S: SizeFamily, F, K=None, tol=1e-9):
    """Report on S(f)(A) <= K [S(f 1_B)(A) + S(f 1_{B^c})(A)] over all f in F, B, A."""
    from .reports import inequality

    K = S.declared_K if K is None else K
    F = np.atleast_2d(np.asarray(F, dtype=float))
    ratios = split_ratios(S, F)
    fi, B, ai = np.unravel_index(int(np.argmax(ratios)), ratios.shape)
    bits = subset_matrix(S.setting.n)
    f = F[fi]
    lhs = S.evaluate(f)[ai]
    rhs = S.evaluate(f * bits[B])[ai] + S.evaluate(f * ~bits[B])[ai]
    return inequality("k-support", lhs, rhs, K, tol=tol,
                      witness={"f": f.tolist(), "A": int(S.collection[ai]), "B": int(B)},
                      size=S.label, max_ratio=float(ratios.max()))


def check_eq_new(S: SizeFamily, F, tol=1e-9):
    """Report on S(f)(A) mu(A) <= ||f||_inf mu(B) + ||f 1_{A minus B}||_inf mu(A).

    Exhaustive over f in F, A in the collection and every mask B.
    """
    from .reports import inequality

    F = np.atleast_2d(np.asarray(F, dtype=float))
    setting = S.setting
    n = setting.n
    bits = subset_matrix(n)
    masks = np.arange(1 << n, dtype=np.int64)
    mu_all = setting.mu_table
    norms = S.linf(F)
    tables = S.linf(F[:, None, :] * bits[None, :, :])  # (len F, 2^n)
    vals = S.evaluate(F)  # (len F, k)
    worst = None
    for ai, A in enumerate(S.collection):
        muA = mu_all[A]
        lhs = vals[:, ai] * muA
        rhs = norms[:, None] * mu_all[None, :] + tables[:, A & ~masks] * muA
        scale = np.maximum(np.maximum(np.abs(lhs)[:, None], np.abs(rhs)), 1e-300)
        margin = (rhs - lhs[:, None]) / scale
        fi, B = np.unravel_index(int(np.argmin(margin)), margin.shape)
        if worst is None or margin[fi, B] < worst[0]:
            worst = (margin[fi, B], fi, int(A), int(B), lhs[fi], rhs[fi, B])
    _, fi, A, B, lhs, rhs = worst
    return inequality("eq-new", lhs, rhs, tol=tol, witness={"f": F[fi].tolist(), "A": A, "B": B},
                      size=S.label)
