"""Finite sigma-finite settings (X, mu, omega).

Points are indexed ``0..n-1`` and subsets are integer bitmasks. The outer
measure is generated by minimal coverings with a finite generator family,
and is tabulated exactly for every subset on construction.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from ._bits import (
    MAX_EXACT_POINTS,
    full_mask,
    indices_from_mask,
    mask_from_indices,
    subset_matrix,
    submasks,
)


class SettingError(ValueError):
    """A FiniteSetting invariant is violated."""


class FamilyDomainError(ValueError):
    """A relative family was requested for a set outside Sigma_mu."""


@dataclass(frozen=True)
class FiniteSetting:
    points: tuple
    omega: np.ndarray
    generators: tuple  # ((mask, sigma), ...)
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "points", tuple(str(p) for p in self.points))
        gens = tuple((int(m), float(s)) for m, s in self.generators)
        object.__setattr__(self, "generators", gens)
        validate_setting(self)

    @classmethod
    def from_lists(cls, omega, generators, points=None):
        """Build from per-point weights and ``(member_indices, sigma)`` pairs."""
        n = len(omega)
        if points is None:
            points = [f"x{i + 1}" for i in range(n)]
        gens = [(mask_from_indices(members, n), sigma) for members, sigma in generators]
        return cls(points=tuple(points), omega=np.asarray(omega, dtype=float), generators=tuple(gens))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return full_mask(self.n)

    @property
    def generator_masks(self) -> np.ndarray:
        return np.array([m for m, _ in self.generators], dtype=np.int64)

    @property
    def premeasures(self) -> np.ndarray:
        return np.array([s for _, s in self.generators], dtype=float)

    def mask(self, members) -> int:
        """Bitmask for point indices or point names."""
        idx = []
        for m in members:
            idx.append(self.points.index(m) if isinstance(m, str) else int(m))
        return mask_from_indices(idx, self.n)

    @cached_property
    def omega_table(self) -> np.ndarray:
        """omega(A) for every mask A."""
        table = subset_matrix(self.n) @ self.omega
        table.setflags(write=False)
        return table

    @cached_property
    def mu_table(self) -> np.ndarray:
        """Exact covering outer measure mu(A) for every mask A.

        Union-knapsack over generators gives the cheapest subfamily with a
        given union; a superset-minimum transform then gives the cheapest
        subfamily whose union contains A.
        """
        size = 1 << self.n
        best_union = np.full(size, np.inf)
        best_union[0] = 0.0
        idx = np.arange(size, dtype=np.int64)
        for gmask, sigma in self.generators:
            cand = best_union + sigma
            nxt = best_union.copy()
            np.minimum.at(nxt, idx | gmask, cand)
            best_union = nxt
        table = best_union
        for bit in range(self.n):
            without = idx[(idx >> bit) & 1 == 0]
            table[without] = np.minimum(table[without], table[without | (1 << bit)])
        table.setflags(write=False)
        return table

    @cached_property
    def omega_support(self) -> int:
        return mask_from_indices(np.flatnonzero(self.omega > 0))

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "omega": [float(w) for w in self.omega],
            "generators": [
                {"members": indices_from_mask(m), "sigma": s} for m, s in self.generators
            ],
        }

    def __hash__(self):
        return hash((self.points, tuple(self.omega.tolist()), self.generators))

    def __eq__(self, other):
        if not isinstance(other, FiniteSetting):
            return NotImplemented
        return (
            self.points == other.points
            and np.array_equal(self.omega, other.omega)
            and self.generators == other.generators
        )


def validate_setting(setting: FiniteSetting) -> None:
    n = setting.n
    if n == 0:
        raise SettingError("setting has no points")
    if n > MAX_EXACT_POINTS:
        raise SettingError(f"exact mode is capped at {MAX_EXACT_POINTS} points, got {n}")
    if setting.omega.shape != (n,):
        raise SettingError("omega must have one weight per point")
    if not np.all(np.isfinite(setting.omega)) or np.any(setting.omega < 0):
        raise SettingError("omega weights must be finite and nonnegative")
    covered = 0
    for gmask, sigma in setting.generators:
        if gmask <= 0 or gmask > full_mask(n):
            raise SettingError(f"generator mask {gmask} is empty or out of range")
        if not math.isfinite(sigma) or sigma < 0:
            raise SettingError("premeasures must be finite and nonnegative")
        covered |= gmask
    if covered != full_mask(n):
        raise SettingError("generators do not cover every point")
    # mu(A) = 0 forces mu({x}) = 0 for x in A, so checking singletons suffices.
    for i in range(n):
        if setting.mu_table[1 << i] == 0 and setting.omega[i] != 0:
            raise SettingError(
                f"absolute continuity fails at point {setting.points[i]!r}: mu-null but omega > 0"
            )


def omega_measure(setting: FiniteSetting, A: int) -> float:
    return float(setting.omega_table[A])


def outer_measure(setting: FiniteSetting, A: int) -> float:
    return float(setting.mu_table[A])


def minimal_cover(setting: FiniteSetting, A: int) -> list:
    """Generator indices of a minimal cover of A.

    Among optimal covers the lexicographically smallest index list is
    returned.
    """
    target = setting.mu_table[A]
    best = None
    gens = setting.generators
    for k in range(len(gens) + 1):
        for combo in itertools.combinations(range(len(gens)), k):
            union = 0
            cost = 0.0
            for g in combo:
                union |= gens[g][0]
                cost += gens[g][1]
            if union & A == A and math.isclose(cost, target, rel_tol=1e-12, abs_tol=1e-15):
                if best is None or list(combo) < best:
                    best = list(combo)
        if best is not None and len(gens) > 16:
            break
    return best if best is not None else []


def outer_measure_bruteforce(setting: FiniteSetting, A: int) -> float:
    """Independent oracle: minimum over all generator subfamilies covering A."""
    best = math.inf if A else 0.0
    gens = setting.generators
    for k in range(1, len(gens) + 1):
        for combo in itertools.combinations(gens, k):
            union = 0
            for m, _ in combo:
                union |= m
            if union & A == A:
                best = min(best, sum(s for _, s in combo))
    return best


def mu_circle(setting: FiniteSetting, A: int) -> float:
    """Smallest outer measure of a subset of A carrying all of A's omega-mass.

    Any such subset contains the omega-support of A, so by monotonicity the
    minimum is attained at that support.
    """
    return float(setting.mu_table[A & setting.omega_support])


def mu_circle_bruteforce(setting: FiniteSetting, A: int) -> float:
    best = math.inf
    for B in submasks(A):
        if setting.omega_table[A & ~B] == 0:
            best = min(best, setting.mu_table[B])
    return float(best)


def sigma_mu(setting: FiniteSetting) -> list:
    mu = setting.mu_table
    return [A for A in range(1 << setting.n) if 0 < mu[A] < math.inf]


def _require_sigma_mu(setting, A):
    if not 0 < setting.mu_table[A] < math.inf:
        raise FamilyDomainError(f"subset {A} is not in Sigma_mu (mu = {setting.mu_table[A]})")


def sigma_prime(setting: FiniteSetting, A: int) -> list:
    """B subset of A with mu(A \\ B) <= mu(A) / 2."""
    _require_sigma_mu(setting, A)
    mu = setting.mu_table
    half = mu[A] / 2
    return sorted(B for B in submasks(A) if mu[A & ~B] <= half)


def sigma_double_prime(setting: FiniteSetting, A: int) -> list:
    """B subset of A with mu(B) >= mu(A) / 2."""
    _require_sigma_mu(setting, A)
    mu = setting.mu_table
    half = mu[A] / 2
    return sorted(B for B in submasks(A) if mu[B] >= half)


def sigma_circle(setting: FiniteSetting, A: int) -> list:
    """B subset of A with omega(A \\ B) = 0."""
    _require_sigma_mu(setting, A)
    om = setting.omega_table
    return sorted(B for B in submasks(A) if om[A & ~B] == 0)


FAMILIES = {
    "Sigma_mu": None,
    "Sigma_prime": sigma_prime,
    "Sigma_double_prime": sigma_double_prime,
    "Sigma_circle": sigma_circle,
}


def enumerate_family(setting: FiniteSetting, kind: str, A: int | None = None) -> list:
    if kind == "Sigma_mu":
        return sigma_mu(setting)
    try:
        fn = FAMILIES[kind]
    except KeyError:
        raise ValueError(f"unknown family {kind!r}") from None
    if A is None:
        raise FamilyDomainError(f"{kind} needs a base set A")
    return fn(setting, A)


def setting_from_json(data) -> FiniteSetting:
    """Load ``{"points", "omega", "generators": [{"members", "sigma"}]}``."""
    if isinstance(data, (str, Path)):
        data = json.loads(Path(data).read_text())
    try:
        omega = data["omega"]
        gens = [(g["members"], g["sigma"]) for g in data["generators"]]
    except (KeyError, TypeError) as exc:
        raise SettingError(f"malformed setting JSON: {exc}") from exc
    points = data.get("points") or None
    if points is not None and len(points) != len(omega):
        raise SettingError("points and omega lengths differ")
    return FiniteSetting.from_lists(omega, gens, points=points)


def setting3(omega: Sequence[float] = (1.0, 1.0, 1.0)) -> FiniteSetting:
    """Three points, generators {x1,x2}:1, {x2,x3}:1, X:1.5."""
    return FiniteSetting.from_lists(omega, [([0, 1], 1.0), ([1, 2], 1.0), ([0, 1, 2], 1.5)])
