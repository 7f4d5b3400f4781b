"""Seeded random settings and functions for verification campaigns."""

from __future__ import annotations

import numpy as np

from ._bits import MAX_EXACT_POINTS, full_mask
from .setting import FiniteSetting, SettingError
from .sizes import GRID_VALUES, INF

WEIGHTS = (0.25, 0.5, 1.0, 2.0, 4.0)
EXPONENT_GRID = (1.0, 1.25, 1.5, 2.0, 3.0, INF)
MAX_RETRIES = 100


def _draw_setting(rng, n, max_generators):
    omega = rng.choice(WEIGHTS, size=n)
    # occasional omega-null points exercise the mu-circle and essential sup paths
    omega[rng.random(n) < 0.1] = 0.0
    gens = [(full_mask(n), float(rng.choice(WEIGHTS)))]
    for _ in range(int(rng.integers(0, max_generators))):
        mask = int(rng.integers(1, 1 << n))
        sigma = 0.0 if rng.random() < 0.1 else float(rng.choice(WEIGHTS))
        gens.append((mask, sigma))
    setting = FiniteSetting(points=tuple(f"x{i + 1}" for i in range(n)), omega=omega, generators=tuple(gens))
    if setting.mu_table[setting.full] == 0:
        raise SettingError("every set is mu-null")
    return setting


def random_setting(seed, max_points=6, max_generators=5, rng=None) -> FiniteSetting:
    """Random setting with at most ``max_points`` points and ``max_generators`` generators.

    The full set is always a generator with positive premeasure, so every
    point is covered. Draws violating absolute continuity, or where every
    set is mu-null, are redrawn.
    """
    if not 1 <= max_points <= MAX_EXACT_POINTS:
        raise ValueError(f"max_points must lie in [1, {MAX_EXACT_POINTS}]")
    if max_generators < 1:
        raise ValueError("max_generators must be at least 1")
    rng = np.random.default_rng(seed) if rng is None else rng
    for _ in range(MAX_RETRIES):
        n = int(rng.integers(1, max_points + 1))
        try:
            return _draw_setting(rng, n, max_generators)
        except SettingError:
            continue
    raise RuntimeError("could not draw a valid setting")


def random_function(rng, n, values=GRID_VALUES):
    return rng.choice(np.asarray(values, dtype=float), size=n)


def random_exponent(rng, grid=EXPONENT_GRID, finite=False):
    pool = [x for x in grid if x != INF] if finite else list(grid)
    return float(pool[int(rng.integers(len(pool)))])
