"""Dyadic Heisenberg tiles, trees of 2^kappa-tiles and lacunary sizes.

All lattice predicates use integer shifts: ``m >> k`` is floor division by
2^k for negative m as well, so no floating point enters the geometry.

A ``TileWindow`` keeps the tiles H(m,n,l) below a base interval J = D(M,L)
with scales in [l_min, L] and frequency interval inside (-fmax, fmax]. Its
generators are the trees with top D(M',L') inside J, restricted to the
window. This loses nothing: a tree whose top contains J restricts to the
same tiles as the tree with top J and the dyadic ancestor frequency, at a
smaller premeasure, and a tree whose top misses J restricts to nothing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from . import constants as C
from ._bits import MAX_EXACT_POINTS, indices_from_mask, submasks
from .characterize import charfun_sup
from .lorentz import linf_norm, lorentz_norm
from .reports import DEFAULT_TOL, IDENTITY_TOL, combine, identity, inequality
from .setting import FiniteSetting
from .sizes import INF, EllSize, SizeFamily, lift_size

LACUNARY_CAP = 12


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """D(m, l) = (2^l m, 2^l (m+1)]."""

    m: int
    l: int

    def contains(self, other: "DyadicInterval") -> bool:
        return other.l <= self.l and (other.m >> (self.l - other.l)) == self.m

    def disjoint(self, other: "DyadicInterval") -> bool:
        return not (self.contains(other) or other.contains(self))

    @property
    def endpoints(self):
        step = Fraction(2) ** self.l
        return step * self.m, step * (self.m + 1)

    @property
    def length(self) -> Fraction:
        return Fraction(2) ** self.l


@dataclass(frozen=True, order=True)
class HeisenbergTile:
    """H(m, n, l) = D(m, l) x D(n, -l)."""

    m: int
    n: int
    l: int

    @property
    def spatial(self) -> DyadicInterval:
        return DyadicInterval(self.m, self.l)

    @property
    def frequency(self) -> DyadicInterval:
        return DyadicInterval(self.n, -self.l)

    @property
    def weight(self) -> float:
        return 2.0 ** self.l

    def __str__(self):
        return f"H({self.m},{self.n},{self.l})"


def tree_membership(tile: HeisenbergTile, top, kappa: int) -> bool:
    """H(m,n,l) in T_kappa(M,N,L): D(m,l) in D(M,L) and D(N,-L) in D(floor(n/2^kappa), kappa-l)."""
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    M, N, L = top
    if not DyadicInterval(M, L).contains(tile.spatial):
        return False
    return DyadicInterval(tile.n >> kappa, kappa - tile.l).contains(DyadicInterval(N, -L))


def stripe_membership(tile: HeisenbergTile, M: int, L: int) -> bool:
    """H(m,n,l) in E(M,L): D(M,L) in D(m,l)."""
    return tile.spatial.contains(DyadicInterval(M, L))


def frequency_compatible(t1: HeisenbergTile, t2: HeisenbergTile) -> bool:
    """Frequency intervals equal or disjoint."""
    a, b = t1.frequency, t2.frequency
    return a == b or a.disjoint(b)


def _frequency_range(l, fmax):
    """Indices n with D(n,-l) inside (-fmax, fmax]."""
    scale = Fraction(2) ** l * fmax
    lo = math.ceil(-scale)
    hi = math.floor(scale) - 1
    return range(lo, hi + 1)


class TileWindow:
    """Finite window of the tile setting (X_kappa, mu_kappa, omega_kappa)."""

    def __init__(self, J=(0, 0), l_min=0, fmax=1, kappa=0, lacunary_cap=LACUNARY_CAP,
                 max_tiles=MAX_EXACT_POINTS):
        M, L = (int(J[0]), int(J[1]))
        if l_min > L:
            raise ValueError("l_min must not exceed the scale of J")
        if kappa < 0:
            raise ValueError("kappa must be nonnegative")
        self.J = DyadicInterval(M, L)
        self.l_min = int(l_min)
        self.fmax = fmax
        self.kappa = int(kappa)
        self.lacunary_cap = lacunary_cap
        tiles = []
        for l in range(L, self.l_min - 1, -1):
            for m in range(M << (L - l), (M + 1) << (L - l)):
                for n in _frequency_range(l, fmax):
                    tiles.append(HeisenbergTile(m, n, l))
        if not tiles:
            raise ValueError("window contains no tiles")
        if len(tiles) > max_tiles:
            raise ValueError(f"window has {len(tiles)} tiles; exact mode allows at most {max_tiles}")
        self.tiles = tiles
        self.index = {t: i for i, t in enumerate(tiles)}
        self.tops, gens = self._generators()
        self.setting = FiniteSetting(
            points=tuple(str(t) for t in tiles),
            omega=np.array([t.weight for t in tiles]),
            generators=tuple(gens),
        )

    @property
    def n(self) -> int:
        return len(self.tiles)

    def _generators(self):
        """Distinct window restrictions of trees with top inside J."""
        k = self.kappa
        seen = {}
        for Lp in range(self.J.l, self.l_min - 1, -1):
            for Mp in range(self.J.m << (self.J.l - Lp), (self.J.m + 1) << (self.J.l - Lp)):
                top_int = DyadicInterval(Mp, Lp)
                # membership depends on N only through N >> kappa
                coarse = set()
                for t in self.tiles:
                    if t.l <= Lp and top_int.contains(t.spatial):
                        base = (t.n >> k) << (Lp - t.l)
                        coarse.update(range(base, base + (1 << (Lp - t.l))))
                for Nc in sorted(coarse):
                    top = (Mp, Nc << k, Lp)
                    mask = 0
                    for i, t in enumerate(self.tiles):
                        if tree_membership(t, top, k):
                            mask |= 1 << i
                    if mask and mask not in seen:
                        seen[mask] = top
        tops = [seen[m] for m in seen]
        gens = [(m, 2.0 ** top[2]) for m, top in seen.items()]
        return tops, gens

    def tile_mask(self, tiles) -> int:
        mask = 0
        for t in tiles:
            if not isinstance(t, HeisenbergTile):
                t = HeisenbergTile(*t)
            mask |= 1 << self.index[t]
        return mask

    def tiles_of(self, mask: int) -> list:
        return [self.tiles[i] for i in indices_from_mask(mask)]

    def mu_kappa(self, A) -> float:
        if not isinstance(A, (int, np.integer)):
            A = self.tile_mask(A)
        return float(self.setting.mu_table[A])

    @cached_property
    def compat_masks(self) -> np.ndarray:
        """For each tile, the mask of tiles it is frequency-compatible with."""
        out = np.zeros(self.n, dtype=np.int64)
        for i, t in enumerate(self.tiles):
            for j, u in enumerate(self.tiles):
                if frequency_compatible(t, u):
                    out[i] |= 1 << j
        return out

    def is_lacunary(self, mask: int) -> bool:
        if mask == 0:
            return False
        inside_tree = any(mask & ~g == 0 for g, _ in self.setting.generators)
        return inside_tree and all(mask & ~int(self.compat_masks[i]) == 0 for i in indices_from_mask(mask))

    @cached_property
    def lacunary_trees(self) -> np.ndarray:
        """Every nonempty lacunary tree in the window, as sorted masks."""
        found = set()
        compat = self.compat_masks
        for g, _ in self.setting.generators:
            members = indices_from_mask(g)
            if len(members) > self.lacunary_cap:
                raise ValueError(
                    f"a window tree has {len(members)} tiles; lacunary enumeration is capped at {self.lacunary_cap}"
                )
            subs = np.fromiter(submasks(g), dtype=np.int64)
            ok = subs != 0
            for i in members:
                has_i = (subs >> i) & 1 == 1
                ok &= ~has_i | (subs & ~compat[i] == 0)
            found.update(int(s) for s in subs[ok])
        return np.array(sorted(found), dtype=np.int64)

    @cached_property
    def lacunary_size(self) -> EllSize:
        """S_{kappa,lac}: omega-mass over mu_kappa of the lacunary tree."""
        size = EllSize(self.setting, 1.0, collection=self.lacunary_trees)
        size.label = "lacunary"
        return size

    def s_r(self, r) -> SizeFamily:
        return lift_size(self.lacunary_size, r)

    @cached_property
    def s2(self) -> SizeFamily:
        return self.s_r(2.0)

    @cached_property
    def size_2_star(self) -> "Size2Star":
        return Size2Star(self)

    def function_from_json(self, data) -> np.ndarray:
        """Tile function from a list of {m, n, l, value}; absent tiles are 0."""
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        F = np.zeros(self.n)
        for entry in data:
            t = HeisenbergTile(int(entry["m"]), int(entry["n"]), int(entry["l"]))
            if t not in self.index:
                raise ValueError(f"{t} is outside the window")
            F[self.index[t]] = float(entry["value"])
        return F

    def function_to_json(self, F) -> list:
        return [{"m": t.m, "n": t.n, "l": t.l, "value": float(v)} for t, v in zip(self.tiles, F)]

    def to_json(self) -> dict:
        return {
            "J": [self.J.m, self.J.l],
            "l_min": self.l_min,
            "fmax": self.fmax,
            "kappa": self.kappa,
            "tiles": [[t.m, t.n, t.l] for t in self.tiles],
            "tree_tops": [list(t) for t in self.tops],
        }

    def __repr__(self):
        return f"<TileWindow J=D({self.J.m},{self.J.l}) l_min={self.l_min} fmax={self.fmax} kappa={self.kappa} tiles={self.n}>"


class Size2Star(SizeFamily):
    """size_{2,*}(F)(T) = ||F 1_T||_{L^inf(S^2)} on the window trees."""

    label = "size2star"

    def __init__(self, window: TileWindow):
        self.window = window
        super().__init__(window.setting, window.setting.generator_masks)
        self.s2 = window.s2

    def evaluate(self, F):
        F = np.abs(np.asarray(F, dtype=float))
        out = np.empty(F.shape[:-1] + (len(self.collection),))
        for j, row in enumerate(self.membership):
            out[..., j] = self.s2.linf(F * row)
        return out


def lacunary_size(window: TileWindow, f, T: int) -> float:
    if window.setting.mu_table[T] == 0:
        raise ValueError("lacunary tree has zero outer measure")
    if not window.is_lacunary(T):
        raise ValueError(f"mask {T} is not a lacunary tree of the window")
    return window.lacunary_size(f, T)


def size_2_star(window: TileWindow, F, T) -> float:
    """size_{2,*}(F)(T) for a tree given by its top (M, N, L) or its window mask."""
    if isinstance(T, tuple):
        T = window.tile_mask(t for t in window.tiles if tree_membership(t, T, window.kappa))
    row = ((T >> np.arange(window.n)) & 1).astype(bool)
    return float(window.s2.linf(np.asarray(F, dtype=float) * row))


def x_norm(window: TileWindow, F, p, q, a):
    """sup over A of mu_kappa(A)^{1/p - 1/a} ||F 1_A||_{L^{a,q}(size_{2,*})}; returns (value, A)."""
    if not p >= a >= 1:
        raise ValueError("need p >= a >= 1")
    F = np.asarray(F, dtype=float)
    if not F.any():
        return 0.0, 0
    return charfun_sup(F, window.size_2_star, p, a, q)


def verify_corollary(window: TileWindow, F, p, q, a, tol=DEFAULT_TOL):
    """alpha = ||F||_{L^{p,inf}(S^2)} against beta = ||F||_{X^{p,q}_a}, plus the L^inf size identity."""
    if not p > a >= 1:
        raise ValueError("need p > a >= 1")
    F = np.asarray(F, dtype=float)
    alpha = lorentz_norm(F, window.s2, p, INF) if F.any() else 0.0
    beta, witness = x_norm(window, F, p, q, a)
    c1 = C.corollary_lower_constant(p, a)
    c2 = C.corollary_upper_constant(p, q, a)
    parts = [
        inequality("corollary:alpha", alpha, beta, c1, tol=tol, witness={"A": witness}),
        inequality("corollary:beta", beta, alpha, c2, tol=tol, witness={"A": witness}),
        identity("corollary:linf", linf_norm(F, window.s2), linf_norm(F, window.size_2_star), tol=IDENTITY_TOL),
    ]
    return combine("corollary", parts, p=p, q=q, a=a, alpha=alpha, beta=beta)


# Window shapes with at most 12 tiles, as (L, l_min, fmax).
SMALL_SHAPES = ((0, 0, 2), (0, 0, 4), (0, 0, 6), (1, 1, 2), (0, -1, 1), (0, -1, 2),
                (0, -1, 3), (1, 0, 1), (1, -1, 1), (2, 1, 1), (1, 0, 2))


def random_window(rng, max_tiles=12, max_kappa=2) -> TileWindow:
    shapes = [s for s in SMALL_SHAPES if _shape_size(*s) <= max_tiles]
    L, l_min, fmax = shapes[int(rng.integers(len(shapes)))]
    M = int(rng.integers(-2, 3))
    kappa = int(rng.integers(0, max_kappa + 1))
    return TileWindow((M, L), l_min, fmax, kappa)


def _shape_size(L, l_min, fmax):
    return sum((1 << (L - l)) * len(_frequency_range(l, fmax)) for l in range(l_min, L + 1))
