"""Integer bitmask helpers for subsets of a small finite point set."""

from functools import lru_cache

import numpy as np

MAX_EXACT_POINTS = 20


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_from_indices(indices, n=None) -> int:
    mask = 0
    for i in indices:
        i = int(i)
        if i < 0 or (n is not None and i >= n):
            raise ValueError(f"point index {i} out of range")
        mask |= 1 << i
    return mask


def indices_from_mask(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_from_bool(arr) -> int:
    return mask_from_indices(np.flatnonzero(np.asarray(arr, dtype=bool)))


def bool_from_mask(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=bool)


@lru_cache(maxsize=None)
def subset_matrix(n: int) -> np.ndarray:
    """Row ``m`` is the membership vector of mask ``m``; shape (2**n, n)."""
    masks = np.arange(1 << n, dtype=np.int64)
    out = ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(bool)
    out.setflags(write=False)
    return out


def submasks(mask: int):
    """Yield every submask of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=8)
def submask_groups(n: int):
    """For every mask ``B`` of an ``n``-point set, the array of its submasks.

    Built from the ternary encoding of (Omega, B minus Omega) pairs, so the
    total size is ``3**n``.
    """
    if n > 14:
        raise ValueError("submask tables are capped at 14 points")
    codes = np.arange(3 ** n, dtype=np.int64)
    inner = np.zeros_like(codes)
    outer = np.zeros_like(codes)
    for bit in range(n):
        digit = codes % 3
        codes //= 3
        inner |= (digit == 1).astype(np.int64) << bit
        outer |= (digit >= 1).astype(np.int64) << bit
    order = np.argsort(outer, kind="stable")
    inner = inner[order]
    outer = outer[order]
    starts = np.searchsorted(outer, np.arange((1 << n) + 1))
    groups = tuple(inner[starts[b]:starts[b + 1]] for b in range(1 << n))
    for g in groups:
        g.setflags(write=False)
    return groups
