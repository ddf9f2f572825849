"""Pure NumPy/Python backend for the packed GF(2) kernels.

Same contracts as the compiled extension; the BFS is vectorized over the
frontier, the backtracking counts are plain recursion.  Correct everywhere
the compiled backend is, just slower; the benchmark script compares the
two.
"""

from __future__ import annotations

import numpy as np

_U8 = [np.uint64(8 * k) for k in range(7)]
_FF = np.uint64(0xFF)


def _apply_vec(tabs: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = tabs[0][(v & _FF).astype(np.int64)]
    for k in range(1, 7):
        out = out ^ tabs[k][((v >> _U8[k]) & _FF).astype(np.int64)]
    return out


def _apply_one(tabs: np.ndarray, v: int) -> int:
    acc = 0
    for k in range(7):
        acc ^= int(tabs[k, (v >> (8 * k)) & 0xFF])
    return acc


def orbit_bfs(gen_tables: np.ndarray, start: np.uint64, budget: int):
    orbit = np.array([start], dtype=np.uint64)
    frontier = orbit
    complete = True
    while frontier.size:
        images = [_apply_vec(gen_tables[g], frontier) for g in range(len(gen_tables))]
        new = np.unique(np.concatenate(images))
        pos = np.searchsorted(orbit, new)
        pos[pos == orbit.size] = 0
        fresh = new[orbit[pos] != new]
        if not fresh.size:
            break
        orbit = np.concatenate([orbit, fresh])
        orbit.sort()
        frontier = fresh
        if orbit.size > budget:
            complete = False
            break
    return orbit, complete


def _dfs_eq(tabs: np.ndarray, k: int, v: int, target: int, writable: np.ndarray) -> int:
    w = int(writable[k])
    if (v ^ target) & ~w:
        return 0
    if w == 0:
        return 1 << (len(tabs) - k)
    img = _apply_one(tabs[k], v)
    if img == v:
        return 2 * _dfs_eq(tabs, k + 1, v, target, writable)
    return _dfs_eq(tabs, k + 1, v, target, writable) + _dfs_eq(tabs, k + 1, img, target, writable)


def count_fixers(factor_tables: np.ndarray, start: np.uint64, target: np.uint64,
                 writable: np.ndarray) -> int:
    return _dfs_eq(factor_tables, 0, int(start), int(target), writable)


def _dfs_plain(tabs: np.ndarray, k: int, v: int, target: int) -> int:
    if k == len(tabs):
        return 1 if v == target else 0
    return _dfs_plain(tabs, k + 1, v, target) + _dfs_plain(
        tabs, k + 1, _apply_one(tabs[k], v), target
    )


def count_fixers_plain(factor_tables: np.ndarray, start: np.uint64, target: np.uint64) -> int:
    return _dfs_plain(factor_tables, 0, int(start), int(target))


def _dfs_vanish(tabs: np.ndarray, fidx: np.ndarray, L: int, k: int, v: int,
                mask: int, writable: np.ndarray) -> int:
    w = int(writable[k])
    if v & mask & ~w:
        return 0
    if w & mask == 0:
        return 0 if v & mask else 1 << (L - k)
    img = _apply_one(tabs[fidx[k]], v)
    if img == v:
        return 2 * _dfs_vanish(tabs, fidx, L, k + 1, v, mask, writable)
    return _dfs_vanish(tabs, fidx, L, k + 1, v, mask, writable) + _dfs_vanish(
        tabs, fidx, L, k + 1, img, mask, writable
    )


def count_vanishing(all_tables: np.ndarray, factor_idx: np.ndarray, start: np.uint64,
                    mask: np.uint64, writable: np.ndarray) -> int:
    return _dfs_vanish(all_tables, factor_idx, len(factor_idx), 0, int(start),
                       int(mask), writable)


def _dfs_vanish_plain(tabs, fidx, L, k, v, mask):
    if k == L:
        return 0 if v & mask else 1
    return _dfs_vanish_plain(tabs, fidx, L, k + 1, v, mask) + _dfs_vanish_plain(
        tabs, fidx, L, k + 1, _apply_one(tabs[fidx[k]], v), mask
    )


def count_vanishing_plain(all_tables: np.ndarray, factor_idx: np.ndarray,
                          start: np.uint64, mask: np.uint64) -> int:
    return _dfs_vanish_plain(all_tables, factor_idx, len(factor_idx), 0,
                             int(start), int(mask))
