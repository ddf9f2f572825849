"""Packed GF(2) kernels: orbit BFS, stabilizer backtracking, cell counts.

Over GF(2) a vector of V packs into one 64-bit word using the basis order
documented in chevalley (48 root bits, then h_3, h_4, hbar_1, hbar_2).
Every generator acts linearly, so a generator is a 52-column bit matrix;
applying it is seven byte-table lookups xored together.

The heavy loops live in the compiled extension (_ckernels, Cython) with a
pure NumPy/Python fallback (_pykernels) selected at import time.  Both
backends expose the same three entry points:

    orbit_bfs(gen_tables, start, budget)      -> (states ndarray, complete)
    count_fixers(factor_tables, start, target, writable) -> int
    count_vanishing(factor_tables, start, mask, writable) -> int

count_fixers counts parameter assignments (t_1..t_L) in GF(2)^L whose
product of factors fixes `target` starting from `start`; count_vanishing
counts assignments whose product kills every coordinate in `mask`.  The
`writable` array gives, per depth, an upper bound on the coordinates the
remaining factors can still touch; anything outside it is settled and is
checked early, which is what makes the backtracking feasible.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from .chevalley import DIM, ChevalleyModule, build_module
from .gf2k import field

if os.environ.get("F4EXOTIC_PURE_PYTHON"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

MASK52 = (1 << DIM) - 1


def pack(coords: list[int]) -> int:
    """GF(2) coordinate list -> packed word."""
    acc = 0
    for i, c in enumerate(coords):
        if c & 1:
            acc |= 1 << i
    return acc


def unpack(word: int) -> list[int]:
    return [(word >> i) & 1 for i in range(DIM)]


def matrix_columns(M: ChevalleyModule, images: list[list[int]]) -> np.ndarray:
    return np.array([pack(v) for v in images], dtype=np.uint64)


def byte_tables(columns: np.ndarray) -> np.ndarray:
    """(7, 256) lookup tables for a 52-bit linear map given by its
    basis-vector images."""
    tabs = np.zeros((7, 256), dtype=np.uint64)
    cols = [int(c) for c in columns]
    for k in range(7):
        for b in range(256):
            acc = 0
            bb = b
            j = 0
            while bb:
                if bb & 1:
                    idx = 8 * k + j
                    if idx < DIM:
                        acc ^= cols[idx]
                bb >>= 1
                j += 1
            tabs[k, b] = acc
    return tabs


def apply_tables(tabs: np.ndarray, v: int) -> int:
    acc = 0
    for k in range(7):
        acc ^= int(tabs[k, (v >> (8 * k)) & 0xFF])
    return acc


@lru_cache(maxsize=None)
def root_gen_tables(a: int) -> np.ndarray:
    """Byte tables of x_alpha(1) over GF(2) for root index a."""
    M = build_module()
    F = field(1)
    cols = [pack(M.apply_root_element(F, a, 1, M.basis_vector(i))) for i in range(DIM)]
    return byte_tables(np.array(cols, dtype=np.uint64))


@lru_cache(maxsize=None)
def lift_gen_tables(i: int) -> np.ndarray:
    """Byte tables of the Weyl lift s_i-dot over GF(2)."""
    M = build_module()
    F = field(1)
    cols = [pack(M.apply_simple_lift(F, i, M.basis_vector(b))) for b in range(DIM)]
    return byte_tables(np.array(cols, dtype=np.uint64))


def full_group_gen_tables() -> np.ndarray:
    """Generators of F4(F_2) acting on packed V: x_{+-alpha_i}(1) for the
    four simple roots plus the four Weyl lifts."""
    M = build_module()
    rs = M.rs
    gens = []
    for i in range(4):
        a = rs.simple_indices[i]
        gens.append(root_gen_tables(a))
        gens.append(root_gen_tables(rs.negate[a]))
    for i in range(1, 5):
        gens.append(lift_gen_tables(i))
    return np.stack(gens)


def borel_gen_tables() -> np.ndarray:
    """Generators of B(F_2) = U(F_2): one root element per negative root."""
    return np.stack([root_gen_tables(a) for a in range(24)])


# ----------------------------------------------------------------------
# writable-coordinate bounds for the backtracking searches

def _writes(M: ChevalleyModule, a: int, support: int) -> int:
    """Bits an x_alpha(t) factor can touch when the input support is
    bounded by `support` (a 52-bit mask)."""
    pl = M.plans[a]
    out = 0
    for s, d in pl.t_edges:
        if support >> s & 1:
            out |= 1 << d
    for s, d in pl.t2_edges:
        if support >> s & 1:
            out |= 1 << d
    if support >> pl.neg_idx & 1:
        out |= 1 << pl.idx
        for h in pl.h_targets:
            out |= 1 << h
    for h in pl.v0_sources:
        if support >> h & 1:
            out |= 1 << pl.idx
    return out


def writable_bounds(factors: list[int], start: int) -> np.ndarray:
    """writable[k] = coordinates factors k..L-1 can still change, given
    that factors 0..k-1 already acted on `start`.  Conservative (support
    closures ignore parameter values), which is all the pruning needs."""
    M = build_module()
    L = len(factors)
    # forward support closure
    supp = [0] * (L + 1)
    supp[0] = start
    for k in range(L):
        supp[k + 1] = supp[k] | _writes(M, factors[k], supp[k])
    writable = np.zeros(L + 1, dtype=np.uint64)
    for k in range(L):
        cur = supp[k]
        acc = 0
        for j in range(k, L):
            w = _writes(M, factors[j], cur)
            acc |= w
            cur |= w
        writable[k] = acc
    writable[L] = 0
    return writable


def writable_index_sets(factors: list[int] | tuple[int, ...], start_mask: int) -> list[set[int]]:
    """writable_bounds as index sets, for the generic-field searches."""
    masks = writable_bounds(list(factors), start_mask)
    return [{i for i in range(DIM) if int(m) >> i & 1} for m in masks]


def support_closure(start: int) -> int:
    """Everything the support of `start` can ever reach under products of
    negative root elements (a superset of the support of any U-translate)."""
    M = build_module()
    S = start
    while True:
        nxt = S
        for a in range(24):
            nxt |= _writes(M, a, nxt)
        if nxt == S:
            return S
        S = nxt


def per_root_write_masks(closure: int) -> list[int]:
    """For each negative root factor, the coordinates it can touch when the
    input support is bounded by `closure`."""
    M = build_module()
    return [_writes(M, a, closure) for a in range(24)]


def suffix_writable(factors: list[int] | tuple[int, ...],
                    write_masks: list[int]) -> np.ndarray:
    """writable[k] = union of the write masks of factors k..L-1; the cheap
    per-cell variant of writable_bounds (same contract, coarser bound)."""
    L = len(factors)
    out = np.zeros(L + 1, dtype=np.uint64)
    acc = 0
    for k in range(L - 1, -1, -1):
        acc |= write_masks[factors[k]]
        out[k] = acc
    return out


# ----------------------------------------------------------------------
# backend dispatch

def orbit_bfs(gen_tables: np.ndarray, start: int, budget: int) -> tuple[np.ndarray, bool]:
    """Closure of `start` under the given generators; returns the sorted
    state array and whether it is complete within `budget` states."""
    states, complete = _impl.orbit_bfs(gen_tables, np.uint64(start), int(budget))
    return np.sort(states), bool(complete)


def count_fixers(factor_tables: np.ndarray, start: int, target: int,
                 writable: np.ndarray) -> int:
    return int(_impl.count_fixers(factor_tables, np.uint64(start),
                                  np.uint64(target), writable))


def count_fixers_plain(factor_tables: np.ndarray, start: int, target: int) -> int:
    """Full 2^L enumeration with no pruning; oracle for count_fixers."""
    return int(_impl.count_fixers_plain(factor_tables, np.uint64(start),
                                        np.uint64(target)))


def count_vanishing(all_tables: np.ndarray, factor_idx: np.ndarray, start: int,
                    mask: int, writable: np.ndarray) -> int:
    return int(_impl.count_vanishing(all_tables, factor_idx, np.uint64(start),
                                     np.uint64(mask), writable))


def count_vanishing_plain(all_tables: np.ndarray, factor_idx: np.ndarray,
                          start: int, mask: int) -> int:
    """Full 2^L sweep with no pruning; oracle for count_vanishing."""
    return int(_impl.count_vanishing_plain(all_tables, factor_idx,
                                           np.uint64(start), np.uint64(mask)))


def stack_factor_tables(factors: list[int]) -> np.ndarray:
    if not factors:
        return np.zeros((0, 7, 256), dtype=np.uint64)
    return np.stack([root_gen_tables(a) for a in factors])
