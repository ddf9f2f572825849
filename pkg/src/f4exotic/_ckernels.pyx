# cython: boundscheck=False, wraparound=False, nonecheck=False, cdivision=True, language_level=3
"""Compiled backend for the packed GF(2) kernels (see kernels.py)."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free, realloc

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef uint64_t EMPTY = 0xFFFFFFFFFFFFFFFFULL


cdef inline uint64_t _apply(const uint64_t* tab, uint64_t v) nogil:
    return (tab[v & 0xFF]
            ^ tab[256 + ((v >> 8) & 0xFF)]
            ^ tab[512 + ((v >> 16) & 0xFF)]
            ^ tab[768 + ((v >> 24) & 0xFF)]
            ^ tab[1024 + ((v >> 32) & 0xFF)]
            ^ tab[1280 + ((v >> 40) & 0xFF)]
            ^ tab[1536 + ((v >> 48) & 0xFF)])


cdef inline uint64_t _mix(uint64_t x) nogil:
    x ^= x >> 33
    x *= 0xff51afd7ed558ccdULL
    x ^= x >> 33
    x *= 0xc4ceb9fe1a85ec53ULL
    x ^= x >> 33
    return x


cdef struct HSet:
    uint64_t* slots
    uint64_t mask
    int64_t size


cdef int _hs_init(HSet* hs, uint64_t cap) nogil:
    cdef uint64_t k
    hs.slots = <uint64_t*> malloc(cap * sizeof(uint64_t))
    if hs.slots == NULL:
        return -1
    for k in range(cap):
        hs.slots[k] = EMPTY
    hs.mask = cap - 1
    hs.size = 0
    return 0


cdef int _hs_grow(HSet* hs) nogil:
    cdef HSet fresh
    cdef uint64_t cap = (hs.mask + 1) * 2
    cdef uint64_t k, key, h
    if _hs_init(&fresh, cap) < 0:
        return -1
    for k in range(hs.mask + 1):
        key = hs.slots[k]
        if key != EMPTY:
            h = _mix(key) & fresh.mask
            while fresh.slots[h] != EMPTY:
                h = (h + 1) & fresh.mask
            fresh.slots[h] = key
    fresh.size = hs.size
    free(hs.slots)
    hs.slots = fresh.slots
    hs.mask = fresh.mask
    return 0


cdef int _hs_insert(HSet* hs, uint64_t key) nogil:
    """1 if newly inserted, 0 if already present, -1 on allocation failure."""
    cdef uint64_t h = _mix(key) & hs.mask
    while True:
        if hs.slots[h] == key:
            return 0
        if hs.slots[h] == EMPTY:
            hs.slots[h] = key
            hs.size += 1
            if <uint64_t> hs.size * 3 > (hs.mask + 1) * 2:
                if _hs_grow(hs) < 0:
                    return -1
            return 1
        h = (h + 1) & hs.mask


def orbit_bfs(cnp.ndarray[cnp.uint64_t, ndim=3] gen_tables, start, budget):
    """Closure of `start` under the generator tables, capped at `budget`
    states; returns (ndarray of states, complete flag)."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=3] tabs = np.ascontiguousarray(gen_tables)
    cdef const uint64_t* tp = <const uint64_t*> tabs.data
    cdef int ngen = tabs.shape[0]
    cdef int64_t cap_budget = <int64_t> budget
    cdef uint64_t v0 = <uint64_t> start

    cdef HSet hs
    if _hs_init(&hs, 1024) < 0:
        raise MemoryError()

    cdef int64_t fcap = 1024, ncap = 1024
    cdef uint64_t* frontier = <uint64_t*> malloc(fcap * sizeof(uint64_t))
    cdef uint64_t* nxt = <uint64_t*> malloc(ncap * sizeof(uint64_t))
    if frontier == NULL or nxt == NULL:
        raise MemoryError()

    cdef int64_t fsize = 1, nsize, tmp_cap
    cdef int64_t i
    cdef int g, r
    cdef uint64_t v, img
    cdef bint complete = True
    cdef uint64_t* tmp

    frontier[0] = v0
    _hs_insert(&hs, v0)

    with nogil:
        while fsize > 0 and complete:
            nsize = 0
            for i in range(fsize):
                v = frontier[i]
                for g in range(ngen):
                    img = _apply(tp + g * 1792, v)
                    r = _hs_insert(&hs, img)
                    if r < 0 or hs.size > cap_budget:
                        complete = False
                        break
                    if r == 1:
                        if nsize == ncap:
                            ncap *= 2
                            tmp = <uint64_t*> realloc(nxt, ncap * sizeof(uint64_t))
                            if tmp == NULL:
                                complete = False
                                break
                            nxt = tmp
                        nxt[nsize] = img
                        nsize += 1
                if not complete:
                    break
            if not complete:
                break
            tmp = frontier
            frontier = nxt
            nxt = tmp
            fsize = nsize
            tmp_cap = fcap
            fcap = ncap
            ncap = tmp_cap

    out = np.empty(hs.size, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef int64_t pos = 0
    cdef uint64_t k
    for k in range(hs.mask + 1):
        if hs.slots[k] != EMPTY:
            ov[pos] = hs.slots[k]
            pos += 1
    free(hs.slots)
    free(frontier)
    free(nxt)
    return out, complete


cdef int64_t _dfs_eq(const uint64_t* tabs, int L, int k, uint64_t v,
                     uint64_t target, const uint64_t* writable) nogil:
    cdef uint64_t w = writable[k]
    cdef uint64_t img
    if (v ^ target) & ~w:
        return 0
    if w == 0:
        return (<int64_t> 1) << (L - k)
    img = _apply(tabs + k * 1792, v)
    if img == v:
        return 2 * _dfs_eq(tabs, L, k + 1, v, target, writable)
    return (_dfs_eq(tabs, L, k + 1, v, target, writable)
            + _dfs_eq(tabs, L, k + 1, img, target, writable))


def count_fixers(cnp.ndarray[cnp.uint64_t, ndim=3] factor_tables, start, target,
                 cnp.ndarray[cnp.uint64_t, ndim=1] writable):
    cdef cnp.ndarray[cnp.uint64_t, ndim=3] tabs = np.ascontiguousarray(factor_tables)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] wr = np.ascontiguousarray(writable)
    cdef const uint64_t* tp = <const uint64_t*> tabs.data
    cdef const uint64_t* wp = <const uint64_t*> wr.data
    cdef int L = tabs.shape[0]
    cdef uint64_t v0 = <uint64_t> start
    cdef uint64_t tg = <uint64_t> target
    cdef int64_t out
    with nogil:
        out = _dfs_eq(tp, L, 0, v0, tg, wp)
    return out


cdef int64_t _dfs_plain(const uint64_t* tabs, int L, int k, uint64_t v,
                        uint64_t target) nogil:
    if k == L:
        return 1 if v == target else 0
    return (_dfs_plain(tabs, L, k + 1, v, target)
            + _dfs_plain(tabs, L, k + 1, _apply(tabs + k * 1792, v), target))


def count_fixers_plain(cnp.ndarray[cnp.uint64_t, ndim=3] factor_tables, start, target):
    """Unpruned full enumeration over all 2^L assignments; the oracle the
    pruned search is validated against."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=3] tabs = np.ascontiguousarray(factor_tables)
    cdef const uint64_t* tp = <const uint64_t*> tabs.data
    cdef int L = tabs.shape[0]
    cdef uint64_t v0 = <uint64_t> start
    cdef uint64_t tg = <uint64_t> target
    cdef int64_t out
    with nogil:
        out = _dfs_plain(tp, L, 0, v0, tg)
    return out


cdef int64_t _dfs_vanish(const uint64_t* tabs, const int* fidx, int L, int k,
                         uint64_t v, uint64_t mask, const uint64_t* writable) nogil:
    cdef uint64_t w = writable[k]
    cdef uint64_t img
    if v & mask & ~w:
        return 0
    if (w & mask) == 0:
        if v & mask:
            return 0
        return (<int64_t> 1) << (L - k)
    img = _apply(tabs + fidx[k] * 1792, v)
    if img == v:
        return 2 * _dfs_vanish(tabs, fidx, L, k + 1, v, mask, writable)
    return (_dfs_vanish(tabs, fidx, L, k + 1, v, mask, writable)
            + _dfs_vanish(tabs, fidx, L, k + 1, img, mask, writable))


cdef int64_t _dfs_vanish_plain(const uint64_t* tabs, const int* fidx, int L, int k,
                               uint64_t v, uint64_t mask) nogil:
    if k == L:
        return 0 if v & mask else 1
    return (_dfs_vanish_plain(tabs, fidx, L, k + 1, v, mask)
            + _dfs_vanish_plain(tabs, fidx, L, k + 1, _apply(tabs + fidx[k] * 1792, v), mask))


def count_vanishing_plain(cnp.ndarray[cnp.uint64_t, ndim=3] all_tables,
                          cnp.ndarray[cnp.int32_t, ndim=1] factor_idx, start, mask):
    """Unpruned 2^L sweep; the oracle for count_vanishing (use L <= 16)."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=3] tabs = np.ascontiguousarray(all_tables)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] fi = np.ascontiguousarray(factor_idx)
    cdef const uint64_t* tp = <const uint64_t*> tabs.data
    cdef const int* fp = <const int*> fi.data
    cdef int L = fi.shape[0]
    cdef uint64_t v0 = <uint64_t> start
    cdef uint64_t mk = <uint64_t> mask
    cdef int64_t out
    with nogil:
        out = _dfs_vanish_plain(tp, fp, L, 0, v0, mk)
    return out


def count_vanishing(cnp.ndarray[cnp.uint64_t, ndim=3] all_tables,
                    cnp.ndarray[cnp.int32_t, ndim=1] factor_idx, start, mask,
                    cnp.ndarray[cnp.uint64_t, ndim=1] writable):
    """Count assignments killing every `mask` coordinate; the factors are
    rows of `all_tables` selected by `factor_idx`."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=3] tabs = np.ascontiguousarray(all_tables)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] fi = np.ascontiguousarray(factor_idx)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] wr = np.ascontiguousarray(writable)
    cdef const uint64_t* tp = <const uint64_t*> tabs.data
    cdef const int* fp = <const int*> fi.data
    cdef const uint64_t* wp = <const uint64_t*> wr.data
    cdef int L = fi.shape[0]
    cdef uint64_t v0 = <uint64_t> start
    cdef uint64_t mk = <uint64_t> mask
    cdef int64_t out
    with nogil:
        out = _dfs_vanish(tp, fp, L, 0, v0, mk, wp)
    return out
