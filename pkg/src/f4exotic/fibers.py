"""Springer fiber point counts over F_2, cell by Bruhat cell.

The fiber over a representative xi is {gB : g^{-1} xi in V^{<=0}}.  Its
intersection with the cell of w is parameterized by the root-group
coordinates of the inversion set Phi(w) = {beta < 0 : w^{-1}(beta) > 0},
and membership reduces to: the product of the cell's root elements kills
every Phi(w)-coordinate of xi.  (The w-lift itself drops out: it only
permutes which coordinates must vanish.)  So each cell is one pruned
vanishing count in the packed kernel.

Also here: the semismallness bound on cell dimensions, the cocharacter
checks, the torus-fixed-point probe that separates single from double
cells of xi_17, and the two-sided point count of the resolution space.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .chevalley import build_module
from .gf2k import field
from .qpoly import orbit_table, record
from .rootsys import WeylElement, build_root_system, degree_product

FLAG_COUNT_Q2 = degree_product(2)  # F_2-points of the flag variety


@dataclass(frozen=True)
class CellCount:
    w_index: int          # position in the Weyl BFS order
    word: tuple[int, ...]
    length: int
    count: int


@dataclass(frozen=True)
class FiberProfile:
    rep_id: str
    n: int
    total: int
    cells: tuple[CellCount, ...]  # nonempty cells only
    seconds: float

    def k_max(self) -> int:
        """Largest affine-piece dimension: for 2^k or 2^k + 2^j counts this
        is the top exponent."""
        return max((c.count.bit_length() - 1 for c in self.cells), default=0)


def _cell_jobs(rep_id: str):
    rs = build_root_system()
    M = build_module()
    start = kernels.pack(M.from_support(list(record(rep_id).support)))
    closure = kernels.support_closure(start)
    write_masks = kernels.per_root_write_masks(closure)
    tabs = np.stack([kernels.root_gen_tables(a) for a in range(24)])
    jobs = []
    for wi, w in enumerate(rs.weyl_group()):
        factors = rs.inversion_set(w)
        mask = 0
        for r in factors:
            mask |= 1 << r
        fidx = np.array(factors, dtype=np.int32)
        writable = kernels.suffix_writable(factors, write_masks)
        jobs.append((wi, w, fidx, mask, writable))
    return start, tabs, jobs


def fiber_count(rep_id: str, n: int = 1, threads: int = 1) -> FiberProfile:
    """Exact per-cell point counts of the fiber over the representative at
    q = 2 (the only desk-scale field for the full sweep)."""
    if n != 1:
        raise ValueError("fiber counts are implemented at n = 1")
    t0 = time.time()
    start, tabs, jobs = _cell_jobs(rep_id)

    def run(job):
        wi, w, fidx, mask, writable = job
        return wi, w, kernels.count_vanishing(tabs, fidx, start, mask, writable)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    cells = tuple(
        CellCount(wi, w.word, w.length, cnt) for wi, w, cnt in results if cnt
    )
    total = sum(c.count for c in cells)
    return FiberProfile(rep_id, n, total, cells, time.time() - t0)


def fiber_sweep(threads: int = 1) -> dict[str, FiberProfile]:
    """Profiles for all 24 representatives."""
    return {r.id: fiber_count(r.id, 1, threads) for r in orbit_table()}


# ----------------------------------------------------------------------
# structural checks

def cell_shape_report(profile: FiberProfile) -> dict:
    """Classify nonempty cell counts by their binary weight: one set bit
    (a single affine space), two set bits (only allowed for xi_17, where a
    cell may be two affine spaces of different dimensions; two equal
    pieces also land in 'pure' since 2^k + 2^k has one bit), anything
    else is a violation."""
    pure = []
    two_bits = []
    other = []
    for c in profile.cells:
        bits = bin(c.count).count("1")
        (pure if bits == 1 else two_bits if bits == 2 else other).append(c)
    return {"pure": pure, "two_bits": two_bits, "other": other}


def piece_dimension(count: int, is_double: bool) -> int:
    """Dimension of the largest affine piece of a cell: the top bit, one
    lower when a double cell's two pieces are equal (2^k + 2^k = 2^(k+1))."""
    k = count.bit_length() - 1
    if is_double and count == 1 << k:
        return k - 1
    return k


def semismall_check(profile: FiberProfile, double_w: frozenset[int] = frozenset()) -> dict:
    """2 * (max affine piece dimension) <= dim of the stabilizer minus 4,
    with the equality case recorded.  `double_w` marks the w-indices of
    censused two-component cells (only ever nonempty for xi_17)."""
    rec = record(profile.rep_id)
    bound = rec.dim_stabilizer - 4
    k_max = max(
        (piece_dimension(c.count, c.w_index in double_w) for c in profile.cells),
        default=0,
    )
    return {
        "rep": profile.rep_id,
        "k_max": k_max,
        "bound": bound,
        "holds": 2 * k_max <= bound,
        "equality": 2 * k_max == bound,
    }


def cocharacter_check(rep_id: str) -> dict:
    """The table cocharacter must pair equally (and positively) with all
    short support roots and equally with all long ones; it must pair
    positively with every negative root, except that the xi_17 cocharacter
    vanishes exactly on alpha_1 and alpha_4."""
    from .rootsys import coeffs_from_str

    rs = build_root_system()
    rec = record(rep_id)
    lam = rec.cocharacter
    short_vals = set()
    long_vals = set()
    for s in rec.support:
        c = coeffs_from_str(s)
        v = rs.cocharacter_pairing(lam, c)
        (long_vals if rs.is_long[rs.index[c]] else short_vals).add(v)
    zero_roots = [
        rs.root_str(r)
        for r in range(24)
        if rs.cocharacter_pairing(lam, rs.roots[r]) == 0
    ]
    negative_pairings_ok = all(
        rs.cocharacter_pairing(lam, rs.roots[r]) >= 0 for r in range(24)
    )
    expected_zero = ["1000", "0001"] if rep_id == "xi17" else []
    return {
        "rep": rep_id,
        "short_exponents": sorted(short_vals),
        "long_exponents": sorted(long_vals),
        "weights_positive": all(v > 0 for v in short_vals | long_vals),
        "equal_within_length": len(short_vals) <= 1 and len(long_vals) <= 1,
        "zero_pairing_roots": sorted(zero_roots),
        "zero_set_ok": sorted(zero_roots) == sorted(expected_zero)
        and negative_pairings_ok,
    }


# ----------------------------------------------------------------------
# the xi_17 fixed-point probe and cell census

def probe_formula_check(n: int = 2) -> bool:
    """x_{a1}(a) x_{a4}(b) xi_17 = xi_17 + (a+b) v_1111 + (a+b^2) v_1122,
    checked on every (a, b) pair of the field."""
    M = build_module()
    F = field(n)
    rs = M.rs
    xi = M.from_support(list(record("xi17").support))
    a1 = rs.simple_indices[0]
    a4 = rs.simple_indices[3]
    i1111 = rs.index[(1, 1, 1, 1)]
    i1122 = rs.index[(1, 1, 2, 2)]
    for a in F.elements():
        for b in F.elements():
            got = M.apply_root_element(F, a1, a, M.apply_root_element(F, a4, b, xi))
            want = list(xi)
            want[i1111] ^= a ^ b
            want[i1122] ^= a ^ F.mul(b, b)
            if got != want:
                return False
    return True


def fixed_locus_probe(w: WeylElement, n: int = 2) -> list[tuple[int, int]]:
    """All (a, b) with x_{a1}(a) x_{a4}(b) w-dot B in the fiber of xi_17.
    The coordinate a (resp. b) is forced to 0 unless alpha_1 (resp.
    alpha_4) lies in the inversion set of w, since the corresponding root
    group then collapses into the cell's base point."""
    M = build_module()
    F = field(n)
    rs = M.rs
    xi = M.from_support(list(record("xi17").support))
    factors = set(rs.inversion_set(w))
    a1 = rs.simple_indices[0]
    a4 = rs.simple_indices[3]
    a_range = list(F.elements()) if a1 in factors else [0]
    b_range = list(F.elements()) if a4 in factors else [0]
    sols = []
    for a in a_range:
        for b in b_range:
            v = M.apply_root_element(F, a1, a, M.apply_root_element(F, a4, b, xi))
            if all(v[r] == 0 for r in factors):
                sols.append((a, b))
    return sols


def double_point_solutions(n: int) -> set[tuple[int, int]]:
    """Exhaustive solutions of a + b = 0 and a + b^2 = 0 over F_{2^n}."""
    F = field(n)
    return {
        (a, b)
        for a in F.elements()
        for b in F.elements()
        if a ^ b == 0 and a ^ F.mul(b, b) == 0
    }


def xi17_cell_census(profile: FiberProfile | None = None, threads: int = 1) -> dict:
    """Classify the nonempty cells of the xi_17 fiber as single or double
    (one or two torus-fixed points, probed over F_4), and check the
    double-cell conditions on w."""
    if profile is None:
        profile = fiber_count("xi17", 1, threads)
    rs = build_root_system()
    W = rs.weyl_group()
    singles = []
    doubles = []
    problems = []
    alpha2_variant_holds = True
    for c in profile.cells:
        w = W[c.w_index]
        sols = fixed_locus_probe(w, 2)
        if len(sols) == 2:
            doubles.append(c)
            factors = set(rs.inversion_set(w))
            # w^{-1}(alpha_i) not negative means alpha_i is an inversion
            if not (rs.simple_indices[0] in factors and rs.simple_indices[3] in factors):
                problems.append(("double cell without the alpha_1/alpha_4 condition", c))
            if rs.simple_indices[1] not in factors:
                alpha2_variant_holds = False
            if bin(c.count).count("1") > 2:
                problems.append(("double cell count not a sum of two powers of 2", c))
        elif len(sols) in (1, 4, 16):
            singles.append(c)
            k = c.count.bit_length() - 1
            if c.count != 1 << k:
                problems.append(("single cell count not a power of 2", c))
        else:
            problems.append((f"unexpected fixed-point count {len(sols)}", c))
    return {
        "n_single": len(singles),
        "m_double": len(doubles),
        "doubles": doubles,
        "double_w": frozenset(c.w_index for c in doubles),
        "problems": problems,
        "alpha2_variant_holds": alpha2_variant_holds,
    }


# ----------------------------------------------------------------------
# F_4 points of the xi_17 fiber and its Frobenius-twisted point counts

def cell_points_generic(rep_id: str, w: WeylElement, n: int) -> list[tuple[tuple[int, int], ...]]:
    """All F_{2^n}-points of the fiber inside the cell of w, as tuples of
    (root index, parameter) pairs for the inversion-set coordinates."""
    M = build_module()
    F = field(n)
    rs = M.rs
    xi = M.from_support(list(record(rep_id).support))
    factors = rs.inversion_set(w)
    start_mask = sum(1 << i for i, c in enumerate(xi) if c)
    writable = kernels.writable_index_sets(factors, start_mask)
    constrained = set(factors)
    L = len(factors)
    out: list[tuple[tuple[int, int], ...]] = []

    def dfs(k: int, v: list[int], params: list[tuple[int, int]]) -> None:
        w_set = writable[k]
        for i in constrained:
            if i not in w_set and v[i]:
                return
        if k == L:
            out.append(tuple(params))
            return
        for t in F.elements():
            img = M.apply_root_element(F, factors[k], t, v)
            params.append((factors[k], t))
            dfs(k + 1, img, params)
            params.pop()

    dfs(0, xi, [])
    return out


def _point_word(w: WeylElement, params: tuple[tuple[int, int], ...], square: bool):
    """GroupWord of the coset representative u'*w-dot of a cell point; the
    enumerated parameters describe (u')^{-1} applied first-to-last, so u'
    itself is the same factors in the written order.  With `square`, all
    root parameters are squared (the arithmetic Frobenius on U)."""
    from .chevalley import RootElem, SimpleLift

    M = build_module()
    F2 = field(2)
    rs = M.rs
    u_part = tuple(
        RootElem(rs.roots[r], F2.mul(t, t) if square else t) for r, t in params
    )
    w_part = tuple(SimpleLift(i) for i in w.word)
    return u_part + w_part


def twisted_fiber_counts(rep_id: str = "xi17") -> dict[str, int]:
    """Point counts of the fiber under the Frobenius twisted by each
    component-group coset word sigma: #(fiber)^{sigma F}.  A point gB is
    sigma-F-fixed iff (u'w)^{-1} sigma F(u') w stabilizes V^{<=0}.  The
    identity twist recovers the F_2 count, and counts agree within a
    conjugacy class, which cross-validates the whole route."""
    from .chevalley import RootElem, SimpleLift, word_inverse

    M = build_module()
    F = field(2)
    rs = M.rs
    u_w = (RootElem((1, 0, 0, 0), 1), RootElem((0, 0, 0, 1), 1))
    s_w = (SimpleLift(1), SimpleLift(4))
    twists = {"e": (), "u": u_w, "s": s_w, "us": u_w + s_w}
    counts = dict.fromkeys(twists, 0)
    for w in rs.weyl_group():
        pts = cell_points_generic(rep_id, w, 2)
        if not pts:
            continue
        w_word = tuple(SimpleLift(i) for i in w.word)
        w_inv = tuple(reversed(w_word))
        for params in pts:
            rational = all(t in (0, 1) for _, t in params)
            counts["e"] += rational
            u_fwd = _point_word(w, params, square=False)
            u_sq = _point_word(w, params, square=True)[: len(params)]
            u_inv = word_inverse(u_fwd[: len(params)], F)
            for name, sigma in twists.items():
                if name == "e":
                    continue
                h = w_inv + u_inv + sigma + u_sq + w_word
                if M.stabilizes_nonpositive(F, h):
                    counts[name] += 1
    return counts


# ----------------------------------------------------------------------
# the two-sided count of the resolution space

def global_identity_check(profiles: dict[str, FiberProfile],
                          twisted: dict[str, int] | None = None) -> dict:
    """Count the F_2-points of the resolution space two ways.

    One side is (flag variety points) * 2^24.  The other sums, over every
    x in the nilcone's F_2-points, the F_2-points of the fiber over x.
    For orbits with connected stabilizer that is (orbit count) * (fiber
    count over the table representative).  The xi_17 orbit's F_2-points
    split into three group-orbit classes indexed by the conjugacy classes
    of its component group S_3, with orbit sizes proportional to
    1/6, 1/2, 1/3 and fibers counted by the correspondingly twisted
    Frobenius.  The naive sum (table count times untwisted fiber for
    every orbit) is also reported with its exact deficit."""
    naive = 0
    for rec in orbit_table():
        naive += rec.count_poly(2) * profiles[rec.id].total
    rhs = FLAG_COUNT_Q2 * 2**24
    if twisted is None:
        twisted = twisted_fiber_counts("xi17")
    o17 = record("xi17").count_poly(2)
    f_e, f_u, f_s, f_us = twisted["e"], twisted["u"], twisted["s"], twisted["us"]
    # class sizes 1, 3, 2 over a group of order 6
    sixth = o17 // 6
    xi17_term = sixth * f_e + 3 * sixth * f_u + 2 * sixth * f_us
    lhs = naive - o17 * profiles["xi17"].total + xi17_term
    return {
        "lhs": lhs,
        "rhs": rhs,
        "equal": lhs == rhs,
        "naive_lhs": naive,
        "naive_equal": naive == rhs,
        "naive_deficit": naive - rhs,
        "twisted_counts": dict(twisted),
        "twist_class_consistent": f_u == f_s,
        "untwisted_matches_q2": f_e == profiles["xi17"].total,
    }
