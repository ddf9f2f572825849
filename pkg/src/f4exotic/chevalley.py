"""The 52-dimensional module V = g_s + g/g_s with its Chevalley group action.

Basis indexing of V (also the packed bit layout used by the fast kernels):

* bits 0..47   coordinate on v_beta for root index beta (rootsys order:
               negative long, negative short, positive long, positive short)
* bit 48, 49   h_3, h_4 (the Cartan part of g_s)
* bit 50, 51   hbar_1, hbar_2 (the Cartan part of g/g_s)

Vectors over GF(2^n) are plain lists of 52 field elements (ints); addition
of coordinates is xor.  All action data is precomputed into per-root
"plans" derived from the root diagrams, so applying a generator is a short
loop over sparse edges.

x_alpha(t) acts on V by the same-length rule: v_beta picks up t*v_{alpha+beta}
when alpha+beta is a root of beta's length, t^2*v_{2alpha+beta} when
2alpha+beta is, and is fixed otherwise; v_{-alpha} picks up the mod-2 coroot
of alpha (landing in h_3,h_4 for short alpha and hbar_1,hbar_2 for long
alpha) times t plus t^2*v_alpha; a zero-weight vector v picks up
t*alpha(v)*v_alpha.  The adjoint representation of g is implemented
independently (structure constants from root strings, signs dropped in
characteristic 2) and serves as an oracle for the V action.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gf2k import GF2k, field
from .rootsys import Coeffs, RootSystem, build_root_system, pairing, phi_sharp

DIM = 52
H3, H4, HBAR1, HBAR2 = 48, 49, 50, 51

Vec = list[int]


# ----------------------------------------------------------------------
# group words

@dataclass(frozen=True)
class RootElem:
    """x_alpha(t) for a root alpha (given by coordinates) and t in GF(2^n)."""
    alpha: Coeffs
    t: int


@dataclass(frozen=True)
class TorusElem:
    """Product over i of alpha_i^vee(t_i); all t_i nonzero."""
    t: tuple[int, int, int, int]


@dataclass(frozen=True)
class SimpleLift:
    """The Weyl lift s_i-dot = x_{a_i}(1) x_{-a_i}(1) x_{a_i}(1)."""
    i: int  # 1..4


Generator = RootElem | TorusElem | SimpleLift
GroupWord = tuple[Generator, ...]


def word_inverse(word: GroupWord, F: GF2k) -> GroupWord:
    """Formal inverse; in characteristic 2 root elements and lifts are
    involutions, torus entries invert coordinatewise."""
    out: list[Generator] = []
    for g in reversed(word):
        if isinstance(g, TorusElem):
            out.append(TorusElem(tuple(F.inv(t) for t in g.t)))
        else:
            out.append(g)
    return tuple(out)


# ----------------------------------------------------------------------
# per-root action plans

@dataclass(frozen=True)
class RootPlan:
    idx: int                      # index of alpha
    neg_idx: int                  # index of -alpha
    t_edges: tuple[tuple[int, int], ...]   # v_src -> t * v_dst
    t2_edges: tuple[tuple[int, int], ...]  # v_src -> t^2 * v_dst
    h_targets: tuple[int, ...]    # zero-weight coordinates hit by t * v_{-alpha}
    v0_sources: tuple[int, ...]   # zero-weight coordinates feeding t * alpha(v) v_alpha


@dataclass(frozen=True)
class AdjointPlan:
    idx: int
    neg_idx: int
    t_edges: tuple[tuple[int, int], ...]
    t2_edges: tuple[tuple[int, int], ...]
    h_coroot: tuple[int, ...]     # indices 48+j hit by t * X_{-alpha} (coroot mod 2)
    h_sources: tuple[int, ...]    # indices 48+j with <alpha, alpha_j^vee> odd


class ChevalleyModule:
    """Precomputed action data for V and for the adjoint oracle."""

    def __init__(self, rs: RootSystem) -> None:
        self.rs = rs
        self.plans: tuple[RootPlan, ...] = tuple(self._root_plan(a) for a in range(48))
        self.adjoint_plans: tuple[AdjointPlan, ...] = tuple(
            self._adjoint_plan(a) for a in range(48)
        )
        self.psi_sources: tuple[tuple[int, bool], ...] = self._psi_map()
        # short roots restrict to h_s = <h_3, h_4>, long roots descend to
        # <hbar_1, hbar_2>; this is also the coordinate pattern of
        # alpha as a functional on V_0
        for a in range(48):
            pl = self.plans[a]
            sub = (H3, H4) if not rs.is_long[a] else (HBAR1, HBAR2)
            if not set(pl.v0_sources) <= set(sub) or not set(pl.h_targets) <= set(sub):
                raise AssertionError("zero-weight pattern escaped its summand")

    # -- plan construction ------------------------------------------------

    def _root_plan(self, a: int) -> RootPlan:
        rs = self.rs
        alpha = rs.roots[a]
        neg = rs.negate[a]
        t_edges = []
        t2_edges = []
        for b in range(48):
            if b == neg:
                continue
            beta = rs.roots[b]
            up1 = tuple(beta[j] + alpha[j] for j in range(4))
            up2 = tuple(beta[j] + 2 * alpha[j] for j in range(4))
            if up1 in rs.index and rs.is_long[rs.index[up1]] == rs.is_long[b]:
                t_edges.append((b, rs.index[up1]))
            elif up2 in rs.index and rs.is_long[rs.index[up2]] == rs.is_long[b]:
                t2_edges.append((b, rs.index[up2]))
        cr = rs.coroots[a]
        if rs.is_long[a]:
            h_targets = tuple(h for h, j in ((HBAR1, 0), (HBAR2, 1)) if cr[j] % 2)
            v0_sources = tuple(
                h for h, j in ((HBAR1, 0), (HBAR2, 1)) if pairing(alpha, j) % 2
            )
        else:
            h_targets = tuple(h for h, j in ((H3, 2), (H4, 3)) if cr[j] % 2)
            v0_sources = tuple(
                h for h, j in ((H3, 2), (H4, 3)) if pairing(alpha, j) % 2
            )
        return RootPlan(a, neg, tuple(t_edges), tuple(t2_edges), h_targets, v0_sources)

    def _string_depth(self, b: int, a: int) -> int:
        """p in the alpha-string beta - p*alpha, ..., beta + q*alpha."""
        rs = self.rs
        beta, alpha = rs.roots[b], rs.roots[a]
        p = 0
        while True:
            down = tuple(beta[j] - (p + 1) * alpha[j] for j in range(4))
            if down in rs.index:
                p += 1
            else:
                return p

    def _adjoint_plan(self, a: int) -> AdjointPlan:
        rs = self.rs
        alpha = rs.roots[a]
        neg = rs.negate[a]
        t_edges = []
        t2_edges = []
        for b in range(48):
            if b == neg or b == a:
                continue
            beta = rs.roots[b]
            p = self._string_depth(b, a)
            up1 = tuple(beta[j] + alpha[j] for j in range(4))
            up2 = tuple(beta[j] + 2 * alpha[j] for j in range(4))
            # binomial parities of C(p+k, k) for k = 1, 2
            if up1 in rs.index and (p + 1) % 2:
                t_edges.append((b, rs.index[up1]))
            if up2 in rs.index and (p + 1) * (p + 2) // 2 % 2:
                t2_edges.append((b, rs.index[up2]))
        cr = rs.coroots[a]
        h_coroot = tuple(48 + j for j in range(4) if cr[j] % 2)
        h_sources = tuple(48 + j for j in range(4) if pairing(alpha, j) % 2)
        return AdjointPlan(a, neg, tuple(t_edges), tuple(t2_edges), h_coroot, h_sources)

    def _psi_map(self) -> tuple[tuple[int, bool], ...]:
        """psi output coordinate <- (input coordinate, square the scalar)."""
        rs = self.rs
        out: list[tuple[int, bool]] = [(0, False)] * DIM
        for a in range(48):
            alpha = rs.roots[a]
            img = phi_sharp(alpha)
            if rs.is_long[a]:
                # half of phi_sharp(alpha) is a short root; its coordinate
                # feeds v_alpha with the scalar squared
                half = (img[0] // 2, img[1] // 2, img[2] // 2, img[3] // 2)
                out[a] = (rs.index[half], True)
            else:
                out[a] = (rs.index[img], False)
        out[H3] = (HBAR2, False)
        out[H4] = (HBAR1, False)
        out[HBAR1] = (H4, True)
        out[HBAR2] = (H3, True)
        return tuple(out)

    # -- V vectors ---------------------------------------------------------

    def zero(self) -> Vec:
        return [0] * DIM

    def basis_vector(self, i: int) -> Vec:
        v = [0] * DIM
        v[i] = 1
        return v

    def from_support(self, labels: list[str] | tuple[str, ...]) -> Vec:
        """Vector with coordinate 1 on each listed negative root."""
        from .rootsys import coeffs_from_str

        v = [0] * DIM
        for s in labels:
            idx = self.rs.index[coeffs_from_str(s)]
            if idx >= 24:
                raise ValueError(f"{s} is not a negative root")
            v[idx] = 1
        return v

    def support(self, v: Vec) -> tuple[int, ...]:
        return tuple(i for i in range(DIM) if v[i])

    # -- the action on V ----------------------------------------------------

    def apply_root_element(self, F: GF2k, a: int, t: int, v: Vec) -> Vec:
        """x_alpha(t) applied to v; a is a root index, t a field element."""
        pl = self.plans[a]
        out = list(v)
        if t == 0:
            return out
        tt = F.mul(t, t)
        for s, d in pl.t_edges:
            c = v[s]
            if c:
                out[d] ^= F.mul(t, c)
        for s, d in pl.t2_edges:
            c = v[s]
            if c:
                out[d] ^= F.mul(tt, c)
        c = v[pl.neg_idx]
        if c:
            for h in pl.h_targets:
                out[h] ^= F.mul(t, c)
            out[pl.idx] ^= F.mul(tt, c)
        av = 0
        for h in pl.v0_sources:
            av ^= v[h]
        if av:
            out[pl.idx] ^= F.mul(t, av)
        return out

    def alpha_functional(self, a: int, v: Vec) -> int:
        """alpha evaluated on the zero-weight part of v."""
        av = 0
        for h in self.plans[a].v0_sources:
            av ^= v[h]
        return av

    def apply_torus(self, F: GF2k, ts: tuple[int, int, int, int], v: Vec) -> Vec:
        """Product of alpha_i^vee(t_i) acting by weights; fixes V_0."""
        if any(t == 0 for t in ts):
            raise ValueError("torus coordinates must be nonzero")
        out = list(v)
        for r in range(48):
            c = v[r]
            if not c:
                continue
            scal = 1
            for i in range(4):
                e = self.rs.weights[r][i]
                if e:
                    scal = F.mul(scal, F.pow(ts[i], e))
            out[r] = F.mul(scal, c)
        return out

    def apply_simple_lift(self, F: GF2k, i: int, v: Vec) -> Vec:
        """s_i-dot as the triple product x_{a_i}(1) x_{-a_i}(1) x_{a_i}(1)."""
        a = self.rs.simple_indices[i - 1]
        na = self.rs.negate[a]
        out = self.apply_root_element(F, a, 1, v)
        out = self.apply_root_element(F, na, 1, out)
        return self.apply_root_element(F, a, 1, out)

    def apply_generator(self, F: GF2k, g: Generator, v: Vec) -> Vec:
        if isinstance(g, RootElem):
            return self.apply_root_element(F, self.rs.index[g.alpha], g.t, v)
        if isinstance(g, TorusElem):
            return self.apply_torus(F, g.t, v)
        return self.apply_simple_lift(F, g.i, v)

    def apply_word(self, F: GF2k, word: GroupWord, v: Vec) -> Vec:
        """Apply a word left-to-right as written, i.e. the rightmost
        generator acts first."""
        out = v
        for g in reversed(word):
            out = self.apply_generator(F, g, out)
        return out

    def apply_weyl_word(self, F: GF2k, word: tuple[int, ...], v: Vec) -> Vec:
        out = v
        for i in reversed(word):
            out = self.apply_simple_lift(F, i, out)
        return out

    def stabilizes_nonpositive(self, F: GF2k, word: GroupWord) -> bool:
        """Whether the word's operator maps V^{<=0} into itself.  The
        stabilizer of V^{<=0} in the group is exactly B (no Weyl lift
        preserves it), so this is a Borel-membership test."""
        for i in list(range(24)) + [H3, H4, HBAR1, HBAR2]:
            img = self.apply_word(F, word, self.basis_vector(i))
            if any(img[r] for r in range(24, 48)):
                return False
        return True

    # -- special isogeny -----------------------------------------------------

    def psi(self, F: GF2k, v: Vec) -> Vec:
        """The bijective additive map V -> V covering the special isogeny;
        long-root coordinates transport linearly to their short partners,
        short-root and h_s coordinates transport with the scalar squared."""
        out = [0] * DIM
        for i in range(DIM):
            src, sq = self.psi_sources[i]
            c = v[src]
            out[i] = F.mul(c, c) if sq else c
        return out

    def phi_of_root_elem(self, a: int, t: int, F: GF2k) -> tuple[int, int]:
        """Image of x_alpha(t) under the special isogeny, as (root idx, t')."""
        rs = self.rs
        alpha = rs.roots[a]
        img = phi_sharp(alpha)
        if rs.is_long[a]:
            half = (img[0] // 2, img[1] // 2, img[2] // 2, img[3] // 2)
            return rs.index[half], t
        return rs.index[img], F.mul(t, t)

    # -- adjoint oracle -------------------------------------------------------
    # Basis of g: X_beta on indices 0..47, H_{alpha_1..alpha_4} on 48..51.

    def adjoint_apply(self, F: GF2k, a: int, t: int, x: Vec) -> Vec:
        out = list(x)
        if t == 0:
            return out
        pl = self.adjoint_plans[a]
        tt = F.mul(t, t)
        for s, d in pl.t_edges:
            c = x[s]
            if c:
                out[d] ^= F.mul(t, c)
        for s, d in pl.t2_edges:
            c = x[s]
            if c:
                out[d] ^= F.mul(tt, c)
        c = x[pl.neg_idx]
        if c:
            for h in pl.h_coroot:
                out[h] ^= F.mul(t, c)
            out[pl.idx] ^= F.mul(tt, c)
        ah = 0
        for h in pl.h_sources:
            ah ^= x[h]
        if ah:
            out[pl.idx] ^= F.mul(t, ah)
        return out

    def _project_adjoint_to_v(self, x: Vec, long_part: bool) -> Vec:
        """g_s -> V on the short summand, or g -> g/g_s -> V on the long one."""
        rs = self.rs
        v = [0] * DIM
        for r in range(48):
            if rs.is_long[r] == long_part:
                v[r] = x[r]
        if long_part:
            v[HBAR1], v[HBAR2] = x[48], x[49]
        else:
            v[H3], v[H4] = x[50], x[51]
        return v

    def _embed_v_basis_in_adjoint(self, i: int) -> tuple[Vec, bool]:
        """Adjoint representative of the i-th V basis vector, plus the flag
        saying which summand it generates (True = g/g_s)."""
        x = [0] * DIM
        if i < 48:
            x[i] = 1
            return x, self.rs.is_long[i]
        if i == H3:
            x[50] = 1
            return x, False
        if i == H4:
            x[51] = 1
            return x, False
        if i == HBAR1:
            x[48] = 1
            return x, True
        x[49] = 1
        return x, True

    def consistency_check(self, n: int = 2) -> list[tuple[int, int, int]]:
        """Compare the V action against the adjoint oracle on every
        (root, basis vector, t) triple over GF(2^n).  For short basis
        vectors the adjoint action must stay in g_s and match on the nose;
        for long ones it must match after projecting mod g_s.  Returns the
        list of disagreements (alpha idx, basis idx, t), empty when
        everything is consistent."""
        F = field(n)
        rs = self.rs
        bad = []
        for a in range(48):
            for i in range(DIM):
                x, long_part = self._embed_v_basis_in_adjoint(i)
                v = self.basis_vector(i)
                for t in F.elements():
                    got = self.apply_root_element(F, a, t, v)
                    adj = self.adjoint_apply(F, a, t, x)
                    if not long_part:
                        # g_s is a submodule: nothing may leak into long
                        # roots or H_1, H_2
                        leak = any(
                            adj[r] for r in range(48) if rs.is_long[r]
                        ) or adj[48] or adj[49]
                        if leak:
                            bad.append((a, i, t))
                            continue
                    want = self._project_adjoint_to_v(adj, long_part)
                    if got != want:
                        bad.append((a, i, t))
        return bad


@lru_cache(maxsize=1)
def build_module() -> ChevalleyModule:
    return ChevalleyModule(build_root_system())
