"""Exact combinatorics of the F4 root system.

Conventions used throughout the package:

* alpha_1..alpha_4 are the *negative* simple roots, so every negative root
  has a nonnegative coordinate vector.  A root is a 4-tuple (a, b, c, d)
  of integers meaning a*alpha_1 + b*alpha_2 + c*alpha_3 + d*alpha_4.
* alpha_1, alpha_2 are long, alpha_3, alpha_4 are short; the Dynkin arrow
  sits between nodes 2 and 3.
* CARTAN[i][j] = <alpha_j, alpha_i^vee> (0-based rows/columns for the
  1-based simple roots).
* Weyl group elements act on roots and are stored as degree-48
  permutations of root indices.

Everything here is plain integer arithmetic and immutable after
construction, so a single shared RootSystem instance is safe to use from
any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Coeffs = tuple[int, int, int, int]

CARTAN: tuple[tuple[int, int, int, int], ...] = (
    (2, -1, 0, 0),
    (-1, 2, -1, 0),
    (0, -2, 2, -1),
    (0, 0, -1, 2),
)

SIMPLE: tuple[Coeffs, ...] = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
SIMPLE_LONG: tuple[bool, ...] = (True, True, False, False)

# Degrees of the fundamental invariants of the F4 Weyl group.
WEYL_DEGREES = (2, 6, 8, 12)

# Hand-transcribed Hasse diagrams of the 24 negative roots: a solid edge
# labelled i joins beta to beta + alpha_i, a dashed edge labelled i joins
# beta to beta + 2*alpha_i, always within one length class.  These are the
# ground truth the derived Cartan data is validated against.
LONG_DIAGRAM_EDGES: tuple[tuple[str, str, int, bool], ...] = (
    ("1000", "1100", 2, False),
    ("0100", "1100", 1, False),
    ("0100", "0120", 3, True),
    ("1100", "1120", 3, True),
    ("0120", "1120", 1, False),
    ("0120", "0122", 4, True),
    ("1120", "1220", 2, False),
    ("1120", "1122", 4, True),
    ("0122", "1122", 1, False),
    ("1220", "1222", 4, True),
    ("1122", "1222", 2, False),
    ("1222", "1242", 3, True),
    ("1242", "1342", 2, False),
    ("1342", "2342", 1, False),
)
SHORT_DIAGRAM_EDGES: tuple[tuple[str, str, int, bool], ...] = (
    ("0010", "0110", 2, False),
    ("0010", "0011", 4, False),
    ("0001", "0011", 3, False),
    ("0110", "1110", 1, False),
    ("0110", "0111", 4, False),
    ("0011", "0111", 2, False),
    ("1110", "1111", 4, False),
    ("0111", "1111", 1, False),
    ("0111", "0121", 3, False),
    ("1111", "1121", 3, False),
    ("0121", "1121", 1, False),
    ("1121", "1221", 2, False),
    ("1221", "1231", 3, False),
    ("1231", "1232", 4, False),
)


class RootSystemError(Exception):
    """Construction-time consistency failure (signals a convention bug)."""


def coeffs_from_str(s: str) -> Coeffs:
    """Parse 'abcd' digit notation, e.g. '1220' -> (1, 2, 2, 0)."""
    if len(s) != 4 or not s.isdigit():
        raise ValueError(f"bad root label {s!r}")
    return (int(s[0]), int(s[1]), int(s[2]), int(s[3]))


def coeffs_to_str(c: Coeffs) -> str:
    return "".join(str(x) for x in c)


def pairing(beta: Coeffs, i: int) -> int:
    """<beta, alpha_i^vee> via the Cartan matrix (i is 0-based)."""
    row = CARTAN[i]
    return row[0] * beta[0] + row[1] * beta[1] + row[2] * beta[2] + row[3] * beta[3]


def reflect(beta: Coeffs, i: int) -> Coeffs:
    """Simple reflection s_{i+1} applied to a root coordinate vector."""
    c = pairing(beta, i)
    out = list(beta)
    out[i] -= c
    return tuple(out)


def height(beta: Coeffs) -> int:
    return beta[0] + beta[1] + beta[2] + beta[3]


def phi_sharp(beta: Coeffs) -> Coeffs:
    """Character-lattice map of the special isogeny: linear extension of
    alpha_1 -> 2*alpha_4, alpha_2 -> 2*alpha_3, alpha_3 -> alpha_2,
    alpha_4 -> alpha_1."""
    a, b, c, d = beta
    return (d, c, 2 * b, 2 * a)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as a permutation of the 48 root indices.

    perm[r] is the index of w(root r); word is one reduced expression in
    the generators s_1..s_4 (1-based), applied right-to-left to arguments.
    """

    perm: tuple[int, ...]
    length: int
    word: tuple[int, ...]

    def __repr__(self) -> str:
        return "W[" + ("e" if not self.word else "*".join(f"s{i}" for i in self.word)) + "]"


class RootSystem:
    """The full F4 root datum: 48 roots, coroots, diagrams, Weyl group."""

    def __init__(self) -> None:
        self._build_roots()
        self._build_coroots()
        self._build_diagrams()
        self._weyl: list[WeylElement] | None = None
        self._weyl_index: dict[tuple[int, ...], int] | None = None

    # ------------------------------------------------------------------
    # roots

    def _build_roots(self) -> None:
        lengths: dict[Coeffs, bool] = {}
        frontier = []
        for i in range(4):
            for sgn in (1, -1):
                c = tuple(sgn * x for x in SIMPLE[i])
                lengths[c] = SIMPLE_LONG[i]
                frontier.append(c)
        while frontier:
            beta = frontier.pop()
            for i in range(4):
                image = reflect(beta, i)
                if image not in lengths:
                    lengths[image] = lengths[beta]
                    frontier.append(image)
        if len(lengths) != 48:
            raise RootSystemError(f"expected 48 roots, got {len(lengths)}")

        neg = [c for c in lengths if min(c) >= 0]
        neg_long = sorted((c for c in neg if lengths[c]), key=lambda c: (height(c), c))
        neg_short = sorted((c for c in neg if not lengths[c]), key=lambda c: (height(c), c))
        if len(neg_long) != 12 or len(neg_short) != 12:
            raise RootSystemError("negative root census broken")

        ordered = list(neg_long) + list(neg_short)
        ordered += [tuple(-x for x in c) for c in ordered]
        self.roots: tuple[Coeffs, ...] = tuple(ordered)
        self.index: dict[Coeffs, int] = {c: k for k, c in enumerate(ordered)}
        self.is_long: tuple[bool, ...] = tuple(lengths[c] for c in ordered)
        self.negate: tuple[int, ...] = tuple(
            self.index[tuple(-x for x in c)] for c in ordered
        )
        # indices 0..23 are the negative roots (long block then short block)
        self.neg_indices = tuple(range(24))
        self.simple_indices = tuple(self.index[SIMPLE[i]] for i in range(4))
        self.reflection_perms: tuple[tuple[int, ...], ...] = tuple(
            tuple(self.index[reflect(c, i)] for c in ordered) for i in range(4)
        )
        # torus weights: weight[r][i] = <root r, alpha_i^vee>
        self.weights: tuple[tuple[int, ...], ...] = tuple(
            tuple(pairing(c, i) for i in range(4)) for c in ordered
        )

    def is_negative(self, idx: int) -> bool:
        return idx < 24

    def root_str(self, idx: int) -> str:
        c = self.roots[idx]
        if idx < 24:
            return coeffs_to_str(c)
        return "-" + coeffs_to_str(self.roots[self.negate[idx]])

    # ------------------------------------------------------------------
    # coroots

    def _build_coroots(self) -> None:
        # Weyl-orbit closure from the simple coroots, staying integral.
        coroot: dict[int, Coeffs] = {}
        for i in range(4):
            e = [0, 0, 0, 0]
            e[i] = 1
            coroot[self.simple_indices[i]] = tuple(e)
            coroot[self.negate[self.simple_indices[i]]] = tuple(-x for x in e)
        frontier = list(coroot)
        while frontier:
            r = frontier.pop()
            cr = coroot[r]
            for i in range(4):
                img = self.reflection_perms[i][r]
                if img not in coroot:
                    # s_i on coroot coefficients: subtract <alpha_i, -> times e_i,
                    # which is the transposed Cartan action.
                    c = sum(CARTAN[j][i] * cr[j] for j in range(4))
                    out = list(cr)
                    out[i] -= c
                    coroot[img] = tuple(out)
                    frontier.append(img)
        if len(coroot) != 48:
            raise RootSystemError("coroot closure incomplete")
        self.coroots: tuple[Coeffs, ...] = tuple(coroot[r] for r in range(48))
        # <beta, beta^vee> = 2 for every root
        for r in range(48):
            total = sum(self.coroots[r][i] * pairing(self.roots[r], i) for i in range(4))
            if total != 2:
                raise RootSystemError(f"coroot normalization broken at {self.root_str(r)}")

    # ------------------------------------------------------------------
    # diagrams

    def _derive_edges(self, long_block: bool) -> set[tuple[str, str, int, bool]]:
        block = [r for r in range(24) if self.is_long[r] == long_block]
        edges = set()
        for r in block:
            c = self.roots[r]
            for i in range(4):
                up1 = tuple(c[j] + SIMPLE[i][j] for j in range(4))
                up2 = tuple(c[j] + 2 * SIMPLE[i][j] for j in range(4))
                if up1 in self.index and self.is_long[self.index[up1]] == long_block:
                    edges.add((coeffs_to_str(c), coeffs_to_str(up1), i + 1, False))
                if up2 in self.index and self.is_long[self.index[up2]] == long_block:
                    # the middle of the string has the other length, so this
                    # is the t^2 (dashed) case
                    edges.add((coeffs_to_str(c), coeffs_to_str(up2), i + 1, True))
        return edges

    def _build_diagrams(self) -> None:
        derived_long = self._derive_edges(True)
        derived_short = self._derive_edges(False)
        if derived_long != set(LONG_DIAGRAM_EDGES):
            raise RootSystemError(
                "derived long-root diagram disagrees with the transcription: "
                f"{derived_long ^ set(LONG_DIAGRAM_EDGES)}"
            )
        if derived_short != set(SHORT_DIAGRAM_EDGES):
            raise RootSystemError(
                "derived short-root diagram disagrees with the transcription: "
                f"{derived_short ^ set(SHORT_DIAGRAM_EDGES)}"
            )
        self.long_edges = tuple(sorted(derived_long))
        self.short_edges = tuple(sorted(derived_short))

    # ------------------------------------------------------------------
    # Weyl group

    def weyl_group(self) -> list[WeylElement]:
        """All 1152 elements, BFS order from the identity (so lengths are
        nondecreasing), each with one reduced word."""
        if self._weyl is not None:
            return self._weyl
        ident = tuple(range(48))
        elems = [WeylElement(ident, 0, ())]
        index = {ident: 0}
        head = 0
        while head < len(elems):
            w = elems[head]
            head += 1
            for i in range(4):
                s = self.reflection_perms[i]
                # right multiplication w*s_i (s_i applied first)
                p = tuple(w.perm[s[r]] for r in range(48))
                if p not in index:
                    index[p] = len(elems)
                    elems.append(WeylElement(p, w.length + 1, w.word + (i + 1,)))
        if len(elems) != 1152:
            raise RootSystemError(f"Weyl closure gave {len(elems)} elements")
        self._weyl = elems
        self._weyl_index = index
        return elems

    def weyl_index(self, perm: tuple[int, ...]) -> int:
        self.weyl_group()
        assert self._weyl_index is not None
        return self._weyl_index[perm]

    def weyl_length(self, w: WeylElement) -> int:
        """Number of positive roots sent to negative roots."""
        return sum(1 for r in range(24, 48) if w.perm[r] < 24)

    def weyl_inverse(self, w: WeylElement) -> WeylElement:
        inv = [0] * 48
        for r in range(48):
            inv[w.perm[r]] = r
        return self.weyl_group()[self.weyl_index(tuple(inv))]

    def inversion_set(self, w: WeylElement) -> tuple[int, ...]:
        """Negative roots beta with w^{-1}(beta) positive, sorted by height.

        These are the root-group coordinates of the Bruhat cell of w; there
        are exactly length(w) of them.
        """
        winv = self.weyl_inverse(w)
        out = [r for r in range(24) if winv.perm[r] >= 24]
        out.sort(key=lambda r: (height(self.roots[r]), self.roots[r]))
        return tuple(out)

    def weyl_poincare_sum(self, x: int) -> int:
        """Sum of x^length(w) over the Weyl group, by direct enumeration."""
        return sum(x ** w.length for w in self.weyl_group())

    def conjugacy_class_count(self) -> int:
        elems = self.weyl_group()
        self.weyl_group()
        assert self._weyl_index is not None
        index = self._weyl_index
        perms = [w.perm for w in elems]
        gens = [self.reflection_perms[i] for i in range(4)]
        seen = [False] * len(elems)
        classes = 0
        for k in range(len(elems)):
            if seen[k]:
                continue
            classes += 1
            stack = [k]
            seen[k] = True
            while stack:
                m = stack.pop()
                for g in gens:
                    # simple reflections are involutions, so g^{-1} = g
                    p = perms[m]
                    conj = tuple(g[p[g[r]]] for r in range(48))
                    j = index[conj]
                    if not seen[j]:
                        seen[j] = True
                        stack.append(j)
        return classes

    # ------------------------------------------------------------------
    # closure sets and cocharacters

    def phi_geq(self, support: set[Coeffs] | frozenset[Coeffs]) -> set[Coeffs]:
        """All negative roots of the same length lying componentwise above
        some support root (the support itself included)."""
        out: set[Coeffs] = set()
        for base in support:
            bidx = self.index[base]
            if bidx >= 24:
                raise ValueError(f"support root {base} is not negative")
            for r in range(24):
                if self.is_long[r] != self.is_long[bidx]:
                    continue
                c = self.roots[r]
                if all(c[j] >= base[j] for j in range(4)):
                    out.add(c)
        return out

    @staticmethod
    def cocharacter_pairing(lam: Coeffs, beta: Coeffs) -> int:
        """<a*w_1+..+d*w_4, beta> with <w_i, alpha_j> = delta_ij."""
        return lam[0] * beta[0] + lam[1] * beta[1] + lam[2] * beta[2] + lam[3] * beta[3]


def degree_product(x: int) -> int:
    """Product of (x^d - 1)/(x - 1) over the invariant degrees of W(F4)."""
    total = 1
    for d in WEYL_DEGREES:
        total *= (x**d - 1) // (x - 1)
    return total


@lru_cache(maxsize=1)
def build_root_system() -> RootSystem:
    """Construct (once) and return the shared immutable root system."""
    return RootSystem()
