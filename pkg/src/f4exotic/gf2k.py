"""Exact arithmetic in GF(2^n) for 1 <= n <= 16.

Field elements are plain ints: the bits of x are the coefficients of a
polynomial over GF(2), reduced modulo one fixed primitive polynomial per
degree (the table below, lowest-weight classics).  Addition is xor.
Multiplication and inversion go through exp/log tables with respect to
the class of x, which the constructor verifies to be a generator, so a
typo in the modulus table cannot pass silently.

Fixing the modulus per degree keeps every enumeration in the package
bit-for-bit reproducible.
"""

from __future__ import annotations

from functools import lru_cache

# primitive polynomials, bit k set <=> coefficient of x^k
PRIMITIVE_POLY = {
    1: 0b11,                 # x + 1
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10000011,           # x^7 + x + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011, # x^16 + x^12 + x^3 + x + 1
}


def _clmul_mod(a: int, b: int, modulus: int, n: int) -> int:
    """Carryless multiply then reduce; used only to build the tables."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= modulus
    return acc


class GF2k:
    """The field with 2^n elements; elements are ints in range(2^n)."""

    def __init__(self, n: int) -> None:
        if not 1 <= n <= 16:
            raise ValueError(f"extension degree {n} out of range 1..16")
        self.n = n
        self.q = 1 << n
        self.modulus = PRIMITIVE_POLY[n]
        order = self.q - 1
        exp = [1] * order
        for k in range(1, order):
            exp[k] = _clmul_mod(exp[k - 1], 2 if n > 1 else 1, self.modulus, n)
        if n > 1 and len(set(exp)) != order:
            raise AssertionError(f"modulus for n={n} is not primitive")
        log = [0] * self.q
        for k, v in enumerate(exp):
            log[v] = k
        self._exp = exp
        self._log = log

    def __repr__(self) -> str:
        return f"GF2k({self.n})"

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return 1
        order = self.q - 1
        return self._exp[(self._log[a] + self._log[b]) % order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.n == 1:
            return 1
        order = self.q - 1
        return self._exp[(order - self._log[a]) % order]

    def frobenius(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def basis(self) -> list[int]:
        """An F_2-basis: the classes of 1, x, ..., x^(n-1)."""
        return [1 << k for k in range(self.n)]

    def embed_gf2(self, a: int) -> int:
        """GF(2) -> GF(2^n); the prime field is {0, 1} everywhere."""
        if a not in (0, 1):
            raise ValueError("not a GF(2) element")
        return a

    def embed_gf4(self, a: int) -> int:
        """GF(4) -> GF(2^n) for even n, sending the GF(4) generator to a
        fixed element of multiplicative order 3."""
        if self.n % 2:
            raise ValueError(f"GF(4) does not embed in GF(2^{self.n})")
        if a not in (0, 1, 2, 3):
            raise ValueError("not a GF(4) element")
        if a in (0, 1):
            return a
        omega = self._exp[(self.q - 1) // 3] if self.n > 2 else 2
        return omega if a == 2 else omega ^ 1


@lru_cache(maxsize=None)
def field(n: int) -> GF2k:
    """Shared immutable field instance for each degree."""
    return GF2k(n)
