"""Exact integer polynomials in q, the orbit data table, and the
polynomial identities tying the table together.

The 24 orbit records (representative supports, stabilizer dimensions,
component groups, reductive types, count polynomials, Borel data and
cocharacters) live in data/orbit_table.json; nothing in the code
duplicates those values.  This module parses the count polynomials,
verifies that they sum to q^48, and re-derives each one from the
stabilizer data via the two point-counting recipes

    #orbit(q) = #F4(q) / #stabilizer(q)        (connected stabilizer)
    #orbit(q) = #F4(q) / q^dim(stabilizer)     (unipotent identity component)

using the classical order formulas for the reductive types involved.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


class QPolynomial:
    """Dense integer-coefficient polynomial in q; coeffs[k] multiplies q^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: list[int] | tuple[int, ...] = ()) -> None:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, n: int) -> "QPolynomial":
        return cls((n,))

    @classmethod
    def q_power(cls, k: int) -> "QPolynomial":
        return cls((0,) * k + (1,))

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] += v
        return QPolynomial(out)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial([-v for v in self.coeffs])

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + (-other)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self or not other:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    def divide_exact(self, other: "QPolynomial") -> "QPolynomial":
        """Quotient when the remainder is zero; raises otherwise."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        div = other.coeffs
        lead = div[-1]
        out = [0] * max(len(rem) - len(div) + 1, 0)
        for k in range(len(out) - 1, -1, -1):
            c = rem[k + len(div) - 1]
            if c % lead:
                raise ValueError("not divisible over the integers")
            f = c // lead
            out[k] = f
            if f:
                for j, d in enumerate(div):
                    rem[k + j] -= f * d
        if any(rem):
            raise ValueError("nonzero remainder")
        return QPolynomial(out)

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{k}" if c != 1 else f"q^{k}")
        return " + ".join(parts).replace("+ -", "- ")


def parse_poly(text: str) -> QPolynomial:
    """Parse expressions like 'q^10*(q^4+1)*(q^6-1)' exactly."""
    pos = 0

    def peek() -> str:
        return text[pos] if pos < len(text) else ""

    def expect(ch: str) -> None:
        nonlocal pos
        if peek() != ch:
            raise ValueError(f"expected {ch!r} at {pos} in {text!r}")
        pos += 1

    def number() -> int:
        nonlocal pos
        start = pos
        while peek().isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a number at {pos} in {text!r}")
        return int(text[start:pos])

    def atom() -> QPolynomial:
        nonlocal pos
        if peek() == "(":
            expect("(")
            p = expr()
            expect(")")
        elif peek() == "q":
            pos += 1
            p = QPolynomial.q_power(1)
        elif peek().isdigit():
            p = QPolynomial.const(number())
        else:
            raise ValueError(f"unexpected {peek()!r} at {pos} in {text!r}")
        if peek() == "^":
            expect("^")
            e = number()
            base = p
            p = QPolynomial.const(1)
            for _ in range(e):
                p = p * base
        return p

    def term() -> QPolynomial:
        p = atom()
        while peek() == "*":
            expect("*")
            p = p * atom()
        return p

    def expr() -> QPolynomial:
        neg = False
        if peek() == "-":
            expect("-")
            neg = True
        p = term()
        if neg:
            p = -p
        while peek() in ("+", "-"):
            op = peek()
            expect(op)
            t = term()
            p = p - t if op == "-" else p + t
        return p

    text = text.replace(" ", "")
    p = expr()
    if pos != len(text):
        raise ValueError(f"trailing junk at {pos} in {text!r}")
    return p


# ----------------------------------------------------------------------
# classical group orders: type -> (dimension, rank, order polynomial)

GROUP_ORDERS: dict[str, tuple[int, int, str]] = {
    "F4": (52, 4, "q^24*(q^2-1)*(q^6-1)*(q^8-1)*(q^12-1)"),
    "B3": (21, 3, "q^9*(q^2-1)*(q^4-1)*(q^6-1)"),
    "C3": (21, 3, "q^9*(q^2-1)*(q^4-1)*(q^6-1)"),
    "B2": (10, 2, "q^4*(q^2-1)*(q^4-1)"),
    "G2": (14, 2, "q^6*(q^2-1)*(q^6-1)"),
    "A1": (3, 1, "q*(q^2-1)"),
    "A1xA1": (6, 2, "q^2*(q^2-1)*(q^2-1)"),
    "none": (0, 0, "1"),
}


def group_order(reductive_type: str) -> QPolynomial:
    return parse_poly(GROUP_ORDERS[reductive_type][2])


def f4_order() -> QPolynomial:
    return group_order("F4")


# ----------------------------------------------------------------------
# orbit table

@dataclass(frozen=True)
class OrbitRecord:
    id: str
    support: tuple[str, ...]
    dim_stabilizer: int
    component_group: str
    reductive_type: str
    count_poly: QPolynomial
    dim_borel_stabilizer: int
    phi_geq_size: int
    cocharacter: tuple[int, int, int, int]
    borel_components: int

    @property
    def dim_orbit(self) -> int:
        return 52 - self.dim_stabilizer

    @property
    def irr_count(self) -> int:
        """Number of irreducible representations of the component group."""
        return {"1": 1, "S3": 3}[self.component_group]


@lru_cache(maxsize=1)
def _raw_table() -> tuple[bytes, dict]:
    data = resources.files("f4exotic.data").joinpath("orbit_table.json").read_bytes()
    return data, json.loads(data)


def table_checksum() -> str:
    """sha256 of the data file, quoted in reports for reproducibility."""
    return hashlib.sha256(_raw_table()[0]).hexdigest()


@lru_cache(maxsize=1)
def orbit_table() -> tuple[OrbitRecord, ...]:
    _, raw = _raw_table()
    records = []
    for row in raw["orbits"]:
        records.append(
            OrbitRecord(
                id=row["id"],
                support=tuple(row["support"]),
                dim_stabilizer=row["dim_stabilizer"],
                component_group=row["component_group"],
                reductive_type=row["reductive_type"],
                count_poly=parse_poly(row["count_poly"]),
                dim_borel_stabilizer=row["dim_borel_stabilizer"],
                phi_geq_size=row["phi_geq_size"],
                cocharacter=tuple(row["cocharacter"]),
                borel_components=row["borel_components"],
            )
        )
    if len(records) != 24:
        raise ValueError("orbit table must have 24 rows")
    return tuple(records)


def record(rep_id: str) -> OrbitRecord:
    for r in orbit_table():
        if r.id == rep_id:
            return r
    raise KeyError(rep_id)


# ----------------------------------------------------------------------
# identities

def count_sum_check() -> tuple[bool, QPolynomial]:
    """Sum of the 24 count polynomials against q^48; returns the
    difference as evidence."""
    total = QPolynomial()
    for r in orbit_table():
        total = total + r.count_poly
    diff = total - QPolynomial.q_power(48)
    return (not diff, diff)


def degree_check() -> list[str]:
    """Count-polynomial degree must equal the orbit dimension; returns the
    offending ids."""
    return [r.id for r in orbit_table() if r.count_poly.degree() != r.dim_orbit]


def orbit_stabilizer_consistency(rep_id: str) -> list[int]:
    """Torus ranks t making  count_poly * q^(dim_stab - dim_red - t)
    * (q-1)^t * order(reductive type)  equal to the order of F4(q), i.e.
    consistency of the count polynomial with the stabilizer column via
    the quotient point-count formulas.  Exactly one t is expected; the
    empty list would falsify the transcription."""
    r = record(rep_id)
    dim_red = GROUP_ORDERS[r.reductive_type][0]
    red_order = group_order(r.reductive_type)
    target = f4_order()
    qm1 = parse_poly("q-1")
    hits = []
    for t in range(5):
        unip = r.dim_stabilizer - dim_red - t
        if unip < 0:
            continue
        h = QPolynomial.q_power(unip) * red_order
        for _ in range(t):
            h = h * qm1
        if r.count_poly * h == target:
            hits.append(t)
    return hits


def xi17_unipotent_identity() -> bool:
    """count_poly(xi17) * q^12 equals the order of F4(q): the quotient
    formula for a stabilizer with unipotent identity component."""
    r = record("xi17")
    return r.count_poly * QPolynomial.q_power(r.dim_stabilizer) == f4_order()


def evaluate(p: QPolynomial, q: int) -> int:
    if q < 2:
        raise ValueError("evaluation point must be >= 2")
    return p(q)
