"""Exact arithmetic in Z[z], z a primitive p-th root of unity.

A :class:`CycInt` stores p - 1 Python integers, the coefficients of
z^0, ..., z^(p-2); z^(p-1) is eliminated with 1 + z + ... + z^(p-1) = 0, so
equality is coefficient equality.  Python integers never overflow.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import NotRationalError
from .field import bar_eta, is_prime


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int] = ()):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > p - 1:
            coeffs = _reduce_full(p, coeffs)
        coeffs += [0] * (p - 1 - len(coeffs))
        self.p = p
        self.coeffs = tuple(coeffs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Iterable[int]) -> "CycInt":
        """sum_k counts[k] * z^k for k = 0..p-1 (counts of length p)."""
        return cls(p, _reduce_full(p, list(counts)))

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, [n])

    @classmethod
    def zeta_power(cls, p: int, k: int) -> "CycInt":
        full = [0] * p
        full[k % p] = 1
        return cls.from_exponent_counts(p, full)

    # -- ring operations ---------------------------------------------------------

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError("cyclotomic integers for different p")
            return other
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CycInt.from_exponent_counts(p, full)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[z]")
        result = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        return isinstance(other, CycInt) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycInt(p={self.p}, {format_cycint(self)!r})"

    def __str__(self):
        return format_cycint(self)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def exponent_vector(self) -> list[int]:
        """Coefficients on z^0..z^(p-1) with the z^(p-1) slot zero."""
        return list(self.coeffs) + [0]


def _reduce_full(p: int, full: Sequence[int]) -> list[int]:
    """Fold an exponent-count vector (any length) into the canonical basis."""
    folded = [0] * p
    for k, c in enumerate(full):
        folded[k % p] += c
    top = folded[p - 1]
    return [c - top for c in folded[: p - 1]]


# ---------------------------------------------------------------------------


def cyc_arith(op: str, u: CycInt, v: CycInt | None = None) -> CycInt:
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    if op == "neg":
        return -u
    raise ValueError(f"unknown op {op!r}")


def galois(a: int, u: CycInt) -> CycInt:
    """Apply the automorphism z -> z^a."""
    p = u.p
    if a % p == 0:
        raise ValueError("galois: a must be a unit mod p")
    full = [0] * p
    for j, c in enumerate(u.coeffs):
        if c:
            full[j * a % p] += c
    return CycInt.from_exponent_counts(p, full)


def galois_trace(u: CycInt) -> CycInt:
    """sum over y in GF(p)* of galois(y, u)."""
    acc = CycInt(u.p)
    for y in range(1, u.p):
        acc = acc + galois(y, u)
    return acc


def p_star(p: int) -> int:
    return p if p % 4 == 1 else -p


def sqrt_p_star(p: int) -> CycInt:
    """The quadratic Gauss sum sum_{c != 0} bar_eta(c) z^c over GF(p)."""
    if not is_prime(p) or p < 3:
        raise ValueError("p must be an odd prime")
    return CycInt.from_exponent_counts(p, [bar_eta(c, p) for c in range(p)])


def sqrt_p_star_pow(p: int, k: int) -> CycInt:
    """sqrt(p*)^k as (p*)^(k // 2) * sqrt(p*)^(k % 2)."""
    base = p_star(p) ** (k // 2)
    if k % 2:
        return sqrt_p_star(p) * base
    return CycInt.integer(p, base)


def as_rational_integer(u: CycInt) -> int:
    if not u.is_rational():
        raise NotRationalError(f"not rational: {format_cycint(u)}")
    return u.coeffs[0]


# -- text format -------------------------------------------------------------------


def _representations(u: CycInt):
    full = u.exponent_vector()
    p = u.p
    for j in range(p):
        t = full[j]
        yield j, [c - t for c in full]


def format_cycint(u: CycInt) -> str:
    """Render as a polynomial in z, e.g. ``"3 - 2*z^1 + z^3"``.

    Among the p equivalent exponent vectors the one with the fewest nonzero
    terms is printed; ties prefer a zero constant term, i.e. the basis
    z, ..., z^(p-1).
    """
    full = u.exponent_vector()
    best = full
    best_key = (sum(1 for c in full if c), full[0] != 0)
    for _, cand in _representations(u):
        key = (sum(1 for c in cand if c), cand[0] != 0)
        if key < best_key:
            best, best_key = cand, key
    terms = []
    for k, c in enumerate(best):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = f"z^{k}"
        else:
            body = f"{abs(c)}*z^{k}"
        if not terms:
            terms.append(body if c > 0 else "-" + body)
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*z(?:\s*\^\s*(-?\d+))?)?")


def parse_cycint(text: str, p: int) -> CycInt:
    """Inverse of :func:`format_cycint`; accepts any integer exponents."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return CycInt(p)
    full = [0] * p
    pos = 0
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if mt is None or mt.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        sign, digits, zpart, exp = mt.groups()
        if not digits and not zpart:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        coef = int(digits) if digits else 1
        if sign == "-":
            coef = -coef
        if zpart:
            k = int(exp) if exp is not None else 1
        else:
            k = 0
        full[k % p] += coef
        pos = mt.end()
    return CycInt.from_exponent_counts(p, full)
