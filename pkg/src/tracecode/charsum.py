"""Character sums over GF(p^m): Gauss sums, the Weil sum S(a, b), and the
counting functions that determine the weights of the trace code.

Every closed form here has a brute-force counterpart that sums over the whole
field; the brute versions are the ground truth and refuse to run when the
work exceeds the operation budget.

Notation used throughout:

* ``S(a, b) = sum_x z^Tr(a x^(p+1) + b x)``
* ``L(x) = x^(p^2) + x``; ``x_b`` solves ``L(x) = -b^p``
* ``t1 = Tr(x_b^(p+1))``, ``t2 = Tr(x_b)``,
  ``A = -m_p/4 + t2^2 / (4 t1)`` computed in GF(p)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclotomic import (
    CycInt,
    as_rational_integer,
    galois_trace,
    p_star,
    sqrt_p_star,
    sqrt_p_star_pow,
)
from .errors import check_budget
from .field import FieldCtx, FieldElement, bar_eta, eta
from .linalg import eliminate

_BRUTE_HINT = "use the closed form (method='closed') or raise the budget"


# ---------------------------------------------------------------------------
# whole-field tables for the brute-force paths


@dataclass(frozen=True)
class FieldTables:
    coords: np.ndarray  # (q, m)
    norm: np.ndarray  # coordinates of x^(p+1)
    tr_x: np.ndarray  # Tr(x)
    tr_norm: np.ndarray  # Tr(x^(p+1))


@lru_cache(maxsize=8)
def field_tables(ctx: FieldCtx) -> FieldTables:
    x = ctx.all_coords
    norm = ctx.mul_vec(ctx.pow_vec(x, ctx.p), x)
    return FieldTables(x, norm, ctx.trace_vec(x), ctx.trace_vec(norm))


@lru_cache(maxsize=8)
def eta_table(ctx: FieldCtx) -> np.ndarray:
    pw = ctx.pow_vec(ctx.all_coords, (ctx.q - 1) // 2)
    is_one = (pw[:, 0] == 1) & ~np.any(pw[:, 1:], axis=1)
    out = np.where(is_one, 1, -1).astype(np.int64)
    out[0] = 0
    return out


def _trace_against(ctx: FieldCtx, rows: np.ndarray, a: FieldElement) -> np.ndarray:
    """Tr(a * y) for each row y."""
    w = ctx.trace_form @ np.asarray(a.coeffs, dtype=np.int64)
    return (rows @ w) % ctx.p


def _zeta_histogram(p: int, exps: np.ndarray, weights: np.ndarray | None = None) -> CycInt:
    counts = np.bincount(exps % p, weights=weights, minlength=p)
    return CycInt.from_exponent_counts(p, [int(round(c)) for c in counts])


# ---------------------------------------------------------------------------
# Gauss sums


def gauss_sum_q(ctx: FieldCtx, budget: int | None = None) -> CycInt:
    """sum over c != 0 of eta(c) z^Tr(c), by enumeration."""
    check_budget("Gauss sum", ctx.q, budget, _BRUTE_HINT)
    tr = ctx.trace_vec(ctx.all_coords)
    return _zeta_histogram(ctx.p, tr, eta_table(ctx).astype(float))


def gauss_sum_q_closed(ctx: FieldCtx) -> CycInt:
    sign = -1 if ctx.m % 2 == 0 else 1
    return sqrt_p_star_pow(ctx.p, ctx.m) * sign


def quad_sum_closed(a2: int, a1: int, a0: int, p: int) -> CycInt:
    a2 %= p
    if a2 == 0:
        raise ValueError("quad_sum: leading coefficient must be nonzero")
    shift = (a0 - a1 * a1 * pow(4 * a2, p - 2, p)) % p
    return CycInt.zeta_power(p, shift) * sqrt_p_star(p) * bar_eta(a2, p)


def quad_sum(a2: int, a1: int, a0: int, p: int) -> CycInt:
    """sum over c in GF(p) of z^(a2 c^2 + a1 c + a0), checked against the
    completed-square closed form."""
    if a2 % p == 0:
        raise ValueError("quad_sum: leading coefficient must be nonzero")
    full = [0] * p
    for c in range(p):
        full[(a2 * c * c + a1 * c + a0) % p] += 1
    brute = CycInt.from_exponent_counts(p, full)
    closed = quad_sum_closed(a2, a1, a0, p)
    if brute != closed:
        raise ArithmeticError(f"quadratic sum mismatch: {brute} != {closed}")
    return brute


# ---------------------------------------------------------------------------
# the Weil sum S(a, b)


def s_sum_brute(a: FieldElement, b: FieldElement, budget: int | None = None) -> CycInt:
    ctx = a.ctx
    check_budget("S(a,b) by enumeration", ctx.q, budget, _BRUTE_HINT)
    t = field_tables(ctx)
    exps = _trace_against(ctx, t.norm, a) + _trace_against(ctx, t.coords, b)
    return _zeta_histogram(ctx.p, exps)


@dataclass(frozen=True)
class SolutionSet:
    """Affine solution set ``particular + span(kernel)`` (empty if no particular)."""

    ctx: FieldCtx
    particular: FieldElement | None
    kernel: tuple[FieldElement, ...]

    def __len__(self) -> int:
        if self.particular is None:
            return 0
        return self.ctx.p ** len(self.kernel)

    def __iter__(self):
        if self.particular is None:
            return
        p = self.ctx.p
        k = len(self.kernel)
        for n in range(p**k):
            x = self.particular
            for v in self.kernel:
                n, r = divmod(n, p)
                if r:
                    x = x + v * r
            yield x

    def __contains__(self, x: FieldElement) -> bool:
        return any(x == y for y in self)

    def smallest(self) -> FieldElement | None:
        """Solution with lexicographically smallest coordinate vector."""
        return min(self, key=lambda e: e.coeffs, default=None)


def linearized_map(a: FieldElement):
    """x -> a^p x^(p^2) + a x."""
    ctx = a.ctx
    ap = a**ctx.p
    p2 = ctx.p**2
    return lambda x: ap * x**p2 + a * x


@lru_cache(maxsize=256)
def _linearized_elim(a: FieldElement):
    ctx = a.ctx
    mat = ctx.linear_map_matrix(linearized_map(a))
    # x @ mat = rhs  <=>  mat.T x = rhs
    return eliminate(mat.T, ctx.p)


def linearized_solve(a: FieldElement, rhs: FieldElement) -> SolutionSet:
    """All x with a^p x^(p^2) + a x = rhs, by elimination over GF(p)."""
    if a.is_zero():
        raise ValueError("linearized_solve: a must be nonzero")
    ctx = a.ctx
    elim = _linearized_elim(a)
    x, ok = elim.solve_many(np.array(rhs.coeffs))
    kernel = tuple(ctx(v) for v in elim.kernel_basis())
    part = ctx(x[0]) if ok[0] else None
    return SolutionSet(ctx, part, kernel)


def is_degenerate(a: FieldElement) -> bool:
    """True when a^p x^(p^2) + a x is not a permutation of GF(q).

    For m even this is a^((q-1)/(p+1)) = (-1)^(m/2); for m odd never.
    """
    ctx = a.ctx
    if ctx.m % 2:
        return False
    target = ctx.one if (ctx.m // 2) % 2 == 0 else -ctx.one
    return a ** ((ctx.q - 1) // (ctx.p + 1)) == target


def weil_prefactor(a: FieldElement) -> CycInt:
    """Factor c(a) with S(a, b) = c(a) * z^Tr(-a x^(p+1)) whenever x solves
    a^p x^(p^2) + a x = -b^p."""
    ctx = a.ctx
    p, m = ctx.p, ctx.m
    if m % 2:
        return sqrt_p_star_pow(p, m) * eta(a)
    half = -1 if (m // 2) % 2 else 1
    if is_degenerate(a):
        return CycInt.integer(p, -half * p ** (m // 2 + 1))
    return CycInt.integer(p, half * p ** (m // 2))


def s_sum_closed(a: FieldElement, b: FieldElement) -> CycInt:
    if a.is_zero():
        raise ValueError("s_sum_closed: a must be nonzero")
    ctx = a.ctx
    sol = linearized_solve(a, -(b**ctx.p))
    expected_kernel = 2 if is_degenerate(a) else 0
    if len(sol.kernel) != expected_kernel:
        raise ArithmeticError(
            f"kernel dimension {len(sol.kernel)} contradicts permutation criterion"
        )
    if sol.particular is None:
        return CycInt(ctx.p)
    x = sol.particular
    exponent = (-(a * x ** (ctx.p + 1))).trace()
    return weil_prefactor(a) * CycInt.zeta_power(ctx.p, exponent)


def s_sum(a: FieldElement, b: FieldElement) -> CycInt:
    """S(a, b) for any a; a = 0 is the additive-character orthogonality case."""
    if a.is_zero():
        return CycInt.integer(a.ctx.p, a.ctx.q if b.is_zero() else 0)
    return s_sum_closed(a, b)


# ---------------------------------------------------------------------------
# counting lemmas


def _half_exponent(m: int) -> int:
    """(m - 1 + (-1)^(m/2)) / 2 for even m."""
    return (m - 1 + (1 if (m // 2) % 2 == 0 else -1)) // 2


def sum_s_diag(ctx: FieldCtx, method: str = "closed", budget: int | None = None) -> CycInt:
    """sum over c in GF(p)* of S(c, -c)."""
    p, m, mp = ctx.p, ctx.m, ctx.m_p
    if method == "brute":
        check_budget("sum of S(c,-c)", ctx.q * (p - 1), budget, _BRUTE_HINT)
        acc = CycInt(p)
        for c in range(1, p):
            acc = acc + s_sum_brute(ctx(c), ctx(-c), budget)
        return acc
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    if m % 2:
        sign = 1 if p % 4 == 1 else -1
        return sqrt_p_star_pow(p, m + 1) * (sign * bar_eta(mp, p))
    e = _half_exponent(m) + 1
    if mp == 0:
        return CycInt.integer(p, -(p - 1) * p**e)
    return CycInt.integer(p, p**e)


def n0(ctx: FieldCtx, method: str = "closed", budget: int | None = None) -> int:
    """|{x in GF(q) : Tr(x^(p+1) - x) = 0}|."""
    p, m, mp = ctx.p, ctx.m, ctx.m_p
    if method == "brute":
        check_budget("n0 count", ctx.q, budget, _BRUTE_HINT)
        t = field_tables(ctx)
        return int(np.count_nonzero((t.tr_norm - t.tr_x) % p == 0))
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    if m % 2:
        sign = 1 if p % 4 == 1 else -1
        extra = sign * bar_eta(mp, p) * p_star(p) ** ((m + 1) // 2)
        return p ** (m - 1) + _exact_div(extra, p)
    e = _half_exponent(m)
    if mp == 0:
        return p ** (m - 1) - (p - 1) * p**e
    return p ** (m - 1) + p**e


def _exact_div(num, den) -> int:
    val = Fraction(num) / Fraction(den)
    if val.denominator != 1:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return int(val)


@dataclass(frozen=True)
class BClass:
    """Data about b that decides N(b)."""

    b: FieldElement
    in_image: bool
    x_b: FieldElement | None = None
    t1: int | None = None
    t2: int | None = None
    a_val: int | None = None

    def key(self) -> tuple:
        return (self.in_image, self.t1, self.t2)

    def to_json(self) -> dict:
        return {
            "b": list(self.b.coeffs),
            "in_image": self.in_image,
            "t1": self.t1,
            "t2": self.t2,
            "a_val": self.a_val,
        }


def a_value(p: int, mp: int, t1: int, t2: int) -> int | None:
    if t1 % p == 0:
        return None
    inv4 = pow(4, p - 2, p)
    return (-mp * inv4 + t2 * t2 * pow(4 * t1, p - 2, p)) % p


def _class_data(x: FieldElement) -> tuple[int, int]:
    ctx = x.ctx
    return (x ** (ctx.p + 1)).trace(), x.trace()


def classify_b(b: FieldElement) -> BClass:
    if b.is_zero():
        raise ValueError("classify_b: b must be nonzero")
    ctx = b.ctx
    sol = linearized_solve(ctx.one, -(b**ctx.p))
    if sol.particular is None:
        return BClass(b, False)
    if sol.kernel:
        x_b = sol.smallest()
        t1, t2 = _class_data(x_b)
        for other in sol:
            if _class_data(other) != (t1, t2):
                raise ArithmeticError(
                    f"class data depends on the choice of solution for b={b}"
                )
    else:
        x_b = sol.particular
        t1, t2 = _class_data(x_b)
    return BClass(b, True, x_b, t1, t2, a_value(ctx.p, ctx.m_p, t1, t2))


@lru_cache(maxsize=4096)
def m_sum_from_class(ctx: FieldCtx, in_image: bool, t1: int | None, t2: int | None) -> CycInt:
    """M(b) through the Galois sum over y of sigma_y(...).

    S(1, bz - 1) is c(1) z^-(t1 z^2 + t2 z + m_p/4), and summing z over
    GF(p)* either collapses to (p - 1) or -1 (t1 = 0) or completes a square
    into bar_eta(-t1) sqrt(p*) z^A (t1 != 0).
    """
    p = ctx.p
    if not in_image:
        # only possible when L is not onto; every S(y, bz - y) vanishes
        return CycInt(p)
    c = weil_prefactor(ctx.one)
    inv4 = pow(4, p - 2, p)
    shift = (-ctx.m_p * inv4) % p
    if t1 == 0:
        inner = c * CycInt.zeta_power(p, shift) * ((p - 1) if t2 == 0 else -1)
    else:
        big_a = a_value(p, ctx.m_p, t1, t2)
        inner = c * (
            sqrt_p_star(p) * CycInt.zeta_power(p, big_a) * bar_eta(-t1, p)
            - CycInt.zeta_power(p, shift)
        )
    return galois_trace(inner)


def m_sum_brute(b: FieldElement, budget: int | None = None) -> CycInt:
    """The triple sum over y, z in GF(p)* and x in GF(q)."""
    ctx = b.ctx
    p = ctx.p
    check_budget("M(b) triple sum", ctx.q * (p - 1) ** 2, budget, _BRUTE_HINT)
    t = field_tables(ctx)
    u = (t.tr_norm - t.tr_x) % p  # Tr(x^(p+1) - x)
    v = _trace_against(ctx, t.coords, b)  # Tr(b x)
    joint = np.bincount(u * p + v, minlength=p * p).reshape(p, p)
    full = [0] * p
    for y in range(1, p):
        for z in range(1, p):
            for uu in range(p):
                for vv in range(p):
                    n = int(joint[uu, vv])
                    if n:
                        full[(y * uu + z * vv) % p] += n
    return CycInt.from_exponent_counts(p, full)


def m_sum(b: FieldElement, method: str = "closed", budget: int | None = None) -> CycInt:
    if b.is_zero():
        raise ValueError("m_sum: b must be nonzero")
    if method == "brute":
        return m_sum_brute(b, budget)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    cls = classify_b(b)
    return m_sum_from_class(b.ctx, *cls.key())


@lru_cache(maxsize=4096)
def n_from_class(ctx: FieldCtx, in_image: bool, t1: int | None, t2: int | None) -> int:
    """N(b) = p^(m-2) + (sum_c S(c,-c) + M(b)) / p^2, evaluated exactly."""
    p, m = ctx.p, ctx.m
    total = as_rational_integer(sum_s_diag(ctx) + m_sum_from_class(ctx, in_image, t1, t2))
    return _exact_div(Fraction(total, p * p) + Fraction(p) ** (m - 2), 1)


def count_N(b: FieldElement, method: str = "closed", budget: int | None = None) -> int:
    """|{x : Tr(x^(p+1) - x) = 0 and Tr(b x) = 0}|."""
    if b.is_zero():
        raise ValueError("count_N: b must be nonzero")
    ctx = b.ctx
    if method == "brute":
        check_budget("N(b) count", ctx.q, budget, _BRUTE_HINT)
        t = field_tables(ctx)
        on_d = (t.tr_norm - t.tr_x) % ctx.p == 0
        return int(np.count_nonzero(on_d & (_trace_against(ctx, t.coords, b) == 0)))
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    return n_from_class(ctx, *classify_b(b).key())


def _count_special_closed(kind: str, ctx: FieldCtx, a: int) -> int:
    p, m, mp = ctx.p, ctx.m, ctx.m_p
    ps = p_star(p)
    sgn = 1 if p % 4 == 1 else -1  # (-1)^((p-1)/2)
    odd = m % 2 == 1
    two = m % 4 == 2
    h = m // 2
    if kind == "N_a":
        if odd:
            if a == 0:
                return p ** (m - 1)
            return p ** (m - 1) + _exact_div(bar_eta(-a, p) * ps ** ((m + 1) // 2), p)
        e = h - 1 if two else h
        return p ** (m - 1) - p**e * (p - 1) if a == 0 else p ** (m - 1) + p**e
    if kind == "N_a0":
        base = Fraction(p) ** (m - 2)
        e = h - 1 if two else h
        if mp == 0:
            if odd:
                val = base if a == 0 else base + Fraction(bar_eta(-a, p) * ps ** ((m + 1) // 2), p)
            else:
                val = base - p**e * (p - 1) if a == 0 else base + p**e
        else:
            if odd:
                term = Fraction(bar_eta(-mp, p) * ps ** ((m + 1) // 2), p * p)
                val = base + term * (p - 1) if a == 0 else base - term
            else:
                val = base if a == 0 else base - bar_eta(mp, p) * bar_eta(a, p) * sgn * p**e
        return _exact_div(val, 1)
    if kind == "Nbar0":
        if mp == 0:
            raise ValueError("Nbar0 requires m mod p != 0")
        if odd:
            return p ** (m - 1) + _exact_div(
                bar_eta(-mp, p) * ps ** ((m + 1) // 2) * (p - 1), p
            )
        return p ** (m - 1)
    raise ValueError(f"unknown kind {kind!r}")


def count_special(
    kind: str, ctx: FieldCtx, a: int = 0, method: str = "closed", budget: int | None = None
) -> int:
    """N_a, N_(a,0) and Nbar0 counts.

    * ``N_a``:    |{x : Tr(x^(p+1)) = a}|
    * ``N_a0``:   |{x : Tr(x^(p+1)) = a, Tr(x) = 0}|
    * ``Nbar0``:  |{x : Tr(x^(p+1)) - Tr(x)^2 / m_p = 0}|, needs m_p != 0
    """
    p = ctx.p
    a %= p
    if kind == "Nbar0" and ctx.m_p == 0:
        raise ValueError("Nbar0 requires m mod p != 0")
    if method == "closed":
        return _count_special_closed(kind, ctx, a)
    if method != "brute":
        raise ValueError(f"unknown method {method!r}")
    check_budget(f"{kind} count", ctx.q, budget, _BRUTE_HINT)
    t = field_tables(ctx)
    if kind == "N_a":
        return int(np.count_nonzero(t.tr_norm == a))
    if kind == "N_a0":
        return int(np.count_nonzero((t.tr_norm == a) & (t.tr_x == 0)))
    if kind == "Nbar0":
        inv = pow(ctx.m_p, p - 2, p)
        return int(np.count_nonzero((t.tr_norm - inv * t.tr_x * t.tr_x) % p == 0))
    raise ValueError(f"unknown kind {kind!r}")


def clear_caches() -> None:
    """Drop memoised per-field tables (used for cold-start timings)."""
    for fn in (field_tables, eta_table, _linearized_elim, m_sum_from_class, n_from_class):
        fn.cache_clear()
