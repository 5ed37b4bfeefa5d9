"""The trace code C_D and its weight distribution.

D = {x in GF(q)* : Tr(x^(p+1) - x) = 0}, and the codeword of b is
(Tr(b d))_{d in D}.  Weights are computed three independent ways:

``brute``
    every codeword of every b, directly.
``walsh``
    W(u) = sum_{d in D} z^(u . d) for all u at once by a radix-p transform
    with exact cyclotomic accumulators; Tr(b d) = (T b) . d for the trace
    form T, and #{d : Tr(bd) = 0} = (1/p) sum_z W(z T b).
``fast``
    wt(c_b) = n0 - N(b) with N(b) from the closed form, evaluated once per
    class (in_image, Tr(x_b^(p+1)), Tr(x_b)).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .charsum import _linearized_elim, field_tables, n0, n_from_class
from .errors import check_budget
from .field import FieldCtx, FieldElement
from .linalg import eliminate

METHODS = ("brute", "walsh", "fast")
_CHUNK_CELLS = 1 << 22


@dataclass
class WeightDistribution:
    p: int
    n: int
    k: int
    counts: dict[int, int]
    m: int | None = None
    modulus: tuple[int, ...] | None = None
    method: str | None = None

    def __post_init__(self):
        self.counts = {int(w): int(a) for w, a in sorted(self.counts.items()) if a}
        self.counts.setdefault(0, 1)
        self.counts = dict(sorted(self.counts.items()))

    @property
    def nonzero(self) -> dict[int, int]:
        return {w: a for w, a in self.counts.items() if w}

    @property
    def min_weight(self) -> int | None:
        return min(self.nonzero, default=None)

    @property
    def max_weight(self) -> int | None:
        return max(self.nonzero, default=None)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def same_weights(self, other: "WeightDistribution") -> bool:
        return self.counts == other.counts

    def polynomial(self) -> str:
        terms = ["1"] + [f"{a}z^{w}" for w, a in self.nonzero.items()]
        return "+".join(terms)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "m": self.m,
            "method": self.method,
            "modulus": list(self.modulus) if self.modulus is not None else None,
            "n": self.n,
            "p": self.p,
            "weights": {str(w): a for w, a in self.nonzero.items()},
        }
        return out

    def to_csv(self) -> str:
        return "".join(f"{w},{a}\n" for w, a in self.nonzero.items())


@dataclass
class TraceCode:
    ctx: FieldCtx
    coords: np.ndarray = field(repr=False)  # (n, m) coordinates of D

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @property
    def m(self) -> int:
        return self.ctx.m

    @cached_property
    def defining_set(self) -> list[FieldElement]:
        return [self.ctx(row) for row in self.coords]

    @cached_property
    def k(self) -> int:
        return generator_matrix(self).rank


def build_code(ctx: FieldCtx) -> TraceCode:
    if ctx.m < 2:
        raise ValueError("the trace code needs m >= 2")
    t = field_tables(ctx)
    on_d = (t.tr_norm - t.tr_x) % ctx.p == 0
    on_d[0] = False
    coords = np.ascontiguousarray(t.coords[on_d])
    code = TraceCode(ctx, coords)
    expected = n0(ctx) - 1
    if code.n != expected:
        raise ArithmeticError(f"|D| = {code.n} but n0 - 1 = {expected}")
    return code


def codeword(code: TraceCode, b: FieldElement) -> np.ndarray:
    ctx = code.ctx
    w = ctx.trace_form @ np.asarray(b.coeffs, dtype=np.int64)
    return (code.coords @ w) % ctx.p


# ---------------------------------------------------------------------------
# per-b weights, indexed by the element index of b (entry 0 is b = 0)


def _chunks(total: int, size: int):
    for start in range(0, total, size):
        yield start, min(total, start + size)


def weights_brute(code: TraceCode, budget: int | None = None, workers: int = 1) -> np.ndarray:
    ctx = code.ctx
    q, n, p = ctx.q, code.n, ctx.p
    check_budget(
        "brute-force weight enumeration", q * n, budget, "use --method fast"
    )
    bt = (ctx.all_coords @ ctx.trace_form) % p  # rows: T b
    d_t = code.coords.T.copy()
    out = np.zeros(q, dtype=np.int64)
    size = max(1, _CHUNK_CELLS // max(n, 1))

    def run(bounds):
        lo, hi = bounds
        vals = (bt[lo:hi] @ d_t) % p
        out[lo:hi] = np.count_nonzero(vals, axis=1)

    spans = list(_chunks(q, size))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, spans))
    else:
        for s in spans:
            run(s)
    return out


def walsh_spectrum(code: TraceCode) -> np.ndarray:
    """W(u) for every u in GF(p)^m as a (q, p) array of exponent counts.

    Row index is sum u_j p^j; column e counts the d in D with u . d = e.
    """
    ctx = code.ctx
    p, m = ctx.p, ctx.m
    grid = np.zeros((p,) * m + (p,), dtype=np.int64)
    grid[tuple(code.coords.T) + (0,)] = 1
    for axis in range(m):
        new = np.zeros_like(grid)
        slices = [np.take(grid, x, axis=axis) for x in range(p)]
        for u in range(p):
            acc = np.zeros_like(slices[0])
            for x in range(p):
                acc += np.roll(slices[x], (u * x) % p, axis=-1)
            idx = (slice(None),) * axis + (u,)
            new[idx] = acc
        grid = new
    order = list(reversed(range(m))) + [m]
    return grid.transpose(order).reshape(ctx.q, p)


def weights_walsh(code: TraceCode, budget: int | None = None) -> np.ndarray:
    ctx = code.ctx
    p, q = ctx.p, ctx.q
    check_budget("Walsh transform", q * p * ctx.m, budget, "use --method fast")
    flat = walsh_spectrum(code)
    u = (ctx.all_coords @ ctx.trace_form) % p
    acc = np.zeros((q, p), dtype=np.int64)
    for z in range(p):
        acc += flat[ctx.index_of((z * u) % p)]
    # a rational integer has equal coefficients on z^1..z^(p-1)
    if np.any(acc[:, 1:] != acc[:, 1:2]):
        raise ArithmeticError("Walsh sum is not a rational integer")
    diff = acc[:, 0] - acc[:, 1]
    if np.any(diff % p):
        raise ArithmeticError("Walsh sum is not divisible by p")
    zeros_on_d = diff // p
    return code.n - zeros_on_d


def class_keys(ctx: FieldCtx, b_coords: np.ndarray):
    """Vectorised (in_image, t1, t2) for rows of ``b_coords``."""
    p = ctx.p
    rhs = (-(b_coords @ ctx.frobenius_matrix)) % p
    x_b, in_image = _linearized_elim(ctx.one).solve_many(rhs)
    t1 = np.einsum("ni,ij,nj->n", x_b, ctx.norm_form, x_b) % p
    t2 = ctx.trace_vec(x_b)
    return in_image, t1, t2


def weights_fast(code: TraceCode) -> np.ndarray:
    ctx = code.ctx
    p, q = ctx.p, ctx.q
    out = np.zeros(q, dtype=np.int64)
    n_0 = code.n + 1
    for lo, hi in _chunks(q, 1 << 18):
        lo = max(lo, 1)
        in_image, t1, t2 = class_keys(ctx, ctx.all_coords[lo:hi])
        key = np.where(in_image, 1 + t1 * p + t2, 0)
        uniq, inv = np.unique(key, return_inverse=True)
        wts = []
        for k in uniq:
            if k == 0:
                wts.append(n_0 - n_from_class(ctx, False, None, None))
            else:
                t1v, t2v = divmod(int(k) - 1, p)
                wts.append(n_0 - n_from_class(ctx, True, t1v, t2v))
        out[lo:hi] = np.asarray(wts, dtype=np.int64)[inv.ravel()]
    return out


def weights_per_b(
    code: TraceCode, method: str = "fast", budget: int | None = None, workers: int = 1
) -> np.ndarray:
    if method == "brute":
        return weights_brute(code, budget, workers)
    if method == "walsh":
        return weights_walsh(code, budget)
    if method == "fast":
        return weights_fast(code)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def weight_distribution(
    code: TraceCode, method: str = "fast", budget: int | None = None, workers: int = 1
) -> WeightDistribution:
    wts = weights_per_b(code, method, budget, workers)
    if np.any(wts[1:] <= 0):
        raise ArithmeticError("a nonzero b produced the zero codeword")
    hist = np.bincount(wts, minlength=code.n + 1)
    counts = {int(w): int(a) for w, a in enumerate(hist) if a}
    # all q codewords are distinct, so the dimension is m
    return WeightDistribution(
        p=code.ctx.p,
        n=code.n,
        k=code.m,
        counts=counts,
        m=code.m,
        modulus=code.ctx.modulus,
        method=method,
    )


# ---------------------------------------------------------------------------
# generator matrix and structural checks


@dataclass
class GeneratorMatrix:
    matrix: np.ndarray
    rank: int
    p: int
    m: int

    @property
    def full_rank(self) -> bool:
        return self.rank == self.m

    def zero_columns(self) -> int:
        return int(np.count_nonzero(~np.any(self.matrix, axis=0)))

    def export(self) -> str:
        k, n = self.matrix.shape
        lines = [f"{self.p} {self.m} {n} {k}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.matrix]
        return "\n".join(lines) + "\n"


def generator_matrix(code: TraceCode) -> GeneratorMatrix:
    rows = np.array([codeword(code, beta) for beta in code.ctx.basis], dtype=np.int64)
    rank = eliminate(rows, code.ctx.p).rank
    return GeneratorMatrix(rows, rank, code.ctx.p, code.m)


def export_generator_matrix(code: TraceCode, path: str | Path) -> GeneratorMatrix:
    gm = generator_matrix(code)
    if not gm.full_rank:
        raise ArithmeticError(f"generator matrix has rank {gm.rank} < m = {gm.m}")
    Path(path).write_text(gm.export())
    return gm


@dataclass
class CheckReport:
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, passed, detail in self.checks if not passed]


def pless_check(
    dist: WeightDistribution,
    m: int | None = None,
    generator: GeneratorMatrix | None = None,
) -> CheckReport:
    """First two power moments, positivity of weights, no zero columns."""
    p, n = dist.p, dist.n
    if m is None:
        m = dist.m if dist.m is not None else dist.k
    nz = dist.nonzero
    checks = []
    s0 = sum(nz.values())
    checks.append(("count", s0 == p**m - 1, f"sum A_w = {s0}, expected {p**m - 1}"))
    s1 = sum(w * a for w, a in nz.items())
    want = (p - 1) * n * p ** (m - 1)
    checks.append(("first moment", s1 == want, f"sum w A_w = {s1}, expected {want}"))
    mw = dist.min_weight
    checks.append(("min weight", mw is not None and mw >= 1, f"min weight {mw}"))
    if generator is not None:
        zc = generator.zero_columns()
        checks.append(("dual distance >= 2", zc == 0, f"{zc} all-zero columns"))
    return CheckReport(checks)
