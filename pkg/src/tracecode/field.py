"""Exact arithmetic in GF(p) and GF(p^m) for odd primes p.

Elements of GF(p^m) are stored in the power basis 1, a, ..., a^(m-1) where
``a`` is a root of a fixed monic irreducible modulus.  Each element also has an
integer index, the coordinate vector read as a base-p integer with the
constant coordinate least significant; enumeration order is ascending index.

Single-element operations live on :class:`FieldElement`.  Bulk operations
(``mul_vec``, ``pow_vec``, ``trace_vec``) act on ``(N, m)`` integer arrays of
coordinates and are what the brute-force paths use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import FieldError, ReducibleModulusError

DEFAULT_TRACE_TABLE_CAP = 1 << 22


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def bar_eta(a: int, p: int) -> int:
    """Quadratic character of GF(p), with bar_eta(0) = 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists constant term first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_mod(out, f, p)


def _poly_powmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Checks x^(p^m) = x mod f and gcd(x^(p^d) - x, f) = 1 for every proper
    divisor d of m = deg f.
    """
    f = [c % p for c in f]
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    if m == 1:
        return True
    frob = [[0, 1]]  # frob[k] = x^(p^k) mod f
    for _ in range(m):
        frob.append(_poly_powmod(frob[-1], p, f, p))
    if _trim(list(frob[m])) != [0, 1]:
        return False
    for d in range(1, m):
        if m % d:
            continue
        h = list(frob[d]) + [0] * max(0, 2 - len(frob[d]))
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(h, f, p)) != 1:
            return False
    return True


def _int_to_digits(n: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        n, r = divmod(n, p)
        out.append(r)
    return out


def irreducible_moduli(p: int, m: int) -> Iterator[tuple[int, ...]]:
    """All monic irreducible degree-m polynomials, ordered by sum c_i p^i."""
    for n in range(p**m):
        f = _int_to_digits(n, p, m) + [1]
        if m >= 2 and f[0] == 0:
            continue
        if is_irreducible(f, p):
            yield tuple(f)


def find_modulus(p: int, m: int) -> tuple[int, ...]:
    """The default modulus: first entry of :func:`irreducible_moduli`."""
    if not is_prime(p) or p < 3:
        raise FieldError("p must be an odd prime")
    if m < 1:
        raise FieldError("m must be >= 1")
    return next(irreducible_moduli(p, m))


def parse_modulus(text: str, p: int) -> tuple[int, ...]:
    """Parse ``"c0,c1,...,1"`` and check that it is monic and irreducible."""
    try:
        coeffs = [int(t) % p for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise FieldError(f"cannot parse modulus {text!r}") from exc
    if len(coeffs) < 2:
        raise FieldError("modulus must have degree >= 1")
    if coeffs[-1] != 1:
        raise FieldError("modulus leading coefficient must be 1")
    if not is_irreducible(coeffs, p):
        raise ReducibleModulusError(
            f"modulus {format_poly(coeffs)} is reducible over GF({p})"
        )
    return tuple(coeffs)


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------


class FieldCtx:
    """A concrete GF(p^m) with fixed modulus.

    Immutable after construction; derived tables are computed lazily and
    cached, so a context can be shared freely between threads.
    """

    def __init__(
        self,
        p: int,
        m: int,
        modulus: Sequence[int] | None = None,
        trace_table_cap: int = DEFAULT_TRACE_TABLE_CAP,
    ):
        if not is_prime(p) or p < 3:
            raise FieldError("p must be an odd prime")
        if m < 1:
            raise FieldError("m must be >= 1")
        if modulus is None:
            modulus = find_modulus(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1:
                raise FieldError(f"modulus must have degree {m}")
            if modulus[-1] != 1:
                raise FieldError("modulus leading coefficient must be 1")
            if not is_irreducible(modulus, p):
                raise ReducibleModulusError(
                    f"modulus {format_poly(modulus)} is reducible over GF({p})"
                )
        self._p = p
        self._m = m
        self._modulus = tuple(modulus)
        self.trace_table_cap = trace_table_cap

    p = property(lambda self: self._p)
    m = property(lambda self: self._m)
    modulus = property(lambda self: self._modulus)

    @property
    def q(self) -> int:
        return self._p**self._m

    @property
    def m_p(self) -> int:
        return self._m % self._p

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self._p == other._p
            and self._modulus == other._modulus
        )

    def __hash__(self):
        return hash((self._p, self._modulus))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={format_poly(self.modulus)})"

    # -- element construction ------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            coeffs = [0] * self.m
            coeffs[0] = int(value) % self.p
            return FieldElement(self, tuple(coeffs))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) != self.m:
            raise FieldError(f"expected {self.m} coordinates, got {len(coeffs)}")
        return FieldElement(self, tuple(coeffs))

    def from_index(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise FieldError("index out of range")
        return FieldElement(self, tuple(_int_to_digits(index, self.p, self.m)))

    def parse_element(self, text: str) -> "FieldElement":
        """Parse comma-separated coordinates, constant term first."""
        try:
            parts = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
        except ValueError as exc:
            raise FieldError(f"cannot parse element {text!r}") from exc
        return self(parts)

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def alpha(self) -> "FieldElement":
        """The modulus root; for m = 1 this is the root of the linear modulus."""
        if self.m == 1:
            return self(-self.modulus[0])
        return self.basis[1]

    @cached_property
    def basis(self) -> tuple["FieldElement", ...]:
        out = []
        for i in range(self.m):
            c = [0] * self.m
            c[i] = 1
            out.append(FieldElement(self, tuple(c)))
        return tuple(out)

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.q):
            yield self.from_index(i)

    # -- reduction and product tables -----------------------------------------

    @cached_property
    def _reduction(self) -> np.ndarray:
        """Row k holds the coordinates of a^k, for 0 <= k <= 2m - 2."""
        p, m = self.p, self.m
        rows = np.zeros((max(2 * m - 1, 1), m), dtype=np.int64)
        cur = [0] * m
        cur[0] = 1
        neg_tail = [(-c) % p for c in self.modulus[:m]]
        for k in range(rows.shape[0]):
            rows[k] = cur
            if m == 1:
                cur = [cur[0] * neg_tail[0] % p]
                continue
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c + top * t) % p for c, t in zip(cur, neg_tail)]
        return rows

    def _mul_coeffs(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        m, p = self.m, self.p
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        red = self._reduction
        out = [0] * m
        for k, c in enumerate(prod):
            if c:
                row = red[k]
                for j in range(m):
                    out[j] += c * int(row[j])
        return tuple(v % p for v in out)

    # -- bulk operations on (N, m) coordinate arrays -----------------------------

    @cached_property
    def all_coords(self) -> np.ndarray:
        """Coordinates of every element, rows in ascending index order."""
        idx = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.m), dtype=np.int64)
        for j in range(self.m):
            out[:, j] = idx % self.p
            idx //= self.p
        out.setflags(write=False)
        return out

    @cached_property
    def _place_values(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    def index_of(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self._place_values

    def mul_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Row-wise products of two coordinate arrays (broadcasting rows)."""
        x = np.atleast_2d(np.asarray(x, dtype=np.int64))
        y = np.atleast_2d(np.asarray(y, dtype=np.int64))
        m, p = self.m, self.p
        n = max(x.shape[0], y.shape[0])
        prod = np.zeros((n, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            xi = x[:, i : i + 1]
            prod[:, i : i + m] += xi * y
        prod %= p
        return (prod @ self._reduction) % p

    def pow_vec(self, x: np.ndarray, e: int) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.int64))
        result = np.zeros_like(x)
        result[:, 0] = 1
        base = x.copy()
        while e:
            if e & 1:
                result = self.mul_vec(result, base)
            e >>= 1
            if e:
                base = self.mul_vec(base, base)
        return result

    # -- trace ---------------------------------------------------------------------

    @cached_property
    def trace_vector(self) -> np.ndarray:
        """Tr(a^i) for i < m, computed from the definition sum x^(p^k)."""
        return np.array(
            [trace_by_definition(b) for b in self.basis], dtype=np.int64
        )

    def trace_vec(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=np.int64) @ self.trace_vector) % self.p

    @cached_property
    def trace_form(self) -> np.ndarray:
        """Symmetric matrix T with Tr(x y) = x^T T y."""
        m = self.m
        t = np.zeros((m, m), dtype=np.int64)
        tv = self.trace_vector
        for i in range(m):
            for j in range(m):
                t[i, j] = int(self._reduction[i + j] @ tv) % self.p
        return t

    @cached_property
    def trace_table(self) -> np.ndarray | None:
        """Tr of every element by index, or None when q exceeds the cap."""
        if self.q > self.trace_table_cap:
            return None
        out = self.trace_vec(self.all_coords)
        out.setflags(write=False)
        return out

    # -- linear maps -----------------------------------------------------------------

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Row j holds the coordinates of (a^j)^p, so x^p = x @ F."""
        return np.array([(b**self.p).coeffs for b in self.basis], dtype=np.int64)

    @cached_property
    def norm_form(self) -> np.ndarray:
        """Matrix Q with Tr(x^(p+1)) = x^T Q x."""
        m = self.m
        q = np.zeros((m, m), dtype=np.int64)
        frob = [b**self.p for b in self.basis]
        for i in range(m):
            for j in range(m):
                q[i, j] = (frob[i] * self.basis[j]).trace()
        return q

    def linear_map_matrix(self, f) -> np.ndarray:
        """Matrix of a GF(p)-linear map given as a callable on elements."""
        return np.array([f(b).coeffs for b in self.basis], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class FieldElement:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldError("operands belong to different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            p = self.ctx.p
            return FieldElement(self.ctx, tuple(a * int(other) % p for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx._mul_coeffs(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        if self.is_zero():
            return self.ctx.one if e == 0 else self
        # the multiplicative group has order q - 1
        e %= self.ctx.q - 1
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.ctx(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self == self.ctx(int(other))
        return (
            isinstance(other, FieldElement)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def index(self) -> int:
        p = self.ctx.p
        n = 0
        for c in reversed(self.coeffs):
            n = n * p + c
        return n

    def frobenius(self, k: int = 1) -> "FieldElement":
        return self ** (self.ctx.p**k)

    def trace(self) -> int:
        return int(np.dot(self.coeffs, self.ctx.trace_vector)) % self.ctx.p

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])


def trace_by_definition(x: FieldElement) -> int:
    """Tr(x) = sum of x^(p^i), i < m, evaluated in the field."""
    ctx = x.ctx
    acc = ctx.zero
    y = x
    for _ in range(ctx.m):
        acc = acc + y
        y = y**ctx.p
    if not acc.in_prime_field():
        raise FieldError("trace did not land in the prime field")
    return acc.coeffs[0]


def trace(x: FieldElement) -> int:
    return x.trace()


def eta(x: FieldElement) -> int:
    """Quadratic character of GF(q): +1 on nonzero squares, -1 otherwise, eta(0) = 0."""
    if x.is_zero():
        return 0
    return 1 if x ** ((x.ctx.q - 1) // 2) == x.ctx.one else -1


def arith(op: str, x: FieldElement, y) -> FieldElement:
    """Dispatch for add/sub/mul/div/pow; integers act as prime-field scalars."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown op {op!r}")
