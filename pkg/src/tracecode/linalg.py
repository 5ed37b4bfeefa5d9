"""Gaussian elimination over GF(p) on small dense integer matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Elimination:
    """Row reduction E @ A = R of an r x c matrix A over GF(p).

    ``pivots[i]`` is the pivot column of row i of R for i < rank.
    """

    p: int
    reduced: np.ndarray
    transform: np.ndarray
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel_basis(self) -> np.ndarray:
        """Basis of {x : A x = 0}, one vector per row."""
        ncols = self.reduced.shape[1]
        free = [j for j in range(ncols) if j not in self.pivots]
        out = np.zeros((len(free), ncols), dtype=np.int64)
        for k, f in enumerate(free):
            out[k, f] = 1
            for i, pc in enumerate(self.pivots):
                out[k, pc] = (-self.reduced[i, f]) % self.p
        return out

    def solve_many(self, rhs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Particular solutions of A x = rhs for each row of ``rhs``.

        Returns ``(x, solvable)``; rows of x where ``solvable`` is False are
        meaningless.
        """
        rhs = np.atleast_2d(np.asarray(rhs, dtype=np.int64))
        y = (rhs @ self.transform.T) % self.p
        solvable = ~np.any(y[:, self.rank :], axis=1)
        x = np.zeros((rhs.shape[0], self.reduced.shape[1]), dtype=np.int64)
        for i, pc in enumerate(self.pivots):
            x[:, pc] = y[:, i]
        return x, solvable


def eliminate(a: np.ndarray, p: int) -> Elimination:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    e = np.eye(rows, dtype=np.int64)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
            e[[r, k]] = e[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        e[r] = e[r] * inv % p
        for i in range(rows):
            if i != r and a[i, c]:
                f = a[i, c]
                a[i] = (a[i] - f * a[r]) % p
                e[i] = (e[i] - f * e[r]) % p
        pivots.append(c)
        r += 1
    return Elimination(p, a, e, tuple(pivots))


def rank_mod_p(a: np.ndarray, p: int) -> int:
    return eliminate(a, p).rank
