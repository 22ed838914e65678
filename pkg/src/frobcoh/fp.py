"""Dense linear algebra over F_p on int64 numpy arrays.

Entries are kept reduced in [0, p); products of two entries fit in int64 for
every prime this package uses.
"""

from __future__ import annotations

import numpy as np


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of M over F_p and its pivot columns."""
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_mod_p(M: np.ndarray, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(rref(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {x : M x = 0} over F_p."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for row, c in enumerate(piv):
            out[k, c] = (-R[row, f]) % p
    return out


class Echelon:
    """Incrementally grown row space, used to pick complements."""

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.array(v, dtype=np.int64) % self.p
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        """Add v to the span; return whether it was independent."""
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, self.p)) % self.p
        for k, row in enumerate(self.rows):
            if row[c]:
                self.rows[k] = (row - row[c] * v) % self.p
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def __len__(self):
        return len(self.rows)
