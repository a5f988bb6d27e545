"""Vectorized polynomial kernels for power-sum enumeration.

A batch is a 2-D int64 array: one polynomial per row, coefficient of theta^j
in column j (little-endian), entries are field codes.  All operations go
through the field's addition/multiplication tables, so extension fields work
the same way as prime fields.
"""

from __future__ import annotations

import functools

import numpy as np

from .algebra import FieldDescriptor, ThetaPoly


class BatchField:
    """Table-driven elementwise arithmetic on code arrays."""

    def __init__(self, F: FieldDescriptor):
        self.F = F
        self.prime = F.k == 1
        self.p = F.p
        q = F.q
        if not self.prime:
            self.add_t = np.array(F.add_table, dtype=np.int64).reshape(q, q)
            self.mul_t = np.array(F.mul_table, dtype=np.int64).reshape(q, q)
        self.neg_t = np.array([F.neg(a) for a in range(q)], dtype=np.int64)
        self.inv_t = np.array([0] + [F.inv(a) for a in range(1, q)], dtype=np.int64)

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        return self.add_t[a, b]

    def sub(self, a, b):
        return self.add(a, self.neg_t[b])

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        return self.mul_t[a, b]

    def sum_rows(self, A: np.ndarray) -> np.ndarray:
        """Column sums of a batch (exact in any field)."""
        if A.shape[0] == 0:
            return np.zeros(A.shape[1], dtype=np.int64)
        if self.prime:
            return A.sum(axis=0) % self.p
        # codes are base-p digit vectors; addition is digitwise mod p
        p, k = self.p, self.F.k
        out = np.zeros(A.shape[1], dtype=np.int64)
        rest = A.copy()
        scale = 1
        for _ in range(k):
            digit = rest % p
            rest //= p
            out += (digit.sum(axis=0) % p) * scale
            scale *= p
        return out


@functools.lru_cache(maxsize=64)
def batch_field(F: FieldDescriptor) -> BatchField:
    return BatchField(F)


def monic_block(F: FieldDescriptor, d: int, start: int, stop: int) -> np.ndarray:
    """Rows for monic_from_index(F, d, idx), idx in [start, stop)."""
    q = F.q
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.shape[0], d + 1), dtype=np.int64)
    for j in range(d):
        out[:, j] = idx % q
        idx //= q
    out[:, d] = 1
    return out


def pmul(BF: BatchField, A: np.ndarray, B: np.ndarray, ncols: int | None = None) -> np.ndarray:
    """Row-wise products, optionally truncated to ``ncols`` coefficients."""
    na, nb = A.shape[1], B.shape[1]
    full = na + nb - 1
    n = full if ncols is None else min(ncols, full)
    if BF.prime:
        # outer products summed along anti-diagonals as one float matmul;
        # every partial sum is below p^2 * min(na, nb) << 2^53, so it is exact
        outer = A.astype(np.float64)[:, :, None] * B.astype(np.float64)[:, None, :]
        S = _antidiagonal(na, nb, n)
        out = outer.reshape(A.shape[0], na * nb) @ S
        return np.rint(out).astype(np.int64) % BF.p
    out = np.zeros((A.shape[0], n), dtype=np.int64)
    for i in range(min(na, n)):
        w = min(nb, n - i)
        out[:, i : i + w] = BF.add(out[:, i : i + w], BF.mul(A[:, i : i + 1], B[:, :w]))
    return out


@functools.lru_cache(maxsize=256)
def _antidiagonal(na: int, nb: int, n: int) -> np.ndarray:
    """0/1 matrix sending the flattened (i, j) outer product to coefficient i + j < n."""
    S = np.zeros((na * nb, n), dtype=np.float64)
    for i in range(na):
        for j in range(nb):
            if i + j < n:
                S[i * nb + j, i + j] = 1.0
    return S


@functools.lru_cache(maxsize=256)
def _reduction_matrix(p: int, M: tuple, width: int) -> np.ndarray:
    """Row k holds theta^k mod M (prime field), for k < width."""
    m = len(M) - 1
    R = np.zeros((width, m), dtype=np.float64)
    cur = [0] * m
    for k in range(width):
        if k < m:
            cur = [1 if j == k else 0 for j in range(m)]
        else:
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * M[j]) % p for j, c in enumerate(cur)]
        R[k] = cur
    return R


def pmod(BF: BatchField, A: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Row-wise remainder modulo a monic polynomial M (1-D)."""
    m = M.shape[0] - 1
    if BF.prime and A.shape[1] > m:
        R = _reduction_matrix(BF.p, tuple(int(c) for c in M), A.shape[1])
        return np.rint(A.astype(np.float64) @ R).astype(np.int64) % BF.p
    A = A.copy()
    for k in range(A.shape[1] - 1, m - 1, -1):
        c = A[:, k : k + 1]
        if not c.any():
            continue
        A[:, k - m : k + 1] = BF.sub(A[:, k - m : k + 1], BF.mul(c, M[None, :]))
    out = A[:, :m]
    if out.shape[1] < m:
        out = np.concatenate([out, np.zeros((A.shape[0], m - out.shape[1]), dtype=np.int64)], axis=1)
    return out


def mulmod(BF: BatchField, A, B, M) -> np.ndarray:
    return pmod(BF, pmul(BF, A, B), M)


def series_inverse(BF: BatchField, S: np.ndarray, n: int) -> np.ndarray:
    """First n coefficients of 1/S(y) per row (S[:,0] != 0)."""
    rows, m = S.shape
    out = np.zeros((rows, n), dtype=np.int64)
    inv0 = BF.inv_t[S[:, 0]]
    ninv0 = BF.neg_t[inv0]
    out[:, 0] = inv0
    for k in range(1, n):
        acc = np.zeros(rows, dtype=np.int64)
        for j in range(1, min(k, m - 1) + 1):
            acc = BF.add(acc, BF.mul(S[:, j], out[:, k - j]))
        out[:, k] = BF.mul(acc, ninv0)
    return out


def series_power(BF: BatchField, S: np.ndarray, e: int, n: int) -> np.ndarray:
    out = None
    base = S[:, :n]
    while e:
        if e & 1:
            out = base if out is None else pmul(BF, out, base, n)
        e >>= 1
        if e:
            base = pmul(BF, base, base, n)
    return out


def powmod(BF: BatchField, A: np.ndarray, e: int, M: np.ndarray) -> np.ndarray:
    out = None
    base = pmod(BF, A, M)
    while e:
        if e & 1:
            out = base if out is None else mulmod(BF, out, base, M)
        e >>= 1
        if e:
            base = mulmod(BF, base, base, M)
    return out


def _as_array(f: ThetaPoly) -> np.ndarray:
    return np.array(f.c, dtype=np.int64)


@functools.lru_cache(maxsize=64)
def _residue_inverse_table(P: ThetaPoly) -> np.ndarray:
    """Inverse of every residue mod P, residues indexed by little-endian code."""
    F = P.field
    q, d = F.q, P.degree
    table = np.zeros((q**d, d), dtype=np.int64)
    for idx in range(1, q**d):
        coeffs, t = [], idx
        for _ in range(d):
            t, c = divmod(t, q)
            coeffs.append(c)
        inv = ThetaPoly(F, coeffs).inverse_mod(P)
        for j, c in enumerate(inv.c):
            table[idx, j] = c
    return table


def coprime_mask(BF: BatchField, A: np.ndarray, P: ThetaPoly) -> np.ndarray:
    R = pmod(BF, A, _as_array(P))
    return R.any(axis=1)


def inverse_mod_power(BF: BatchField, A: np.ndarray, P: ThetaPoly, N: int) -> np.ndarray:
    """Row-wise inverse modulo P^N (rows coprime to P), by Newton lifting."""
    q, d = BF.F.q, P.degree
    R = pmod(BF, A, _as_array(P))
    idx = np.zeros(R.shape[0], dtype=np.int64)
    for j in range(d - 1, -1, -1):
        idx = idx * q + R[:, j]
    x = _residue_inverse_table(P)[idx]
    # precision ladder N, ceil(N/2), ..., 1 climbed from the bottom, so the
    # last step is never a near-duplicate of the one before it
    ladder = [N]
    while ladder[-1] > 1:
        ladder.append((ladder[-1] + 1) // 2)
    two = np.zeros((1, 1), dtype=np.int64)
    two[0, 0] = BF.F.add(1, 1) if BF.F.p != 2 else 0
    for k in reversed(ladder[:-1]):
        M = _as_array(P**k)
        ax = mulmod(BF, A, x, M)
        # x <- x (2 - a x)
        t = BF.neg_t[ax]
        t[:, 0] = BF.add(t[:, 0], two[0, 0])
        if x.shape[1] < t.shape[1]:
            x = np.concatenate([x, np.zeros((x.shape[0], t.shape[1] - x.shape[1]), dtype=np.int64)], axis=1)
        x = mulmod(BF, x, t, M)
    if x.shape[1] < d * N:
        x = np.concatenate([x, np.zeros((x.shape[0], d * N - x.shape[1]), dtype=np.int64)], axis=1)
    return x


def norm_rows(BFL: BatchField, G: np.ndarray, q: int, r: int) -> np.ndarray:
    """prod_{j<r} sigma^j(row), sigma = x -> x^q on coefficients."""
    if r == 1:
        return G
    F = BFL.F
    frob = np.array([F.frobenius(a, 1, q) for a in range(F.q)], dtype=np.int64)
    acc = G
    g = G
    for _ in range(1, r):
        g = frob[g]
        acc = pmul(BFL, acc, g)
    return acc
