"""Exact linear algebra over prime fields and over the integers.

Prime-field elimination runs vectorized on int64 arrays; the modulus is
capped below 2**31 so products never overflow. Integer Smith normal form
is plain row/column reduction on Python ints with smallest-magnitude
pivoting, which keeps intermediate entries small on the sparse boundary
matrices this package produces.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

__all__ = [
    "check_prime",
    "rref_mod_p",
    "rank_mod_p",
    "solve_mod_p",
    "nullspace_mod_p",
    "smith_normal_form",
    "invariant_factors",
    "solve_integer",
]

MAX_MODULUS = 1 << 31


def check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"modulus must be a prime >= 2, got {p!r}")
    if p >= MAX_MODULUS:
        raise ValueError(f"modulus {p} too large (must be < 2**31)")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"modulus {p} is not prime (divisible by {d})")
        d += 1


def _as_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {m.ndim}")
    return m


def rref_mod_p(a, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form mod p and the pivot column indices."""
    check_prime(p)
    m = _as_matrix(a) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rank_mod_p(a, p: int) -> int:
    return len(rref_mod_p(a, p)[1])


def solve_mod_p(a, b, p: int) -> Optional[np.ndarray]:
    """One solution of a x = b mod p (free variables zero), or None."""
    m = _as_matrix(a)
    rhs = np.array(b, dtype=np.int64).reshape(-1)
    if rhs.shape[0] != m.shape[0]:
        raise ValueError(f"shape mismatch: {m.shape} vs rhs of length {rhs.shape[0]}")
    aug = np.concatenate([m, rhs.reshape(-1, 1)], axis=1)
    red, pivots = rref_mod_p(aug, p)
    if m.shape[1] in pivots:
        return None
    x = np.zeros(m.shape[1], dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = red[row, -1]
    return x


def nullspace_mod_p(a, p: int) -> np.ndarray:
    """Matrix whose columns are a basis of the kernel mod p.

    Shape (ncols, nullity); the basis is the standard one read off the
    reduced echelon form, one column per free variable.
    """
    m = _as_matrix(a)
    red, pivots = rref_mod_p(m, p)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, c in enumerate(pivots):
            basis[c, k] = (-red[row, f]) % p
    return basis


# -- integer Smith normal form ---------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix: returns (s, l, r) with l a r = s,
    l and r unimodular, s diagonal with s[0][0] | s[1][1] | ...

    Diagonal entries are nonnegative. Accepts any 2d array-like of ints.
    """
    arr = np.array(a, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {arr.ndim}")
    rows, cols = arr.shape
    s = [[int(arr[i, j]) for j in range(cols)] for i in range(rows)]
    left = _identity(rows)
    right = _identity(cols)

    def row_sub(i: int, j: int, q: int) -> None:
        # row i -= q * row j
        si, sj = s[i], s[j]
        for k in range(cols):
            si[k] -= q * sj[k]
        li, lj = left[i], left[j]
        for k in range(rows):
            li[k] -= q * lj[k]

    def col_sub(i: int, j: int, q: int) -> None:
        # col i -= q * col j
        for rrow in s:
            rrow[i] -= q * rrow[j]
        for rrow in right:
            rrow[i] -= q * rrow[j]

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for rrow in s:
            rrow[i], rrow[j] = rrow[j], rrow[i]
        for rrow in right:
            rrow[i], rrow[j] = rrow[j], rrow[i]

    def negate_row(i: int) -> None:
        s[i] = [-x for x in s[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < min(rows, cols):
        # smallest-magnitude nonzero entry of the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = s[i][j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        while True:
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            if s[t][t] < 0:
                negate_row(t)
            pivot = s[t][t]
            for i in range(t + 1, rows):
                if s[i][t]:
                    row_sub(i, t, s[i][t] // pivot)
            for j in range(t + 1, cols):
                if s[t][j]:
                    col_sub(j, t, s[t][j] // pivot)
            # floor-division remainders are in [0, pivot); any survivor
            # is a strictly smaller pivot candidate
            best = None
            for i in range(t + 1, rows):
                if s[i][t]:
                    best = (abs(s[i][t]), i, t)
                    break
            if best is None:
                for j in range(t + 1, cols):
                    if s[t][j]:
                        best = (abs(s[t][j]), t, j)
                        break
            if best is not None:
                continue
            # divisibility: the pivot must divide the whole trailing block
            viol = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if s[i][j] % pivot:
                        viol = i
                        break
                if viol is not None:
                    break
            if viol is None:
                break
            row_sub(t, viol, -1)
            best = (abs(pivot), t, t)
        t += 1
    return s, left, right


def invariant_factors(a) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form, in divisibility order."""
    s, _, _ = smith_normal_form(a)
    out = []
    for i in range(min(len(s), len(s[0]) if s else 0)):
        if s[i][i]:
            out.append(s[i][i])
    return tuple(out)


def solve_integer(a, b) -> Optional[list[int]]:
    """One integer solution of a x = b, or None if there is none."""
    arr = np.array(a, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {arr.ndim}")
    rows, cols = arr.shape
    rhs = [int(v) for v in np.array(b, dtype=object).reshape(-1)]
    if len(rhs) != rows:
        raise ValueError(f"shape mismatch: {arr.shape} vs rhs of length {len(rhs)}")
    s, left, right = smith_normal_form(arr)
    c = [sum(left[i][k] * rhs[k] for k in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        d = s[i][i] if i < min(rows, cols) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            q, r = divmod(c[i], d)
            if r != 0:
                return None
            y[i] = q
    return [sum(right[i][k] * y[k] for k in range(cols)) for i in range(cols)]
