"""Exact integer and rational linear algebra: Smith normal form and rational nullspaces."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

__all__ = ["smith_normal_form", "rational_nullspace", "rref_mod_p", "LinalgError"]

_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549)


class LinalgError(ArithmeticError):
    pass


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return (diag, U, V) with U A V = D, U and V unimodular, diag a divisibility chain.

    ``diag`` has min(rows, cols) entries; trailing zeros stand for free directions.
    Pivoting picks the entry of least nonzero absolute value.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            rs, rd = D[src], D[dst]
            D[dst] = [y + c * x for x, y in zip(rs, rd)]
            us, ud = U[src], U[dst]
            U[dst] = [y + c * x for x, y in zip(us, ud)]

    def add_col(src, dst, c):
        if c:
            for row in D:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # least nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    add_row(t, i, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    add_col(t, j, -q)
                    if D[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the smallest remainder on the cross into the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if D[i][t] and abs(D[i][t]) < best[0]:
                    best = (abs(D[i][t]), i, t)
            for j in range(t + 1, n):
                if D[t][j] and abs(D[t][j]) < best[0]:
                    best = (abs(D[t][j]), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [D[i][i] for i in range(min(m, n))]
    return diag, U, V


def rref_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an integer matrix modulo a prime p < 2^31."""
    R = np.mod(A.astype(np.int64), p)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = np.mod(R[r] * inv, p)
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = np.mod(R[nzr] - np.mod(col[nzr, None] * R[r][None, :], p), p)
        pivots.append(c)
        r += 1
    return R[:r], pivots


def _ratrecon(a: int, m: int) -> Fraction | None:
    """Rational reconstruction of a mod m with |num|, den <= sqrt(m/2)."""
    a %= m
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def rational_nullspace(A: np.ndarray) -> tuple[list[list[Fraction]], list[int]]:
    """Exact basis of {v : A v = 0} over Q in reduced form, with its pivot (free) columns.

    Basis vector i has a 1 in free column ``free[i]`` and 0 in every other free
    column.  Computed modulo primes with CRT and rational reconstruction; every
    vector is checked against A in exact integer arithmetic before it is returned.
    """
    A = np.asarray(A)
    A = A[np.any(A != 0, axis=1)]
    if A.size:
        A = np.unique(A, axis=0)
    cols = A.shape[1]
    Aobj = A.astype(object)
    modulus = 1
    acc: dict[tuple[int, int], int] | None = None
    free_ref: list[int] | None = None
    for p in _PRIMES:
        R, piv = rref_mod_p(A, p) if A.size else (np.zeros((0, cols), dtype=np.int64), [])
        free = [c for c in range(cols) if c not in set(piv)]
        if free_ref is not None and free != free_ref:
            if len(free) < len(free_ref):
                acc, modulus = None, 1  # earlier primes were unlucky
            else:
                continue
        free_ref = free
        vals = {}
        for fi, f in enumerate(free):
            for ri, pc in enumerate(piv):
                vals[(fi, pc)] = int((-R[ri, f]) % p)
        if acc is None:
            acc, modulus = vals, p
        else:
            new = {}
            for key in vals:
                a, b = acc[key], vals[key]
                # CRT
                t = ((b - a) * pow(modulus, -1, p)) % p
                new[key] = a + modulus * t
            acc, modulus = new, modulus * p
        basis = []
        ok = True
        for fi, f in enumerate(free):
            v = [Fraction(0)] * cols
            v[f] = Fraction(1)
            for pc in piv:
                q = _ratrecon(acc[(fi, pc)], modulus)
                if q is None:
                    ok = False
                    break
                v[pc] = q
            if not ok:
                break
            basis.append(v)
        if not ok:
            continue
        if _verify_kernel(Aobj, basis):
            return basis, free
    raise LinalgError("nullspace reconstruction failed")


def _verify_kernel(A: np.ndarray, basis: list[list[Fraction]]) -> bool:
    if A.size == 0:
        return True
    for v in basis:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        w = np.array([int(x * den) for x in v], dtype=object)
        if np.any(A.dot(w) != 0):
            return False
    return True
