"""Exact integer matrix routines (Python ints, so no overflow)."""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def sub(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def hstack(a: Sequence[Sequence[int]], cols: Sequence[Sequence[int]]) -> Matrix:
    """Append column vectors to a matrix."""
    return [list(row) + [c[i] for c in cols] for i, row in enumerate(a)]


def rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def det(a: Sequence[Sequence[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_invariants(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith normal form."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = m[t][t]
            done = True
            for i in range(t + 1, rows):
                q = m[i][t] // p
                if q:
                    for j in range(t, cols):
                        m[i][j] -= q * m[t][j]
                if m[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = m[t][j] // p
                if q:
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                if m[t][j]:
                    done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                for j in range(t, cols):
                    m[t][j] += m[i][j]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(m[i][t]), i, t) for i in range(t, rows) if m[i][t]]
            cand += [(abs(m[t][j]), t, j) for j in range(t, cols) if m[t][j]]
            _, i, j = min(cand)
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def cokernel(a: Sequence[Sequence[int]], rows: int) -> tuple[int, list[int]]:
    """Free rank and torsion invariant factors (> 1) of Z^rows / im(a)."""
    inv = smith_invariants(a) if a and a[0] else []
    return rows - len(inv), [d for d in inv if d > 1]


def charpoly(a: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - a), leading coefficient first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [1]
    mk = zeros(n, n)
    for k in range(1, n + 1):
        am = matmul(a, mk)
        mk = [[am[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        prod = matmul(a, mk)
        tr = sum(prod[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral trace step")
        coeffs.append(-tr // k)
    return coeffs
