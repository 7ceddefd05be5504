"""Small exact linear algebra over QQ or F_p (Gaussian elimination)."""

from __future__ import annotations

from typing import Sequence

from .fields import QQ, Field


def _mat(rows: Sequence[Sequence], F: Field) -> list[list]:
    return [[F(x) for x in row] for row in rows]


def determinant(rows: Sequence[Sequence], F: Field = QQ):
    n = len(rows)
    if n == 0:
        return F.one
    M = _mat(rows, F)
    p = F.p
    det = F.one
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return F.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        pv = M[col][col]
        det = det * pv
        inv = F.inv(pv)
        for r in range(col + 1, n):
            f = M[r][col]
            if f == 0:
                continue
            f = f * inv
            row_r, row_c = M[r], M[col]
            for c in range(col, n):
                row_r[c] = row_r[c] - f * row_c[c]
                if p is not None:
                    row_r[c] %= p
        if p is not None:
            det %= p
    return det % p if p is not None else det


def nullspace(rows: Sequence[Sequence], ncols: int, F: Field = QQ) -> list[list]:
    """Basis of the right kernel, one vector per free column."""
    M = _mat(rows, F)
    p = F.p
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][col])
        M[r] = [x * inv for x in M[r]]
        if p is not None:
            M[r] = [x % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
                if p is not None:
                    M[i] = [x % p for x in M[i]]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc] if p is None else (-M[i][fc]) % p
        basis.append(v)
    return basis
