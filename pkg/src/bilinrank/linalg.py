"""Dense linear algebra over a FieldSpec, on lists of code rows."""
from __future__ import annotations

from .errors import DivisionByZero
from .ff_core import FieldSpec

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(F: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    Bt = transpose(B)
    if F.base is None:
        p = F.p
        return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]
    return [[dot(F, row, col) for col in Bt] for row in A]


def dot(F: FieldSpec, u, v) -> int:
    if F.base is None:
        return sum(a * b for a, b in zip(u, v)) % F.p
    add, mul = F.add, F.mul
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = add(acc, mul(a, b))
    return acc


def matvec(F: FieldSpec, A: Matrix, v) -> list[int]:
    return [dot(F, row, v) for row in A]


def rref(F: FieldSpec, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(r) for r in M]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F: FieldSpec, M: Matrix) -> int:
    return len(rref(F, M)[1])


def independent_rows(F: FieldSpec, M: Matrix) -> list[int]:
    """Indices of the first maximal set of independent rows, scanning in order."""
    basis: list[tuple[int, list[int]]] = []  # (pivot column, reduced row)
    chosen = []
    for idx, row in enumerate(M):
        v = list(row)
        for pc, b in basis:
            if v[pc]:
                f = v[pc]
                v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = F.inv(v[pc])
        v = [F.mul(inv, x) for x in v]
        basis.append((pc, v))
        chosen.append(idx)
    return chosen


def inverse(F: FieldSpec, M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(n))]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("singular matrix")
    return [row[n:] for row in R]
