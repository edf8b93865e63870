"""
Hermite and Smith normal forms of integer matrices with unimodular transforms.

Matrices are lists of integer rows. Row operations act from the left, column
operations from the right:

    U * A == H            (Hermite, row style)
    U * A * V == D        (Smith, ``V_inv`` is tracked alongside ``V``)
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import sympy

from utils.exceptions import VerificationError
from utils.logging_utils import ContextLogger

logger = ContextLogger("normal_forms")

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy_matrix(A: Sequence[Sequence[int]]) -> Matrix:
    return [[int(v) for v in row] for row in A]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(len(A))
    ]


def is_unimodular(U: Sequence[Sequence[int]]) -> bool:
    if not U:
        return True
    return abs(sympy.Matrix(U).det()) == 1


def _shape(A: Sequence[Sequence[int]], cols: int) -> Tuple[int, int]:
    rows = len(A)
    if rows and any(len(row) != len(A[0]) for row in A):
        raise ValueError("Ragged integer matrix")
    return rows, (len(A[0]) if rows else cols)


# row and column operations, mirrored on the transforms


def _swap_rows(M: Matrix, i: int, j: int) -> None:
    M[i], M[j] = M[j], M[i]


def _add_row(M: Matrix, target: int, source: int, factor: int) -> None:
    """``row[target] += factor * row[source]``."""
    if factor:
        M[target] = [a + factor * b for a, b in zip(M[target], M[source])]


def _negate_row(M: Matrix, i: int) -> None:
    M[i] = [-a for a in M[i]]


def _swap_cols(M: Matrix, i: int, j: int) -> None:
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_col(M: Matrix, target: int, source: int, factor: int) -> None:
    """``col[target] += factor * col[source]``."""
    if factor:
        for row in M:
            row[target] += factor * row[source]


@dataclass(frozen=True)
class HermiteResult:
    """``U * A == H``; H is in row echelon form with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``."""

    H: Matrix
    U: Matrix
    rank: int

    @property
    def basis(self) -> Matrix:
        return self.H[: self.rank]


def hermite_normal_form(
    A: Sequence[Sequence[int]], ambient: int = 0
) -> HermiteResult:
    m, n = _shape(A, ambient)
    H = copy_matrix(A)
    U = identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        while True:
            nonzero = [i for i in range(row, m) if H[i][col] != 0]
            if not nonzero:
                break
            pivot = min(nonzero, key=lambda i: abs(H[i][col]))
            if pivot != row:
                _swap_rows(H, row, pivot)
                _swap_rows(U, row, pivot)
            done = True
            for i in range(row + 1, m):
                if H[i][col]:
                    q = H[i][col] // H[row][col]
                    _add_row(H, i, row, -q)
                    _add_row(U, i, row, -q)
                    if H[i][col]:
                        done = False
            if done:
                break
        if H[row][col] == 0:
            continue
        if H[row][col] < 0:
            _negate_row(H, row)
            _negate_row(U, row)
        pivot_value = H[row][col]
        for k in range(row):
            q = H[k][col] // pivot_value
            _add_row(H, k, row, -q)
            _add_row(U, k, row, -q)
        row += 1
    result = HermiteResult(H, U, row)
    if matmul(U, A) != H or not is_unimodular(U):
        raise VerificationError("Hermite transform check failed")
    return result


@dataclass(frozen=True)
class SmithResult:
    """``U * A * V == D`` with ``D`` diagonal, ``d_i | d_(i+1)``, ``d_i > 0``."""

    D: Matrix
    U: Matrix
    V: Matrix
    V_inv: Matrix
    rank: int

    @property
    def invariant_factors(self) -> List[int]:
        return [self.D[i][i] for i in range(self.rank)]


def _min_entry(D: Matrix, t: int) -> Tuple[int, int]:
    best = (-1, -1)
    best_value = 0
    for i in range(t, len(D)):
        for j in range(t, len(D[0])):
            v = abs(D[i][j])
            if v and (best_value == 0 or v < best_value):
                best, best_value = (i, j), v
    return best


def smith_normal_form(A: Sequence[Sequence[int]], ambient: int = 0) -> SmithResult:
    m, n = _shape(A, ambient)
    D = copy_matrix(A)
    U = identity(m)
    V = identity(n)
    V_inv = identity(n)

    def swap_cols(i: int, j: int) -> None:
        _swap_cols(D, i, j)
        _swap_cols(V, i, j)
        _swap_rows(V_inv, i, j)

    def add_col(target: int, source: int, factor: int) -> None:
        _add_col(D, target, source, factor)
        _add_col(V, target, source, factor)
        # the inverse of the column operation, applied to the rows of V_inv
        _add_row(V_inv, source, target, -factor)

    def swap_rows(i: int, j: int) -> None:
        _swap_rows(D, i, j)
        _swap_rows(U, i, j)

    def add_row(target: int, source: int, factor: int) -> None:
        _add_row(D, target, source, factor)
        _add_row(U, target, source, factor)

    t = 0
    while t < min(m, n):
        i, j = _min_entry(D, t)
        if i < 0:
            break
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    clean = clean and D[t][j] == 0
            if not clean:
                i, j = _min_entry(D, t)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            offender = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if D[i][j] % D[t][t]
                ),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if D[t][t] < 0:
            _negate_row(D, t)
            _negate_row(U, t)
        t += 1

    result = SmithResult(D, U, V, V_inv, t)
    if matmul(matmul(U, A), V) != D:
        raise VerificationError("Smith transform check failed")
    if not (is_unimodular(U) and is_unimodular(V)):
        raise VerificationError("Smith transforms are not unimodular")
    if n and matmul(V, V_inv) != identity(n):
        raise VerificationError("Smith column transform inverse is wrong")
    logger.debug(f"Smith form of {m}x{n} matrix: {result.invariant_factors}")
    return result


def normal_forms_z(
    A: Sequence[Sequence[int]], ambient: int = 0
) -> Tuple[HermiteResult, SmithResult]:
    """Both normal forms of ``A``; ``ambient`` gives the width of an empty matrix."""
    return hermite_normal_form(A, ambient), smith_normal_form(A, ambient)
