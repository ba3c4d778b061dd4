# Copyright (C) 2026 taylor.fish <contact@taylor.fish>
#
# This file is part of trimap.
#
# trimap is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# trimap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with trimap.  If not, see <http://www.gnu.org/licenses/>.

"""Dense linear algebra over a field, by Gauss-Jordan elimination.

Matrices are lists of rows of :class:`~trimap.field.FieldElement`.
"""

from .errors import SingularMatrixError, SolveFailure
from typing import List, Tuple

Matrix = List[list]


def _field(matrix):
    return matrix[0][0].field


def identity(field, n: int) -> Matrix:
    return [
        [field.one if i == j else field.zero for j in range(n)]
        for i in range(n)
    ]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    field = _field(a)
    cols = len(b[0])
    out = []
    for row in a:
        out_row = []
        for j in range(cols):
            total = field.zero
            for k, x in enumerate(row):
                if x:
                    total += x * b[k][j]
            out_row.append(total)
        out.append(out_row)
    return out


def matvec(a: Matrix, v: list) -> list:
    field = _field(a)
    out = []
    for row in a:
        total = field.zero
        for x, y in zip(row, v):
            total += x * y
        out.append(total)
    return out


def _eliminate(matrix: Matrix, ncols: int = None):
    """Reduces a copy of ``matrix`` to reduced row echelon form.

    :param ncols: Only the first ``ncols`` columns are used for pivots.
    :returns: (reduced matrix, list of pivot columns, determinant factor
      of the pivot operations on the leading square block).
    """
    m = [list(row) for row in matrix]
    rows = len(m)
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    det = _field(matrix).one
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
            det = -det
        inv = m[r][c].inverse()
        det = det * m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots, det


def rank(matrix: Matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(_eliminate(matrix)[1])


def determinant(matrix: Matrix):
    n = len(matrix)
    _, pivots, det = _eliminate(matrix)
    if len(pivots) < n:
        return _field(matrix).zero
    return det


def inverse(matrix: Matrix) -> Matrix:
    n = len(matrix)
    field = _field(matrix)
    augmented = [
        list(row) + ident for row, ident in zip(matrix, identity(field, n))
    ]
    reduced, pivots, _ = _eliminate(augmented, ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError("Matrix is not invertible.")
    return [row[n:] for row in reduced]


def solve(matrix: Matrix, rhs: list) -> Tuple[list, List[list]]:
    """Solves ``matrix * x = rhs``.

    :returns: A particular solution and a basis of the kernel.
    :raises SolveFailure: If the system is inconsistent.
    """
    field = _field(matrix)
    ncols = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots, _ = _eliminate(augmented, ncols=ncols)
    for row in reduced[len(pivots):]:
        if row[ncols]:
            raise SolveFailure("Linear system is inconsistent.")
    solution = [field.zero] * ncols
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][f]
        kernel.append(vec)
    return solution, kernel
