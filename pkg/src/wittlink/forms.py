"""Symmetric bilinear forms on integer lattices, with exact arithmetic.

A form is a symmetric nondegenerate integer Gram matrix.  Everything is
computed over Z or Q with arbitrary precision: the determinant by
fraction-free Bareiss elimination, the signature by exact congruence
diagonalization.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._mat import identity
from .errors import DegenerateError, NotSquareError, NotSymmetricError


@dataclass(frozen=True)
class IntegerSymmetricForm:
    """A nondegenerate symmetric integer Gram matrix of rank ``n``.

    Instances are immutable; build them through :func:`form_from_rows`,
    which validates squareness, symmetry and nondegeneracy.
    """

    n: int
    gram: tuple[tuple[int, ...], ...]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.gram]


@dataclass(frozen=True)
class DiagonalRationalForm:
    """Result of congruence diagonalization: P * B * P^T = diag(entries)."""

    entries: tuple[Fraction, ...]
    transition: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class FormReport:
    rank: int
    determinant: int
    signature: int
    is_even: bool


def form_from_rows(rows) -> IntegerSymmetricForm:
    """Validate a list of integer rows as a symmetric nondegenerate form.

    A 0x0 matrix is accepted and represents the empty (rank zero) form,
    with determinant 1 by convention.
    """
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise NotSquareError(f"expected {n} columns, got {len(row)}")
    for row in rows:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise NotSymmetricError(f"non-integer Gram entry {x!r}")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetricError(
                    f"gram[{i}][{j}] = {rows[i][j]} != gram[{j}][{i}] = {rows[j][i]}")
    gram = tuple(tuple(int(x) for x in row) for row in rows)
    if _bareiss_det(gram) == 0:
        raise DegenerateError("Gram matrix has determinant 0")
    return IntegerSymmetricForm(n=n, gram=gram)


def determinant(f: IntegerSymmetricForm) -> int:
    return _bareiss_det(f.gram)


def _bareiss_det(gram) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(gram)
    if n == 0:
        return 1
    m = [list(row) for row in gram]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_even(f: IntegerSymmetricForm) -> bool:
    # b(u,u) even for all u follows from even diagonal by bilinearity.
    return all(f.gram[i][i] % 2 == 0 for i in range(f.n))


def diagonalize(f: IntegerSymmetricForm) -> DiagonalRationalForm:
    """Diagonalize over Q by simultaneous symmetric row/column elimination.

    Pivot policy: at step k use the smallest-index nonzero diagonal entry
    among positions >= k (swapped into place).  If the whole remaining
    diagonal is zero, the replacement e_i -> e_i + e_j with b(e_i,e_j) != 0
    creates a nonzero diagonal first; such a pair exists by nondegeneracy.
    The output is deterministic.
    """
    n = f.n
    b = [[Fraction(x) for x in row] for row in f.gram]
    p = identity(n, one=Fraction(1))

    def swap(i, j):
        b[i], b[j] = b[j], b[i]
        for row in b:
            row[i], row[j] = row[j], row[i]
        p[i], p[j] = p[j], p[i]

    def add_row(i, j):
        # e_i -> e_i + e_j
        b[i] = [x + y for x, y in zip(b[i], b[j])]
        for row in b:
            row[i] = row[i] + row[j]
        p[i] = [x + y for x, y in zip(p[i], p[j])]

    for k in range(n):
        if b[k][k] == 0:
            for j in range(k + 1, n):
                if b[j][j] != 0:
                    swap(k, j)
                    break
            else:
                # Whole trailing diagonal is zero: row k still pairs with some
                # later basis vector (nondegeneracy), so e_k -> e_k + e_j gives
                # b[k][k] = 2*b[k][j] != 0.
                for j in range(k + 1, n):
                    if b[k][j] != 0:
                        add_row(k, j)
                        break
                else:
                    raise DegenerateError("trailing block is degenerate")
        for i in range(k + 1, n):
            if b[i][k] == 0:
                continue
            t = b[i][k] / b[k][k]
            b[i] = [x - t * y for x, y in zip(b[i], b[k])]
            for row in b:
                row[i] = row[i] - t * row[k]
            p[i] = [x - t * y for x, y in zip(p[i], p[k])]

    entries = tuple(b[i][i] for i in range(n))
    return DiagonalRationalForm(entries=entries,
                                transition=tuple(tuple(row) for row in p))


def signature(f: IntegerSymmetricForm) -> int:
    return sum(1 if e > 0 else -1 for e in diagonalize(f).entries)


def direct_sum(f1: IntegerSymmetricForm, f2: IntegerSymmetricForm) -> IntegerSymmetricForm:
    n1, n2 = f1.n, f2.n
    rows = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            rows[i][j] = f1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            rows[n1 + i][n1 + j] = f2.gram[i][j]
    return form_from_rows(rows)


def report(f: IntegerSymmetricForm) -> FormReport:
    return FormReport(rank=f.n, determinant=determinant(f),
                      signature=signature(f), is_even=is_even(f))
