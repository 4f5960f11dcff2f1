"""Exact rational linear algebra.

Rationals are :class:`fractions.Fraction` (always normalized, positive
denominator).  Matrices are lists of rows and vectors are lists; entries may
be ``int`` or ``Fraction`` on input and are returned as ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm, prod
from typing import Iterable, Sequence

Rational = Fraction
RatVector = list
RatMatrix = list


class SingularMatrix(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


def to_matrix(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def to_vector(entries: Iterable) -> list[Fraction]:
    return [Fraction(x) for x in entries]


def _check_square(M: Sequence[Sequence]) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError(f"matrix is not square ({n} rows)")
    return n


def is_symmetric(M: Sequence[Sequence]) -> bool:
    n = _check_square(M)
    return all(M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n))


def mat_vec(M: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, x)), Fraction(0)) for row in M]


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise ValueError("length mismatch")
    return sum((Fraction(a) * b for a, b in zip(x, y)), Fraction(0))


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Clear denominators row by row; returns the integer rows and the row scale factors."""
    out, scales = [], []
    for row in rows:
        fr = [Fraction(x) for x in row]
        c = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([x.numerator * (c // x.denominator) for x in fr])
        scales.append(c)
    return out, scales


def _bareiss(A: list[list[int]], pivoting: bool) -> tuple[list[list[int]], int, list[int]]:
    """In-place fraction-free elimination of the square block of an integer matrix.

    ``A`` may carry extra columns (an augmented right-hand side).  Returns
    the reduced matrix, the sign of the row permutation, and the sequence of
    pivots.  Without pivoting the k-th pivot is the k-th leading principal
    minor.  A zero pivot stops the elimination early (the pivot list then
    ends with that zero).  Every division below is exact.
    """
    n = len(A)
    sign = 1
    prev = 1
    pivots: list[int] = []
    for k in range(n):
        if A[k][k] == 0:
            if not pivoting:
                pivots.append(0)
                return A, sign, pivots
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                pivots.append(0)
                return A, sign, pivots
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        p = A[k][k]
        pivots.append(p)
        width = len(A[k])
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, width):
                row_i[j] = (p * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = p
    return A, sign, pivots


def determinant(M: Sequence[Sequence]) -> Fraction:
    n = _check_square(M)
    if n == 0:
        return Fraction(1)
    A, scales = _integer_rows(M)
    _, sign, pivots = _bareiss(A, pivoting=True)
    if len(pivots) < n or pivots[-1] == 0:
        return Fraction(0)
    return Fraction(sign * pivots[-1], prod(scales))


def leading_minors(M: Sequence[Sequence]) -> list[Fraction]:
    """All leading principal minors det(M[:k, :k]) for k = 1..n."""
    n = _check_square(M)
    A, scales = _integer_rows(M)
    # Bareiss without pivoting yields the minors as pivots until one vanishes;
    # past a vanishing minor we fall back to explicit determinants.
    _, _, pivots = _bareiss(A, pivoting=False)
    minors = [Fraction(p, prod(scales[:k + 1])) for k, p in enumerate(pivots[:n])]
    for k in range(len(minors) + 1, n + 1):
        minors.append(determinant([row[:k] for row in M[:k]]))
    return minors


def solve_linear(M: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Exact solution of ``M x = b`` for square nonsingular ``M``."""
    n = _check_square(M)
    if len(b) != n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {n}")
    if n == 0:
        return []
    # scaling a row of the augmented system leaves the solution unchanged
    A, _ = _integer_rows([list(row) + [bi] for row, bi in zip(M, b)])
    A, _, pivots = _bareiss(A, pivoting=True)
    if len(pivots) < n or pivots[-1] == 0:
        raise SingularMatrix("matrix is singular")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = A[i][n] - sum((A[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / A[i][i]
    return x


def is_negative_definite(M: Sequence[Sequence]) -> bool:
    """Sylvester's criterion: (-1)^k det_k > 0 for every leading minor."""
    if not is_symmetric(M):
        raise NotSymmetric("matrix is not symmetric")
    return all((-1) ** k * d > 0 for k, d in enumerate(leading_minors(M), start=1))


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        text = s.strip()
        if text and "." not in text and "e" not in text.lower():
            return Fraction(text)
    raise ValueError(f"not an exact rational: {s!r}")


def format_vector(v: Iterable) -> list[str]:
    return [format_rational(x) for x in v]
