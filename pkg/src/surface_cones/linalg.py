"""Small exact linear algebra over the rationals: solves, congruence, definiteness."""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def solve_linear(matrix: Matrix, rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve ``matrix @ x = rhs`` by Gaussian elimination; None if singular."""
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((row for row in range(col, n) if aug[row][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for row in range(n):
            if row != col and aug[row][col] != 0:
                factor = aug[row][col]
                aug[row] = [v - factor * w for v, w in zip(aug[row], aug[col])]
    return [aug[i][n] for i in range(n)]


def congruence_diagonalize(gram: Matrix) -> tuple[list[Fraction], Matrix]:
    """Diagonalize a symmetric matrix by a rational congruence.

    Returns ``(diag, basis)`` with ``basis @ gram @ basis.T`` diagonal; the
    rows of ``basis`` express the new basis in the old coordinates.  No
    normalization of the diagonal is performed, so everything stays rational.
    """
    n = len(gram)
    g = [row[:] for row in gram]
    basis: Matrix = [
        [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)
    ]

    def add_row(dst: int, src: int, factor: Fraction) -> None:
        g[dst] = [v + factor * w for v, w in zip(g[dst], g[src])]
        for row in g:
            row[dst] += factor * row[src]
        basis[dst] = [v + factor * w for v, w in zip(basis[dst], basis[src])]

    for k in range(n):
        if g[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if g[j][j] != 0), None)
            if swap is not None:
                g[k], g[swap] = g[swap], g[k]
                for row in g:
                    row[k], row[swap] = row[swap], row[k]
                basis[k], basis[swap] = basis[swap], basis[k]
            else:
                off = next((j for j in range(k + 1, n) if g[k][j] != 0), None)
                if off is None:
                    continue  # zero row stays zero on the diagonal
                add_row(k, off, Fraction(1))
        for j in range(k + 1, n):
            if g[j][k] != 0:
                add_row(j, k, -g[j][k] / g[k][k])
    return [g[i][i] for i in range(n)], basis


def signature(gram: Matrix) -> tuple[int, int, int]:
    """Counts ``(n_plus, n_minus, n_zero)`` of a symmetric rational matrix."""
    diag, _ = congruence_diagonalize(gram)
    plus = sum(1 for v in diag if v > 0)
    minus = sum(1 for v in diag if v < 0)
    return plus, minus, len(diag) - plus - minus


def is_negative_definite(gram: Matrix) -> bool:
    if not gram:
        return True
    return signature(gram) == (0, len(gram), 0)
