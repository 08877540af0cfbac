"""Small exact linear algebra helpers over Gaussian rationals.

Sparse reduced row echelon form (for harmonic kernel bases) and dense
Gauss-Jordan inversion (for the dual-basis construction of Casimir sums).
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .scalars import GaussianRational


def rref_sparse(rows: List[Dict[int, GaussianRational]]) -> Dict[int, Dict[int, GaussianRational]]:
    """Reduced echelon form of sparse rows; returns pivot column -> reduced row.

    Pivots are chosen as the smallest column index present in a row, so with
    columns pre-sorted in graded-lex order the reduction is deterministic.
    """
    pivots: Dict[int, Dict[int, GaussianRational]] = {}
    for raw in rows:
        row = dict(raw)
        while row:
            col = min(row)
            pivot_row = pivots.get(col)
            if pivot_row is None:
                break
            factor = row[col]
            for c, v in pivot_row.items():
                acc = row.get(c)
                nv = -factor * v if acc is None else acc - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        col = min(row)
        lead = row[col]
        row = {c: v / lead for c, v in row.items()}
        for prow in pivots.values():
            factor = prow.get(col)
            if factor is not None:
                for c, v in row.items():
                    acc = prow.get(c)
                    nv = -factor * v if acc is None else acc - factor * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[col] = row
    return pivots


def kernel_basis(
    rows: List[Dict[int, GaussianRational]], ncols: int
) -> Tuple[List[Dict[int, GaussianRational]], int]:
    """Null-space basis of the sparse system ``rows . v = 0``.

    Returns (basis vectors as sparse dicts, rank). One basis vector per free
    column, carrying 1 at the free column; deterministic in column order.
    """
    pivots = rref_sparse(rows)
    basis = []
    for col in range(ncols):
        if col in pivots:
            continue
        vec = {col: GaussianRational(1)}
        for pcol, prow in pivots.items():
            v = prow.get(col)
            if v:
                vec[pcol] = -v
        basis.append(vec)
    return basis, len(pivots)


def invert_dense(mat: List[List[GaussianRational]]) -> List[List[GaussianRational]]:
    """Exact inverse of a small dense matrix (Gauss-Jordan with pivoting)."""
    n = len(mat)
    a = [[GaussianRational.coerce(v) for v in row] for row in mat]
    inv = [
        [GaussianRational(1 if i == j else 0) for j in range(n)] for i in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        lead = a[col][col]
        a[col] = [v / lead for v in a[col]]
        inv[col] = [v / lead for v in inv[col]]
        for r in range(n):
            if r == col or not a[r][col]:
                continue
            f = a[r][col]
            a[r] = [v - f * w for v, w in zip(a[r], a[col])]
            inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    return inv
