"""Smith normal form diagonal of an integer matrix, exact arithmetic."""

from __future__ import annotations

from typing import Sequence


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Non-zero invariant factors d_1 | d_2 | ... of ``matrix`` (all positive).

    Works on a sparse copy (one dict per row); the pivot is always an
    entry of least absolute value, so entries never grow past the input
    magnitudes by more than the elimination needs.  Python integers are
    unbounded, so there is no overflow to guard against.
    """
    rows: list[dict[int, int]] = []
    for r in matrix:
        d = {j: int(x) for j, x in enumerate(r) if x}
        if d:
            rows.append(d)
    return _smith_sparse(rows)


def smith_diagonal_sparse(rows: list[dict[int, int]]) -> list[int]:
    return _smith_sparse([dict(r) for r in rows if r])


def _smith_sparse(rows: list[dict[int, int]]) -> list[int]:
    diag: list[int] = []
    while rows:
        # pivot: smallest |entry|
        bi, bj, bv = -1, -1, 0
        for i, r in enumerate(rows):
            for j, v in r.items():
                if bi < 0 or abs(v) < abs(bv):
                    bi, bj, bv = i, j, v
                    if abs(v) == 1:
                        break
            if abs(bv) == 1:
                break
        pivot_row = rows.pop(bi)
        while True:
            p = pivot_row[bj]
            changed = False
            # clear column bj in other rows
            for r in rows:
                x = r.get(bj)
                if x:
                    q = x // p
                    for j, v in pivot_row.items():
                        nv = r.get(j, 0) - q * v
                        if nv:
                            r[j] = nv
                        else:
                            r.pop(j, None)
            smaller = [(i, r[bj]) for i, r in enumerate(rows) if r.get(bj)]
            if smaller:
                # a remainder survived: it is smaller than p, swap it in
                i, _ = min(smaller, key=lambda t: abs(t[1]))
                rows[i], pivot_row = pivot_row, rows[i]
                changed = True
            else:
                # clear row: column operations against column bj
                for j in list(pivot_row):
                    if j == bj:
                        continue
                    x = pivot_row[j]
                    q = x // p
                    if q:
                        _col_sub(rows, pivot_row, j, bj, q)
                    if pivot_row.get(j):
                        changed = True
                if changed:
                    # move the smallest remaining row entry to be the pivot
                    bj = min((j for j in pivot_row), key=lambda j: abs(pivot_row[j]))
                    continue
                # row and column clear; enforce divisibility
                bad = None
                for r in rows:
                    for v in r.values():
                        if v % p:
                            bad = r
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j, v in bad.items():
                    pivot_row[j] = pivot_row.get(j, 0) + v
                changed = True
            if not changed:
                break
        diag.append(abs(pivot_row[bj]))
        for r in rows:
            r.pop(bj, None)
        rows = [r for r in rows if r]
    diag.sort()
    return diag


def _col_sub(rows: list[dict[int, int]], pivot_row: dict[int, int], j: int, bj: int, q: int) -> None:
    """column j -= q * column bj, over the pivot row and all remaining rows."""
    for r in [pivot_row, *rows]:
        x = r.get(bj)
        if x:
            nv = r.get(j, 0) - q * x
            if nv:
                r[j] = nv
            else:
                r.pop(j, None)


def rank_and_torsion(matrix: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    diag = smith_diagonal(matrix)
    return len(diag), [d for d in diag if d > 1]
