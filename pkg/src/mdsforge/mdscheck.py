"""MDS and involution predicates, and the conditions on a representative's interior."""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import UsageError
from .gf import Field
from .matlin import SquareMatrix, det_codes, has_ones_border, mat_mul


@functools.lru_cache(maxsize=None)
def minor_index_table(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """All (rows, cols) index pairs of an n x n matrix, ascending in minor order.

    69 entries for n = 4.
    """
    out = []
    for k in range(1, n + 1):
        subsets = list(itertools.combinations(range(n), k))
        out.extend((r, c) for r in subsets for c in subsets)
    return tuple(out)


def zero_minors(f: Field, rows: Sequence[Sequence[int]], first_only: bool = False):
    """Index pairs of vanishing minors, smallest order first."""
    n = len(rows)
    found = []
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x == 0:
                found.append(((i,), (j,)))
                if first_only:
                    return found
    if found:
        return found
    for rs, cs in minor_index_table(n)[n * n:]:
        if det_codes(f, [[rows[i][j] for j in cs] for i in rs]) == 0:
            found.append((rs, cs))
            if first_only:
                return found
    return found


def is_mds(a: SquareMatrix) -> bool:
    """True iff every square sub-matrix is non-singular."""
    rows = a.rows
    if any(0 in r for r in rows):
        return False
    f = a.field
    n = a.n
    for rs, cs in minor_index_table(n)[n * n:]:
        if det_codes(f, [[rows[i][j] for j in cs] for i in rs]) == 0:
            return False
    return True


def is_involutory(a: SquareMatrix) -> bool:
    return mat_mul(a, a) == SquareMatrix.identity(a.field, a.n)


class ViolationKind(enum.Enum):
    NOT_MDS = "NotMds"
    MODIFIED_SINGULAR = "ModifiedSingular"
    ENTRY_ONE = "EntryOne"
    REPEAT_IN_ROW_OR_COL = "RepeatInRowOrCol"
    R_MINUS_U_SINGULAR = "RMinusUSingular"

    @property
    def condition(self) -> int:
        return _CONDITION_NUMBER[self]


_CONDITION_NUMBER = {
    ViolationKind.NOT_MDS: 1,
    ViolationKind.MODIFIED_SINGULAR: 2,
    ViolationKind.ENTRY_ONE: 3,
    ViolationKind.REPEAT_IN_ROW_OR_COL: 4,
    ViolationKind.R_MINUS_U_SINGULAR: 5,
}


@dataclass(frozen=True)
class RViolation:
    kind: ViolationKind
    witness: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "condition": self.kind.condition,
                "witness": _one_based(self.witness)}


def _one_based(w):
    if isinstance(w, tuple):
        return [_one_based(x) for x in w]
    if isinstance(w, int):
        return w + 1
    return w


def _modified(rows, i, j):
    k = len(rows)
    return [
        [1 if (r == i or c == j) else rows[r][c] for c in range(k)]
        for r in range(k)
    ]


def check_r(r: SquareMatrix) -> list[RViolation]:
    """Conditions an interior R must meet for its bordered matrix to be MDS.

    Checked cheapest first: no entry equal to one, distinct entries per row
    and column, R itself MDS, R - U non-singular, then every row/column
    replacement by ones non-singular.  Returns every violation of the first
    failing condition; an empty list means R passes.
    """
    f = r.field
    rows = r.rows
    k = r.n

    bad = [RViolation(ViolationKind.ENTRY_ONE, (i, j))
           for i in range(k) for j in range(k) if rows[i][j] == 1]
    if bad:
        return bad

    for i in range(k):
        for j1, j2 in itertools.combinations(range(k), 2):
            if rows[i][j1] == rows[i][j2]:
                bad.append(RViolation(ViolationKind.REPEAT_IN_ROW_OR_COL, ("row", i, j1, j2)))
    for j in range(k):
        for i1, i2 in itertools.combinations(range(k), 2):
            if rows[i1][j] == rows[i2][j]:
                bad.append(RViolation(ViolationKind.REPEAT_IN_ROW_OR_COL, ("col", j, i1, i2)))
    if bad:
        return bad

    bad = [RViolation(ViolationKind.NOT_MDS, w) for w in zero_minors(f, rows)]
    if bad:
        return bad

    shifted = [[f.sub(x, 1) for x in row] for row in rows]
    if det_codes(f, shifted) == 0:
        return [RViolation(ViolationKind.R_MINUS_U_SINGULAR, ())]

    # None stands for "no replacement" on that axis.
    for i, j in itertools.product([None, *range(k)], repeat=2):
        if i is None and j is None:
            continue
        if det_codes(f, _modified(rows, i, j)) == 0:
            label = "row" if j is None else "col" if i is None else "both"
            bad.append(RViolation(ViolationKind.MODIFIED_SINGULAR, (label, i, j)))
    return bad


def passes_r(r: SquareMatrix) -> bool:
    return not check_r(r)


def check_r_order2(f: Field, a: int, b: int, c: int, d: int) -> bool:
    """Closed-form test that [[1,1,1],[1,a,b],[1,c,d]] is MDS.

    The last condition is det(R - U) != 0 written as
    d - 1 != (a - 1)^{-1} (b - 1)(c - 1); in characteristic 2 the signs vanish.
    """
    if a < 2 or b < 2 or c < 2 or d < 2:
        return False
    if b == a or c == a or d == b or d == c:
        return False
    mul, sub = f.mul, f.sub
    if mul(a, d) == mul(b, c):
        return False
    return mul(sub(a, 1), sub(d, 1)) != mul(sub(b, 1), sub(c, 1))


def is_representative_mds(m1: SquareMatrix) -> bool:
    if not has_ones_border(m1):
        raise UsageError("representative matrix must have an all-ones first row and column")
    if m1.n == 1:
        return True
    if check_r(m1.interior()):
        return False
    return m1.n <= 4 or is_mds(m1)
