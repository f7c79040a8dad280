"""Dense square matrices over a finite field.

Matrices hold integer element codes; every operation routes arithmetic
through the owning `Field`.  Indices are 0-based in code and 1-based in any
text meant for people.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, UsageError
from .gf import Field, FieldElement, parse_field


@dataclass(frozen=True)
class SquareMatrix:
    field: Field
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise UsageError("matrix order must be at least 1")
        for r in self.rows:
            if len(r) != n:
                raise UsageError(f"matrix is not square: row of length {len(r)} in order {n}")
            for c in r:
                if not 0 <= c < self.field.q:
                    raise UsageError(f"entry {c} outside field {self.field.spec_string()}")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "SquareMatrix":
        return cls(field, tuple(tuple(int(c) for c in r) for r in rows))

    @classmethod
    def _trusted(cls, field: Field, rows: tuple[tuple[int, ...], ...]) -> "SquareMatrix":
        # skips validation; for bulk producers whose codes are known to be in range
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "rows", rows)
        return obj

    @classmethod
    def identity(cls, field: Field, n: int) -> "SquareMatrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.rows[i][j])

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        return mat_mul(self, other)

    def interior(self) -> "SquareMatrix":
        """The lower-right (n-1)x(n-1) block."""
        return SquareMatrix(self.field, tuple(r[1:] for r in self.rows[1:]))

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(self.field, tuple(zip(*self.rows)))

    def to_text(self) -> str:
        fmt = self.field.format
        return ";".join(",".join(fmt(c) for c in r) for r in self.rows)

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "field": self.field.spec_string(),
            "rows": [[fmt(c) for c in r] for r in self.rows],
        }

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class DiagonalMatrix:
    field: Field
    diag: tuple[int, ...]

    @classmethod
    def of(cls, field: Field, entries: Iterable) -> "DiagonalMatrix":
        return cls(field, tuple(int(c) for c in entries))

    @property
    def n(self) -> int:
        return len(self.diag)

    def is_nonsingular(self) -> bool:
        return all(self.diag)

    def as_matrix(self) -> SquareMatrix:
        n = self.n
        return SquareMatrix(
            self.field,
            tuple(tuple(self.diag[i] if i == j else 0 for j in range(n)) for i in range(n)),
        )

    def det(self) -> int:
        acc = 1
        for d in self.diag:
            acc = self.field.mul(acc, d)
        return acc

    def to_json(self) -> list[str]:
        return [self.field.format(c) for c in self.diag]


def _check_pair(a: SquareMatrix, b: SquareMatrix) -> None:
    if a.field != b.field:
        raise UsageError("matrices belong to different fields")
    if a.n != b.n:
        raise UsageError(f"order mismatch: {a.n} vs {b.n}")


def mat_mul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    _check_pair(a, b)
    f = a.field
    cols = list(zip(*b.rows))
    out = []
    for r in a.rows:
        row = []
        for c in cols:
            acc = 0
            for x, y in zip(r, c):
                if x and y:
                    acc = f.add(acc, f.mul(x, y))
            row.append(acc)
        out.append(tuple(row))
    return SquareMatrix(f, tuple(out))


def det_codes(f: Field, m: Sequence[Sequence[int]]) -> int:
    """Determinant of a k x k list-of-rows of codes.

    Closed forms for k <= 3, elimination with pivot search otherwise.
    """
    k = len(m)
    if k == 1:
        return m[0][0]
    mul, sub = f.mul, f.sub
    if k == 2:
        return sub(mul(m[0][0], m[1][1]), mul(m[0][1], m[1][0]))
    if k == 3:
        (a, b, c), (d, e, g), (h, i, j) = m
        t1 = mul(a, sub(mul(e, j), mul(g, i)))
        t2 = mul(b, sub(mul(d, j), mul(g, h)))
        t3 = mul(c, sub(mul(d, i), mul(e, h)))
        return f.add(sub(t1, t2), t3)
    a = [list(r) for r in m]
    acc = 1
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            acc = f.neg(acc)
        pv = a[col][col]
        acc = mul(acc, pv)
        pinv = f.inv(pv)
        for r in range(col + 1, k):
            if a[r][col]:
                factor = mul(a[r][col], pinv)
                row, prow = a[r], a[col]
                for c in range(col, k):
                    row[c] = sub(row[c], mul(factor, prow[c]))
    return acc


def det(a: SquareMatrix) -> int:
    return det_codes(a.field, a.rows)


def minor(a: SquareMatrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    if len(rows) != len(cols) or not rows:
        raise UsageError("minor needs equal, non-empty row and column index sets")
    n = a.n
    if any(not 0 <= i < n for i in rows) or any(not 0 <= j < n for j in cols):
        raise UsageError("minor index out of range")
    return det_codes(a.field, [[a.rows[i][j] for j in cols] for i in rows])


def inverse(a: SquareMatrix) -> SquareMatrix:
    """Gauss-Jordan inverse; raises DomainError when singular."""
    f = a.field
    n = a.n
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise DomainError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = f.inv(aug[col][col])
        aug[col] = [f.mul(pinv, x) for x in aug[col]]
        prow = aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(aug[r], prow)]
    return SquareMatrix(f, tuple(tuple(r[n:]) for r in aug))


def sandwich(d1: DiagonalMatrix, a: SquareMatrix, d2: DiagonalMatrix) -> SquareMatrix:
    """D1 * A * D2 computed entrywise."""
    if d1.field != a.field or d2.field != a.field:
        raise UsageError("diagonal and matrix belong to different fields")
    if d1.n != a.n or d2.n != a.n:
        raise UsageError("diagonal order does not match matrix order")
    if not d1.is_nonsingular() or not d2.is_nonsingular():
        raise DomainError("diagonal matrix is singular")
    mul = a.field.mul
    return SquareMatrix(
        a.field,
        tuple(
            tuple(mul(mul(li, x), tj) for x, tj in zip(row, d2.diag))
            for li, row in zip(d1.diag, a.rows)
        ),
    )


def bordered(field: Field, interior: Sequence[Sequence[int]]) -> SquareMatrix:
    """The representative form: an all-ones first row and column around ``interior``."""
    k = len(interior)
    rows = [(1,) * (k + 1)] + [(1,) + tuple(int(c) for c in r) for r in interior]
    return SquareMatrix(field, tuple(rows))


def has_ones_border(a: SquareMatrix) -> bool:
    return all(c == 1 for c in a.rows[0]) and all(r[0] == 1 for r in a.rows)


# --- text and JSON forms --------------------------------------------------------

def parse_matrix(text: str, field: Field) -> SquareMatrix:
    """Parse ``e,e;e,e`` text.  Errors name the offending character position."""
    rows = []
    pos = 0
    for rtext in text.split(";"):
        row = []
        cpos = pos
        for etext in rtext.split(","):
            if not etext.strip():
                raise UsageError(f"matrix text: empty entry at position {cpos}")
            try:
                row.append(field.parse_element(etext))
            except UsageError as exc:
                raise UsageError(f"matrix text: {exc} at position {cpos}") from None
            cpos += len(etext) + 1
        rows.append(tuple(row))
        pos += len(rtext) + 1
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise UsageError(f"matrix text: row {i + 1} has {len(r)} entries, expected {n}")
    return SquareMatrix(field, tuple(rows))


def matrix_from_json(obj, field: Field | None = None) -> SquareMatrix:
    if isinstance(obj, str):
        obj = json.loads(obj)
    f = parse_field(obj["field"]) if "field" in obj else field
    if f is None:
        raise UsageError("matrix JSON names no field")
    if field is not None and f != field:
        raise UsageError(f"matrix JSON field {f.spec_string()} differs from {field.spec_string()}")
    rows = obj["rows"]
    return SquareMatrix(
        f, tuple(tuple(f.parse_element(str(e)) for e in r) for r in rows)
    )
