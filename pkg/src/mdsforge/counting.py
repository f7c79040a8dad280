"""Closed-form counts for order 3 over F_{2^m}, the order-4 census values, and
a check of either against enumeration.

All arithmetic is exact integer arithmetic.  Public formula values are
refused when they do not fit in 128 bits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .enumerate import EnumSpec, Kind, Mode, count, multiplicity
from .errors import UsageError
from .gf import Field

U128_MAX = (1 << 128) - 1


def _guard(value: int, what: str, m: int) -> int:
    if value > U128_MAX:
        raise UsageError(f"{what}({m}) does not fit in 128 bits")
    return value


def _check_m(m: int) -> int:
    if not isinstance(m, int) or m < 1:
        raise UsageError(f"m must be a positive integer, got {m!r}")
    return m


# Unbounded versions; the public functions add the 128-bit refusal.

def rep3_exact(m: int) -> int:
    q = 2 ** _check_m(m)
    return (q - 2) * (q - 3) * (q * q - 9 * q + 21)


def mds3_exact(m: int) -> int:
    return (2**m - 1) ** 5 * rep3_exact(m)


def inv3_exact(m: int) -> int:
    q = 2 ** _check_m(m)
    return (q - 1) ** 2 * (q - 2) * (q - 4)


def noninv3_exact(m: int) -> int:
    q = 2 ** _check_m(m)
    poly = (q**6 - 15 * q**5 + 87 * q**4 - 244 * q**3
            + 345 * q**2 - 238 * q + 67)
    return (q - 1) ** 2 * (q - 2) * poly


def formula_rep3(m: int) -> int:
    """Representative MDS matrices of order 3 over F_{2^m}."""
    return _guard(rep3_exact(m), "formula_rep3", m)


def formula_mds3(m: int) -> int:
    """All MDS matrices of order 3 over F_{2^m}."""
    return _guard(mds3_exact(m), "formula_mds3", m)


def formula_inv3(m: int) -> int:
    """Involutory MDS matrices of order 3 over F_{2^m}."""
    return _guard(inv3_exact(m), "formula_inv3", m)


def formula_noninv3(m: int) -> int:
    """Non-involutory MDS matrices of order 3 over F_{2^m}."""
    return _guard(noninv3_exact(m), "formula_noninv3", m)


FORMULAS = {
    "rep3": formula_rep3,
    "mds3": formula_mds3,
    "inv3": formula_inv3,
    "noninv3": formula_noninv3,
}


# Census of order-4 representatives over F_{2^m}: (representatives, certified).
_CENSUS_4X4 = {
    2: (0, 0),
    3: (720, 48),
    4: (464_227_344, 71_856),
}


def table_4x4(m: int) -> tuple[int, int, int, int]:
    """(representatives, all MDS, certified representatives, all involutory) for order 4."""
    if m not in _CENSUS_4X4:
        raise UsageError(f"no tabulated order-4 value for m = {m}; only m in 2..4")
    reps, cert = _CENSUS_4X4[m]
    q = 2**m
    return reps, (q - 1) ** 7 * reps, cert, (q - 1) ** 3 * cert


class Source(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    TABLE = "Table"
    ENUMERATION_ONLY = "EnumerationOnly"


@dataclass(frozen=True)
class CountReport:
    field: Field
    n: int
    kind: Kind
    formula_value: Optional[int]
    enumerated_value: Optional[int]
    source: Source
    structure_ok: bool = True

    @property
    def agrees(self) -> bool:
        return (self.formula_value is not None and self.enumerated_value is not None
                and self.formula_value == self.enumerated_value and self.structure_ok)

    def to_json(self) -> dict:
        def s(v):
            return None if v is None else str(v)
        return {
            "field": self.field.spec_string(),
            "order": self.n,
            "kind": self.kind.value,
            "formula_value": s(self.formula_value),
            "enumerated_value": s(self.enumerated_value),
            "structure_ok": self.structure_ok,
            "agrees": self.agrees,
            "source": self.source.value,
        }


def expected_value(field: Field, n: int, kind: Kind) -> tuple[Optional[int], Source]:
    """The formula or tabulated value for a task, if one exists."""
    if field.p != 2:
        return None, Source.ENUMERATION_ONLY
    m = field.m
    if n == 3:
        value = {
            Kind.REPRESENTATIVES: rep3_exact,
            Kind.ALL_MDS: mds3_exact,
            Kind.ALL_INVOLUTORY: inv3_exact,
        }[kind](m)
        return value, Source.CLOSED_FORM
    if n == 4 and m in _CENSUS_4X4:
        reps, total, _, inv = table_4x4(m)
        value = {Kind.REPRESENTATIVES: reps, Kind.ALL_MDS: total,
                 Kind.ALL_INVOLUTORY: inv}[kind]
        return value, Source.TABLE
    return None, Source.ENUMERATION_ONLY


def verify(field: Field, n: int, kind: Kind, workers: int = 1,
           checkpoint: Optional[str] = None) -> CountReport:
    """Enumerate and compare with the formula or tabulated value.

    The multiplicative structure is checked as well: the total must be the
    representative count (certified count for involutory) times the number of
    diagonal pairs attached to each one.
    """
    res = count(EnumSpec(field, n, kind, Mode.COUNT_ONLY), workers=workers,
                checkpoint=checkpoint)
    base = res.certified if kind is Kind.ALL_INVOLUTORY else res.representatives
    structure_ok = res.complete and res.count == base * multiplicity(field, n, kind)
    if field.p == 2 and n == 4 and field.m in _CENSUS_4X4 and kind is not Kind.REPRESENTATIVES:
        reps, _, cert, _ = table_4x4(field.m)
        structure_ok = structure_ok and (
            res.certified == cert if kind is Kind.ALL_INVOLUTORY else res.representatives == reps)
    expected, source = expected_value(field, n, kind)
    return CountReport(field, n, kind, expected, res.count if res.complete else None,
                       source, structure_ok)
