"""Order-4 representatives through the nested order-3 parameterisation.

The interior R of an order-4 representative is itself MDS, so it factors as

    R = diag(l1, l2, l3) * [[1,1,1],[1,a,b],[1,c,d]] * diag(1, t2, t3)

with (a, b, c, d) a valid order-3 interior.  This module is the plain-Python
statement of the resulting conditions; `_kernels.rep4_block` is the compiled
counterpart.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .errors import UsageError
from .gf import Field
from .matlin import SquareMatrix, bordered, det_codes
from .mdscheck import check_r_order2

# (rows, cols) of M1 for each polynomial returned by `minor_polynomials`.
MINOR_POSITIONS = (
    ((0, 1, 2), (0, 1, 2)),
    ((0, 1, 2), (0, 1, 3)),
    ((0, 1, 2), (0, 2, 3)),
    ((0, 1, 2), (1, 2, 3)),
    ((0, 1, 3), (0, 1, 2)),
    ((0, 1, 3), (0, 1, 3)),
    ((0, 1, 3), (0, 2, 3)),
    ((0, 1, 3), (1, 2, 3)),
    ((0, 2, 3), (0, 1, 2)),
    ((0, 2, 3), (0, 1, 3)),
    ((0, 2, 3), (0, 2, 3)),
    ((0, 2, 3), (1, 2, 3)),
    ((1, 2, 3), (0, 1, 2)),
    ((1, 2, 3), (0, 1, 3)),
    ((1, 2, 3), (0, 2, 3)),
)


def interior(f: Field, a, b, c, d, l1, l2, l3, t2, t3) -> tuple[tuple[int, ...], ...]:
    mul = f.mul
    return (
        (l1, mul(l1, t2), mul(l1, t3)),
        (l2, mul(mul(a, l2), t2), mul(mul(b, l2), t3)),
        (l3, mul(mul(c, l3), t2), mul(mul(d, l3), t3)),
    )


def minor_polynomials(f: Field, a, b, c, d, l1, l2, l3, t2, t3) -> list[int]:
    """The fifteen order-3 minors of M1 other than det R, as polynomials.

    Valid in characteristic 2 only, where the minors expand to these sums
    without signs.  Position k corresponds to ``MINOR_POSITIONS[k]``.
    """
    if f.p != 2:
        raise UsageError("the expanded minor polynomials hold in characteristic 2 only")

    def m(*xs):
        acc = 1
        for x in xs:
            acc = f.mul(acc, x)
        return acc

    def s(*terms):
        acc = 0
        for t in terms:
            acc ^= t
        return acc

    return [
        s(m(a, l1, l2, t2), m(a, l2, t2), m(l1, l2, t2), m(l1, t2), l1, l2),
        s(m(b, l1, l2, t3), m(b, l2, t3), m(l1, l2, t3), m(l1, t3), l1, l2),
        s(m(a, l1, l2, t2, t3), m(b, l1, l2, t2, t3), m(a, l2, t2), m(b, l2, t3),
          m(l1, t2), m(l1, t3)),
        s(m(a, l1, l2, t2, t3), m(b, l1, l2, t2, t3), m(a, l1, l2, t2), m(b, l1, l2, t3),
          m(l1, l2, t2), m(l1, l2, t3)),
        s(m(c, l1, l3, t2), m(c, l3, t2), m(l1, l3, t2), m(l1, t2), l1, l3),
        s(m(d, l1, l3, t3), m(d, l3, t3), m(l1, l3, t3), m(l1, t3), l1, l3),
        s(m(c, l1, l3, t2, t3), m(d, l1, l3, t2, t3), m(c, l3, t2), m(d, l3, t3),
          m(l1, t2), m(l1, t3)),
        s(m(c, l1, l3, t2, t3), m(d, l1, l3, t2, t3), m(c, l1, l3, t2), m(d, l1, l3, t3),
          m(l1, l3, t2), m(l1, l3, t3)),
        s(m(a, l2, l3, t2), m(c, l2, l3, t2), m(a, l2, t2), m(c, l3, t2), l2, l3),
        s(m(b, l2, l3, t3), m(d, l2, l3, t3), m(b, l2, t3), m(d, l3, t3), l2, l3),
        s(m(b, c, l2, l3, t2, t3), m(a, d, l2, l3, t2, t3), m(a, l2, t2), m(c, l3, t2),
          m(b, l2, t3), m(d, l3, t3)),
        s(m(b, c, l2, l3, t2, t3), m(a, d, l2, l3, t2, t3), m(a, l2, l3, t2), m(c, l2, l3, t2),
          m(b, l2, l3, t3), m(d, l2, l3, t3)),
        s(m(a, l1, l2, t2), m(c, l1, l3, t2), m(a, l2, l3, t2), m(c, l2, l3, t2),
          m(l1, l2, t2), m(l1, l3, t2)),
        s(m(b, l1, l2, t3), m(d, l1, l3, t3), m(b, l2, l3, t3), m(d, l2, l3, t3),
          m(l1, l2, t3), m(l1, l3, t3)),
        s(m(b, c, l2, l3, t2, t3), m(a, d, l2, l3, t2, t3), m(a, l1, l2, t2, t3),
          m(b, l1, l2, t2, t3), m(c, l1, l3, t2, t3), m(d, l1, l3, t2, t3)),
    ]


def minors_by_position(m1: SquareMatrix) -> list[int]:
    return [
        det_codes(m1.field, [[m1.rows[i][j] for j in cs] for i in rs])
        for rs, cs in MINOR_POSITIONS
    ]


def _entries_ok(f: Field, a, b, c, d, l1, l2, l3, t2, t3) -> bool:
    mul = f.mul
    at2, bt3, ct2, dt3 = mul(a, t2), mul(b, t3), mul(c, t2), mul(d, t3)
    # no entry of R equals one
    if 1 in (l1, l2, l3, mul(l1, t2), mul(l1, t3), mul(l2, at2), mul(l2, bt3),
             mul(l3, ct2), mul(l3, dt3)):
        return False
    # distinct entries along rows and columns of R
    if t2 == 1 or t3 == 1 or t2 == t3 or l1 == l2 or l2 == l3 or l1 == l3:
        return False
    if bt3 == 1 or at2 == bt3 or ct2 == 1 or dt3 == 1 or ct2 == dt3 or at2 == 1:
        return False
    al2, cl3, bl2, dl3 = mul(a, l2), mul(c, l3), mul(b, l2), mul(d, l3)
    return len({l1, al2, cl3}) == 3 and len({l1, bl2, dl3}) == 3


def nested_passes(f: Field, a, b, c, d, l1, l2, l3, t2, t3) -> bool:
    """All conditions on one parameter tuple; (a, b, c, d) must be a valid class."""
    if not _entries_ok(f, a, b, c, d, l1, l2, l3, t2, t3):
        return False
    r = interior(f, a, b, c, d, l1, l2, l3, t2, t3)
    m1 = bordered(f, r)
    if f.p == 2:
        minors = minor_polynomials(f, a, b, c, d, l1, l2, l3, t2, t3)
    else:
        minors = minors_by_position(m1)
    if 0 in minors:
        return False
    shifted = [[f.sub(x, 1) for x in row] for row in r]
    return det_codes(f, shifted) != 0


def nested_representatives(f: Field, a: int, b: int, c: int, d: int) -> Iterator[SquareMatrix]:
    """Order-4 representatives whose interior belongs to the class (a, b, c, d)."""
    if not check_r_order2(f, a, b, c, d):
        return
    nz = range(1, f.q)
    for t2, t3, l1, l2, l3 in itertools.product(nz, repeat=5):
        if nested_passes(f, a, b, c, d, l1, l2, l3, t2, t3):
            yield bordered(f, interior(f, a, b, c, d, l1, l2, l3, t2, t3))
