"""Release acceptance checks, one test per criterion.

Each test records a one-line PASS/FAIL summary; `conftest.py` prints them at
the end of the session.  Run this file directly for the same lines without
pytest:  python3 tests/test_acceptance.py

The order-4 census over F_16 (criterion 6) takes a couple of minutes on one
core.  Set MDSFORGE_SKIP_CENSUS=1 to skip it.
"""

from __future__ import annotations

import json
import os
import random
import signal
import subprocess
import sys
import time

import numpy as np
import pytest

from mdsforge.counting import (
    formula_inv3,
    formula_mds3,
    formula_rep3,
    table_4x4,
)
from mdsforge.decomp import compose, decompose, involutory_certificate, involutory_member
from mdsforge.enumerate import (
    EnumSpec,
    Kind,
    Mode,
    brute_force_involutory,
    brute_force_mds,
    count,
    enum_involutory,
    enum_representatives,
    iter_blocks,
    representatives_literal,
    stream_digest,
)
from mdsforge.gf import Field, parse_field
from mdsforge.matlin import DiagonalMatrix, SquareMatrix, bordered, inverse, parse_matrix, sandwich
from mdsforge.mdscheck import is_involutory, is_mds, is_representative_mds
from mdsforge.nested import interior, minor_polynomials, minors_by_position

RESULTS: list[str] = []

F4, F5, F7, F8 = Field(2, 2), Field(5), Field(7), Field(2, 3)
F16 = parse_field("2^4/0x13")


def report(num: int, title: str, checks: dict, elapsed: float, limit: float | None = None):
    """Record the line for one criterion and fail the test on any broken check."""
    if limit is not None:
        checks[f"runtime {elapsed:.2f}s < {limit:g}s"] = elapsed < limit
    bad = [k for k, ok in checks.items() if not ok]
    status = "PASS" if not bad else "FAIL"
    detail = "; ".join(bad) if bad else f"{len(checks)} checks, {elapsed:.2f}s"
    line = f"criterion {num} {status}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert not bad, line


def test_criterion_1_worked_examples():
    t0 = time.perf_counter()
    m = parse_matrix("0xD,0x7,0xA,0x3;0x7,0xD,0x3,0xA;0xA,0x3,0xD,0x7;0x3,0xA,0x7,0xD", F16)
    t = decompose(m)
    m1_rows = ((1, 1, 1, 1), (1, 0xC, 0xD, 0x5), (1, 0xD, 0x5, 0x7), (1, 0x5, 0x7, 0x8))
    inv_m = parse_matrix("0xA,0xC,0x6,0x1;0xC,0xA,0x1,0x6;0x6,0x1,0xA,0xC;0x1,0x6,0xC,0xA", F16)
    m1 = SquareMatrix.from_rows(F16, m1_rows)
    cert = involutory_certificate(m1)
    member = involutory_member(m1, cert, (0xC, 0x6, 0x1))
    checks = {
        "D1": t.d1.diag == (0xD, 0x7, 0xA, 0x3),
        "D2": t.d2.diag == (1, 0xF, 0xE, 0xC),
        "M1": t.m1.rows == m1_rows,
        "round trip": compose(t) == m,
        "inverse of M1": inverse(m1).rows == ((8, 0xF, 7, 1), (0xF, 0xF, 4, 4),
                                              (7, 4, 7, 4), (1, 4, 4, 1)),
        "alpha": cert is not None and cert.alphas == (0xA, 0x8, 0x2, 0xC),
        "member": member == inv_m,
        "M^2 = I": member @ member == SquareMatrix.identity(F16, 4),
    }
    report(1, "worked examples reproduce exactly", checks, time.perf_counter() - t0, 1.0)


def test_criterion_2_brute_force_oracle():
    t0 = time.perf_counter()
    checks = {}
    for f, n, expected in [(F4, 2, 54), (F5, 2, 192), (F4, 3, 486)]:
        bf = brute_force_mds(f, n)
        got = stream_digest(EnumSpec(f, n, Kind.ALL_MDS))
        label = f"{f.spec_string()} n={n}"
        checks[f"{label} brute count {bf.count} == {expected}"] = bf.count == expected
        checks[f"{label} stream set == brute set"] = got == bf
    report(2, "MDS streams set-equal the brute-force oracle", checks, time.perf_counter() - t0)


def test_criterion_3_closed_forms():
    t0 = time.perf_counter()
    checks = {}
    for m, reps, total, inv in [(2, 2, 486, 0), (3, 390, 6_554_730, 1_176),
                                (4, 24_206, 18_381_431_250, 37_800)]:
        f = Field(2, m)
        res = count(EnumSpec(f, 3, Kind.REPRESENTATIVES, Mode.COUNT_ONLY))
        checks[f"m={m} formula reps"] = formula_rep3(m) == reps
        checks[f"m={m} enumerated reps"] = res.representatives == reps
        checks[f"m={m} formula mds"] = formula_mds3(m) == total
        if m < 4:
            streamed = sum(len(b) for b in iter_blocks(EnumSpec(f, 3, Kind.ALL_MDS)))
            checks[f"m={m} streamed mds"] = streamed == total
        else:
            checks["m=4 mds as reps x 15^5"] = res.representatives * 15**5 == total
        checks[f"m={m} formula inv"] = formula_inv3(m) == inv
        streamed = sum(len(b) for b in iter_blocks(EnumSpec(f, 3, Kind.ALL_INVOLUTORY)))
        checks[f"m={m} streamed inv"] = streamed == inv
    report(3, "order-3 closed forms match enumeration", checks, time.perf_counter() - t0)


def test_criterion_4_census_f8():
    t0 = time.perf_counter()
    res = count(EnumSpec(F8, 4, Kind.REPRESENTATIVES, Mode.COUNT_ONLY))
    nested = np.array([[r[1:] for r in m.rows[1:]]
                       for m in enum_representatives(EnumSpec(F8, 4))])
    literal = representatives_literal(F8, 4)
    reps, total, cert, inv = table_4x4(3)
    checks = {
        "representatives 720": res.representatives == 720 == reps,
        "certified 48": res.certified == 48 == cert,
        "total 7^7 x 720": count(EnumSpec(F8, 4, Kind.ALL_MDS)).count == 7**7 * 720 == total,
        "involutory 7^3 x 48": count(EnumSpec(F8, 4, Kind.ALL_INVOLUTORY)).count == 7**3 * 48 == inv,
        "literal scan == nested route": literal.shape == nested.shape and (literal == nested).all(),
    }
    report(4, "order-4 census over F_8", checks, time.perf_counter() - t0, 60.0)


def test_criterion_5_census_f4():
    t0 = time.perf_counter()
    res = count(EnumSpec(F4, 4, Kind.REPRESENTATIVES, Mode.COUNT_ONLY))
    checks = {
        "zero representatives": res.count == 0,
        "empty stream": list(enum_representatives(EnumSpec(F4, 4))) == [],
    }
    report(5, "order-4 census over F_4 is empty", checks, time.perf_counter() - t0, 1.0)


def _wait_for_progress(path: str, proc, timeout: float) -> int:
    deadline = time.time() + timeout
    while time.time() < deadline:
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    state = json.load(fh)
                if state["cursor"] >= 2000:
                    return state["cursor"]
            except (ValueError, KeyError):
                pass
        if proc.poll() is not None:
            break
        time.sleep(0.5)
    return -1


@pytest.mark.slow
@pytest.mark.skipif(os.environ.get("MDSFORGE_SKIP_CENSUS") == "1",
                    reason="order-4 census over F_16 skipped by MDSFORGE_SKIP_CENSUS")
def test_criterion_6_census_f16(tmp_path):
    t0 = time.perf_counter()
    ck = str(tmp_path / "f16.ckpt")
    spec = EnumSpec(F16, 4, Kind.REPRESENTATIVES, Mode.COUNT_ONLY)
    # start the census in a separate process and kill it part-way through
    proc = subprocess.Popen(
        [sys.executable, "-m", "mdsforge", "count", "--field", "2^4/0x13", "--order", "4",
         "--kind", "representatives", "--checkpoint", ck],
        stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    cursor = _wait_for_progress(ck, proc, timeout=600)
    killed = proc.poll() is None
    if killed:
        proc.send_signal(signal.SIGKILL)
    proc.wait()
    res = count(spec, workers=os.cpu_count() or 1, checkpoint=ck)
    checks = {
        "killed mid-run": killed and cursor > 0,
        "resumed from checkpoint": res.resumed,
        "complete": res.complete,
        "representatives 464,227,344": res.representatives == 464_227_344,
        "certified 71,856": res.certified == 71_856,
        "involutory total 15^3 x 71,856": res.certified * 15**3 == table_4x4(4)[3],
    }
    report(6, "order-4 census over F_16 with kill and resume", checks,
           time.perf_counter() - t0)


def test_criterion_7_property_suites():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    checks = {}

    # diagonal sandwiches keep the MDS property, 100 random cases
    pool = list(enum_representatives(EnumSpec(F8, 4))) + list(
        enum_representatives(EnumSpec(Field(2, 4), 3)))
    ok = True
    for _ in range(100):
        m = rng.choice(pool)
        f, n = m.field, m.n
        d1 = DiagonalMatrix.of(f, [rng.randrange(1, f.q) for _ in range(n)])
        d2 = DiagonalMatrix.of(f, [rng.randrange(1, f.q) for _ in range(n)])
        ok &= is_mds(sandwich(d1, m, d2))
    checks["sandwich keeps MDS on 100 cases"] = ok

    # no representative MDS matrix is involutory, 10^4 random interiors
    pools = [list(enum_representatives(EnumSpec(f, n)))
             for f, n in [(F8, 3), (F8, 4), (Field(2, 4), 3), (F5, 3), (F7, 3), (F7, 4)]]
    ok = True
    hits = 0
    for i in range(10_000):
        if i % 2:
            m1 = rng.choice(rng.choice(pools))
        else:
            f = rng.choice([F8, Field(2, 4), F7])
            n = rng.choice([2, 3, 4])
            m1 = bordered(f, [[rng.randrange(2, f.q) for _ in range(n - 1)]
                              for _ in range(n - 1)])
        if is_representative_mds(m1):
            hits += 1
            ok &= not is_involutory(m1)
    checks[f"no involutory representative ({hits} MDS of 10^4)"] = ok and hits > 5000

    # interior test agrees with the full MDS test
    ok = True
    for cells in np.ndindex(*(4,) * 4):
        m = bordered(F4, (cells[:2], cells[2:]))
        ok &= is_representative_mds(m) == is_mds(m)
    checks["interior test == is_mds, all order-3 over F_4"] = ok
    survivors = list(enum_representatives(EnumSpec(F8, 4)))
    checks["720 F_8 survivors are MDS"] = len(survivors) == 720 and all(map(is_mds, survivors))
    ok = True
    for _ in range(10_000):
        m = bordered(F8, [[rng.randrange(1, 8) for _ in range(3)] for _ in range(3)])
        rep = is_representative_mds(m)
        ok &= rep == is_mds(m)
    checks["interior test == is_mds on 10^4 random F_8 order-4"] = ok

    # expanded minor polynomials agree with the minors they stand for
    for f in (F8, F16):
        ok = True
        for _ in range(10_000):
            params = [rng.randrange(1, f.q) for _ in range(9)]
            polys = minor_polynomials(f, *params)
            minors = minors_by_position(bordered(f, interior(f, *params)))
            ok &= [p != 0 for p in polys] == [x != 0 for x in minors]
        checks[f"minor polynomials == minors on 10^4 tuples over {f.spec_string()}"] = ok

    # worker-count independence
    results = {w: count(EnumSpec(F8, 4, Kind.ALL_INVOLUTORY, Mode.COUNT_ONLY), workers=w)
               for w in (1, 2, 8)}
    checks["count independent of workers 1/2/8"] = len(
        {(r.count, r.representatives, r.certified) for r in results.values()}) == 1
    report(7, "property suites", checks, time.perf_counter() - t0)


def test_criterion_8_odd_characteristic():
    t0 = time.perf_counter()
    checks = {}
    bf = brute_force_mds(F5, 3)
    got = stream_digest(EnumSpec(F5, 3, Kind.ALL_MDS))
    checks["F_5 n=3 MDS enumeration == brute force"] = got == bf
    ok = True
    total = 0
    for f, n in [(F5, 2), (F5, 3), (F5, 4), (F7, 2), (F7, 3), (F7, 4)]:
        for m in enum_involutory(EnumSpec(f, n, Kind.ALL_INVOLUTORY)):
            total += 1
            ok &= is_involutory(m) and is_mds(m)
    checks[f"{total} involutory outputs over F_5, F_7 are involutory MDS"] = ok and total > 0
    for n in (2, 3):
        bf = brute_force_involutory(F5, n)
        got = stream_digest(EnumSpec(F5, n, Kind.ALL_INVOLUTORY))
        checks[f"F_5 n={n} involutory stream == brute force ({bf.count})"] = got == bf
        res = count(EnumSpec(F5, n, Kind.ALL_INVOLUTORY))
        # one certificate sign covers exactly half; the negated one covers the rest
        checks[f"F_5 n={n} canonical sign covers half"] = (
            res.certified * 4 ** (n - 1) * 2 == bf.count)
    report(8, "odd-characteristic sanity", checks, time.perf_counter() - t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
