import json

import numpy as np
import pytest

from mdsforge.decomp import certify, decompose
from mdsforge.enumerate import (
    Checkpoint,
    EnumSpec,
    Kind,
    Mode,
    brute_force_involutory,
    brute_force_mds,
    count,
    enum_involutory,
    enum_mds,
    enum_representatives,
    iter_blocks,
    multiplicity,
    representatives_literal,
    set_digest,
    stream_digest,
)
from mdsforge.errors import CheckpointMismatch, LimitExceeded, UsageError
from mdsforge.gf import Field
from mdsforge.mdscheck import is_involutory, is_mds

F4, F5, F7, F8 = Field(2, 2), Field(5), Field(7), Field(2, 3)


def test_spec_validation():
    with pytest.raises(UsageError):
        EnumSpec(F4, 1)
    assert EnumSpec(F4, 3).canonical() == "2^2/0x7|n=3|kind=representatives"
    assert EnumSpec(F4, 3).digest() != EnumSpec(F8, 3).digest()


def test_order3_f4_representatives():
    reps = list(enum_representatives(EnumSpec(F4, 3)))
    assert [m.rows for m in reps] == [
        ((1, 1, 1), (1, 2, 3), (1, 3, 2)),
        ((1, 1, 1), (1, 3, 2), (1, 2, 3)),
    ]


def test_empty_order4_f4():
    assert list(enum_representatives(EnumSpec(F4, 4))) == []
    assert count(EnumSpec(F4, 4)).count == 0


@pytest.mark.parametrize("f,n", [(F4, 2), (F5, 2), (F4, 3), (F7, 2), (Field(3), 3)], ids=str)
def test_mds_stream_equals_brute_force(f, n):
    bf = brute_force_mds(f, n)
    got = stream_digest(EnumSpec(f, n, Kind.ALL_MDS))
    assert got == bf
    assert count(EnumSpec(f, n, Kind.ALL_MDS)).count == bf.count


@pytest.mark.parametrize("f,n", [(F4, 2), (F5, 2), (F7, 2), (F4, 3), (F5, 3), (Field(3), 3)],
                         ids=str)
def test_involutory_stream_equals_brute_force(f, n):
    bf = brute_force_involutory(f, n)
    got = stream_digest(EnumSpec(f, n, Kind.ALL_INVOLUTORY))
    assert got == bf
    assert count(EnumSpec(f, n, Kind.ALL_INVOLUTORY)).count == bf.count


def test_canonical_sign_alone_covers_half_in_odd_characteristic():
    bf = brute_force_involutory(F5, 3)
    res = count(EnumSpec(F5, 3, Kind.ALL_INVOLUTORY))
    assert res.certified * (5 - 1) ** 2 * 2 == bf.count
    assert multiplicity(F5, 3, Kind.ALL_INVOLUTORY) == 2 * 16
    assert multiplicity(F8, 3, Kind.ALL_INVOLUTORY) == 49


def test_stream_order_is_canonical():
    blocks = iter_blocks(EnumSpec(F8, 3, Kind.ALL_MDS))
    first = np.concatenate([next(blocks), next(blocks)])
    reps = [m.rows for m in enum_representatives(EnumSpec(F8, 3))]
    assert reps == sorted(reps)
    # D2 outer, D1 inner: the first (q-1)^n matrices share D2 = I
    for m in first[:7 ** 3]:
        t = decompose_rows(F8, m)
        assert t.d2.diag == (1, 1, 1)
    assert decompose_rows(F8, first[7 ** 3]).d2.diag == (1, 1, 2)


def decompose_rows(f, arr):
    from mdsforge.matlin import SquareMatrix
    return decompose(SquareMatrix.from_rows(f, arr.tolist()))


def test_stream_and_count_coherence():
    for f, n, kind in [(F8, 3, Kind.REPRESENTATIVES), (F8, 3, Kind.ALL_INVOLUTORY),
                       (F8, 4, Kind.REPRESENTATIVES), (F8, 4, Kind.ALL_INVOLUTORY),
                       (F7, 3, Kind.ALL_INVOLUTORY), (F5, 3, Kind.ALL_MDS)]:
        streamed = sum(len(b) for b in iter_blocks(EnumSpec(f, n, kind)))
        assert streamed == count(EnumSpec(f, n, kind, Mode.COUNT_ONLY)).count


def test_involutory_outputs_are_members_of_mds_outputs():
    inv = {m.rows for m in enum_involutory(EnumSpec(F8, 3, Kind.ALL_INVOLUTORY))}
    assert len(inv) == 1176
    mul = np.array([[F8.mul(x, y) for y in range(8)] for x in range(8)])
    mds_inv = set()
    for arr in iter_blocks(EnumSpec(F8, 3, Kind.ALL_MDS)):
        sq = np.zeros_like(arr)
        for t in range(3):
            sq ^= mul[arr[:, :, t][:, :, None], arr[:, t, :][:, None, :]]
        for m in arr[(sq == np.eye(3, dtype=int)).all(axis=(1, 2))].tolist():
            mds_inv.add(tuple(map(tuple, m)))
    assert inv == mds_inv


def test_order4_f8_routes_agree():
    nested = np.array([[r[1:] for r in m.rows[1:]]
                       for m in enum_representatives(EnumSpec(F8, 4))])
    literal = representatives_literal(F8, 4)
    assert nested.shape == (720, 3, 3)
    assert (nested == literal).all()


def test_literal_route_small_orders():
    for f, n in [(F4, 3), (F8, 3), (F5, 3), (F4, 2)]:
        lit = representatives_literal(f, n)
        reps = np.array([[r[1:] for r in m.rows[1:]]
                         for m in enum_representatives(EnumSpec(f, n))]).reshape(lit.shape)
        assert (lit == reps).all()


def test_order5_over_tiny_fields():
    assert count(EnumSpec(F4, 5)).count == 0
    assert count(EnumSpec(Field(3), 4)).count == 0


def test_odd_characteristic_order4():
    f = Field(7)
    res = count(EnumSpec(f, 4, Kind.ALL_INVOLUTORY))
    assert res.representatives > 0
    sample = list(enum_involutory(EnumSpec(f, 4, Kind.ALL_INVOLUTORY)))
    assert len(sample) == res.count
    for m in sample[:: max(1, len(sample) // 200)]:
        assert is_involutory(m) and is_mds(m)


def test_worker_count_independence():
    results = {w: count(EnumSpec(F8, 4, Kind.ALL_INVOLUTORY), workers=w) for w in (1, 2, 8)}
    assert {(r.count, r.representatives, r.certified) for r in results.values()} == {
        (16464, 720, 48)}


def test_stream_limit():
    with pytest.raises(LimitExceeded):
        enum_mds(EnumSpec(F8, 3, Kind.ALL_MDS, limit=1000))
    with pytest.raises(LimitExceeded):
        iter_blocks(EnumSpec(Field(2, 4), 4, Kind.ALL_MDS))
    with pytest.raises(UsageError):
        enum_mds(EnumSpec(F8, 3, Kind.REPRESENTATIVES))
    # the exact size decides when the bound is loose
    assert len(list(enum_representatives(EnumSpec(F8, 4, limit=720)))) == 720
    with pytest.raises(LimitExceeded):
        enum_representatives(EnumSpec(F8, 4, limit=719))


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "run.ckpt")
    spec = EnumSpec(F8, 4, Kind.ALL_INVOLUTORY, Mode.COUNT_ONLY)
    part = count(spec, checkpoint=path, max_blocks=100)
    assert not part.complete and part.blocks_done == 100
    saved = json.load(open(path))
    assert saved["cursor"] == 100 and saved["digest"] == spec.digest()
    part2 = count(spec, checkpoint=path, workers=2, max_blocks=77)
    assert part2.resumed and part2.blocks_done == 177
    done = count(spec, checkpoint=path, workers=3)
    assert done.complete and done.resumed
    assert (done.count, done.representatives, done.certified) == (16464, 720, 48)
    # a finished checkpoint just reports the total
    again = count(spec, checkpoint=path)
    assert again.count == 16464 and again.blocks_done == again.blocks


def test_checkpoint_mismatch(tmp_path):
    path = str(tmp_path / "run.ckpt")
    count(EnumSpec(F8, 3), checkpoint=path, max_blocks=3)
    with pytest.raises(CheckpointMismatch):
        count(EnumSpec(F8, 4), checkpoint=path)
    (tmp_path / "bad.ckpt").write_text("{not json")
    with pytest.raises(CheckpointMismatch):
        count(EnumSpec(F8, 3), checkpoint=str(tmp_path / "bad.ckpt"))


def test_checkpoint_out_of_order_blocks():
    ck = Checkpoint("d", "s", 5)
    ck.record(2, 10, 1)
    ck.record(0, 1, 0)
    assert ck.cursor == 1 and ck.pending == {2: (10, 1)}
    ck.record(1, 5, 5)
    assert ck.cursor == 3 and ck.totals() == (16, 6)
    assert Checkpoint.from_json(json.loads(json.dumps(ck.to_json()))) == ck


def test_set_digest_is_order_independent():
    a = np.arange(18).reshape(2, 3, 3)
    assert set_digest(a) == set_digest(a[::-1])
    assert set_digest(a) != set_digest(a[:1])


def test_brute_force_refuses_large_spaces():
    with pytest.raises(UsageError):
        brute_force_mds(Field(2, 4), 3)


def test_python_fallback_matches_kernels(monkeypatch):
    import mdsforge.enumerate as E
    expected = {n: count(EnumSpec(F8, n)).representatives for n in (2, 3)}
    cert3 = count(EnumSpec(F8, 3)).certified
    monkeypatch.setattr(E.K, "KERNEL_MAX_Q", 4)
    E._plan.cache_clear()
    E._rep3_table.cache_clear()
    try:
        assert count(EnumSpec(F8, 2)).representatives == expected[2]
        r3 = count(EnumSpec(F8, 3))
        assert (r3.representatives, r3.certified) == (expected[3], cert3)
        assert len(list(enum_mds(EnumSpec(F4, 3, Kind.ALL_MDS)))) == 486
    finally:
        E._plan.cache_clear()
        E._rep3_table.cache_clear()


def test_certificate_flags_match_python_certify():
    flagged = count(EnumSpec(F8, 4)).certified
    assert flagged == sum(certify(m).certificate is not None
                          for m in enum_representatives(EnumSpec(F8, 4)))
