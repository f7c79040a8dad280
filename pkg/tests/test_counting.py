import pytest

from mdsforge.counting import (
    Source,
    expected_value,
    formula_inv3,
    formula_mds3,
    formula_noninv3,
    formula_rep3,
    inv3_exact,
    mds3_exact,
    noninv3_exact,
    rep3_exact,
    table_4x4,
    verify,
)
from mdsforge.enumerate import Kind
from mdsforge.errors import UsageError
from mdsforge.gf import Field


@pytest.mark.parametrize("m,rep,mds,inv", [
    (2, 2, 486, 0),
    (3, 390, 6_554_730, 1_176),
    (4, 24_206, 18_381_431_250, 37_800),
])
def test_order3_formulas(m, rep, mds, inv):
    assert formula_rep3(m) == rep
    assert formula_mds3(m) == mds
    assert formula_inv3(m) == inv


def test_noninvolutory_formula():
    assert formula_noninv3(2) == 486
    assert formula_noninv3(3) == 6_553_554
    for m in range(2, 17):
        assert noninv3_exact(m) == mds3_exact(m) - inv3_exact(m)
        assert mds3_exact(m) == (2**m - 1) ** 5 * rep3_exact(m)


def test_128_bit_refusal():
    assert formula_mds3(14) == mds3_exact(14)
    assert mds3_exact(15) >= 1 << 128
    for fn in (formula_mds3, formula_noninv3):
        with pytest.raises(UsageError, match="128 bits"):
            fn(15)
    with pytest.raises(UsageError):
        formula_rep3(0)


def test_table_values():
    assert table_4x4(2) == (0, 0, 0, 0)
    assert table_4x4(3) == (720, 592_950_960, 48, 16_464)
    reps, total, cert, inv = table_4x4(4)
    assert (reps, cert, inv) == (464_227_344, 71_856, 242_514_000)
    assert total == 15**7 * reps
    with pytest.raises(UsageError):
        table_4x4(5)


def test_expected_value_sources():
    assert expected_value(Field(2, 3), 3, Kind.ALL_MDS) == (6_554_730, Source.CLOSED_FORM)
    assert expected_value(Field(2, 3), 4, Kind.REPRESENTATIVES) == (720, Source.TABLE)
    assert expected_value(Field(5), 3, Kind.ALL_MDS) == (None, Source.ENUMERATION_ONLY)
    assert expected_value(Field(2, 5), 4, Kind.ALL_MDS)[1] is Source.ENUMERATION_ONLY


@pytest.mark.parametrize("f,n,kind,value", [
    (Field(2, 2), 3, Kind.ALL_MDS, 486),
    (Field(2, 3), 4, Kind.REPRESENTATIVES, 720),
    (Field(2, 3), 4, Kind.ALL_INVOLUTORY, 16_464),
    (Field(2, 4), 3, Kind.ALL_INVOLUTORY, 37_800),
    (Field(2, 2), 4, Kind.REPRESENTATIVES, 0),
])
def test_verify_agrees(f, n, kind, value):
    rep = verify(f, n, kind)
    assert rep.agrees and rep.enumerated_value == value
    assert rep.to_json()["agrees"] is True


def test_verify_enumeration_only():
    rep = verify(Field(5), 3, Kind.ALL_MDS)
    assert rep.source is Source.ENUMERATION_ONLY
    assert rep.formula_value is None and not rep.agrees
    assert rep.enumerated_value == 6144 and rep.structure_ok
