"""Channel arithmetic, cell coverage, and the fixed radio constants."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carelink.gsm import (
    Arfcn,
    Band,
    CellClass,
    CellKind,
    FRAME_DURATION_S,
    GROSS_RATE_BPS,
    InvalidChannel,
    arfcn_to_frequencies,
    in_coverage,
    tx_power_limit,
)
from carelink.gsm.cells import DEFAULT_RANGE_KM, EXTENDED_FACTOR, MAX_BASE_RANGE_KM
from carelink.gsm.link import LinkConfig


def test_known_channel_frequencies():
    assert arfcn_to_frequencies(Arfcn(1)) == pytest.approx((890.2, 935.2))
    assert arfcn_to_frequencies(Arfcn(62)) == pytest.approx((902.4, 947.4))
    assert arfcn_to_frequencies(Arfcn(124)) == pytest.approx((914.8, 959.8))


def test_whole_plan_against_formula():
    for n in range(1, 125):
        up, down = arfcn_to_frequencies(Arfcn(n))
        assert up == pytest.approx(890.0 + 0.2 * n)
        assert down - up == 45.0  # duplex spacing is exact, not approximate
        assert 890.0 < up < 915.0
        assert 935.0 < down < 960.0


def test_adjacent_channels_are_200khz_apart():
    for n in range(1, 124):
        up_a, _ = arfcn_to_frequencies(Arfcn(n))
        up_b, _ = arfcn_to_frequencies(Arfcn(n + 1))
        assert up_b - up_a == pytest.approx(0.2)


@pytest.mark.parametrize("n", [0, 125, -3, 1000])
def test_out_of_range_channels_rejected(n):
    with pytest.raises(InvalidChannel):
        Arfcn(n)


def test_radio_constants():
    assert GROSS_RATE_BPS == 270833
    assert FRAME_DURATION_S == 0.004615


def test_power_limits_by_band():
    assert tx_power_limit(Band.GSM850_900) == 2.0
    assert tx_power_limit(Band.GSM1800_1900) == 1.0
    assert tx_power_limit(Band.GSM850_900) > tx_power_limit(Band.GSM1800_1900)


def test_default_cell_ranges():
    assert DEFAULT_RANGE_KM[CellKind.MACRO] == 35.0
    assert DEFAULT_RANGE_KM[CellKind.MICRO] == 2.0
    assert DEFAULT_RANGE_KM[CellKind.PICO] == 0.05
    assert DEFAULT_RANGE_KM[CellKind.FEMTO] == 0.03
    assert DEFAULT_RANGE_KM[CellKind.UMBRELLA] == 35.0
    assert all(r <= MAX_BASE_RANGE_KM for r in DEFAULT_RANGE_KM.values())


def cfg_at(distance, cell):
    return LinkConfig(cell=cell, distance_km=distance)


def test_macro_cell_coverage_cases():
    macro = CellClass(kind=CellKind.MACRO, max_range_km=35.0, extended=False)
    assert in_coverage(cfg_at(34.0, macro))
    assert not in_coverage(cfg_at(36.0, macro))

    stretched = CellClass(kind=CellKind.MACRO, max_range_km=35.0, extended=True)
    assert in_coverage(cfg_at(60.0, stretched))
    assert not in_coverage(cfg_at(71.0, stretched))  # 2x cap, no "or even more"


def test_zero_distance_always_covered():
    for kind in CellKind:
        cell = CellClass(kind=kind, max_range_km=DEFAULT_RANGE_KM[kind], extended=False)
        assert in_coverage(cfg_at(0.0, cell))


def test_base_range_above_cap_rejected():
    with pytest.raises(ValueError):
        CellClass(kind=CellKind.MACRO, max_range_km=40.0, extended=False)


@given(
    kind=st.sampled_from(list(CellKind)),
    base=st.floats(min_value=0.01, max_value=35.0),
    extended=st.booleans(),
    distance=st.floats(min_value=0.0, max_value=100.0),
)
def test_coverage_is_a_threshold(kind, base, extended, distance):
    cell = CellClass(kind=kind, max_range_km=base, extended=extended)
    reach = base * (EXTENDED_FACTOR if extended else 1.0)
    assert in_coverage(cfg_at(distance, cell)) == (distance <= reach)
