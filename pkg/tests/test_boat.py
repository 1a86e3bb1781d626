"""Crossing-schedule bijection: rank arrays, extension, round trips."""

from hypothesis import given, settings

from conftest import event_codes
from rtcnkit import (
    RankArray,
    boat_to_rtcn,
    enumerate_boats,
    enumerate_codes,
    format_boat,
    max_rank_return_count,
    parse_boat,
    parse_rtcn,
    rank_map,
    rank_unmap,
    rtcn_to_boat,
    validate_boat,
)


def test_rank_map_round_trip_frozen():
    boat = parse_boat("boat 5: send 1,4 1,3 2,5 2,4 ; back 1 4 2")
    arr = rank_map(boat)
    assert rank_unmap(arr) == boat
    # first send takes persons 1 and 4 out of shore {1..5}: ranks 1,4
    assert arr.row1[0] == (1, 4)


def test_rank_map_bijective_small():
    for n in (2, 3, 4):
        boats = list(enumerate_boats(n))
        arrays = {rank_map(b) for b in boats}
        assert len(arrays) == len(boats)
        for b in boats:
            assert rank_unmap(rank_map(b)) == b


def test_hand_traced_example():
    # single reticulation on 3 leaves whose hybrid lineage is leaf 2
    code = parse_rtcn("rtcn 3: R 1 3 2; B 1 2")
    boat = rtcn_to_boat(code)
    assert format_boat(boat) == "boat 3: send 1,3 1,2 ; back 1"
    assert boat_to_rtcn(boat) == code


def test_bijection_exhaustive():
    for n in (2, 3, 4):
        codes = list(enumerate_codes(n))
        boats = list(enumerate_boats(n))
        assert len(boats) == len(codes)
        images = [rtcn_to_boat(c) for c in codes]
        assert all(validate_boat(b) == [] for b in images)
        assert len(set(images)) == len(codes)
        assert set(images) == set(boats)
        for c, b in zip(codes, images):
            assert boat_to_rtcn(b) == c


def test_return_count_identity():
    for n in (2, 3, 4):
        for code in enumerate_codes(n):
            boat = rtcn_to_boat(code)
            assert max_rank_return_count(boat) == code.branching_count - 1


def test_max_rank_return_count_frozen():
    # returns 1, 4, 2 from far shores {1,4}, {1,3,4}, {1,2,3,5}: ranks 1,3,2;
    # only the second returner (rank 3 of 3) is the most skilled aboard
    boat = parse_boat("boat 5: send 1,4 1,3 2,5 2,4 ; back 1 4 2")
    arr = rank_map(boat)
    assert arr.row2 == (1, 3, 2)
    assert max_rank_return_count(boat) == 1

    # all three returners are the most skilled on their shore
    full = rank_unmap(RankArray(5, ((1, 2), (1, 2), (1, 2), (1, 2)), (2, 3, 4)))
    assert max_rank_return_count(full) == 3


def test_enumerate_boats_counts():
    assert [len(list(enumerate_boats(n))) for n in (2, 3, 4, 5)] == \
        [1, 6, 108, 4320]


@settings(max_examples=60, deadline=None)
@given(event_codes())
def test_boat_round_trip_property(code):
    boat = rtcn_to_boat(code)
    assert validate_boat(boat) == []
    assert boat_to_rtcn(boat) == code
    assert max_rank_return_count(boat) == code.branching_count - 1
