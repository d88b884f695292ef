from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from excepta import (
    DynkinType,
    IntegrityError,
    Kind,
    MultiplicityHints,
    Reason,
    SpecialPrimeError,
    brute_force_M,
    build,
    classify_weight,
    diagram_automorphisms,
    graph_twist,
    is_special_prime,
    limit,
    screen,
    table_M,
)
from excepta import screening
from excepta.screening import verdict_is_consistent

from conftest import SMALL_TYPES, ALL_EXCEPTIONAL


def _nonspecial(dtype, primes=(2, 3, 5, 7)):
    return [p for p in primes if not is_special_prime(dtype, p)]


def test_limits():
    assert [limit(DynkinType(f, n)) for f, n in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8))] == [36, 192, 324, 588, 1011]
    assert limit(DynkinType("D", 4)) == 192
    assert limit(DynkinType("B", 4)) == 128
    assert limit(DynkinType("B", 5)) == 250


def test_screen_e6_omega3_contributions():
    res = screen(build(DynkinType("E", 6)), (0, 0, 1, 0, 0, 0), 5, short_circuit=False)
    top = res.contributions[0]
    assert (top.orbit_size, top.long_complement_count) == (216, 25)
    assert Fraction(top.multiplicity * top.orbit_size * top.long_complement_count, 72) == 75
    assert res.r_p_exceeds and res.r_p_value == 81


def test_screen_e6_omega1_plus_omega6_bound():
    rs = build(DynkinType("E", 6))
    for p in (3, 5, 7):
        res = screen(rs, (1, 0, 0, 0, 0, 1), p, short_circuit=False)
        assert res.r_p_value >= 80 > 72
        assert [c.mu for c in res.contributions] == [(1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0), (0,) * 6]
        assert not res.contributions[-1].good


def test_screen_hinted_values():
    g2 = build(DynkinType("G", 2))
    hints = MultiplicityHints.from_records(
        [{"type": "G", "rank": 2, "p": 7, "lambda": [1, 1], "mu": [1, 0], "mult": 2}]
    )
    assert screen(g2, (1, 1), 7, hints, short_circuit=False).r_p_value == 15
    assert screen(g2, (1, 1), 7, short_circuit=False).r_p_value == 13
    b4 = build(DynkinType("B", 4))
    hints = MultiplicityHints.from_records(
        [{"type": "B", "rank": 4, "p": 3, "lambda": [1, 0, 0, 1], "mu": [0, 0, 0, 1], "mult": 3}]
    )
    assert screen(b4, (1, 0, 0, 1), 3, hints, short_circuit=False).r_p_value == 36


def test_screen_refusals():
    with pytest.raises(SpecialPrimeError):
        screen(build(DynkinType("G", 2)), (1, 0), 3)
    with pytest.raises(SpecialPrimeError):
        screen(build(DynkinType("G", 2)), (1, 0), 2)
    with pytest.raises(ValueError):
        screen(build(DynkinType("A", 2)), (5, 0), 5)


@pytest.mark.parametrize(
    "dtype,lam,p,kind,reason",
    [
        (DynkinType("E", 6), (0, 0, 1, 0, 0, 0), 5, Kind.NOT_EXCEPTIONAL, Reason.RP_EXCEEDS_R),
        (DynkinType("F", 4), (0, 0, 0, 1), 7, Kind.EXCEPTIONAL, Reason.DIM_CRITERION),
        (DynkinType("E", 8), (0, 0, 0, 0, 0, 0, 0, 1), 7, Kind.EXCEPTIONAL, Reason.ADJOINT),
        (DynkinType("G", 2), (0, 0), 5, Kind.EXCEPTIONAL, Reason.TRIVIAL_MODULE),
        (DynkinType("G", 2), (1, 0), 2, Kind.EXCEPTIONAL, Reason.DIM_CRITERION),
        (DynkinType("G", 2), (1, 0), 3, Kind.UNDETERMINED, Reason.SPECIAL_PRIME_REFUSED),
        (DynkinType("A", 2), (3, 0), 3, Kind.UNDETERMINED, Reason.NOT_P_RESTRICTED),
        (DynkinType("G", 2), (2, 0), 5, Kind.UNDETERMINED, Reason.INCONCLUSIVE),
    ],
    ids=str,
)
def test_classify_examples(dtype, lam, p, kind, reason):
    verdict = classify_weight(build(dtype), lam, p)
    assert verdict.kind is kind
    assert reason in verdict.reasons
    assert verdict_is_consistent(verdict)


def test_integrity_error_when_both_rules_fire(monkeypatch):
    monkeypatch.setattr(screening, "dimension_criterion", lambda rs, lam, p: True)
    with pytest.raises(IntegrityError):
        classify_weight(build(DynkinType("E", 6)), (0, 0, 1, 0, 0, 0), 5)


@given(st.sampled_from(SMALL_TYPES + ALL_EXCEPTIONAL[:2]), st.sampled_from([2, 3, 5, 7]), st.data())
def test_verdicts_are_consistent(dtype, p, data):
    rs = build(dtype)
    lam = data.draw(st.lists(st.integers(0, p - 1), min_size=rs.rank, max_size=rs.rank))
    assert verdict_is_consistent(classify_weight(rs, lam, p))


@given(st.sampled_from(SMALL_TYPES + ALL_EXCEPTIONAL[:3]), st.sampled_from([3, 5, 7]), st.data())
def test_short_circuit_is_monotone(dtype, p, data):
    rs = build(dtype)
    if is_special_prime(dtype, p):
        return
    lam = data.draw(st.lists(st.integers(0, p - 1), min_size=rs.rank, max_size=rs.rank))
    fast = screen(rs, lam, p)
    full = screen(rs, lam, p, short_circuit=False)
    if fast.short_circuited:
        assert full.s_value >= fast.s_value > fast.limit
        assert full.r_p_value >= fast.r_p_value > fast.abs_R
    else:
        assert (fast.s_value, fast.r_p_value) == (full.s_value, full.r_p_value)


@given(st.sampled_from(SMALL_TYPES + ALL_EXCEPTIONAL[:2]), st.sampled_from([3, 5, 7]), st.data())
def test_bad_weights_contribute_nothing(dtype, p, data):
    rs = build(dtype)
    if is_special_prime(dtype, p):
        return
    lam = data.draw(st.lists(st.integers(0, p - 1), min_size=rs.rank, max_size=rs.rank))
    res = screen(rs, lam, p, short_circuit=False)
    good = [c for c in res.contributions if c.good]
    assert res.s_value == sum(c.multiplicity * c.orbit_size for c in good)
    assert res.r_p_value * rs.num_long_roots == sum(
        c.multiplicity * c.orbit_size * c.long_complement_count for c in good
    )


M_TYPES = [t for t in SMALL_TYPES if t.rank <= 4]


@pytest.mark.parametrize("dtype", M_TYPES, ids=str)
@pytest.mark.parametrize("p", [5, 7])
def test_brute_force_M_matches_table(dtype, p):
    assert brute_force_M(build(dtype), p) == table_M(dtype)


TWIST_GRIDS = [
    (DynkinType("A", 3), 3),
    (DynkinType("A", 4), 3),
    (DynkinType("D", 4), 3),
    (DynkinType("D", 5), 3),
    (DynkinType("E", 6), 2),
]


@pytest.mark.parametrize("dtype,p", TWIST_GRIDS, ids=str)
def test_graph_twist_preserves_kind(dtype, p):
    rs = build(dtype)
    auts = diagram_automorphisms(dtype)
    for lam in itertools.product(range(p), repeat=rs.rank):
        kind = classify_weight(rs, lam, p).kind
        for name in auts:
            assert classify_weight(rs, graph_twist(rs, lam, name), p).kind is kind, (lam, name)


@pytest.mark.parametrize("dtype", ALL_EXCEPTIONAL, ids=str)
@pytest.mark.parametrize("p", [5, 7, 11])
def test_tabled_weights_are_exceptional(dtype, p):
    from excepta import default_tables

    rs = build(dtype)
    exceptional, _ = default_tables().weight_sets(dtype, p)
    assert exceptional
    for lam in exceptional:
        assert classify_weight(rs, lam, p).kind is Kind.EXCEPTIONAL, lam
