from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from excepta import (
    DynkinType,
    OverflowCapError,
    build,
    centralizer_order,
    decompose_deleted_diagram,
    orbit_enumerate,
    orbit_size,
    weyl_order,
)
from excepta.weyl import orbit_formula_a, orbit_formula_bcd

from conftest import SMALL_TYPES


def test_weyl_orders():
    assert weyl_order(DynkinType("A", 4)) == 120
    assert weyl_order(DynkinType("B", 3)) == 48
    assert weyl_order(DynkinType("D", 4)) == 192
    assert weyl_order(DynkinType("G", 2)) == 12
    assert weyl_order(DynkinType("F", 4)) == 1152
    assert weyl_order(DynkinType("E", 8)) == 696729600


def test_orbit_of_zero_and_regular_weights(small_rs):
    zero = (0,) * small_rs.rank
    assert orbit_size(small_rs, zero) == 1
    assert orbit_size(small_rs, (1,) * small_rs.rank) == weyl_order(small_rs.dtype)


def test_enumeration_matches_formula_on_small_box(small_rs):
    for mu in itertools.product(range(3), repeat=small_rs.rank):
        assert len(orbit_enumerate(small_rs, mu)) == orbit_size(small_rs, mu), mu


@pytest.mark.parametrize("rank", range(1, 7))
def test_a_closed_form(rank):
    rs = build(DynkinType("A", rank))
    for mu in itertools.product(range(2), repeat=rank):
        assert orbit_formula_a(rank, mu) == orbit_size(rs, mu)


@pytest.mark.parametrize("family,rank", [("B", 2), ("B", 4), ("C", 3), ("C", 5), ("D", 4), ("D", 5), ("D", 6)])
def test_bcd_closed_form(family, rank):
    rs = build(DynkinType(family, rank))
    for mu in itertools.product(range(2), repeat=rank):
        assert orbit_formula_bcd(family, rank, mu) == orbit_size(rs, mu), mu


def test_centralizer_times_orbit_is_group_order(small_rs):
    order = weyl_order(small_rs.dtype)
    for mu in itertools.product(range(2), repeat=small_rs.rank):
        assert centralizer_order(small_rs, mu) * orbit_size(small_rs, mu) == order


def test_deleted_diagram_components():
    rs = build(DynkinType("E", 8))
    comps = decompose_deleted_diagram(rs, (1, 0, 0, 0, 0, 0, 0, 0)).to_json()
    # nodes are listed in the component's own Dynkin order
    assert [c["type"] for c in comps] == ["D7"]
    assert sorted(comps[0]["nodes"]) == [2, 3, 4, 5, 6, 7, 8]
    f4 = build(DynkinType("F", 4))
    kinds = sorted(c["type"] for c in decompose_deleted_diagram(f4, (0, 0, 0, 1)).to_json())
    assert kinds == ["B3"]
    kinds = sorted(c["type"] for c in decompose_deleted_diagram(f4, (1, 0, 0, 0)).to_json())
    assert kinds == ["C3"]


def test_orbit_cap_raises():
    rs = build(DynkinType("E", 6))
    with pytest.raises(OverflowCapError):
        orbit_enumerate(rs, (1, 1, 1, 1, 1, 1), cap=1000)


def test_negative_weight_rejected():
    rs = build(DynkinType("A", 2))
    with pytest.raises(ValueError):
        orbit_size(rs, (-1, 1))


@given(st.sampled_from(SMALL_TYPES), st.data())
def test_orbit_size_divides_group_order(dtype, data):
    rs = build(dtype)
    mu = data.draw(st.lists(st.integers(0, 6), min_size=rs.rank, max_size=rs.rank))
    assert weyl_order(dtype) % orbit_size(rs, mu) == 0


@given(st.sampled_from(SMALL_TYPES), st.data())
def test_orbit_size_depends_only_on_support(dtype, data):
    rs = build(dtype)
    mu = data.draw(st.lists(st.integers(0, 6), min_size=rs.rank, max_size=rs.rank))
    support = tuple(int(a > 0) for a in mu)
    assert orbit_size(rs, mu) == orbit_size(rs, support)


def test_e8_extreme_fundamental_orbits():
    rs = build(DynkinType("E", 8))
    # omega_8 is the highest root, so its orbit is the full set of 240 roots
    roots = set(rs._root_weights) | {tuple(-a for a in w) for w in rs._root_weights}
    assert orbit_enumerate(rs, (0, 0, 0, 0, 0, 0, 0, 1)) == roots
    assert orbit_size(rs, (1, 0, 0, 0, 0, 0, 0, 0)) == 2160
    assert len(orbit_enumerate(rs, (1, 0, 0, 0, 0, 0, 0, 0))) == 2160
