from __future__ import annotations

from math import factorial

from hypothesis import given, strategies as st

from excepta.combinatorics import (
    a_orbit_from_indices,
    falling_factorial,
    multinomial,
    multinomial_lower_bound,
    parts_from_indices,
    sym_power_dim,
)
from excepta import DynkinType, build, orbit_size


@given(st.lists(st.integers(0, 8), min_size=1, max_size=6))
def test_multinomial_matches_factorials(parts):
    want = factorial(sum(parts))
    for a in parts:
        want //= factorial(a)
    assert multinomial(parts) == want


@given(st.lists(st.integers(1, 8), min_size=1, max_size=6))
def test_multinomial_falling_factorial_bound(parts):
    assert multinomial(parts) >= multinomial_lower_bound(parts)


@given(st.integers(0, 20), st.integers(0, 20))
def test_falling_factorial(n, k):
    want = 1
    for i in range(k):
        want *= n - i
    assert falling_factorial(n, k) == max(want, 0)


@given(st.integers(1, 7), st.data())
def test_a_orbit_from_indices_matches_weyl_orbit(rank, data):
    indices = sorted(data.draw(st.sets(st.integers(1, rank), max_size=rank)))
    mu = [0] * rank
    for i in indices:
        mu[i - 1] = 1
    assert sum(parts_from_indices(rank, indices)) == rank + 1
    assert a_orbit_from_indices(rank, indices) == orbit_size(build(DynkinType("A", rank)), mu)


def test_sym_power_dim_small():
    assert [sym_power_dim(3, d) for d in range(4)] == [1, 3, 6, 10]
