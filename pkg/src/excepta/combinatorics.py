"""Exact counting helpers: multinomials, falling factorials, A-type orbit bounds."""

from __future__ import annotations

from math import comb, perm
from typing import Sequence


def multinomial(parts: Sequence[int]) -> int:
    """n! / (a_1! ... a_k!) with n = sum(parts)."""
    if any(a < 0 for a in parts):
        raise ValueError(f"negative part in {tuple(parts)}")
    out, total = 1, 0
    for a in parts:
        total += a
        out *= comb(total, a)
    return out


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    return perm(n, k) if 0 <= k <= n else 0


def parts_from_indices(rank: int, indices: Sequence[int]) -> list[int]:
    """Gaps i_1, i_2-i_1, ..., l+1-i_m for increasing 1-based node indices."""
    out, prev = [], 0
    for i in indices:
        out.append(i - prev)
        prev = i
    out.append(rank + 1 - prev)
    return out


def a_orbit_from_indices(rank: int, indices: Sequence[int]) -> int:
    """A_l orbit size of a weight with support ``indices``, as a multinomial."""
    return multinomial(parts_from_indices(rank, indices))


def multinomial_lower_bound(parts: Sequence[int]) -> int:
    """Falling-factorial bound n(n-1)...(n-k+2) valid when all k parts are nonempty."""
    return falling_factorial(sum(parts), len(parts) - 1)


def three_index_bound(rank: int) -> int:
    return rank * (rank * rank - 1)


def two_index_bound(rank: int) -> int:
    return rank * (rank + 1)


def four_index_bound(rank: int) -> int:
    return (rank + 1) * rank * (rank - 1) * (rank - 2)


def sym_power_dim(n: int, d: int) -> int:
    return comb(n + d - 1, d)


__all__ = [
    "multinomial",
    "falling_factorial",
    "parts_from_indices",
    "a_orbit_from_indices",
    "multinomial_lower_bound",
    "three_index_bound",
    "two_index_bound",
    "four_index_bound",
    "sym_power_dim",
]
