"""Dominant weights below a highest weight, pairing counts and dimensions.

The enumeration walks only dominant weights, stepping from a dominant
weight to dominant weights obtained by subtracting one positive root.
Stembridge showed that whenever mu < lambda are both dominant there is
a chain of dominant weights between them in which consecutive members
differ by a positive root, so this walk reaches every dominant weight
below lambda while never materializing the (much larger) set of
non-dominant lattice points in lambda - Q+.
"""

from __future__ import annotations

import heapq
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Mapping, Sequence

import numpy as np

from .combinatorics import sym_power_dim
from .errors import ConstructionError, OverflowCapError, PrimeError, SpecialPrimeError
from .rootsystem import (
    DynkinType,
    RootSystem,
    Weight,
    _require_prime,
    is_special_prime,
    weight_to_root_coords,
)

DEFAULT_GAP_CAP = 2_000_000


def gap_cap_from_env() -> int:
    raw = os.environ.get("EXCEPTA_GAP_CAP")
    if raw is None:
        return DEFAULT_GAP_CAP
    value = int(raw)
    if value <= 0:
        raise ConstructionError("EXCEPTA_GAP_CAP must be positive")
    return value


@dataclass(frozen=True)
class DominantSet:
    highest: Weight
    weights: tuple[Weight, ...]
    root_coord_gap: Mapping[Weight, tuple[int, ...]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.weights)

    def __contains__(self, mu: object) -> bool:
        return mu in self.root_coord_gap

    def __iter__(self) -> Iterator[Weight]:
        return iter(self.weights)


def _check_dominant(rs: RootSystem, mu: Sequence[int], what: str = "weight") -> Weight:
    mu = tuple(int(a) for a in mu)
    if len(mu) != rs.rank:
        raise ConstructionError(f"{what} has length {len(mu)}, expected rank {rs.rank}")
    if any(a < 0 for a in mu):
        raise ConstructionError(f"{what} {mu} is not dominant")
    return mu


def iter_dominant_below(
    rs: RootSystem, lam: Sequence[int], cap: int | None = None
) -> Iterator[tuple[Weight, tuple[int, ...]]]:
    """Yield (mu, gap) in increasing (height of gap, gap) order.

    ``gap`` is lambda - mu in simple-root coordinates. Raises
    OverflowCapError once more than ``cap`` weights have been reached.
    """
    lam = _check_dominant(rs, lam)
    if cap is None:
        cap = gap_cap_from_env()
    n = rs.rank
    steps = list(zip(rs.positive_roots, rs._root_weights))
    zero = (0,) * n
    heap: list[tuple[int, tuple[int, ...], Weight]] = [(0, zero, lam)]
    seen = {lam}
    while heap:
        height, gap, mu = heapq.heappop(heap)
        yield mu, gap
        for root, shift in steps:
            nxt = tuple(mu[k] - shift[k] for k in range(n))
            if min(nxt) < 0 or nxt in seen:
                continue
            if len(seen) >= cap:
                raise OverflowCapError(
                    f"dominant weights below {lam} exceed cap {cap}", len(seen)
                )
            seen.add(nxt)
            ngap = tuple(gap[k] + root[k] for k in range(n))
            heapq.heappush(heap, (height + sum(root), ngap, nxt))


def dominant_below(rs: RootSystem, lam: Sequence[int], cap: int | None = None) -> DominantSet:
    pairs = list(iter_dominant_below(rs, lam, cap))
    return DominantSet(
        highest=tuple(lam),
        weights=tuple(mu for mu, _ in pairs),
        root_coord_gap={mu: gap for mu, gap in pairs},
    )


def dominance_leq(rs: RootSystem, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """mu <= lambda, i.e. lambda - mu is a nonnegative integral sum of simple roots."""
    diff = tuple(b - a for a, b in zip(mu, lam))
    coords = weight_to_root_coords(rs, diff)
    return all(c.denominator == 1 and c >= 0 for c in coords)


def is_p_restricted(mu: Sequence[int], p: int) -> bool:
    return all(0 <= a <= p - 1 for a in mu)


def long_pairings(rs: RootSystem, mu: Sequence[int]) -> list[int]:
    """(mu, gamma) for every long positive root gamma, in root order."""
    if max((abs(a) for a in mu), default=0) < 2**40:
        return (rs._long_rows @ np.asarray(mu, dtype=np.int64)).tolist()
    return [sum(int(r) * a for r, a in zip(row, mu)) for row in rs._long_rows]


def long_complement_count(rs: RootSystem, mu: Sequence[int], p: int) -> int:
    """Number of long positive roots gamma with (mu, gamma) not divisible by p."""
    if len(mu) != rs.rank:
        raise ConstructionError(f"weight has length {len(mu)}, expected rank {rs.rank}")
    if max((abs(a) for a in mu), default=0) < 2**40:
        vals = rs._long_rows @ np.asarray(mu, dtype=np.int64)
        return int(np.count_nonzero(vals % p))
    return sum(1 for v in long_pairings(rs, mu) if v % p)


def is_bad_weight(rs: RootSystem, mu: Sequence[int], p: int) -> bool:
    """Every long positive root pairs with mu to zero modulo p."""
    _require_prime(p)
    if is_special_prime(rs.dtype, p):
        raise SpecialPrimeError(f"p={p} is special for {rs.dtype}; bad weights are not defined here")
    d = rs.d
    for gamma in rs.long_positive_roots:
        if sum(c * dj * a for c, dj, a in zip(gamma, d, mu)) % p:
            return False
    return True


def weyl_dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    """prod over positive roots of (lambda + rho, alpha) / (rho, alpha)."""
    lam = _check_dominant(rs, lam)
    d = rs.d
    num = den = 1
    for root in rs.positive_roots:
        num *= sum(c * dj * (a + 1) for c, dj, a in zip(root, d, lam))
        den *= sum(c * dj for c, dj in zip(root, d))
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"Weyl dimension of {lam} is not integral ({Fraction(num, den)})")
    return q


def steinberg_weight(rs: RootSystem, p: int) -> Weight:
    return (p - 1,) * rs.rank


def steinberg_dimension(rs: RootSystem, p: int) -> int:
    return weyl_dimension(rs, steinberg_weight(rs, p))


def steinberg_dimension_check(rs: RootSystem, p: int) -> bool:
    _require_prime(p)
    return steinberg_dimension(rs, p) == p ** len(rs.positive_roots)


# multiplicity hints

HintKey = tuple[str, int, int, Weight, Weight]


@dataclass(frozen=True)
class MultiplicityHints:
    entries: Mapping[HintKey, int] = field(default_factory=dict)

    def get(self, dtype: DynkinType, p: int, lam: Sequence[int], mu: Sequence[int]) -> int | None:
        return self.entries.get((dtype.family, dtype.rank, p, tuple(lam), tuple(mu)))

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_records(cls, records: Sequence[Mapping]) -> "MultiplicityHints":
        entries: dict[HintKey, int] = {}
        for k, rec in enumerate(records):
            try:
                dtype = DynkinType(str(rec["type"]).upper(), int(rec["rank"]))
                p = int(rec["p"])
                lam = tuple(int(a) for a in rec["lambda"])
                mu = tuple(int(a) for a in rec["mu"])
                mult = rec["mult"]
            except (KeyError, TypeError, ValueError) as exc:
                raise ConstructionError(f"hint #{k}: malformed record {rec!r} ({exc})") from exc
            try:
                _require_prime(p)
            except PrimeError as exc:
                raise ConstructionError(f"hint #{k}: {exc}") from exc
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise ConstructionError(f"hint #{k}: multiplicity must be an integer >= 1, got {mult!r}")
            for name, w in (("lambda", lam), ("mu", mu)):
                if len(w) != dtype.rank or any(a < 0 for a in w):
                    raise ConstructionError(f"hint #{k}: {name}={w} is not a dominant weight of {dtype}")
            key = (dtype.family, dtype.rank, p, lam, mu)
            if key in entries and entries[key] != mult:
                raise ConstructionError(f"hint #{k}: conflicting duplicate for {key}")
            entries[key] = mult
        return cls(entries)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "MultiplicityHints":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if isinstance(payload, dict):
            if payload.get("version") != 1:
                raise ConstructionError(f"unsupported hints version {payload.get('version')!r}")
            payload = payload.get("entries", [])
        if not isinstance(payload, list):
            raise ConstructionError("hints file must hold a JSON array of records")
        return cls.from_records(payload)


NO_HINTS = MultiplicityHints()


def _a_pair_pattern(rank: int, lam: Sequence[int], mu: Sequence[int]) -> tuple[int, int] | None:
    """(i, j) when lambda = w_i + w_j (i < j) and mu = w_{i-1} + w_{j+1}."""
    support = [k + 1 for k, a in enumerate(lam) if a]
    if len(support) != 2 or any(lam[k - 1] != 1 for k in support):
        return None
    i, j = support
    expected = [0] * rank
    if i - 1 >= 1:
        expected[i - 2] += 1
    if j + 1 <= rank:
        expected[j] += 1
    return (i, j) if tuple(expected) == tuple(mu) else None


def multiplicity_lower_bound(
    rs: RootSystem,
    lam: Sequence[int],
    mu: Sequence[int],
    p: int,
    hints: MultiplicityHints = NO_HINTS,
) -> int:
    hinted = hints.get(rs.dtype, p, lam, mu)
    if hinted is not None:
        return hinted
    if rs.dtype.family == "A":
        pattern = _a_pair_pattern(rs.rank, lam, mu)
        if pattern is not None:
            i, j = pattern
            return j - i + 1 if (j - i + 2) % p else j - i
    return 1


# truncated symmetric powers

@dataclass(frozen=True)
class TruncatedPowerData:
    sym_dim: int
    is_zero: bool
    highest_weight: Weight | None  # in A_{n-1} omega-coordinates; None when T_d = 0


def truncated_power_data(n: int, p: int, d: int) -> TruncatedPowerData:
    if n < 2:
        raise ConstructionError("n must be at least 2")
    if d < 0:
        raise ConstructionError("degree must be nonnegative")
    _require_prime(p)
    zero = d > n * (p - 1)
    if zero:
        return TruncatedPowerData(sym_power_dim(n, d), True, None)
    hw = [0] * (n - 1)
    s, k = divmod(d, p - 1)
    # (p-1-k) w_s + k w_{s+1}, dropping w_0 and w_n
    for index, coeff in ((s, p - 1 - k), (s + 1, k)):
        if 1 <= index <= n - 1 and coeff:
            hw[index - 1] += coeff
    return TruncatedPowerData(sym_power_dim(n, d), False, tuple(hw))
