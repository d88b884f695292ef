"""Orbit-sum screening of restricted modules.

For a non-special prime p, an exceptional module must satisfy

    s(V)   = sum_mu  m_mu |W mu|                              <= limit(G)
    r_p(V) = sum_mu  m_mu |W mu| |R_long^+ - R_{mu,p}^+| / |R_long|  <= |R|

where mu ranges over the good dominant weights of V. Multiplicities are
replaced by lower bounds, so either inequality failing is a sound proof
of non-exceptionality. Two sufficient rules give the other direction:
the adjoint module, and dim V < dim g - dim z(g).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from .errors import ConstructionError, IntegrityError, OverflowCapError, SpecialPrimeError
from .rootsystem import (
    DynkinType,
    RootSystem,
    Weight,
    _require_prime,
    center_dim,
    dim_g,
    is_special_prime,
)
from .weights import (
    NO_HINTS,
    MultiplicityHints,
    is_p_restricted,
    iter_dominant_below,
    long_complement_count,
    multiplicity_lower_bound,
    weyl_dimension,
)
from .weyl import orbit_size_unchecked


class Kind(str, enum.Enum):
    EXCEPTIONAL = "Exceptional"
    NOT_EXCEPTIONAL = "NotExceptional"
    UNDETERMINED = "Undetermined"


class Reason(str, enum.Enum):
    ADJOINT = "ADJOINT"
    DIM_CRITERION = "DIM_CRITERION"
    S_EXCEEDS_LIMIT = "S_EXCEEDS_LIMIT"
    RP_EXCEEDS_R = "RP_EXCEEDS_R"
    NOT_P_RESTRICTED = "NOT_P_RESTRICTED"
    SPECIAL_PRIME_REFUSED = "SPECIAL_PRIME_REFUSED"
    INCONCLUSIVE = "INCONCLUSIVE"
    TRIVIAL_MODULE = "TRIVIAL_MODULE"


_POSITIVE = {Reason.ADJOINT, Reason.DIM_CRITERION, Reason.TRIVIAL_MODULE}
_NEGATIVE = {Reason.S_EXCEEDS_LIMIT, Reason.RP_EXCEEDS_R}


def limit(dtype: DynkinType) -> int:
    fam, n = dtype.family, dtype.rank
    if fam == "A":
        return n**3 + 2 * n**2 + n
    if fam == "B":
        return 2 * n**3 if n >= 5 else 8 * n**2
    if fam == "C":
        return 4 * n**3
    if fam == "D":
        if n >= 5:
            return 2 * n**3 - 2 * n**2
        return ceil(Fraction(8 * n**2 * (n - 1), n - 2))
    return {("G", 2): 36, ("F", 4): 192, ("E", 6): 324, ("E", 7): 588, ("E", 8): 1011}[(fam, n)]


def table_M(dtype: DynkinType) -> int:
    fam, n = dtype.family, dtype.rank
    if fam == "A":
        return n
    if fam in ("B", "D"):
        return 2 * (n - 1) if n >= 5 else n * (n - 1) // 2
    if fam == "C":
        return 1
    return {("G", 2): 2, ("F", 4): 6, ("E", 6): 16, ("E", 7): 27, ("E", 8): 57}[(fam, n)]


def brute_force_M(rs: RootSystem, p: int, cap: int = 1_000_000) -> int | None:
    """Minimum long-root complement count over good residues in [0, p)^rank.

    Returns None when every residue is bad.
    """
    _require_prime(p)
    if is_special_prime(rs.dtype, p):
        raise SpecialPrimeError(f"p={p} is special for {rs.dtype}")
    total = p**rs.rank
    if total > cap:
        raise OverflowCapError(f"{p}^{rs.rank} = {total} residues exceed cap {cap}", 0)
    best: int | None = None
    for code in range(1, total):
        mu = []
        for _ in range(rs.rank):
            code, digit = divmod(code, p)
            mu.append(digit)
        count = long_complement_count(rs, mu, p)
        if count and (best is None or count < best):
            best = count
    return best


def adjoint_weight(rs: RootSystem) -> Weight:
    return rs.highest_root_weight


def is_adjoint_weight(rs: RootSystem, lam: Sequence[int]) -> bool:
    return tuple(lam) == adjoint_weight(rs)


def dimension_criterion(rs: RootSystem, lam: Sequence[int], p: int) -> bool:
    """Weyl dimension of lambda is below dim g - dim z(g)."""
    bound = dim_g(rs.dtype) - center_dim(rs.dtype, p)
    # the Weyl module has at least |W lambda| weights
    if orbit_size_unchecked(rs, lam) >= bound:
        return False
    return weyl_dimension(rs, lam) < bound


@dataclass(frozen=True)
class Contribution:
    mu: Weight
    multiplicity: int
    orbit_size: int
    long_complement_count: int

    @property
    def good(self) -> bool:
        return self.long_complement_count > 0

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "mult": self.multiplicity,
            "orbit_size": self.orbit_size,
            "long_complement_count": self.long_complement_count,
            "good": self.good,
        }


@dataclass(frozen=True)
class ScreeningResult:
    lam: Weight
    p: int
    s_value: int
    r_p_value: Fraction
    limit: int
    abs_R: int
    contributions: tuple[Contribution, ...]
    short_circuited: bool
    overflowed: bool = False

    @property
    def s_exceeds(self) -> bool:
        return self.s_value > self.limit

    @property
    def r_p_exceeds(self) -> bool:
        return self.r_p_value > self.abs_R

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "p": self.p,
            "s_value": self.s_value,
            "r_p_value": {"num": self.r_p_value.numerator, "den": self.r_p_value.denominator},
            "limit": self.limit,
            "abs_R": self.abs_R,
            "short_circuited": self.short_circuited,
            "overflowed": self.overflowed,
            "contributions": [c.to_json() for c in self.contributions],
        }


def _screen_refusal(rs: RootSystem, lam: Weight, p: int) -> Reason | None:
    if is_special_prime(rs.dtype, p):
        return Reason.SPECIAL_PRIME_REFUSED
    # the weight-set equality needs p != 2 for G2 at omega_1
    if rs.dtype == DynkinType("G", 2) and p == 2 and lam == (1, 0):
        return Reason.SPECIAL_PRIME_REFUSED
    if not is_p_restricted(lam, p):
        return Reason.NOT_P_RESTRICTED
    return None


def screen(
    rs: RootSystem,
    lam: Sequence[int],
    p: int,
    hints: MultiplicityHints = NO_HINTS,
    *,
    short_circuit: bool = True,
    cap: int | None = None,
) -> ScreeningResult:
    lam = tuple(int(a) for a in lam)
    if len(lam) != rs.rank or any(a < 0 for a in lam):
        raise ConstructionError(f"{lam} is not a dominant weight of {rs.dtype}")
    _require_prime(p)
    refusal = _screen_refusal(rs, lam, p)
    if refusal is Reason.SPECIAL_PRIME_REFUSED:
        raise SpecialPrimeError(f"screening refused for {rs.dtype}, lambda={lam}, p={p}")
    if refusal is Reason.NOT_P_RESTRICTED:
        raise ConstructionError(f"lambda={lam} is not {p}-restricted")

    bound = limit(rs.dtype)
    abs_r = rs.num_roots
    denom = rs.num_long_roots
    rp_cut = abs_r * denom
    s_total = 0
    rp_num = 0
    contributions: list[Contribution] = []
    stopped = False
    overflowed = False
    try:
        for mu, _gap in iter_dominant_below(rs, lam, cap):
            count = long_complement_count(rs, mu, p)
            orbit = orbit_size_unchecked(rs, mu)
            if count:
                mult = multiplicity_lower_bound(rs, lam, mu, p, hints)
                s_total += mult * orbit
                rp_num += mult * orbit * count
            else:
                mult = 1
            contributions.append(Contribution(mu, mult, orbit, count))
            if short_circuit and s_total > bound and rp_num > rp_cut:
                stopped = True
                break
    except OverflowCapError:
        overflowed = True
    return ScreeningResult(
        lam=lam,
        p=p,
        s_value=s_total,
        r_p_value=Fraction(rp_num, denom),
        limit=bound,
        abs_R=abs_r,
        contributions=tuple(contributions),
        short_circuited=stopped,
        overflowed=overflowed,
    )


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    reasons: tuple[Reason, ...]
    screening: ScreeningResult | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value, "reasons": [r.value for r in self.reasons]}
        if self.screening is not None:
            out["screening"] = self.screening.to_json()
        return out


def classify_weight(
    rs: RootSystem,
    lam: Sequence[int],
    p: int,
    hints: MultiplicityHints = NO_HINTS,
    *,
    cap: int | None = None,
) -> Verdict:
    lam = tuple(int(a) for a in lam)
    if len(lam) != rs.rank or any(a < 0 for a in lam):
        raise ConstructionError(f"{lam} is not a dominant weight of {rs.dtype}")
    _require_prime(p)
    if is_special_prime(rs.dtype, p):
        return Verdict(Kind.UNDETERMINED, (Reason.SPECIAL_PRIME_REFUSED,))
    if not is_p_restricted(lam, p):
        return Verdict(Kind.UNDETERMINED, (Reason.NOT_P_RESTRICTED,))
    if not any(lam):
        return Verdict(Kind.EXCEPTIONAL, (Reason.TRIVIAL_MODULE,))

    positive: list[Reason] = []
    if is_adjoint_weight(rs, lam):
        positive.append(Reason.ADJOINT)
    if dimension_criterion(rs, lam, p):
        positive.append(Reason.DIM_CRITERION)

    if _screen_refusal(rs, lam, p) is not None:
        if positive:
            return Verdict(Kind.EXCEPTIONAL, tuple(positive))
        return Verdict(Kind.UNDETERMINED, (Reason.SPECIAL_PRIME_REFUSED,))

    result = screen(rs, lam, p, hints, cap=cap)
    negative: list[Reason] = []
    if result.s_exceeds:
        negative.append(Reason.S_EXCEEDS_LIMIT)
    if result.r_p_exceeds:
        negative.append(Reason.RP_EXCEEDS_R)

    if positive and negative:
        raise IntegrityError(
            f"{rs.dtype}, lambda={lam}, p={p}: both "
            f"{[r.value for r in positive]} and {[r.value for r in negative]} fired"
        )
    if positive:
        return Verdict(Kind.EXCEPTIONAL, tuple(positive), result)
    if negative:
        return Verdict(Kind.NOT_EXCEPTIONAL, tuple(negative), result)
    return Verdict(Kind.UNDETERMINED, (Reason.INCONCLUSIVE,), result)


def verdict_is_consistent(verdict: Verdict) -> bool:
    reasons = set(verdict.reasons)
    if verdict.kind is Kind.EXCEPTIONAL:
        return bool(reasons & _POSITIVE) and not reasons & _NEGATIVE
    if verdict.kind is Kind.NOT_EXCEPTIONAL:
        return bool(reasons & _NEGATIVE) and not reasons & _POSITIVE
    return not reasons & (_POSITIVE | _NEGATIVE)
