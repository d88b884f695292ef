"""Irreducible root systems in Bourbaki numbering.

Roots are stored in simple-root coordinates and weights in
fundamental-weight coordinates. Lengths are normalized so that short
roots satisfy (alpha, alpha) = 2, hence ``d[i] = (alpha_i, alpha_i) / 2``
is 1 on short nodes and 2 or 3 on long ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from .errors import ConstructionError, PrimeError

Weight = tuple[int, ...]
RootVector = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, n = self.family, self.rank
        if fam not in FAMILIES:
            raise ConstructionError(f"unknown family {fam!r}; expected one of {FAMILIES}")
        if not isinstance(n, int) or isinstance(n, bool):
            raise ConstructionError(f"rank must be an integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[fam]
        if not ok:
            rule = {
                "A": "rank >= 1",
                "B": "rank >= 2",
                "C": "rank >= 2",
                "D": "rank >= 4",
                "E": "rank in {6, 7, 8}",
                "F": "rank == 4",
                "G": "rank == 2",
            }[fam]
            raise ConstructionError(f"type {fam}{n} is invalid: family {fam} requires {rule}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        """Parse a fused token such as ``"E6"``."""
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise ConstructionError(f"cannot parse Dynkin type {text!r}")
        return cls(text[0], int(text[1:]))


def _diagram(dtype: DynkinType) -> tuple[list[int], list[tuple[int, int]]]:
    """Half-lengths and edge list (0-based) of the Dynkin diagram."""
    fam, n = dtype.family, dtype.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if fam == "A":
        return [1] * n, chain
    if fam == "B":
        return [2] * (n - 1) + [1], chain
    if fam == "C":
        return [1] * (n - 1) + [2], chain
    if fam == "D":
        return [1] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if fam == "E":
        # 1-3-4-5-...-n with 2 hanging off 4
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return [1] * n, edges
    if fam == "F":
        return [2, 2, 1, 1], chain
    return [1, 3], chain


def cartan_matrix(dtype: DynkinType) -> tuple[tuple[int, ...], ...]:
    """C[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)."""
    d, edges = _diagram(dtype)
    n = dtype.rank
    gram = [[2 * d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(d[i], d[j])
    return tuple(tuple(2 * gram[i][j] // gram[i][i] for j in range(n)) for i in range(n))


def _closure(cartan: Sequence[Sequence[int]]) -> list[RootVector]:
    """Positive roots by adding simple roots layer by layer along root strings."""
    n = len(cartan)
    simple = [tuple(int(i == k) for k in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    while layer:
        nxt: list[RootVector] = []
        for beta in layer:
            for i in range(n):
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                down = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) not in known:
                        break
                    down += 1
                if down - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in known:
                        known.add(cand)
                        nxt.append(cand)
        layer = nxt
    return sorted(known)


@dataclass(frozen=True, eq=False)
class RootSystem:
    dtype: DynkinType
    cartan: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    positive_roots: tuple[RootVector, ...]
    highest_root: RootVector
    long_positive_roots: tuple[RootVector, ...]
    _inverse_cartan: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    # (c_j * d_j) rows for long roots, so (mu, gamma) = row . a
    _long_rows: np.ndarray = field(repr=False)
    # omega-coordinates of each positive root
    _root_weights: tuple[Weight, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.dtype.rank

    @property
    def num_roots(self) -> int:
        return 2 * len(self.positive_roots)

    @property
    def num_long_roots(self) -> int:
        return 2 * len(self.long_positive_roots)

    def gram(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(self.d[i] * self.cartan[i][j] for j in range(n)) for i in range(n))

    def root_norm(self, gamma: Sequence[int]) -> int:
        g = self.gram()
        n = self.rank
        return sum(gamma[i] * g[i][j] * gamma[j] for i in range(n) for j in range(n))

    def simple_root_weight(self, i: int) -> Weight:
        """omega-coordinates of alpha_i (column i of the Cartan matrix)."""
        return tuple(self.cartan[k][i] for k in range(self.rank))

    @cached_property
    def highest_root_weight(self) -> Weight:
        return self.root_to_weight(self.highest_root)

    def root_to_weight(self, gamma: Sequence[int]) -> Weight:
        n = self.rank
        return tuple(sum(self.cartan[k][j] * gamma[j] for j in range(n)) for k in range(n))

    def to_json(self) -> dict:
        return {
            "dtype": {"family": self.dtype.family, "rank": self.dtype.rank},
            "positive_roots": [list(r) for r in self.positive_roots],
            "d": list(self.d),
            "cartan": [list(row) for row in self.cartan],
        }


@lru_cache(maxsize=None)
def build(dtype: DynkinType) -> RootSystem:
    """Construct (and memoize) the root system of ``dtype``."""
    if not isinstance(dtype, DynkinType):
        raise ConstructionError(f"expected DynkinType, got {dtype!r}")
    cartan = cartan_matrix(dtype)
    d, _ = _diagram(dtype)
    roots = _closure(cartan)
    highest = max(roots, key=lambda r: (sum(r), r))
    gram = [[d[i] * cartan[i][j] for j in range(dtype.rank)] for i in range(dtype.rank)]

    def norm(g: RootVector) -> int:
        return sum(g[i] * gram[i][j] * g[j] for i in range(dtype.rank) for j in range(dtype.rank))

    top = 2 * max(d)
    longs = tuple(r for r in roots if norm(r) == top)
    inv = sympy.Matrix(cartan).inv()
    inverse = tuple(
        tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(dtype.rank))
        for i in range(dtype.rank)
    )
    rows = np.array([[g[j] * d[j] for j in range(dtype.rank)] for g in longs], dtype=np.int64)
    root_weights = tuple(
        tuple(sum(cartan[k][j] * r[j] for j in range(dtype.rank)) for k in range(dtype.rank))
        for r in roots
    )
    return RootSystem(
        dtype=dtype,
        cartan=cartan,
        d=tuple(d),
        positive_roots=tuple(roots),
        highest_root=highest,
        long_positive_roots=longs,
        _inverse_cartan=inverse,
        _long_rows=rows,
        _root_weights=root_weights,
    )


def _check_len(rs: RootSystem, vec: Sequence[int], what: str) -> None:
    if len(vec) != rs.rank:
        raise ConstructionError(f"{what} has length {len(vec)}, expected rank {rs.rank}")


def inner_product(rs: RootSystem, mu: Sequence[int], gamma: Sequence[int]) -> int:
    """(mu, gamma) with mu in omega-coordinates and gamma in alpha-coordinates."""
    _check_len(rs, mu, "weight")
    _check_len(rs, gamma, "root vector")
    return sum(c * dj * a for c, dj, a in zip(gamma, rs.d, mu))


def weight_to_root_coords(rs: RootSystem, mu: Sequence[int]) -> tuple[Fraction, ...]:
    _check_len(rs, mu, "weight")
    inv = rs._inverse_cartan
    return tuple(sum((inv[i][j] * mu[j] for j in range(rs.rank)), Fraction(0)) for i in range(rs.rank))


def root_coords_to_weight(rs: RootSystem, coords: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    _check_len(rs, coords, "root-coordinate vector")
    n = rs.rank
    return tuple(sum((Fraction(rs.cartan[k][j]) * coords[j] for j in range(n)), Fraction(0)) for k in range(n))


# prime classes

@lru_cache(maxsize=256)
def _is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or not _is_prime(p):
        raise PrimeError(f"{p!r} is not a prime")


_BAD = {"A": (), "B": (2,), "C": (2,), "D": (2,), "G": (2, 3), "F": (2, 3)}


def bad_primes(dtype: DynkinType) -> tuple[int, ...]:
    if dtype.family == "E":
        return (2, 3, 5) if dtype.rank == 8 else (2, 3)
    return _BAD[dtype.family]


def is_bad_prime(dtype: DynkinType, p: int) -> bool:
    _require_prime(p)
    return p in bad_primes(dtype)


def is_special_prime(dtype: DynkinType, p: int) -> bool:
    """p divides the ratio of squared root lengths."""
    _require_prime(p)
    if dtype.family in ("B", "C", "F"):
        return p == 2
    if dtype.family == "G":
        return p == 3
    return False


def is_very_good_prime(dtype: DynkinType, p: int) -> bool:
    if is_bad_prime(dtype, p):
        return False
    if dtype.family == "A":
        return (dtype.rank + 1) % p != 0
    return True


def dim_g(dtype: DynkinType) -> int:
    rs = build(dtype)
    return rs.num_roots + rs.rank


@lru_cache(maxsize=None)
def center_dim(dtype: DynkinType, p: int) -> int:
    """Corank of the Cartan matrix over GF(p)."""
    _require_prime(p)
    mat = DomainMatrix([[sympy.GF(p)(x) for x in row] for row in cartan_matrix(dtype)],
                       (dtype.rank, dtype.rank), sympy.GF(p))
    return dtype.rank - mat.rank()


# diagram automorphisms, as node permutations (0-based image of each node)

def diagram_automorphisms(dtype: DynkinType) -> dict[str, tuple[int, ...]]:
    n = dtype.rank
    autos = {"identity": tuple(range(n))}
    if dtype.family == "A" and n >= 2:
        autos["reversal"] = tuple(n - 1 - i for i in range(n))
    elif dtype.family == "D":
        swap = list(range(n))
        swap[n - 2], swap[n - 1] = n - 1, n - 2
        autos["swap"] = tuple(swap)
        if n == 4:
            # omega1 -> omega3 -> omega4 -> omega1 and its inverse
            autos["triality"] = (2, 1, 3, 0)
            autos["triality_inverse"] = (3, 1, 0, 2)
    elif dtype == DynkinType("E", 6):
        autos["involution"] = (5, 1, 4, 3, 2, 0)
    return autos


def graph_twist(rs: RootSystem, mu: Sequence[int], aut: str) -> Weight:
    autos = diagram_automorphisms(rs.dtype)
    if aut not in autos:
        raise ConstructionError(
            f"automorphism {aut!r} is not defined for {rs.dtype}; available: {sorted(autos)}"
        )
    _check_len(rs, mu, "weight")
    perm = autos[aut]
    out = [0] * rs.rank
    for i, a in enumerate(mu):
        out[perm[i]] = a
    return tuple(out)
