"""Weyl group orders, stabilizers of dominant weights and orbit sizes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .errors import ConstructionError, OverflowCapError
from .rootsystem import DynkinType, RootSystem, Weight, cartan_matrix

_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}


def weyl_order(dtype: DynkinType) -> int:
    fam, n = dtype.family, dtype.rank
    if fam == "A":
        return factorial(n + 1)
    if fam in ("B", "C"):
        return 2**n * factorial(n)
    if fam == "D":
        return 2 ** (n - 1) * factorial(n)
    return _EXCEPTIONAL_ORDERS[(fam, n)]


@dataclass(frozen=True)
class Component:
    dtype: DynkinType
    nodes: tuple[int, ...]  # ambient 0-based indices, in the component's Bourbaki order

    def to_json(self) -> dict:
        return {"type": str(self.dtype), "nodes": [i + 1 for i in self.nodes]}


@dataclass(frozen=True)
class SubdiagramDecomposition:
    components: tuple[Component, ...]

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.components]


def _walk(adj: dict[int, list[int]], start: int, avoid: int | None = None) -> list[int]:
    """Follow a simple path from ``start``, never stepping onto ``avoid``."""
    path = [start]
    prev = avoid
    cur = start
    while True:
        nxt = [v for v in adj[cur] if v != prev and v not in path]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _identify(cartan: Sequence[Sequence[int]], nodes: list[int]) -> Component:
    """Type a connected subdiagram and order its nodes Bourbaki-style."""
    n = len(nodes)
    adj = {i: [j for j in nodes if j != i and cartan[i][j] != 0] for i in nodes}
    if n == 1:
        return Component(DynkinType("A", 1), (nodes[0],))
    multiple = [
        (i, j) for i in nodes for j in adj[i] if i < j and cartan[i][j] * cartan[j][i] > 1
    ]
    degrees = sorted(len(adj[i]) for i in nodes)
    ends = sorted(i for i in nodes if len(adj[i]) == 1)
    if multiple:
        (i, j), = multiple
        bond = cartan[i][j] * cartan[j][i]
        # in the ambient system, cartan[i][j] = -1 means alpha_i is at least as long as alpha_j
        long_node, short_node = (i, j) if cartan[i][j] == -1 else (j, i)
        if bond == 3:
            return _verified(cartan, DynkinType("G", 2), [short_node, long_node])
        if n == 2:
            return _verified(cartan, DynkinType("B", 2), [long_node, short_node])
        if short_node in ends:
            order = list(reversed(_walk(adj, short_node)))
            return _verified(cartan, DynkinType("B", n), order)
        if long_node in ends:
            order = list(reversed(_walk(adj, long_node)))
            return _verified(cartan, DynkinType("C", n), order)
        # double bond in the middle of a 4-node chain
        start = next(e for e in ends if long_node in adj[e])
        return _verified(cartan, DynkinType("F", 4), _walk(adj, start))
    if degrees[-1] <= 2:
        return _verified(cartan, DynkinType("A", n), _walk(adj, ends[0]))
    center = next(i for i in nodes if len(adj[i]) == 3)
    arms = sorted((_walk(adj, nb, avoid=center) for nb in adj[center]), key=lambda a: (len(a), a))
    lengths = tuple(len(a) for a in arms)
    if lengths[:2] == (1, 1):
        order = list(reversed(arms[2])) + [center, arms[0][0], arms[1][0]]
        return _verified(cartan, DynkinType("D", n), order)
    if lengths[:2] == (1, 2) and lengths[2] in (2, 3, 4):
        short, mid, long_ = arms
        order = [mid[1], short[0], mid[0], center] + long_
        return _verified(cartan, DynkinType("E", n), order)
    raise ConstructionError(f"unrecognized subdiagram on nodes {nodes}")


def _verified(cartan: Sequence[Sequence[int]], dtype: DynkinType, order: list[int]) -> Component:
    ref = cartan_matrix(dtype)
    sub = tuple(tuple(cartan[i][j] for j in order) for i in order)
    if sub != ref:
        raise ConstructionError(f"subdiagram on {order} does not match {dtype}")
    return Component(dtype, tuple(order))


@lru_cache(maxsize=None)
def _decompose_support(dtype: DynkinType, zero_nodes: tuple[int, ...]) -> SubdiagramDecomposition:
    cartan = cartan_matrix(dtype)
    remaining = set(zero_nodes)
    comps: list[Component] = []
    while remaining:
        seed = min(remaining)
        stack, seen = [seed], {seed}
        while stack:
            i = stack.pop()
            for j in remaining:
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        remaining -= seen
        comps.append(_identify(cartan, sorted(seen)))
    comps.sort(key=lambda c: min(c.nodes))
    return SubdiagramDecomposition(tuple(comps))


def _zero_nodes(mu: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, a in enumerate(mu) if a == 0)


def _require_dominant(rs: RootSystem, mu: Sequence[int]) -> None:
    if len(mu) != rs.rank:
        raise ConstructionError(f"weight has length {len(mu)}, expected rank {rs.rank}")
    if any(a < 0 for a in mu):
        raise ConstructionError(f"weight {tuple(mu)} is not dominant")


def decompose_deleted_diagram(rs: RootSystem, mu: Sequence[int]) -> SubdiagramDecomposition:
    """Components of the diagram left after deleting the support of ``mu``."""
    _require_dominant(rs, mu)
    return _decompose_support(rs.dtype, _zero_nodes(mu))


@lru_cache(maxsize=None)
def _centralizer_by_support(dtype: DynkinType, zero_nodes: tuple[int, ...]) -> int:
    out = 1
    for comp in _decompose_support(dtype, zero_nodes).components:
        out *= weyl_order(comp.dtype)
    return out


@lru_cache(maxsize=None)
def _orbit_by_support(dtype: DynkinType, zero_nodes: tuple[int, ...]) -> int:
    total = weyl_order(dtype)
    cent = _centralizer_by_support(dtype, zero_nodes)
    q, r = divmod(total, cent)
    if r:
        raise ArithmeticError(f"|W| = {total} is not divisible by centralizer order {cent}")
    return q


def centralizer_order(rs: RootSystem, mu: Sequence[int]) -> int:
    _require_dominant(rs, mu)
    return _centralizer_by_support(rs.dtype, _zero_nodes(mu))


def orbit_size(rs: RootSystem, mu: Sequence[int]) -> int:
    _require_dominant(rs, mu)
    return _orbit_by_support(rs.dtype, _zero_nodes(mu))


def orbit_size_unchecked(rs: RootSystem, mu: Sequence[int]) -> int:
    """orbit_size without validation, for hot loops over known-dominant weights."""
    return _orbit_by_support(rs.dtype, tuple(i for i, a in enumerate(mu) if a == 0))


def reflect(rs: RootSystem, mu: Sequence[int], i: int) -> Weight:
    """s_i(mu) = mu - <mu, alpha_i^vee> alpha_i in omega-coordinates."""
    a = mu[i]
    if a == 0:
        return tuple(mu)
    col = rs.cartan
    return tuple(mu[k] - a * col[k][i] for k in range(rs.rank))


def orbit_enumerate(rs: RootSystem, mu: Sequence[int], cap: int = 1_000_000) -> set[Weight]:
    """Breadth-first closure of ``mu`` under simple reflections."""
    _require_dominant(rs, mu)
    start = tuple(mu)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(rs.rank):
            if cur[i] == 0:
                continue
            nxt = reflect(rs, cur, i)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise OverflowCapError(f"orbit of {start} exceeds cap {cap}", len(seen))
                seen.add(nxt)
                queue.append(nxt)
    return seen


# closed forms for the classical families

def orbit_formula_a(rank: int, mu: Sequence[int]) -> int:
    """A_l: product of binom(i_k, i_{k-1}) times binom(l+1, i_m) over the support."""
    support = [i + 1 for i, a in enumerate(mu) if a != 0]
    out, prev = 1, 0
    for i in support:
        out *= comb(i, prev)
        prev = i
    return out * comb(rank + 1, prev)


def orbit_formula_bcd(family: str, rank: int, mu: Sequence[int]) -> int:
    """B/C/D closed form 2^r * prod binom(i_k, i_{k-1}) * binom(t, i_{m-1}) * binom(l, t).

    The product runs over k < m with i_0 = 0. r = t = i_m except for the
    D spin nodes: i_m = l-1, or i_m = l with i_{m-1} <= l-2, gives
    r = l-1 and t = l; i_m = l with i_{m-1} = l-1 gives r = t = l-1.
    """
    support = [i + 1 for i, a in enumerate(mu) if a != 0]
    if not support:
        return 1
    idx = [0] + support
    m = len(support)
    ell = rank
    i_m, i_prev = idx[m], idx[m - 1]
    r = t = i_m
    if family == "D" and i_m >= ell - 1:
        if i_m == ell and i_prev == ell - 1:
            r = t = ell - 1
        else:
            r, t = ell - 1, ell
    out = 2**r
    for k in range(1, m):
        out *= comb(idx[k], idx[k - 1])
    return out * comb(t, i_prev) * comb(ell, t)
