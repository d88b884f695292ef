"""Transcribed classification tables and their lookup by (type, p, weight)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import ConstructionError
from .rootsystem import DynkinType, Weight, build, is_special_prime
from .weights import weyl_dimension

EXCEPTIONAL = "Exceptional"
NOT_EXCEPTIONAL = "NotExceptional"
UNCLASSIFIED = "Unclassified"

# ranks used when checking rows with an open-ended rank range
CHECK_RANKS = range(1, 13)
CHECK_PRIMES = (2, 3, 5, 7, 11, 13)


def _node(expr: str | int, rank: int) -> int:
    if isinstance(expr, int):
        return expr
    expr = expr.replace(" ", "")
    if expr.isdigit():
        return int(expr)
    if expr == "l":
        return rank
    if expr.startswith("l-") and expr[2:].isdigit():
        return rank - int(expr[2:])
    raise ConstructionError(f"bad node expression {expr!r}")


def _rank_ok(cond: Mapping[str, Any], rank: int) -> bool:
    if "eq" in cond and rank != cond["eq"]:
        return False
    if "in" in cond and rank not in cond["in"]:
        return False
    if "min" in cond and rank < cond["min"]:
        return False
    if "max" in cond and rank > cond["max"]:
        return False
    return True


def _prime_ok(cond: Any, dtype: DynkinType, p: int) -> bool:
    if cond == "any":
        return True
    if cond == "nonspecial":
        return not is_special_prime(dtype, p)
    if "eq" in cond and p != cond["eq"]:
        return False
    if "in" in cond and p not in cond["in"]:
        return False
    if "not_in" in cond and p in cond["not_in"]:
        return False
    if "min" in cond and p < cond["min"]:
        return False
    return True


def _expected_dim(spec: Mapping[str, Any], rank: int) -> int:
    if "const" in spec:
        return spec["const"]
    if "linear" in spec:
        a, b = spec["linear"]
        return a * rank + b
    if "binom" in spec:
        off, k = spec["binom"]
        return comb(rank + off, k)
    if "pow2" in spec:
        return 2 ** (rank + spec["pow2"])
    raise ConstructionError(f"unknown dimension spec {spec!r}")


@dataclass(frozen=True, eq=False)
class TableRow:
    table: str
    row: str
    kind: str
    family: str
    rank: Mapping[str, Any]
    p: Any
    weights: tuple[tuple[tuple[int, str], ...], ...]
    dim: str | None = None
    weyl_dim: Mapping[str, Any] | None = None

    def applies(self, dtype: DynkinType, p: int) -> bool:
        return (
            dtype.family == self.family
            and _rank_ok(self.rank, dtype.rank)
            and _prime_ok(self.p, dtype, p)
        )

    def materialize(self, rank: int) -> list[Weight]:
        out = []
        for terms in self.weights:
            w = [0] * rank
            for coeff, expr in terms:
                i = _node(expr, rank)
                if not 1 <= i <= rank:
                    raise ConstructionError(
                        f"{self.table} row {self.row}: node {expr} is out of range at rank {rank}"
                    )
                w[i - 1] += coeff
            out.append(tuple(w))
        return out


@dataclass(frozen=True, eq=False)
class ReferenceTables:
    version: int
    rows: tuple[TableRow, ...]
    sections: Mapping[str, Mapping[str, Any]]

    def covers(self, dtype: DynkinType, p: int) -> bool:
        sec = self.sections.get(dtype.family)
        return sec is not None and _prime_ok(sec["p"], dtype, p)

    def weight_sets(self, dtype: DynkinType, p: int) -> tuple[dict[Weight, list[str]], dict[Weight, list[str]]]:
        """Exceptional and unclassified weights for (dtype, p), each mapped to its row tags."""
        return _weight_sets(self, dtype, p)

    def lookup(self, dtype: DynkinType, p: int, lam: Iterable[int]) -> str | None:
        """Reference verdict, or None when the tables say nothing for this (type, p)."""
        if not self.covers(dtype, p):
            return None
        lam = tuple(lam)
        if not any(lam):
            # trivial module, exceptional for every non-abelian g
            return EXCEPTIONAL
        exc, unc = self.weight_sets(dtype, p)
        if lam in exc:
            return EXCEPTIONAL
        if lam in unc:
            return UNCLASSIFIED
        return NOT_EXCEPTIONAL

    def tags(self, dtype: DynkinType, p: int, lam: Iterable[int]) -> list[str]:
        exc, unc = self.weight_sets(dtype, p)
        lam = tuple(lam)
        return exc.get(lam, []) + unc.get(lam, [])

    def check_integrity(self) -> list[str]:
        """Return a list of problems (empty when the data is consistent)."""
        problems: list[str] = []
        for row in self.rows:
            for rank in CHECK_RANKS:
                try:
                    dtype = DynkinType(row.family, rank)
                except ConstructionError:
                    continue
                if not _rank_ok(row.rank, rank):
                    continue
                weights = row.materialize(rank)
                if row.weyl_dim is not None:
                    want = _expected_dim(row.weyl_dim, rank)
                    rs = build(dtype)
                    for w in weights:
                        got = weyl_dimension(rs, w)
                        if got != want:
                            problems.append(
                                f"{row.table} row {row.row} at {dtype}: weight {w} has Weyl dimension {got}, table says {want}"
                            )
                for p in CHECK_PRIMES:
                    if not (row.applies(dtype, p) and self.covers(dtype, p)):
                        continue
                    for w in weights:
                        if any(a < 0 or a >= p for a in w):
                            problems.append(f"{row.table} row {row.row} at {dtype}, p={p}: {w} not restricted")
        for family in self.sections:
            for rank in CHECK_RANKS:
                try:
                    dtype = DynkinType(family, rank)
                except ConstructionError:
                    continue
                for p in CHECK_PRIMES:
                    if not self.covers(dtype, p):
                        continue
                    exc, unc = self.weight_sets(dtype, p)
                    overlap = set(exc) & set(unc)
                    if overlap:
                        problems.append(f"{dtype}, p={p}: weights both exceptional and unclassified: {sorted(overlap)}")
        return problems


@lru_cache(maxsize=None)
def _weight_sets(refs: ReferenceTables, dtype: DynkinType, p: int):
    exc: dict[Weight, list[str]] = {}
    unc: dict[Weight, list[str]] = {}
    for row in refs.rows:
        if not row.applies(dtype, p):
            continue
        target = exc if row.kind == "exceptional" else unc
        for w in row.materialize(dtype.rank):
            if all(0 <= a < p for a in w):
                target.setdefault(w, []).append(f"{row.table} / N.{row.row}")
    return exc, unc


def _parse(payload: Mapping[str, Any]) -> ReferenceTables:
    if payload.get("version") != 1:
        raise ConstructionError(f"unsupported reference-table version {payload.get('version')!r}")
    rows = []
    for raw in payload["rows"]:
        if raw["kind"] not in ("exceptional", "unclassified"):
            raise ConstructionError(f"row kind must be exceptional or unclassified, got {raw['kind']!r}")
        weights = tuple(tuple((int(c), str(e)) for c, e in terms) for terms in raw["weights"])
        rows.append(
            TableRow(
                table=raw["table"],
                row=str(raw["row"]),
                kind=raw["kind"],
                family=raw["family"],
                rank=raw["rank"],
                p=raw["p"],
                weights=weights,
                dim=raw.get("dim"),
                weyl_dim=raw.get("weyl_dim"),
            )
        )
    sections = {s["family"]: s for s in payload["sections"]}
    return ReferenceTables(version=1, rows=tuple(rows), sections=sections)


@lru_cache(maxsize=1)
def default_tables() -> ReferenceTables:
    text = resources.files("excepta").joinpath("data/reference_tables.json").read_text(encoding="utf-8")
    return _parse(json.loads(text))


def load_tables(path: str | Path | None = None) -> ReferenceTables:
    if path is None:
        return default_tables()
    return _parse(json.loads(Path(path).read_text(encoding="utf-8")))
