"""Batch classification of all restricted weights and reconciliation with the tables."""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import multiprocessing
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ConstructionError, SpecialPrimeError
from .reference import EXCEPTIONAL, NOT_EXCEPTIONAL, UNCLASSIFIED, ReferenceTables
from .rootsystem import DynkinType, RootSystem, Weight, _require_prime, build, is_special_prime
from .screening import Kind, classify_weight, limit
from .weights import NO_HINTS, MultiplicityHints

log = logging.getLogger(__name__)

MATCH = "MATCH"
SOUND_UNDETERMINED = "SOUND_UNDETERMINED"
CONFLICT = "CONFLICT"
STATUSES = (CONFLICT, SOUND_UNDETERMINED, MATCH)
KINDS = tuple(k.value for k in Kind)

REPORT_FORMAT = 1
CSV_COLUMNS = ("lambda", "kind", "reasons", "s_value", "r_p_num", "r_p_den", "limit", "absR", "status")


@dataclass(frozen=True)
class SweepRow:
    lam: Weight
    kind: str
    reasons: tuple[str, ...]
    s_value: int | None
    r_p: Fraction | None
    limit: int
    abs_R: int
    reference: str | None = None
    status: str | None = None

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "kind": self.kind,
            "reasons": list(self.reasons),
            "s_value": self.s_value,
            "r_p_num": None if self.r_p is None else self.r_p.numerator,
            "r_p_den": None if self.r_p is None else self.r_p.denominator,
            "limit": self.limit,
            "absR": self.abs_R,
            "reference": self.reference,
            "status": self.status,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SweepRow":
        rp = None if obj["r_p_num"] is None else Fraction(obj["r_p_num"], obj["r_p_den"])
        return cls(
            lam=tuple(obj["lambda"]),
            kind=obj["kind"],
            reasons=tuple(obj["reasons"]),
            s_value=obj["s_value"],
            r_p=rp,
            limit=obj["limit"],
            abs_R=obj["absR"],
            reference=obj["reference"],
            status=obj["status"],
        )


@dataclass
class SweepReport:
    dtype: DynkinType
    p: int
    rows: list[SweepRow]
    total_weights: int
    expected_weights: int
    truncated: bool = False
    rows_complete: bool = True  # False when routine rows were dropped to save memory
    kind_counts: dict[str, int] = field(default_factory=dict)
    status_counts: dict[str, int] = field(default_factory=dict)
    elapsed_seconds: float = 0.0  # not serialized, so reports stay byte-identical

    @property
    def conflicts(self) -> int:
        return self.status_counts.get(CONFLICT, 0)

    def verdict_of(self, lam: Sequence[int]) -> SweepRow | None:
        lam = tuple(lam)
        for row in self.rows:
            if row.lam == lam:
                return row
        return None

    def weights_of_kind(self, kind: str) -> list[Weight]:
        return [row.lam for row in self.rows if row.kind == kind]

    def to_json(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "grid": {"type": str(self.dtype), "family": self.dtype.family, "rank": self.dtype.rank, "p": self.p},
            "total_weights": self.total_weights,
            "expected_weights": self.expected_weights,
            "truncated": self.truncated,
            "rows_complete": self.rows_complete,
            "summary": {
                "kinds": {k: self.kind_counts.get(k, 0) for k in KINDS},
                "statuses": {s: self.status_counts.get(s, 0) for s in STATUSES},
            },
            "rows": [row.to_json() for row in self.rows],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SweepReport":
        if obj.get("format") != REPORT_FORMAT:
            raise ConstructionError(f"unsupported report format {obj.get('format')!r}")
        grid = obj["grid"]
        return cls(
            dtype=DynkinType(grid["family"], grid["rank"]),
            p=grid["p"],
            rows=[SweepRow.from_json(r) for r in obj["rows"]],
            total_weights=obj["total_weights"],
            expected_weights=obj["expected_weights"],
            truncated=obj["truncated"],
            rows_complete=obj["rows_complete"],
            kind_counts=dict(obj["summary"]["kinds"]),
            status_counts=dict(obj["summary"]["statuses"]),
        )


def status_for(computed: str, reference: str | None) -> str:
    if reference is None or reference == UNCLASSIFIED:
        return MATCH
    if computed == Kind.EXCEPTIONAL.value and reference == NOT_EXCEPTIONAL:
        return CONFLICT
    if computed == Kind.NOT_EXCEPTIONAL.value and reference == EXCEPTIONAL:
        return CONFLICT
    if computed == Kind.UNDETERMINED.value:
        return SOUND_UNDETERMINED
    return MATCH


def restricted_weights(rank: int, p: int) -> Iterator[Weight]:
    """All of [0, p)^rank in lexicographic order."""
    return itertools.product(range(p), repeat=rank)


# worker plumbing; each process rebuilds the root system from its type

_WORKER: dict = {}


def _init_worker(dtype: DynkinType, p: int, hints: MultiplicityHints, cap: int | None) -> None:
    _WORKER.update(rs=build(dtype), p=p, hints=hints, cap=cap)


def _classify_chunk(chunk: Sequence[Weight]) -> list[SweepRow]:
    rs, p, hints, cap = _WORKER["rs"], _WORKER["p"], _WORKER["hints"], _WORKER["cap"]
    return [_classify_row(rs, lam, p, hints, cap) for lam in chunk]


def _classify_row(rs: RootSystem, lam: Weight, p: int, hints: MultiplicityHints, cap: int | None) -> SweepRow:
    verdict = classify_weight(rs, lam, p, hints, cap=cap)
    res = verdict.screening
    return SweepRow(
        lam=tuple(lam),
        kind=verdict.kind.value,
        reasons=tuple(r.value for r in verdict.reasons),
        s_value=None if res is None else res.s_value,
        r_p=None if res is None else res.r_p_value,
        limit=limit(rs.dtype),
        abs_R=rs.num_roots,
    )


def _chunks(it: Iterable[Weight], size: int) -> Iterator[list[Weight]]:
    it = iter(it)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def _keep_all(row: SweepRow) -> bool:
    return True


def keep_notable(row: SweepRow) -> bool:
    """Drop only routine rows: NotExceptional verdicts that match the tables."""
    return not (row.kind == Kind.NOT_EXCEPTIONAL.value and row.status in (MATCH, None))


def sweep_restricted(
    rs: RootSystem,
    p: int,
    hints: MultiplicityHints = NO_HINTS,
    budget: int | None = None,
    *,
    refs: ReferenceTables | None = None,
    jobs: int = 1,
    keep=None,
    weights: Iterable[Weight] | None = None,
    cap: int | None = None,
    chunk_size: int = 512,
) -> SweepReport:
    """Classify every p-restricted weight in lexicographic order.

    ``budget`` bounds the number of weights processed; a grid larger than
    the budget is processed up to the budget and flagged as truncated.
    ``weights`` substitutes an explicit (ordered) subset of the grid; the
    report is then flagged as truncated unless the subset is the whole grid.
    With ``refs`` the rows are reconciled on the fly, which lets ``keep``
    drop routine rows while the summary still counts every weight.
    """
    _require_prime(p)
    if is_special_prime(rs.dtype, p):
        raise SpecialPrimeError(f"p={p} is special for {rs.dtype}; sweeps need a non-special prime")
    if jobs < 1:
        raise ConstructionError("jobs must be at least 1")
    expected = p**rs.rank
    source: Iterable[Weight] = restricted_weights(rs.rank, p) if weights is None else weights
    truncated = False
    if budget is not None and weights is None and expected > budget:
        source = itertools.islice(source, budget)
        truncated = True
        log.warning("%s p=%d: %d weights exceed budget %d; truncating", rs.dtype, p, expected, budget)
    keep = keep or _keep_all

    started = time.perf_counter()
    kinds: dict[str, int] = {}
    statuses: dict[str, int] = {}
    rows: list[SweepRow] = []
    total = 0
    dropped = False

    def consume(batch: list[SweepRow]) -> None:
        nonlocal total, dropped
        for row in batch:
            total += 1
            if refs is not None:
                ref = refs.lookup(rs.dtype, p, row.lam)
                row = replace(row, reference=ref, status=status_for(row.kind, ref))
                statuses[row.status] = statuses.get(row.status, 0) + 1
            kinds[row.kind] = kinds.get(row.kind, 0) + 1
            if keep(row):
                rows.append(row)
            else:
                dropped = True

    if jobs == 1:
        for chunk in _chunks(source, chunk_size):
            consume([_classify_row(rs, lam, p, hints, cap) for lam in chunk])
    else:
        ctx = multiprocessing.get_context("spawn")
        with ctx.Pool(jobs, initializer=_init_worker, initargs=(rs.dtype, p, hints, cap)) as pool:
            for batch in pool.imap(_classify_chunk, _chunks(source, chunk_size)):
                consume(batch)

    if weights is not None and total < expected:
        truncated = True  # an explicit subset never covers the whole grid
    report = SweepReport(
        dtype=rs.dtype,
        p=p,
        rows=rows,
        total_weights=total,
        expected_weights=expected,
        truncated=truncated,
        rows_complete=not dropped,
        kind_counts=kinds,
        status_counts=statuses,
        elapsed_seconds=time.perf_counter() - started,
    )
    log.info("%s p=%d: %d weights in %.1fs, kinds %s", rs.dtype, p, total, report.elapsed_seconds, kinds)
    return report


def reconcile(report: SweepReport, refs: ReferenceTables) -> SweepReport:
    """Fill reference verdicts and statuses for every row of ``report``."""
    rows = []
    statuses: dict[str, int] = {}
    for row in report.rows:
        ref = refs.lookup(report.dtype, report.p, row.lam)
        row = replace(row, reference=ref, status=status_for(row.kind, ref))
        statuses[row.status] = statuses.get(row.status, 0) + 1
        rows.append(row)
    if not report.rows_complete:
        # dropped rows were counted when the sweep reconciled them
        statuses = dict(report.status_counts)
    return replace(report, rows=rows, status_counts=statuses)


def emit(report: SweepReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json(), separators=(",", ":")) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            obj = row.to_json()
            writer.writerow(
                [
                    ",".join(str(a) for a in row.lam),
                    row.kind,
                    ";".join(row.reasons),
                    "" if row.s_value is None else row.s_value,
                    "" if obj["r_p_num"] is None else obj["r_p_num"],
                    "" if obj["r_p_den"] is None else obj["r_p_den"],
                    row.limit,
                    row.abs_R,
                    row.status or "",
                ]
            )
        return buf.getvalue().encode("utf-8")
    if fmt == "text":
        lines = [f"CONFLICT: {report.status_counts.get(CONFLICT, 0)}"]
        lines.append(f"grid: {report.dtype} p={report.p}")
        lines.append(
            f"weights: {report.total_weights} of {report.expected_weights}"
            + (" (truncated)" if report.truncated else "")
        )
        for s in (SOUND_UNDETERMINED, MATCH):
            lines.append(f"{s}: {report.status_counts.get(s, 0)}")
        for k in KINDS:
            lines.append(f"{k}: {report.kind_counts.get(k, 0)}")
        for row in report.rows:
            if row.status == CONFLICT or row.kind != Kind.NOT_EXCEPTIONAL.value:
                reasons = ",".join(row.reasons)
                lines.append(
                    f"  {list(row.lam)} {row.kind} [{reasons}] reference={row.reference} status={row.status}"
                )
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ConstructionError(f"unknown format {fmt!r}; expected json, csv or text")


def load_report(data: bytes | str) -> SweepReport:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return SweepReport.from_json(json.loads(data))


def _weight_at(index: int, rank: int, p: int) -> Weight:
    digits = []
    for _ in range(rank):
        index, d = divmod(index, p)
        digits.append(d)
    return tuple(reversed(digits))


def sampled_weights(rs: RootSystem, p: int, size: int, refs: ReferenceTables | None = None) -> list[Weight]:
    """Evenly spaced restricted weights plus every tabled weight, in lexicographic order."""
    total = p**rs.rank
    stride = max(1, total // max(size, 1))
    chosen = {_weight_at(i, rs.rank, p) for i in range(0, total, stride)}
    chosen.add((0,) * rs.rank)
    if refs is not None and refs.covers(rs.dtype, p):
        exc, unc = refs.weight_sets(rs.dtype, p)
        chosen.update(exc)
        chosen.update(unc)
    return sorted(chosen)


# grids reconciled by ``excepta verify``: every non-special p < 11 for the
# exceptional types, then the classical spot checks
ACCEPTANCE_GRID: tuple[tuple[DynkinType, int], ...] = tuple(
    (DynkinType(f, n), p)
    for f, n in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8))
    for p in (2, 3, 5, 7)
    if not is_special_prime(DynkinType(f, n), p)
) + tuple(
    (DynkinType(f, n), p)
    for f, ranks, primes in (
        ("A", (1, 2, 3, 4, 5), (2, 3, 5)),
        ("B", (2, 3, 4), (3, 5)),
        ("C", (3, 4), (3, 5)),
        ("D", (4,), (3, 5)),
    )
    for n in ranks
    for p in primes
)


def tabled_not_exceptional(report: SweepReport, refs: ReferenceTables) -> list[Weight]:
    """Weights the tables call exceptional that the sweep did not prove Exceptional."""
    if not refs.covers(report.dtype, report.p):
        return []
    exc, _ = refs.weight_sets(report.dtype, report.p)
    got = {row.lam for row in report.rows if row.kind == Kind.EXCEPTIONAL.value}
    return sorted(w for w in exc if w not in got)


def run_grid(
    grid: Iterable[tuple[DynkinType, int]],
    refs: ReferenceTables | None = None,
    *,
    jobs: int = 1,
    cap: int | None = None,
) -> dict:
    """Sweep and reconcile each grid; summarize conflicts and missed exceptional weights.

    Missed tabled weights are only counted as failures for the exceptional types.
    """
    from .reference import default_tables

    refs = refs or default_tables()
    grids = []
    conflicts = 0
    missed_total = 0
    for dtype, p in grid:
        report = sweep_restricted(build(dtype), p, refs=refs, jobs=jobs, keep=keep_notable, cap=cap)
        missed = tabled_not_exceptional(report, refs)
        required = dtype.family in "EFG"
        conflicts += report.conflicts
        missed_total += len(missed) if required else 0
        grids.append(
            {
                "type": str(dtype),
                "p": p,
                "weights": report.total_weights,
                "kinds": {k: report.kind_counts.get(k, 0) for k in KINDS},
                "statuses": {s: report.status_counts.get(s, 0) for s in STATUSES},
                "conflict_weights": [list(r.lam) for r in report.rows if r.status == CONFLICT],
                "tabled_not_exceptional": [list(w) for w in missed],
                "tabled_exceptional_required": required,
            }
        )
    return {"conflicts": conflicts, "missed_required_exceptional": missed_total, "grids": grids}
