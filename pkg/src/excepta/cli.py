"""Command-line front end.

Every invocation writes exactly one document to stdout; diagnostics go to
stderr. Exit codes: 0 success, 1 a CONFLICT was found, 2 usage error,
3 internal integrity failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import ExceptaError, IntegrityError
from .reference import load_tables
from .rootsystem import (
    DynkinType,
    bad_primes,
    build,
    center_dim,
    dim_g,
    is_special_prime,
    is_very_good_prime,
)
from .screening import brute_force_M, classify_weight, limit, screen, table_M
from .sweep import CONFLICT, emit, keep_notable, sampled_weights, sweep_restricted
from .weights import MultiplicityHints, NO_HINTS, dominant_below, gap_cap_from_env
from .weyl import centralizer_order, decompose_deleted_diagram, orbit_enumerate, orbit_size, weyl_order

log = logging.getLogger("excepta")

EXIT_OK, EXIT_CONFLICT, EXIT_USAGE, EXIT_INTEGRITY = 0, 1, 2, 3
DEFAULT_ORBIT_CAP = 1_000_000


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    dtype: DynkinType | None = None
    p: int | None = None
    weight: tuple[int, ...] | None = None
    hints_path: Path | None = None
    refs_path: Path | None = None
    fmt: str = "json"
    jobs: int = 1
    orbit_cap: int = DEFAULT_ORBIT_CAP
    gap_cap: int = 2_000_000
    enumerate_orbit: bool = False
    short_circuit: bool = True
    budget: int | None = None
    sample: int | None = None
    notable_only: bool = False
    include_e8_p7: bool = False


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from exc
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"weight must be comma-separated integers, got {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="excepta", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def typed(p: argparse.ArgumentParser, rank_required: bool = False) -> None:
        p.add_argument("--type", dest="family", required=True, help="family letter (A-G), or a fused token like E6")
        p.add_argument("--rank", type=_positive_int, required=rank_required)

    def caps(p: argparse.ArgumentParser) -> None:
        p.add_argument("--orbit-cap", type=_positive_int, default=None)
        p.add_argument("--gap-cap", type=_positive_int, default=None)

    p = sub.add_parser("rootinfo", help="root system data as JSON")
    typed(p)

    p = sub.add_parser("orbit", help="Weyl orbit size and stabilizer of a dominant weight")
    typed(p)
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--enumerate", action="store_true", help="also enumerate the orbit as a cross-check")
    caps(p)

    p = sub.add_parser("screen", help="screening sums and verdict for one weight")
    typed(p)
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--hints", type=Path)
    p.add_argument("--no-short-circuit", action="store_true")
    caps(p)

    p = sub.add_parser("sweep", help="classify every restricted weight of a grid")
    typed(p)
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--hints", type=Path)
    p.add_argument("--refs", type=Path)
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--budget", type=_positive_int, help="stop after this many weights (flagged as truncated)")
    p.add_argument("--sample", type=_positive_int, help="classify an evenly spaced subset of about this size")
    p.add_argument("--notable", action="store_true", help="omit NotExceptional rows that match the tables")
    caps(p)

    p = sub.add_parser("oracle", help="cross-check closed forms against brute force for one type")
    typed(p)
    p.add_argument("--p", type=_positive_int, default=None)
    caps(p)

    p = sub.add_parser("verify", help="run the sweep grid used for acceptance")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--with-e8-p7", action="store_true", help="include the full E8 p=7 sweep (slow)")
    caps(p)
    return parser


def _dtype(family: str, rank: int | None) -> DynkinType:
    family = family.strip().upper()
    if len(family) > 1:
        fused = DynkinType.parse(family)
        if rank is not None and rank != fused.rank:
            raise UsageError(f"--type {family} conflicts with --rank {rank}")
        return fused
    if rank is None:
        raise UsageError("--rank is required unless --type carries it (e.g. E6)")
    return DynkinType(family, rank)


def parse_args(argv: Sequence[str] | None = None) -> tuple[CliConfig, bool]:
    ns = _build_parser().parse_args(argv)
    orbit_cap = getattr(ns, "orbit_cap", None) or _env_cap("EXCEPTA_ORBIT_CAP", DEFAULT_ORBIT_CAP)
    gap_cap = getattr(ns, "gap_cap", None) or _env_cap("EXCEPTA_GAP_CAP", gap_cap_from_env())
    if orbit_cap < 1 or gap_cap < 1:
        raise UsageError("caps must be positive")
    dtype = _dtype(ns.family, ns.rank) if hasattr(ns, "family") else None
    weight = getattr(ns, "weight", None)
    if weight is not None and dtype is not None and len(weight) != dtype.rank:
        raise UsageError(f"--weight has {len(weight)} entries but {dtype} has rank {dtype.rank}")
    if weight is not None and any(a < 0 for a in weight):
        raise UsageError(f"--weight {weight} is not dominant")
    config = CliConfig(
        subcommand=ns.subcommand,
        dtype=dtype,
        p=getattr(ns, "p", None),
        weight=weight,
        hints_path=getattr(ns, "hints", None),
        refs_path=getattr(ns, "refs", None),
        fmt=getattr(ns, "fmt", "json"),
        jobs=getattr(ns, "jobs", 1),
        orbit_cap=orbit_cap,
        gap_cap=gap_cap,
        enumerate_orbit=getattr(ns, "enumerate", False),
        short_circuit=not getattr(ns, "no_short_circuit", False),
        budget=getattr(ns, "budget", None),
        sample=getattr(ns, "sample", None),
        notable_only=getattr(ns, "notable", False),
        include_e8_p7=getattr(ns, "with_e8_p7", False),
    )
    return config, ns.verbose


def _write(doc: dict | bytes) -> None:
    if isinstance(doc, bytes):
        sys.stdout.buffer.write(doc)
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    sys.stdout.flush()


def _hints(config: CliConfig) -> MultiplicityHints:
    return MultiplicityHints.load(config.hints_path) if config.hints_path else NO_HINTS


def _rootinfo(config: CliConfig) -> int:
    dtype = config.dtype
    rs = build(dtype)
    doc = rs.to_json()
    doc.update(
        highest_root=list(rs.highest_root),
        long_positive_roots=[list(r) for r in rs.long_positive_roots],
        num_roots=rs.num_roots,
        dim_g=dim_g(dtype),
        weyl_order=weyl_order(dtype),
        bad_primes=list(bad_primes(dtype)),
        limit=limit(dtype),
        table_M=table_M(dtype),
    )
    _write(doc)
    return EXIT_OK


def _orbit(config: CliConfig) -> int:
    rs = build(config.dtype)
    mu = config.weight
    doc = {
        "type": str(config.dtype),
        "weight": list(mu),
        "orbit_size": orbit_size(rs, mu),
        "centralizer_order": centralizer_order(rs, mu),
        "components": decompose_deleted_diagram(rs, mu).to_json(),
    }
    if config.enumerate_orbit:
        doc["enumerated_size"] = len(orbit_enumerate(rs, mu, cap=config.orbit_cap))
    _write(doc)
    return EXIT_OK


def _screen(config: CliConfig) -> int:
    rs = build(config.dtype)
    hints = _hints(config)
    verdict = classify_weight(rs, config.weight, config.p, hints, cap=config.gap_cap)
    doc: dict = {
        "type": str(config.dtype),
        "p": config.p,
        "verdict": {"kind": verdict.kind.value, "reasons": [r.value for r in verdict.reasons]},
    }
    try:
        res = screen(rs, config.weight, config.p, hints, short_circuit=config.short_circuit, cap=config.gap_cap)
        doc["screening"] = res.to_json()
    except ExceptaError as exc:
        doc["screening"] = None
        doc["screening_refused"] = str(exc)
    _write(doc)
    return EXIT_OK


def _sweep(config: CliConfig) -> int:
    rs = build(config.dtype)
    refs = load_tables(config.refs_path)
    weights = None
    if config.sample is not None:
        weights = sampled_weights(rs, config.p, config.sample, refs)
    report = sweep_restricted(
        rs,
        config.p,
        _hints(config),
        config.budget,
        refs=refs,
        jobs=config.jobs,
        keep=keep_notable if config.notable_only else None,
        weights=weights,
        cap=config.gap_cap,
    )
    log.info("sweep finished in %.2fs", report.elapsed_seconds)
    _write(emit(report, config.fmt))
    return EXIT_CONFLICT if report.status_counts.get(CONFLICT, 0) else EXIT_OK


def _oracle(config: CliConfig) -> int:
    rs = build(config.dtype)
    rank = rs.rank
    mismatches = []
    checked = 0
    for mu in itertools.product(range(3), repeat=rank):
        if orbit_size(rs, mu) > config.orbit_cap:
            continue
        checked += 1
        n = len(orbit_enumerate(rs, mu, cap=config.orbit_cap))
        if n != orbit_size(rs, mu):
            mismatches.append({"weight": list(mu), "formula": orbit_size(rs, mu), "enumerated": n})
    doc: dict = {
        "type": str(config.dtype),
        "orbit_checks": checked,
        "orbit_mismatches": mismatches,
        "dominant_below_rho": len(dominant_below(rs, (1,) * rank, cap=config.gap_cap)),
    }
    if config.p is not None and not is_special_prime(config.dtype, config.p):
        doc["p"] = config.p
        doc["brute_force_M"] = brute_force_M(rs, config.p)
        doc["table_M"] = table_M(config.dtype)
        doc["center_dim"] = center_dim(config.dtype, config.p)
        doc["very_good"] = is_very_good_prime(config.dtype, config.p)
    _write(doc)
    return EXIT_INTEGRITY if mismatches else EXIT_OK


def _verify(config: CliConfig) -> int:
    from .sweep import ACCEPTANCE_GRID, run_grid

    grid = [g for g in ACCEPTANCE_GRID if config.include_e8_p7 or g != (DynkinType("E", 8), 7)]
    summary = run_grid(grid, jobs=config.jobs, cap=config.gap_cap)
    skipped = [] if config.include_e8_p7 else ["E8 p=7 (pass --with-e8-p7)"]
    summary["skipped"] = skipped
    _write(summary)
    failed = summary["conflicts"] or summary["missed_required_exceptional"]
    return EXIT_CONFLICT if failed else EXIT_OK


_DISPATCH = {
    "rootinfo": _rootinfo,
    "orbit": _orbit,
    "screen": _screen,
    "sweep": _sweep,
    "oracle": _oracle,
    "verify": _verify,
}


def run(config: CliConfig) -> int:
    return _DISPATCH[config.subcommand](config)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config, verbose = parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return EXIT_USAGE if exc.code else EXIT_OK
    except (UsageError, ExceptaError) as exc:
        print(f"excepta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return run(config)
    except IntegrityError as exc:
        print(f"excepta: integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (UsageError, ExceptaError, OSError, json.JSONDecodeError) as exc:
        print(f"excepta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
