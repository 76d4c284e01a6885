"""Benchmark harness: timed prover runs over a generated dataset.

Each concept is proved ``runs`` times and the fastest run is kept. A run that
hits the timeout marks the concept as timed out and its remaining runs are
skipped. Averages leave out timed-out concepts and, by default, concepts of
the shape ``(not (some r C))``.
"""

from __future__ import annotations

import csv
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .syntax import Exists, Not, parse_concept, size
from .tableau import CapExceeded, ProofTimeout, ProverConfig, prove

CSV_VERSION = "# alciota-bench v1"
CSV_COLUMNS = ("id", "seed", "size", "k", "gds", "lds", "verdict", "runtime_ms", "timed_out")


class DatasetError(Exception):
    pass


@dataclass(frozen=True)
class BenchConfig:
    runs: int = 5
    timeout: float = 10.0
    exclude_trivial: bool = True
    workers: int = 1
    logic: str = "alci"
    enable_cut: bool = True

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass
class BenchRow:
    id: str
    seed: int
    size: int
    k: int
    gds: int
    lds: int
    verdict: str
    runtime_ms: float | None
    timed_out: bool
    trivial: bool = False
    runs_ms: list[float] = field(default_factory=list)
    max_individuals: int = 0

    def csv_row(self) -> dict:
        return {
            "id": self.id,
            "seed": self.seed,
            "size": self.size,
            "k": self.k,
            "gds": self.gds,
            "lds": self.lds,
            "verdict": self.verdict,
            "runtime_ms": "" if self.runtime_ms is None else f"{self.runtime_ms:.3f}",
            "timed_out": int(self.timed_out),
        }


@dataclass
class BenchSummary:
    count: int
    measured: int
    avg_s: float | None
    std_s: float | None
    timeouts: int
    excluded: int
    cap_hits: int

    @classmethod
    def of(cls, rows: list[BenchRow], exclude_trivial: bool = True) -> "BenchSummary":
        times = [
            r.runtime_ms / 1000.0
            for r in rows
            if not r.timed_out and r.runtime_ms is not None and not (exclude_trivial and r.trivial)
        ]
        return cls(
            count=len(rows),
            measured=len(times),
            avg_s=statistics.fmean(times) if times else None,
            std_s=statistics.stdev(times) if len(times) > 1 else (0.0 if times else None),
            timeouts=sum(r.timed_out for r in rows),
            excluded=sum(r.trivial for r in rows) if exclude_trivial else 0,
            cap_hits=sum(r.verdict == "cap" for r in rows),
        )


def is_trivial_shape(c) -> bool:
    """``(not (some r C))`` at the top: saturated without any rule application."""
    return isinstance(c, Not) and isinstance(c.c, Exists)


def run_concept(cid: str, concept, meta: dict, cfg: BenchConfig) -> BenchRow:
    pcfg = ProverConfig(logic=cfg.logic, enable_cut=cfg.enable_cut, timeout=cfg.timeout)
    runs: list[float] = []
    verdict = "timeout"
    timed_out = False
    peak = 0
    for _ in range(cfg.runs):
        start = time.perf_counter()
        try:
            result = prove(concept, cfg=pcfg, check_model=False)
        except ProofTimeout:
            timed_out = True
            break
        except CapExceeded:
            verdict = "cap"
            break
        runs.append((time.perf_counter() - start) * 1000.0)
        verdict = result.verdict
        peak = max(peak, result.stats.max_individuals)
    if timed_out:
        verdict = "timeout"
    return BenchRow(
        id=cid,
        seed=int(meta.get("seed", 0)),
        size=int(meta.get("size", size(concept))),
        k=int(meta.get("k", 0)),
        gds=int(meta.get("gds", 0)),
        lds=int(meta.get("lds", 0)),
        verdict=verdict,
        runtime_ms=min(runs) if runs and not timed_out and verdict != "cap" else None,
        timed_out=timed_out,
        trivial=is_trivial_shape(concept),
        runs_ms=runs,
        max_individuals=peak,
    )


def load_dataset(directory: str | os.PathLike) -> list[tuple[str, object, dict]]:
    """Read ``manifest.csv`` and the concept files it lists."""
    root = Path(directory)
    manifest = root / "manifest.csv"
    if not manifest.exists():
        raise DatasetError(f"no manifest.csv in {root}")
    items = []
    with open(manifest, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "seed" not in reader.fieldnames:
            raise DatasetError(f"corrupt manifest {manifest}")
        for meta in reader:
            path = root / f"{meta['seed']}.concept"
            if not path.exists():
                raise DatasetError(f"missing concept file {path}")
            items.append((meta["seed"], parse_concept(path.read_text()), meta))
    return items


def _run_item(args):
    return run_concept(*args)


def bench(directory, cfg: BenchConfig | None = None, csv_path=None) -> tuple[list[BenchRow], BenchSummary]:
    cfg = cfg or BenchConfig()
    items = load_dataset(directory)
    jobs = [(cid, c, meta, cfg) for cid, c, meta in items]
    if cfg.workers == 1:
        rows = [_run_item(j) for j in jobs]
    else:
        with ProcessPoolExecutor(cfg.workers) as pool:
            rows = list(pool.map(_run_item, jobs))
    if csv_path is not None:
        write_csv(rows, csv_path)
    return rows, BenchSummary.of(rows, cfg.exclude_trivial)


def write_csv(rows: list[BenchRow], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_VERSION + "\n")
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r.csv_row())


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        first = fh.readline().rstrip("\n")
        if first != CSV_VERSION:
            raise DatasetError(f"unexpected CSV header {first!r}")
        return list(csv.DictReader(fh))


def summary_dict(s: BenchSummary) -> dict:
    return asdict(s)
