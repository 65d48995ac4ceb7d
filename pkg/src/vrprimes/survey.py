"""Discriminant surveys: density of very regular fields, resumable scans, tables."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .arith import kronecker, odd_primes_upto, prime_ctx
from .errors import CheckpointVersionMismatch, VRError
from .quadfield import class_number_table, enumerate_fundamental
from .veryregular import VRReport, Verdict, very_regular

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
BLOCK_SIZE = 1024
CSV_HEADER = ["d", "h", "split", "zeta_witnesses", "l_witnesses", "artin_ok", "verdict"]
TABLE_DISCRIMINANTS = (3, 4, 7, 8, 11, 15, 19, 20, 23, 24)


@dataclass
class SurveyRecord:
    d: int
    h: int
    report: VRReport

    @property
    def verdict(self) -> Verdict:
        return self.report.verdict

    @property
    def summary(self) -> str:
        return self.report.cell()

    def csv_row(self) -> list[str]:
        r = self.report
        return [
            str(self.d),
            str(self.h),
            str(r.split).lower(),
            ";".join(map(str, r.zeta_witnesses)),
            ";".join(map(str, r.l_witnesses)),
            "" if r.artin_ok is None else str(r.artin_ok).lower(),
            r.verdict.value,
        ]

    def json_line(self) -> str:
        return json.dumps({"h": self.h, **self.report.to_dict()}, ensure_ascii=False)


@dataclass
class Checkpoint:
    p: int
    last_d: int
    split_count: int = 0
    vr_count: int = 0
    version: int = CHECKPOINT_VERSION

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "p": self.p,
            "last_d": self.last_d,
            "split_count": self.split_count,
            "vr_count": self.vr_count,
        }

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        try:
            tmp.write_text(json.dumps(self.to_dict()))
            os.replace(tmp, path)
        except OSError as exc:
            raise VRError(f"cannot write checkpoint {path}: {exc}") from exc

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Checkpoint":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, ValueError) as exc:
            raise VRError(f"cannot read checkpoint {path}: {exc}") from exc
        if data.get("version") != CHECKPOINT_VERSION:
            raise CheckpointVersionMismatch(
                f"{path}: version {data.get('version')}, expected {CHECKPOINT_VERSION}"
            )
        return cls(data["p"], data["last_d"], data["split_count"], data["vr_count"])


@dataclass
class ScanResult:
    p: int
    dmax: int
    split_count: int
    vr_count: int
    records: list[SurveyRecord] = field(default_factory=list, repr=False)

    @property
    def percentage(self) -> Decimal:
        return percentage(self.vr_count, self.split_count)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "dmax": self.dmax,
            "split_count": self.split_count,
            "vr_count": self.vr_count,
            "percentage": float(self.percentage),
        }


def percentage(part: int, whole: int) -> Decimal:
    """``100 * part / whole`` rounded half-up to one decimal."""
    if whole == 0:
        return Decimal("0.0")
    return (Decimal(100 * part) / Decimal(whole)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def _scan_block(p: int, items: list[tuple[int, int]]) -> list[SurveyRecord]:
    ctx = prime_ctx(p)
    return [SurveyRecord(d, h, very_regular(d, ctx, h=h)) for d, h in items]


def _blocks(p: int, dmax: int, start: int, strict: bool, block_size: int) -> Iterator[tuple[int, list]]:
    """Yield ``(last |d| covered, [(d, h), ...])`` for split fundamental d, block by block."""
    top = dmax - 1 if strict else dmax
    hs = class_number_table(top)
    ds = [d for d in enumerate_fundamental(top) if -d > start and kronecker(d, p) == 1]
    lo = start + 1
    i = 0
    while lo <= top:
        hi = min(lo + block_size - 1, top)
        items = []
        while i < len(ds) and -ds[i] <= hi:
            items.append((ds[i], int(hs[-ds[i]])))
            i += 1
        yield hi, items
        lo = hi + 1


def scan(
    p: int,
    dmax: int,
    jobs: int = 1,
    checkpoint_path: str | os.PathLike | None = None,
    out: str | os.PathLike | None = None,
    fmt: str = "csv",
    strict: bool = True,
    block_size: int = BLOCK_SIZE,
    keep_records: bool = True,
    on_block: Callable[[Checkpoint], None] | None = None,
) -> ScanResult:
    """Evaluate every split fundamental d with |d| < dmax (<= if not strict).

    Output order is by |d| whatever ``jobs`` is. With ``checkpoint_path`` the
    scan resumes after the last completed block and appends to ``out``.
    """
    prime_ctx(p)
    if dmax < 3:
        raise ValueError("dmax must be at least 3")
    if fmt not in ("csv", "jsonl"):
        raise ValueError(f"unknown record format {fmt!r}")
    state = Checkpoint(p, 0)
    if checkpoint_path is not None and Path(checkpoint_path).exists():
        state = Checkpoint.load(checkpoint_path)
        if state.p != p:
            raise VRError(f"checkpoint {checkpoint_path} is for p = {state.p}, not {p}")
        log.info("resuming p=%d after |d| = %d", p, state.last_d)
    resumed = state.last_d > 0
    sink = None
    writer = None
    if out is not None:
        try:
            sink = open(out, "a" if resumed else "w", newline="", encoding="utf-8")
        except OSError as exc:
            raise VRError(f"cannot open output {out}: {exc}") from exc
        if fmt == "csv":
            writer = csv.writer(sink, lineterminator="\n")
            if not resumed:
                writer.writerow(CSV_HEADER)
    records: list[SurveyRecord] = []
    blocks = list(_blocks(p, dmax, state.last_d, strict, block_size))
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        if pool is None:
            results: Iterable[list[SurveyRecord]] = (_scan_block(p, items) for _, items in blocks)
        else:
            results = pool.map(_scan_block, [p] * len(blocks), [items for _, items in blocks])
        for (last, _), block in zip(blocks, results):
            for rec in block:
                state.split_count += 1
                state.vr_count += rec.verdict is Verdict.VERY_REGULAR
                if sink is not None:
                    if writer is not None:
                        writer.writerow(rec.csv_row())
                    else:
                        sink.write(rec.json_line() + "\n")
            if keep_records:
                records.extend(block)
            state.last_d = last
            if sink is not None:
                sink.flush()
            if checkpoint_path is not None:
                state.save(checkpoint_path)
            log.debug("p=%d |d|<=%d split=%d vr=%d", p, last, state.split_count, state.vr_count)
            if on_block is not None:
                on_block(state)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
        if sink is not None:
            sink.close()
    return ScanResult(p, dmax, state.split_count, state.vr_count, records)


def density_prediction(p: int, tol: float = 1e-12) -> float:
    """``prod_{n>=1} (1 - p**-n)`` rounded to 6 decimals."""
    if p < 2:
        raise ValueError("p must be at least 2")
    prod, n = 1.0, 1
    while True:
        term = p ** (-n)
        if term < tol:
            break
        prod *= 1.0 - term
        n += 1
    return round(prod, 6)


@dataclass
class Table:
    primes: list[int]
    columns: list[int]
    cells: dict[tuple[int, int], str]

    def row(self, p: int) -> list[str]:
        return [self.cells[p, c] for c in self.columns]

    def to_json(self) -> dict:
        return {
            "columns": self.columns,
            "rows": {str(p): self.row(p) for p in self.primes},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Table":
        columns = [int(c) for c in data["columns"]]
        primes = [int(p) for p in data["rows"]]
        cells = {
            (int(p), c): v for p, row in data["rows"].items() for c, v in zip(columns, row)
        }
        return cls(primes, columns, cells)

    def to_text(self) -> str:
        head = ["-d_F"] + [str(c) for c in self.columns]
        body = [[str(p)] + self.row(p) for p in self.primes]
        widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
        lines = []
        for k, r in enumerate([head] + body):
            cells = [r[0].rjust(widths[0])] + [s.center(w) for s, w in zip(r[1:], widths[1:])]
            lines.append((cells[0] + " | " + " | ".join(cells[1:])).rstrip())
            if k == 0:
                lines.append("-+-".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def emit_table(pmax: int = 97, discriminants: Iterable[int] = TABLE_DISCRIMINANTS) -> Table:
    """Verdict cells for odd primes p <= pmax against the given |d|."""
    columns = [abs(d) for d in discriminants]
    primes = odd_primes_upto(pmax)
    cells = {}
    for p in primes:
        ctx = prime_ctx(p)
        for c in columns:
            cells[p, c] = very_regular(-c, ctx).cell()
    return Table(primes, columns, cells)


def records_to_csv(records: Iterable[SurveyRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow(rec.csv_row())
    return buf.getvalue()
