"""Cohesion over a sequence of program versions.

Input is a snapshot stream, either a directory of ``NNNN.mj`` files or a
``.jsonl`` file with one ``{"seq", "ts_ms", "source"}`` object per line.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .cohesion import analyze, display, ratio_json
from .frontend import compilable, load

log = logging.getLogger(__name__)


class TraceError(Exception):
    pass


@dataclass(frozen=True)
class VersionEvent:
    seq: int
    source: str
    ts_ms: int = -1
    origin: str = ""


@dataclass(frozen=True)
class TracePoint:
    version_index: int
    seq: int
    method_length: int
    coverage: dict[str, Optional[Fraction]]  # declaration order
    intersection_ratio: Fraction


@dataclass
class MetricTrace:
    method: str
    points: list[TracePoint]

    def __len__(self) -> int:
        return len(self.points)


def ingest(path: str | Path) -> list[VersionEvent]:
    path = Path(path)
    if path.is_dir():
        events = _ingest_dir(path)
    elif path.is_file():
        events = _ingest_jsonl(path)
    else:
        raise TraceError(f"cannot read {path}")
    if not events:
        raise TraceError(f"no parseable version events in {path}")
    return events


def _ingest_dir(path: Path) -> list[VersionEvent]:
    events = []
    for i, f in enumerate(sorted(path.glob("*.mj"))):
        seq = int(f.stem) if f.stem.isdigit() else i
        events.append(VersionEvent(seq, f.read_text(encoding="utf-8"), -1, str(f)))
    events.sort(key=lambda e: e.seq)
    return events


def _ingest_jsonl(path: Path) -> list[VersionEvent]:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise TraceError(f"cannot read {path}: {e}") from e
    by_seq: dict[int, VersionEvent] = {}
    for lineno, raw in enumerate(lines, 1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
            seq, source = obj["seq"], obj["source"]
            ts = obj.get("ts_ms", -1)
            if not (isinstance(seq, int) and isinstance(source, str) and isinstance(ts, int)):
                raise TypeError("bad field types")
        except (ValueError, KeyError, TypeError, AttributeError) as e:
            log.warning("%s:%d: skipping malformed event (%s)", path, lineno, e)
            continue
        if seq in by_seq:
            log.warning("%s:%d: skipping duplicate seq %d", path, lineno, seq)
            continue
        by_seq[seq] = VersionEvent(seq, source, ts, f"{path}:{lineno}")
    return [by_seq[s] for s in sorted(by_seq)]


def compile_filter(events: list[VersionEvent]) -> list[VersionEvent]:
    """Keep compilable versions, dropping byte-identical repeats."""
    kept: list[VersionEvent] = []
    for e in events:
        if not compilable(e.source):
            continue
        if kept and kept[-1].source == e.source:
            continue
        kept.append(e)
    return kept


def _method_names(source: str) -> list[str]:
    return load(source).method_names


def _point(index: int, event: VersionEvent, method: str) -> Optional[TracePoint]:
    program = load(event.source)
    if method not in program.symbols:
        return None
    report = analyze(program, method)[0]
    return TracePoint(index, event.seq, report.method_length, report.coverage_map(),
                      report.intersection_ratio)


def compute_trace(versions: list[VersionEvent], method: Optional[str] = None,
                  workers: int = 1) -> MetricTrace:
    """Analyse each compilable version; ``versions`` should already be
    filtered. Point ``k`` is what :func:`analyze` reports for version ``k``."""
    if method is None:
        names: list[str] = []
        for v in versions:
            for n in _method_names(v.source):
                if n not in names:
                    names.append(n)
        if len(names) != 1:
            raise TraceError(f"trace needs a method name; found {names or 'none'}")
        method = names[0]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            pts = list(pool.map(lambda iv: _point(iv[0], iv[1], method), enumerate(versions)))
    else:
        pts = [_point(i, v, method) for i, v in enumerate(versions)]
    missing = sum(p is None for p in pts)
    if missing == len(pts):
        log.warning("method %r never appears in the version sequence", method)
    elif missing:
        log.warning("method %r absent from %d version(s)", method, missing)
    return MetricTrace(method, [p for p in pts if p is not None])


def trace_path(path: str | Path, method: Optional[str] = None) -> tuple[list[VersionEvent], MetricTrace]:
    events = ingest(path)
    versions = compile_filter(events)
    if not versions:
        raise TraceError(f"no compilable versions in {path}")
    return events, compute_trace(versions, method)


# -- output ------------------------------------------------------------------

CSV_HEADER = ["version_index", "method", "kind", "name", "value"]


def emit_csv(trace: MetricTrace) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in trace.points:
        for name, cov in p.coverage.items():
            w.writerow([p.version_index, trace.method, "coverage", name,
                        "" if cov is None else display(cov)])
        w.writerow([p.version_index, trace.method, "intersection", "", display(p.intersection_ratio)])
        w.writerow([p.version_index, trace.method, "method_length", "", p.method_length])
    return buf.getvalue().encode("utf-8")


def emit_json(trace: MetricTrace) -> bytes:
    records = [
        {
            "version_index": p.version_index,
            "seq": p.seq,
            "method": trace.method,
            "method_length": p.method_length,
            "coverage": {n: ratio_json(c) for n, c in p.coverage.items()},
            "intersection": ratio_json(p.intersection_ratio),
        }
        for p in trace.points
    ]
    return (json.dumps(records, indent=2) + "\n").encode("utf-8")


def emit(trace: MetricTrace, format: str = "csv") -> bytes:
    if format == "csv":
        return emit_csv(trace)
    if format == "json":
        return emit_json(trace)
    raise ValueError(f"unknown format {format!r}")


def parse_csv(data: bytes) -> list[dict]:
    return list(csv.DictReader(io.StringIO(data.decode("utf-8"))))

