"""Clone-pair report writers and readers.

CSV rows (no header): dir,file,start_line,end_line,dir,file,start_line,
end_line,delta,kind. JSONL carries the same fields plus the forced flag.
Writing is bit-stable: fixed delta formatting, fixed newline, sorted
keys.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..matcher import ClonePair


@dataclass(frozen=True)
class ReportRow:
    dir1: str
    file1: str
    start1: int
    end1: int
    dir2: str
    file2: str
    start2: int
    end2: int
    delta: float
    kind: str
    forced: Optional[bool] = None

    def path1(self) -> str:
        return f"{self.dir1}/{self.file1}" if self.dir1 else self.file1

    def path2(self) -> str:
        return f"{self.dir2}/{self.file2}" if self.dir2 else self.file2


def _split_path(path: str) -> tuple[str, str]:
    if "/" in path:
        d, _, f = path.rpartition("/")
        return d, f
    return "", path


def format_delta(delta: float) -> str:
    return f"{delta:.6f}"


def render_report(pairs: list[ClonePair], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for p in pairs:
            d1, f1 = _split_path(p.left.file_path)
            d2, f2 = _split_path(p.right.file_path)
            writer.writerow(
                [
                    d1, f1, p.left.start_line, p.left.end_line,
                    d2, f2, p.right.start_line, p.right.end_line,
                    format_delta(p.delta), p.kind,
                ]
            )
        return buf.getvalue()
    if fmt == "jsonl":
        lines = []
        for p in pairs:
            d1, f1 = _split_path(p.left.file_path)
            d2, f2 = _split_path(p.right.file_path)
            lines.append(
                json.dumps(
                    {
                        "dir1": d1, "file1": f1,
                        "start1": p.left.start_line, "end1": p.left.end_line,
                        "dir2": d2, "file2": f2,
                        "start2": p.right.start_line, "end2": p.right.end_line,
                        "delta": float(format_delta(p.delta)),
                        "kind": p.kind,
                        "forced": p.forced,
                    },
                    sort_keys=True,
                )
            )
        return "".join(line + "\n" for line in lines)
    raise ValueError(f"unknown report format: {fmt!r}")


def write_report(pairs: list[ClonePair], path: str, fmt: str) -> None:
    Path(path).write_text(render_report(pairs, fmt), encoding="utf-8", newline="\n")


def read_report(path: str) -> list[ReportRow]:
    text = Path(path).read_text(encoding="utf-8")
    rows: list[ReportRow] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.lstrip().startswith("{"):
            obj = json.loads(line)
            rows.append(
                ReportRow(
                    obj["dir1"], obj["file1"], int(obj["start1"]), int(obj["end1"]),
                    obj["dir2"], obj["file2"], int(obj["start2"]), int(obj["end2"]),
                    float(obj["delta"]), obj["kind"], obj.get("forced"),
                )
            )
        else:
            fields = next(csv.reader([line]))
            rows.append(
                ReportRow(
                    fields[0], fields[1], int(fields[2]), int(fields[3]),
                    fields[4], fields[5], int(fields[6]), int(fields[7]),
                    float(fields[8]), fields[9],
                )
            )
    return rows
