"""Recall evaluation of a clone report against ground-truth pairs.

Ground truth is a CSV of `file1,start1,end1,file2,start2,end2,label`
rows. A truth pair counts as recalled when some reported pair matches it
fragment-for-fragment (either orientation) with line-range overlap of at
least the configured threshold on each side, measured as the covered
fraction of the truth range.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .report import ReportRow


@dataclass(frozen=True)
class TruthPair:
    file1: str
    start1: int
    end1: int
    file2: str
    start2: int
    end2: int
    label: str


@dataclass
class GroundTruth:
    pairs: list[TruthPair]

    @classmethod
    def load(cls, path: str) -> "GroundTruth":
        pairs = []
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or not "".join(row).strip():
                    continue
                pairs.append(
                    TruthPair(
                        _norm(row[0]), int(row[1]), int(row[2]),
                        _norm(row[3]), int(row[4]), int(row[5]),
                        row[6].strip() if len(row) > 6 else "unlabeled",
                    )
                )
        return cls(pairs)


@dataclass
class LabelRecall:
    matched: int = 0
    known: int = 0

    @property
    def ratio(self) -> float:
        return self.matched / self.known if self.known else 0.0


@dataclass
class EvalReport:
    per_label: dict[str, LabelRecall]
    overall: LabelRecall
    total_reported: int
    precision: Optional[float]  # only from an externally judged sample
    wall_time: float
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"reported pairs: {self.total_reported}"]
        for label in sorted(self.per_label):
            r = self.per_label[label]
            out.append(f"recall[{label}]: {r.matched}/{r.known} = {r.ratio:.4f}")
        out.append(
            f"recall[overall]: {self.overall.matched}/{self.overall.known}"
            f" = {self.overall.ratio:.4f}"
        )
        out.append(
            "precision: N/A" if self.precision is None else f"precision: {self.precision:.4f}"
        )
        out.append(f"wall time: {self.wall_time:.3f}s")
        return out


def _norm(path: str) -> str:
    return path.strip().replace("\\", "/").lstrip("./")


def _overlap_ok(r_start: int, r_end: int, t_start: int, t_end: int, threshold: float) -> bool:
    inter = min(r_end, t_end) - max(r_start, t_start) + 1
    truth_len = t_end - t_start + 1
    return inter > 0 and inter / truth_len >= threshold


def _fragment_match(row_path, row_start, row_end, t_path, t_start, t_end, threshold):
    return row_path == t_path and _overlap_ok(row_start, row_end, t_start, t_end, threshold)


def evaluate(
    report: list[ReportRow] | str | Path,
    truth: GroundTruth,
    line_overlap_threshold: float = 0.7,
    wall_time: float = 0.0,
) -> EvalReport:
    if not isinstance(report, list):
        from .report import read_report

        report = read_report(str(report))

    by_files: dict[frozenset, list[ReportRow]] = {}
    for row in report:
        by_files.setdefault(frozenset((_norm(row.path1()), _norm(row.path2()))), []).append(row)

    per_label: dict[str, LabelRecall] = {}
    overall = LabelRecall()
    notes: list[str] = []
    for t in truth.pairs:
        rec = per_label.setdefault(t.label, LabelRecall())
        rec.known += 1
        overall.known += 1
        matched = False
        for row in by_files.get(frozenset((t.file1, t.file2)), []):
            p1, p2 = _norm(row.path1()), _norm(row.path2())
            straight = _fragment_match(
                p1, row.start1, row.end1, t.file1, t.start1, t.end1, line_overlap_threshold
            ) and _fragment_match(
                p2, row.start2, row.end2, t.file2, t.start2, t.end2, line_overlap_threshold
            )
            swapped = _fragment_match(
                p1, row.start1, row.end1, t.file2, t.start2, t.end2, line_overlap_threshold
            ) and _fragment_match(
                p2, row.start2, row.end2, t.file1, t.start1, t.end1, line_overlap_threshold
            )
            if straight or swapped:
                matched = True
                break
        if matched:
            rec.matched += 1
            overall.matched += 1
    return EvalReport(
        per_label=per_label,
        overall=overall,
        total_reported=len(report),
        precision=None,
        wall_time=wall_time,
        notes=notes,
    )
