"""Character error rate over decoded base-character text."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import ParseqError


class EmptyGroundTruth(ParseqError):
    def __init__(self, sample_id: str):
        super().__init__(f"sample {sample_id!r} has empty ground truth")
        self.sample_id = sample_id


def edit_distance(pred: str, gt: str) -> int:
    """Levenshtein distance with unit costs over Unicode code points."""
    if len(pred) < len(gt):
        pred, gt = gt, pred
    prev = list(range(len(gt) + 1))
    for i, a in enumerate(pred, 1):
        cur = [i]
        for j, b in enumerate(gt, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev[-1]


@dataclass(frozen=True)
class SampleResult:
    id: str
    gt: str
    pred: str
    edit_ops: int


@dataclass
class CERReport:
    total_edit_ops: int
    total_gt_chars: int
    samples: list[SampleResult] = field(default_factory=list)

    @property
    def cer(self) -> float:
        return self.total_edit_ops / self.total_gt_chars if self.total_gt_chars else 0.0

    @property
    def word_accuracy(self) -> float:
        if not self.samples:
            return 0.0
        return sum(s.pred == s.gt for s in self.samples) / len(self.samples)

    def summary(self) -> str:
        return (f"samples={len(self.samples)} edit_ops={self.total_edit_ops} "
                f"gt_chars={self.total_gt_chars} cer={self.cer:.6f} "
                f"word_accuracy={self.word_accuracy:.6f}")

    def write(self, path) -> None:
        """Tab-separated ``id, gt, pred, edit_ops`` rows sorted by id, then a summary row."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for s in self.samples:
                fh.write(f"{s.id}\t{s.gt}\t{s.pred}\t{s.edit_ops}\n")
            fh.write("#summary\t" + self.summary().replace(" ", "\t") + "\n")


def aggregate(samples: Iterable[tuple[str, str, str]]) -> CERReport:
    """Pool edit operations and ground-truth lengths over (id, prediction, gt) triples.

    The rate is total edits / total ground-truth characters, not a mean of
    per-sample rates.
    """
    results = []
    for sample_id, pred, gt in samples:
        if not gt:
            raise EmptyGroundTruth(sample_id)
        results.append(SampleResult(sample_id, gt, pred, edit_distance(pred, gt)))
    results.sort(key=lambda r: r.id)
    return CERReport(sum(r.edit_ops for r in results), sum(len(r.gt) for r in results), results)
