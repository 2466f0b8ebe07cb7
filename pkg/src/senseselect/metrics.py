"""Per-sense recall / precision / F and their micro and macro averages.

Abstained items count toward a sense's gold total (recall denominator) but
never toward its estimations (precision denominator).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError


@dataclass
class SenseCount:
    gold_total: int = 0
    estimated: int = 0
    correct: int = 0


@dataclass
class SenseCounts:
    entries: dict[tuple[str, str], SenseCount] = field(default_factory=dict)
    abstained: int = 0

    def _get(self, word: str, sense: str) -> SenseCount:
        return self.entries.setdefault((word, sense), SenseCount())

    def record(self, word: str, gold: str, predicted: str | None) -> None:
        """``predicted=None`` records an abstention."""
        self._get(word, gold).gold_total += 1
        if predicted is None:
            self.abstained += 1
            return
        self._get(word, predicted).estimated += 1
        if predicted == gold:
            self._get(word, gold).correct += 1

    @property
    def total(self) -> int:
        return sum(c.gold_total for c in self.entries.values())


def recall(c: SenseCount) -> float:
    if c.gold_total <= 0:
        raise ValueError("recall undefined: no gold items for this sense")
    return 100.0 * c.correct / c.gold_total


def precision(c: SenseCount) -> float:
    if c.estimated <= 0:
        raise ValueError("precision undefined: sense was never estimated")
    return 100.0 * c.correct / c.estimated


def f_score(r: float, p: float) -> float:
    if r + p == 0:
        return 0.0
    return 2.0 * r * p / (r + p)


@dataclass
class SenseRow:
    word: str
    sense: str
    gold_total: int
    estimated: int
    correct: int
    recall: float | None
    precision: float | None
    f: float


@dataclass
class EvalReport:
    rows: list[SenseRow]
    micro_recall: float | None
    micro_precision: float | None
    micro_f: float
    macro_recall: float | None
    macro_precision: float | None
    macro_f: float
    abstained: int
    total: int

    def summary_line(self) -> str:
        def fmt(v):
            return "nan" if v is None else f"{v:.1f}"
        return (
            f"micro_recall={fmt(self.micro_recall)};micro_precision={fmt(self.micro_precision)};"
            f"micro_f={fmt(self.micro_f)};macro_recall={fmt(self.macro_recall)};"
            f"macro_precision={fmt(self.macro_precision)};macro_f={fmt(self.macro_f)};"
            f"abstained={self.abstained}"
        )

    def format_table(self) -> str:
        def fmt(v):
            return "-" if v is None else f"{v:.1f}"
        header = ("word", "sense", "sentences", "correct/estimated", "recall", "precision", "F")
        body = [
            (r.word, r.sense, str(r.gold_total), f"{r.correct}/{r.estimated}",
             fmt(r.recall), fmt(r.precision), fmt(r.f))
            for r in self.rows
        ]
        body.append(("micro", "", str(self.total), "", fmt(self.micro_recall),
                     fmt(self.micro_precision), fmt(self.micro_f)))
        body.append(("macro", "", "", "", fmt(self.macro_recall),
                     fmt(self.macro_precision), fmt(self.macro_f)))
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
                 for row in [header, *body]]
        return "\n".join(lines) + "\n" + self.summary_line()


def _mean(values):
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else None


def aggregate(counts: SenseCounts) -> EvalReport:
    if not counts.entries:
        raise ValueError("no sense entries to aggregate")
    rows = []
    for (word, sense), c in sorted(counts.entries.items()):
        r = recall(c) if c.gold_total else None
        p = precision(c) if c.estimated else None
        rows.append(SenseRow(word, sense, c.gold_total, c.estimated, c.correct, r, p,
                             f_score(r or 0.0, p or 0.0)))
    gold = sum(c.gold_total for c in counts.entries.values())
    est = sum(c.estimated for c in counts.entries.values())
    correct = sum(c.correct for c in counts.entries.values())
    micro_r = 100.0 * correct / gold if gold else None
    micro_p = 100.0 * correct / est if est else None
    macro_r = _mean(r.recall for r in rows)
    macro_p = _mean(r.precision for r in rows)
    return EvalReport(
        rows=rows,
        micro_recall=micro_r,
        micro_precision=micro_p,
        micro_f=f_score(micro_r or 0.0, micro_p or 0.0),
        macro_recall=macro_r,
        macro_precision=macro_p,
        macro_f=f_score(macro_r or 0.0, macro_p or 0.0),
        abstained=counts.abstained,
        total=gold,
    )


def load_counts(path) -> SenseCounts:
    """Read ``word<TAB>sense<TAB>gold_total<TAB>estimated<TAB>correct`` lines."""
    counts = SenseCounts()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise FormatError("expected word<TAB>sense<TAB>gold<TAB>estimated<TAB>correct",
                                  path, line_no)
            try:
                gold, est, correct = map(int, parts[2:])
            except ValueError:
                raise FormatError("counts must be integers", path, line_no) from None
            if correct > est or correct > gold or min(gold, est, correct) < 0:
                raise FormatError("inconsistent counts", path, line_no)
            counts.entries[parts[0], parts[1]] = SenseCount(gold, est, correct)
    return counts


def save_counts(counts: SenseCounts, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for (word, sense), c in sorted(counts.entries.items()):
            fh.write(f"{word}\t{sense}\t{c.gold_total}\t{c.estimated}\t{c.correct}\n")
