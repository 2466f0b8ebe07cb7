"""Tokenization, function-word filtering and co-occurrence word set extraction.

Co-occurrence is counted at sentence level: a word is counted at most once
per sentence, and association with the target word is measured by the
log-likelihood ratio G^2 over the resulting 2x2 contingency table.
"""
from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import FormatError

# Closed-class English words: articles, determiners, prepositions, conjunctions.
DEFAULT_FUNCTION_WORDS = frozenset("""
a an the
this that these those each every either neither some any no all both half
several many much more most few fewer less least enough such what which whose
my your his her its our their
about above across after against along amid among around as at before behind
below beneath beside besides between beyond by despite down during except for
from in inside into like near of off on onto out outside over past per since
through throughout till to toward towards under underneath unlike until up upon
via with within without
and but or nor so yet for although because if unless whereas while whether
though than once lest
""".split())


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def tokenize(text: str) -> list[str]:
    """Whitespace split, strip surrounding punctuation, lowercase."""
    tokens = []
    for raw in text.split():
        start, end = 0, len(raw)
        while start < end and _is_punct(raw[start]):
            start += 1
        while end > start and _is_punct(raw[end - 1]):
            end -= 1
        if start < end:
            tokens.append(raw[start:end].lower())
    return tokens


def content_filter(tokens: Iterable[str], function_words=DEFAULT_FUNCTION_WORDS) -> list[str]:
    return [t for t in tokens if t not in function_words]


def load_function_words(path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return frozenset(
            w.strip().lower() for w in fh if w.strip() and not w.lstrip().startswith("#")
        )


class Contingency(NamedTuple):
    """Sentence counts: both words, target only, candidate only, neither."""
    both: int
    target_only: int
    other_only: int
    neither: int


@dataclass
class CooccurrenceCounts:
    """Mergeable sentence-level counts for one target word.

    ``joint[c]`` counts sentences holding both the target and ``c``;
    ``freq[c]`` counts sentences holding ``c`` at all.
    """
    target: str
    sentences: int = 0
    target_sentences: int = 0
    freq: Counter = field(default_factory=Counter)
    joint: Counter = field(default_factory=Counter)

    def add(self, tokens: Iterable[str], function_words=DEFAULT_FUNCTION_WORDS) -> None:
        words = set(tokens)
        has_target = self.target in words
        words.discard(self.target)
        words.difference_update(function_words)
        self.sentences += 1
        self.freq.update(words)
        if has_target:
            self.target_sentences += 1
            self.joint.update(words)

    def __add__(self, other: "CooccurrenceCounts") -> "CooccurrenceCounts":
        if self.target != other.target:
            raise ValueError("cannot merge counts for different target words")
        return CooccurrenceCounts(
            self.target,
            self.sentences + other.sentences,
            self.target_sentences + other.target_sentences,
            self.freq + other.freq,
            self.joint + other.joint,
        )

    def table(self, c: str) -> Contingency:
        a = self.joint.get(c, 0)
        b = self.target_sentences - a
        cc = self.freq.get(c, 0) - a
        d = self.sentences - a - b - cc
        return Contingency(a, b, cc, d)

    def tables(self) -> dict[str, Contingency]:
        return {c: self.table(c) for c in self.freq}


def count_cooccurrence(sentences: Iterable[Iterable[str]], word: str,
                       function_words=DEFAULT_FUNCTION_WORDS) -> CooccurrenceCounts:
    counts = CooccurrenceCounts(word)
    for tokens in sentences:
        counts.add(tokens, function_words)
    return counts


def association_score(table) -> float:
    """Dunning's G^2 statistic of independence for a 2x2 table."""
    a, b, c, d = table
    if min(a, b, c, d) < 0:
        raise ValueError("contingency cells must be non-negative")
    n = a + b + c + d
    if n == 0:
        raise ValueError("contingency table is empty")
    rows = (a + b, c + d)
    cols = (a + c, b + d)
    g2 = 0.0
    for obs, r, k in ((a, 0, 0), (b, 0, 1), (c, 1, 0), (d, 1, 1)):
        if obs:
            g2 += obs * math.log(obs * n / (rows[r] * cols[k]))
    return max(0.0, 2.0 * g2)


@dataclass(frozen=True)
class CwsConfig:
    min_joint: int = 3
    score_threshold: float = 10.83
    top_k: int = 200
    # drop words that co-occur less often than chance would predict
    positive_only: bool = True


@dataclass
class CooccurrenceSet:
    word: str
    members: dict[str, tuple[int, float]] = field(default_factory=dict)

    def __contains__(self, c) -> bool:
        return c in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def select_cws(counts: CooccurrenceCounts, cfg: CwsConfig = CwsConfig()) -> CooccurrenceSet:
    if cfg.min_joint < 1 or cfg.top_k < 1:
        raise ValueError("min_joint and top_k must be >= 1")
    scored = []
    for c, joint in counts.joint.items():
        if joint < cfg.min_joint:
            continue
        table = counts.table(c)
        if cfg.positive_only and table.both * table.neither <= table.target_only * table.other_only:
            continue
        score = association_score(table)
        if score >= cfg.score_threshold:
            scored.append((c, joint, score))
    scored.sort(key=lambda x: (-x[2], x[0]))
    return CooccurrenceSet(counts.target, {c: (j, s) for c, j, s in scored[: cfg.top_k]})


def extract_cws(sentences: Iterable[Iterable[str]], word: str, cfg: CwsConfig = CwsConfig(),
                function_words=DEFAULT_FUNCTION_WORDS) -> CooccurrenceSet:
    return select_cws(count_cooccurrence(sentences, word, function_words), cfg)


def save_cws(sets: Iterable[CooccurrenceSet], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for cws in sets:
            for c, (joint, score) in cws.members.items():
                fh.write(f"{cws.word}\t{c}\t{joint}\t{score!r}\n")


def load_cws(path) -> dict[str, CooccurrenceSet]:
    out: dict[str, CooccurrenceSet] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise FormatError("expected word<TAB>cooccurring<TAB>joint<TAB>score", path, line_no)
            try:
                joint, score = int(parts[2]), float(parts[3])
            except ValueError:
                raise FormatError("bad joint count or score", path, line_no) from None
            out.setdefault(parts[0], CooccurrenceSet(parts[0])).members[parts[1]] = (joint, score)
    return out
