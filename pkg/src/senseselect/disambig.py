"""Sense selection: argmax of log prior plus summed log likelihoods of context
words that belong to the word's co-occurrence set."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .corpus import tokenize
from .errors import UnknownSenseError
from .inventory import base_sense_of
from .model import SenseModel


@dataclass(frozen=True)
class Decision:
    word: str
    chosen: str
    raw_winner: str
    scores: dict
    abstained: bool
    evidence: frozenset

    @property
    def score(self) -> float:
        return self.scores[self.raw_winner]


def resolve_abstain(model: SenseModel, abstain: bool | None) -> bool:
    """``None`` means the default: abstain only for models without ESS."""
    return (not model.config.use_ess) if abstain is None else abstain


def score_sense(model: SenseModel, word: str, m: str, context: Iterable[str]) -> float:
    entry = model.entry(word)
    if m not in entry.log_prior:
        raise UnknownSenseError(m, word)
    score = entry.log_prior[m]
    for c in sorted(set(context) & entry.vocab):
        score += entry.log_likelihood[m, c]
    return score


def disambiguate(model: SenseModel, word: str, sentence: Iterable[str],
                 abstain: bool | None = None) -> Decision:
    entry = model.entry(word)
    context = set(sentence)
    context.discard(word)
    scores = {m: score_sense(model, word, m, context) for m in entry.space}
    # ties: higher prior, then lexicographically smallest id
    raw = min(entry.space, key=lambda m: (-scores[m], -entry.prior[m], m))
    evidence = frozenset(context & entry.evidence)
    abstained = resolve_abstain(model, abstain) and not evidence
    return Decision(word, base_sense_of(entry.ess, raw), raw, scores, abstained, evidence)


def tag_lines(model: SenseModel, lines: Iterable[str],
              abstain: bool | None = None) -> Iterator[tuple[int, Decision]]:
    """One decision per occurrence of a modelled word; line numbers start at 1."""
    for line_no, line in enumerate(lines, 1):
        tokens = tokenize(line)
        for tok in tokens:
            if tok in model.entries:
                yield line_no, disambiguate(model, tok, tokens, abstain)


def tag_file(model: SenseModel, path, abstain: bool | None = None) -> Iterator[tuple[int, Decision]]:
    with open(path, encoding="utf-8") as fh:
        yield from tag_lines(model, fh, abstain)


def format_decision(line_no: int, d: Decision) -> str:
    log10 = d.score / math.log(10)
    return f"{line_no}\t{d.word}\t{d.chosen}\t{d.raw_winner}\t{str(d.abstained).lower()}\t{log10:.6f}"
