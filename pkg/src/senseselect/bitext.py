"""Training-data extraction from a bilingual corpus.

Sentences are paired by a monotone 1-to-1 anchor chain, then each occurrence
of an ambiguous source word is sense-tagged when exactly one of its senses
has a translation in the paired target sentence.  Anything uncertain is
dropped: recall is traded away for precision at every step.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import DEFAULT_FUNCTION_WORDS, content_filter, tokenize
from .errors import FormatError
from .inventory import SenseInventory


@dataclass(frozen=True)
class BitextPair:
    source: tuple[str, ...]
    target: tuple[str, ...]
    source_index: int | None = None
    target_index: int | None = None


@dataclass(frozen=True)
class TaggedInstance:
    word: str
    tag: str
    context: frozenset[str]


@dataclass(frozen=True)
class AlignConfig:
    min_anchor_count: int = 2
    max_length_ratio: float = 3.0


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0


def _all_translations(inv: SenseInventory) -> dict[str, frozenset[str]]:
    return {w: frozenset().union(*(s.translations for s in inv.senses(w))) for w in inv}


def anchor_count(source: Iterable[str], target: Iterable[str], inv: SenseInventory) -> int:
    """Number of distinct source words with some translation present in ``target``."""
    trans = _all_translations(inv)
    tgt = set(target)
    return sum(1 for w in set(source) if w in trans and not trans[w].isdisjoint(tgt))


def _length_ok(n: int, m: int, max_ratio: float) -> bool:
    if n == 0 or m == 0:
        return False
    return max(n, m) / min(n, m) <= max_ratio


def align_sentences(source_doc: Sequence[Sequence[str]], target_doc: Sequence[Sequence[str]],
                    inv: SenseInventory, cfg: AlignConfig = AlignConfig()) -> list[BitextPair]:
    """Pick the longest monotone chain of qualifying 1-1 pairs, preferring
    more anchors among equally long chains.

    A pair qualifies when it has at least ``cfg.min_anchor_count`` anchors and
    its token-length ratio is within ``cfg.max_length_ratio``.
    """
    n, m = len(source_doc), len(target_doc)
    if n == 0 or m == 0:
        return []
    trans = _all_translations(inv)
    tgt_sets = [set(t) for t in target_doc]
    weight = [[0] * m for _ in range(n)]
    for i, src in enumerate(source_doc):
        anchors = [trans[w] for w in set(src) if w in trans]
        if len(anchors) < max(cfg.min_anchor_count, 1):
            continue
        for j, tgt in enumerate(tgt_sets):
            if not _length_ok(len(src), len(target_doc[j]), cfg.max_length_ratio):
                continue
            k = sum(1 for a in anchors if not a.isdisjoint(tgt))
            if k >= max(cfg.min_anchor_count, 1):
                weight[i][j] = k

    # best[i][j]: (pair count, anchor total) of the best chain within
    # source[:i] x target[:j]; longest chain first, anchors break ties
    best = [[(0, 0)] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row, prev = best[i], best[i - 1]
        wrow = weight[i - 1]
        for j in range(1, m + 1):
            v = max(prev[j], row[j - 1])
            w = wrow[j - 1]
            if w:
                diag = prev[j - 1]
                v = max(v, (diag[0] + 1, diag[1] + w))
            row[j] = v

    pairs = []
    i, j = n, m
    while i > 0 and j > 0:
        w = weight[i - 1][j - 1]
        diag = best[i - 1][j - 1]
        if w and best[i][j] == (diag[0] + 1, diag[1] + w):
            pairs.append(BitextPair(tuple(source_doc[i - 1]), tuple(target_doc[j - 1]), i - 1, j - 1))
            i, j = i - 1, j - 1
        elif best[i][j] == best[i - 1][j]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs


def tag_occurrence(pair: BitextPair, word: str, inv: SenseInventory) -> str | None:
    """The unique sense of ``word`` with a translation in the target, if any."""
    tgt = set(pair.target)
    matched = [s.id for s in inv.senses(word) if not s.translations.isdisjoint(tgt)]
    return matched[0] if len(matched) == 1 else None


def extract_training(bitext: Iterable[BitextPair], inv: SenseInventory,
                     function_words=DEFAULT_FUNCTION_WORDS,
                     words: Iterable[str] | None = None) -> list[TaggedInstance]:
    """One instance per resolvable occurrence of a target word.

    ``words`` defaults to every ambiguous word of the inventory.
    """
    targets = set(words) if words is not None else {w for w in inv if inv.is_ambiguous(w)}
    out = []
    for pair in bitext:
        content = frozenset(content_filter(pair.source, function_words))
        for tok in pair.source:
            if tok not in targets or tok not in inv:
                continue
            tag = tag_occurrence(pair, tok, inv)
            if tag is not None:
                out.append(TaggedInstance(tok, tag, content - {tok}))
    return out


def _round_half_up(x: float) -> int:
    return int(x + 0.5)


def split(instances: Sequence[TaggedInstance], spec: SplitSpec = SplitSpec()):
    """Stratified seeded split per (word, tag); input order is kept on both sides."""
    if not 0 < spec.train_fraction < 1:
        raise ValueError("train_fraction must be in (0, 1)")
    strata: dict[tuple[str, str], list[int]] = defaultdict(list)
    for idx, inst in enumerate(instances):
        strata[inst.word, inst.tag].append(idx)
    train_idx = set()
    for (word, tag), idxs in strata.items():
        rng = random.Random(f"{spec.seed}\t{word}\t{tag}")
        perm = idxs[:]
        rng.shuffle(perm)
        train_idx.update(perm[: _round_half_up(spec.train_fraction * len(perm))])
    train = [inst for i, inst in enumerate(instances) if i in train_idx]
    test = [inst for i, inst in enumerate(instances) if i not in train_idx]
    return train, test


# --- file formats -------------------------------------------------------

def read_sentences(path) -> list[list[str]]:
    with open(path, encoding="utf-8") as fh:
        return [tokenize(line) for line in fh]


def read_pairs(path) -> list[BitextPair]:
    """Pre-aligned ``source<TAB>target`` lines."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError("expected source<TAB>target", path, line_no)
            src, tgt = tokenize(parts[0]), tokenize(parts[1])
            if src and tgt:
                pairs.append(BitextPair(tuple(src), tuple(tgt), line_no - 1, line_no - 1))
    return pairs


def save_instances(instances: Iterable[TaggedInstance], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for inst in instances:
            fh.write(f"{inst.word}\t{inst.tag}\t{','.join(sorted(inst.context))}\n")


def load_instances(path) -> list[TaggedInstance]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 2:
                parts.append("")
            if len(parts) != 3 or not parts[0] or not parts[1]:
                raise FormatError("expected word<TAB>sense<TAB>context", path, line_no)
            ctx = frozenset(c for c in parts[2].split(",") if c) - {parts[0]}
            out.append(TaggedInstance(parts[0], parts[1], ctx))
    return out
