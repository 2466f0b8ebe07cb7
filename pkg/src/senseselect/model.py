"""Count tables, smoothed parameter estimation and model persistence.

Parameters are computed exactly as rationals from integer counts and only
turned into floating-point logs once, when a model is built.  A saved model
keeps the counts rather than the probabilities, so loading reproduces the
trained parameters bit for bit.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Iterable, Mapping

from .bitext import TaggedInstance
from .corpus import CooccurrenceSet
from .errors import FormatError, UnknownWordError
from .inventory import (
    ExtendedSenseSet,
    SenseInventory,
    Taxonomy,
    extended_sense_set,
    wg,
)

FORMAT_HEADER = "# senseselect-model"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class ModelConfig:
    alpha: float = 0.5
    n1: float | None = None  # None: |S(w)|
    n2: float | None = None  # None: |C(w)| + 1
    use_ess: bool = True
    cws_restrict: bool = True

    def __post_init__(self):
        if not 0 <= self.alpha <= 1:
            raise ValueError("alpha must lie in [0, 1]")
        for name in ("n1", "n2"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class CountTables:
    """CT(w), CT(w,m) and CT(w,m,c), stored nested by word."""
    ct_w: Counter = field(default_factory=Counter)
    ct_wm: dict[str, Counter] = field(default_factory=dict)
    ct_wmc: dict[tuple[str, str], Counter] = field(default_factory=dict)

    def add(self, word: str, tag: str, context: Iterable[str]) -> None:
        self.ct_w[word] += 1
        self.ct_wm.setdefault(word, Counter())[tag] += 1
        ctx = self.ct_wmc.setdefault((word, tag), Counter())
        ctx.update(set(context))

    def wm(self, word: str, m: str) -> int:
        return self.ct_wm.get(word, {}).get(m, 0)

    def wmc(self, word: str, m: str, c: str) -> int:
        return self.ct_wmc.get((word, m), {}).get(c, 0)

    def tags(self, word: str) -> Mapping[str, int]:
        return self.ct_wm.get(word, {})

    def __add__(self, other: "CountTables") -> "CountTables":
        out = CountTables(self.ct_w + other.ct_w)
        for src in (self, other):
            for w, cnt in src.ct_wm.items():
                out.ct_wm[w] = out.ct_wm.get(w, Counter()) + cnt
            for key, cnt in src.ct_wmc.items():
                out.ct_wmc[key] = out.ct_wmc.get(key, Counter()) + cnt
        return out


def accumulate_counts(instances: Iterable[TaggedInstance], cws: Mapping[str, CooccurrenceSet],
                      cfg: ModelConfig = ModelConfig(), inv: SenseInventory | None = None) -> CountTables:
    ct = CountTables()
    for inst in instances:
        if inv is not None and inst.tag not in inv.sense_ids(inst.word):
            raise ValueError(f"tag {inst.tag!r} is not a sense of {inst.word!r}")
        context = inst.context - {inst.word}
        if cfg.cws_restrict:
            members = cws.get(inst.word)
            context = {c for c in context if members is not None and c in members}
        ct.add(inst.word, inst.tag, context)
    return ct


def _weighted_mass(t: Taxonomy, m: str, counts: Mapping[str, int], alpha: Fraction) -> Fraction:
    return sum((n * wg(t, m, m2, alpha) for m2, n in counts.items()), Fraction(0))


def estimate_prior(ct: CountTables, t: Taxonomy, word: str, m: str, space: Iterable[str],
                   cfg: ModelConfig = ModelConfig()) -> Fraction:
    """P(m|w) with hypernym-weighted counts and add-one smoothing."""
    n1 = Fraction(cfg.n1) if cfg.n1 is not None else Fraction(len(tuple(space)))
    mass = _weighted_mass(t, m, ct.tags(word), Fraction(cfg.alpha))
    return (mass + 1) / (ct.ct_w.get(word, 0) + n1)


def estimate_likelihood(ct: CountTables, t: Taxonomy, word: str, m: str, c: str,
                        cfg: ModelConfig = ModelConfig(), vocab_size: int | None = None) -> Fraction:
    """P(c|w,m) with hypernym-weighted counts and add-one smoothing.

    ``vocab_size`` (|C(w)|) is needed only when ``cfg.n2`` is unset.
    """
    if cfg.n2 is not None:
        n2 = Fraction(cfg.n2)
    elif vocab_size is not None:
        n2 = Fraction(vocab_size + 1)
    else:
        raise ValueError("either cfg.n2 or vocab_size is required")
    alpha = Fraction(cfg.alpha)
    joint = {m2: ct.wmc(word, m2, c) for m2 in ct.tags(word)}
    return (_weighted_mass(t, m, joint, alpha) + 1) / (_weighted_mass(t, m, ct.tags(word), alpha) + n2)


@dataclass
class WordModel:
    word: str
    ess: ExtendedSenseSet
    space: tuple[str, ...]
    vocab: frozenset[str]
    prior: dict[str, Fraction]
    log_prior: dict[str, float]
    log_likelihood: dict[tuple[str, str], float]
    # context words with positive unsmoothed weighted mass for some sense
    evidence: frozenset[str]


def _build_word(word: str, inv: SenseInventory, t: Taxonomy, cws: Mapping[str, CooccurrenceSet],
                ct: CountTables, cfg: ModelConfig) -> WordModel:
    ess = extended_sense_set(inv, t, word)
    space = ess.senses if cfg.use_ess else ess.base
    vocab = set(cws[word].members) if word in cws else set()
    if not cfg.cws_restrict:
        for m in ct.tags(word):
            vocab.update(ct.ct_wmc.get((word, m), ()))
    vocab.discard(word)
    prior, log_prior, log_lik = {}, {}, {}
    evidence = set()
    alpha = Fraction(cfg.alpha)
    for m in space:
        p = estimate_prior(ct, t, word, m, space, cfg)
        prior[m] = p
        log_prior[m] = math.log(p)
        for c in sorted(vocab):
            joint = {m2: ct.wmc(word, m2, c) for m2 in ct.tags(word)}
            if _weighted_mass(t, m, joint, alpha) > 0:
                evidence.add(c)
            log_lik[m, c] = math.log(estimate_likelihood(ct, t, word, m, c, cfg, len(vocab)))
    return WordModel(word, ess, space, frozenset(vocab), prior, log_prior, log_lik, frozenset(evidence))


class SenseModel:
    """Trained parameters for every modelled word, plus what produced them."""

    def __init__(self, inv: SenseInventory, taxonomy: Taxonomy, cws: Mapping[str, CooccurrenceSet],
                 counts: CountTables, config: ModelConfig, words: Iterable[str]):
        self.inventory = inv
        self.taxonomy = taxonomy
        self.cws = dict(cws)
        self.counts = counts
        self.config = config
        self.words = tuple(sorted(set(words)))
        self.entries: dict[str, WordModel] = {
            w: _build_word(w, inv, taxonomy, self.cws, counts, config) for w in self.words
        }

    def __contains__(self, word) -> bool:
        return word in self.entries

    def entry(self, word: str) -> WordModel:
        try:
            return self.entries[word]
        except KeyError:
            raise UnknownWordError(word) from None

    def parameters(self):
        """Comparable snapshot of every materialized parameter."""
        return {
            w: (e.space, e.log_prior, e.log_likelihood, e.evidence)
            for w, e in self.entries.items()
        }


def train(instances: Iterable[TaggedInstance], inv: SenseInventory, t: Taxonomy,
          cws: Mapping[str, CooccurrenceSet], cfg: ModelConfig = ModelConfig(),
          words: Iterable[str] | None = None) -> SenseModel:
    """Count and estimate.  ``words`` defaults to every ambiguous inventory
    word plus every word that occurs in ``instances``."""
    instances = list(instances)
    for inst in instances:
        if inst.word not in inv:
            raise UnknownWordError(inst.word)
    if words is None:
        words = {w for w in inv if inv.is_ambiguous(w)} | {i.word for i in instances}
    ct = accumulate_counts(instances, cws, cfg, inv)
    return SenseModel(inv, t, cws, ct, cfg, words)


# --- persistence --------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


def _parse_config(values: dict[str, str]) -> ModelConfig:
    kwargs = {}
    for f in fields(ModelConfig):
        if f.name not in values:
            continue
        raw = values[f.name]
        if f.name in ("use_ess", "cws_restrict"):
            if raw not in ("true", "false"):
                raise ValueError(f"bad boolean {raw!r}")
            kwargs[f.name] = raw == "true"
        elif raw == "none":
            kwargs[f.name] = None
        elif "/" in raw:
            kwargs[f.name] = Fraction(raw)
        else:
            try:
                kwargs[f.name] = int(raw)
            except ValueError:
                kwargs[f.name] = float(raw)
    return ModelConfig(**kwargs)


def save_model(model: SenseModel, path) -> None:
    lines = [f"{FORMAT_HEADER} {FORMAT_VERSION}", "[config]"]
    for f in fields(ModelConfig):
        lines.append(f"{f.name} = {_fmt(getattr(model.config, f.name))}")
    lines.append("[words]")
    lines.extend(model.words)
    lines.append("[inventory]")
    for word, sense_id, translations in model.inventory.rows():
        lines.append(f"{word}\t{sense_id}\t{','.join(translations)}")
    lines.append("[taxonomy]")
    lines.extend(f"{c}\t{p}" for c, p in sorted(model.taxonomy.edges))
    lines.append("[cws]")
    for w in sorted(model.cws):
        for c, (joint, score) in model.cws[w].members.items():
            lines.append(f"{w}\t{c}\t{joint}\t{score!r}")
    lines.append("[counts]")
    ct = model.counts
    for w in sorted(ct.ct_w):
        lines.append(f"w\t{w}\t{ct.ct_w[w]}")
    for w in sorted(ct.ct_wm):
        for m, n in sorted(ct.ct_wm[w].items()):
            lines.append(f"wm\t{w}\t{m}\t{n}")
    for (w, m) in sorted(ct.ct_wmc):
        for c, n in sorted(ct.ct_wmc[w, m].items()):
            lines.append(f"wmc\t{w}\t{m}\t{c}\t{n}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path) -> SenseModel:
    with open(path, encoding="utf-8") as fh:
        text = fh.read().splitlines()
    if not text or not text[0].startswith(FORMAT_HEADER):
        raise FormatError("not a model file", path, 1)
    version = text[0][len(FORMAT_HEADER):].strip()
    if version != str(FORMAT_VERSION):
        raise FormatError(f"unsupported model version {version!r}", path, 1)

    section = None
    config: dict[str, str] = {}
    words: list[str] = []
    inv_rows, edges = [], []
    cws: dict[str, CooccurrenceSet] = {}
    ct = CountTables()
    try:
        for line_no, line in enumerate(text[1:], 2):
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1]
                continue
            parts = line.split("\t")
            if section == "config":
                key, _, value = line.partition("=")
                config[key.strip()] = value.strip()
            elif section == "words":
                words.append(line)
            elif section == "inventory":
                word, sense_id, trans = parts
                inv_rows.append((word, sense_id, trans.split(",")))
            elif section == "taxonomy":
                child, parent = parts
                edges.append((child, parent))
            elif section == "cws":
                w, c, joint, score = parts
                cws.setdefault(w, CooccurrenceSet(w)).members[c] = (int(joint), float(score))
            elif section == "counts":
                kind = parts[0]
                if kind == "w" and len(parts) == 3:
                    ct.ct_w[parts[1]] = int(parts[2])
                elif kind == "wm" and len(parts) == 4:
                    ct.ct_wm.setdefault(parts[1], Counter())[parts[2]] = int(parts[3])
                elif kind == "wmc" and len(parts) == 5:
                    ct.ct_wmc.setdefault((parts[1], parts[2]), Counter())[parts[3]] = int(parts[4])
                else:
                    raise ValueError(f"bad count record {kind!r}")
            else:
                raise ValueError("line outside a known section")
        inv = SenseInventory.from_rows(inv_rows)
        return SenseModel(inv, Taxonomy(edges), cws, ct, _parse_config(config), words)
    except (ValueError, TypeError) as exc:
        where = locals().get("line_no")
        raise FormatError(f"corrupt model file: {exc}", path, where) from None
