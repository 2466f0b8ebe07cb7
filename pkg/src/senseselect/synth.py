"""Seeded synthetic sense-tagged data for desk-scale experiments.

Every generated word has ``senses`` senses, each with its own hypernym chain
of length ``depth`` that ends in a root shared by all senses (so the root is
never part of an extended sense set).  Context words come from per-sense
vocabularies, optionally sharing a common pool (``overlap``).  A ``sparsity``
fraction of items get contexts made only of one-off words, which no training
item can ever supply evidence for.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .bitext import TaggedInstance, save_instances
from .corpus import CooccurrenceSet, CwsConfig, extract_cws, save_cws
from .inventory import SenseInventory, Taxonomy, save_inventory, save_taxonomy

ROOT = "entity"


@dataclass(frozen=True)
class SynthSpec:
    words: int = 1
    senses: int = 3
    depth: int = 2
    vocab_per_sense: int = 20
    context_size: int = 5
    sentences_per_sense: int = 625
    overlap: float = 0.0
    sparsity: float = 0.0
    background_sentences: int = 1000
    seed: int = 0

    def validate(self) -> None:
        if self.words < 1 or self.senses < 1 or self.depth < 0:
            raise ValueError("words and senses must be >= 1, depth >= 0")
        if self.context_size < 1 or self.sentences_per_sense < 1:
            raise ValueError("context_size and sentences_per_sense must be >= 1")
        if self.vocab_per_sense < self.context_size:
            raise ValueError("vocab_per_sense is smaller than context_size")
        if not 0 <= self.overlap <= 1 or not 0 <= self.sparsity <= 1:
            raise ValueError("overlap and sparsity must lie in [0, 1]")
        if self.overlap * self.vocab_per_sense > self.vocab_per_sense - 1 and self.senses > 1:
            raise ValueError("overlap leaves no sense-specific vocabulary")


@dataclass
class SyntheticData:
    instances: list[TaggedInstance]
    inventory: SenseInventory
    taxonomy: Taxonomy
    cws: dict[str, CooccurrenceSet]
    sentences: list[list[str]]


def generate_synthetic(spec: SynthSpec) -> SyntheticData:
    spec.validate()
    rng = random.Random(spec.seed)
    rows, edges, instances, sentences = [], [], [], []
    hapax = 0
    n_shared = round(spec.overlap * spec.vocab_per_sense)
    for wi in range(spec.words):
        word = f"w{wi}"
        shared = [f"{word}_shared{j}" for j in range(n_shared)]
        items = []
        for k in range(spec.senses):
            sense = f"{word}_s{k}"
            rows.append((word, sense, [f"tr_{word}_{k}"]))
            chain = [sense] + [f"{sense}_h{d}" for d in range(1, spec.depth + 1)] + [ROOT]
            edges.extend(zip(chain, chain[1:]))
            vocab = shared + [f"{sense}_v{j}" for j in range(spec.vocab_per_sense - n_shared)]
            n = spec.sentences_per_sense
            sparse = set(rng.sample(range(n), round(spec.sparsity * n)))
            for i in range(n):
                if i in sparse:
                    context = [f"u{hapax + j}" for j in range(spec.context_size)]
                    hapax += spec.context_size
                else:
                    context = rng.sample(vocab, spec.context_size)
                items.append(TaggedInstance(word, sense, frozenset(context)))
        rng.shuffle(items)
        instances.extend(items)
        sentences.extend([word, *sorted(i.context)] for i in items)
    for b in range(spec.background_sentences):
        sentences.append([f"bg{rng.randrange(4 * spec.vocab_per_sense)}"
                          for _ in range(spec.context_size)])

    inv = SenseInventory.from_rows(rows)
    cfg = CwsConfig()
    cws = {w: extract_cws(sentences, w, cfg, frozenset()) for w in inv}
    return SyntheticData(instances, inv, Taxonomy(edges), cws, sentences)


def write_synthetic(data: SyntheticData, outdir) -> dict[str, Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "instances": out / "instances.tsv",
        "dictionary": out / "dictionary.tsv",
        "taxonomy": out / "taxonomy.tsv",
        "cws": out / "cws.tsv",
        "corpus": out / "corpus.txt",
    }
    save_instances(data.instances, paths["instances"])
    save_inventory(data.inventory, paths["dictionary"])
    save_taxonomy(data.taxonomy, paths["taxonomy"])
    save_cws([data.cws[w] for w in sorted(data.cws)], paths["cws"])
    paths["corpus"].write_text("".join(" ".join(s) + "\n" for s in data.sentences), encoding="utf-8")
    return paths
