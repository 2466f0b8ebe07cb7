"""Paired evaluation of a baseline (base senses only) and an ESS model."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .bitext import SplitSpec, TaggedInstance, split
from .corpus import CooccurrenceSet
from .disambig import Decision, disambiguate
from .inventory import SenseInventory, Taxonomy
from .metrics import EvalReport, SenseCounts, aggregate
from .model import ModelConfig, SenseModel, train


def evaluate(model: SenseModel, instances: Sequence[TaggedInstance],
             abstain: bool | None = None) -> tuple[SenseCounts, list[Decision]]:
    counts = SenseCounts()
    decisions = []
    for inst in instances:
        d = disambiguate(model, inst.word, inst.context, abstain)
        decisions.append(d)
        counts.record(inst.word, inst.tag, None if d.abstained else d.chosen)
    return counts, decisions


@dataclass
class ExperimentResult:
    baseline: EvalReport
    ess: EvalReport
    recall_delta: float
    # indices into the test split of items each configuration decided on
    baseline_decided: frozenset[int]
    ess_decided: frozenset[int]
    test_size: int


def run_experiment(instances: Sequence[TaggedInstance], inv: SenseInventory, taxonomy: Taxonomy,
                   cws: Mapping[str, CooccurrenceSet],
                   baseline: ModelConfig = ModelConfig(use_ess=False),
                   ess: ModelConfig = ModelConfig(use_ess=True),
                   split_spec: SplitSpec = SplitSpec(),
                   baseline_abstain: bool | None = None,
                   ess_abstain: bool | None = None) -> ExperimentResult:
    train_set, test_set = split(instances, split_spec)
    if not test_set:
        raise ValueError("test split is empty")
    reports, decided = [], []
    for cfg, abstain in ((baseline, baseline_abstain), (ess, ess_abstain)):
        model = train(train_set, inv, taxonomy, cws, cfg)
        counts, decisions = evaluate(model, test_set, abstain)
        reports.append(aggregate(counts))
        decided.append(frozenset(i for i, d in enumerate(decisions) if not d.abstained))
    delta = (reports[1].micro_recall or 0.0) - (reports[0].micro_recall or 0.0)
    return ExperimentResult(reports[0], reports[1], delta, decided[0], decided[1], len(test_set))
