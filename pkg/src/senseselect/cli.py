"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error (bad or missing files).
Every subcommand accepts ``--config FILE`` holding ``key = value`` lines;
explicit flags take precedence over the file.
"""
from __future__ import annotations

import argparse
import contextlib
import sys

from . import __version__
from .bitext import (
    AlignConfig,
    SplitSpec,
    align_sentences,
    extract_training,
    load_instances,
    read_pairs,
    read_sentences,
    save_instances,
)
from .corpus import (
    DEFAULT_FUNCTION_WORDS,
    CwsConfig,
    count_cooccurrence,
    load_cws,
    load_function_words,
    select_cws,
)
from .disambig import format_decision, tag_file
from .errors import FormatError, UnknownSenseError, UnknownWordError
from .experiment import evaluate, run_experiment
from .inventory import Taxonomy, load_inventory, load_taxonomy
from .metrics import aggregate, load_counts
from .model import ModelConfig, load_model, save_model, train
from .synth import SynthSpec, generate_synthetic, write_synthetic


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def parse_abstain(text: str) -> bool | None:
    return None if text.strip().lower() == "auto" else parse_bool(text)


def read_config(path) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise FormatError("expected key = value", path, line_no)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _function_words(path):
    return load_function_words(path) if path else DEFAULT_FUNCTION_WORDS


def _words(arg, inv=None):
    if arg:
        return [w.strip() for w in arg.split(",") if w.strip()]
    if inv is not None:
        return sorted(w for w in inv if inv.is_ambiguous(w))
    raise UsageError("--words or --dictionary is required")


def _model_config(args, use_ess=None) -> ModelConfig:
    return ModelConfig(
        alpha=args.alpha,
        n1=args.n1,
        n2=args.n2,
        use_ess=args.use_ess if use_ess is None else use_ess,
        cws_restrict=args.cws_restrict,
    )


# --- subcommands --------------------------------------------------------

def cmd_cws(args) -> int:
    inv = load_inventory(args.dictionary) if args.dictionary else None
    words = _words(args.words, inv)
    fw = _function_words(args.function_words)
    sentences = read_sentences(args.corpus)
    cfg = CwsConfig(args.min_joint, args.threshold, args.top_k)
    with _output(args.output) as out:
        for w in words:
            cws = select_cws(count_cooccurrence(sentences, w, fw), cfg)
            for c, (joint, score) in cws.members.items():
                out.write(f"{w}\t{c}\t{joint}\t{score!r}\n")
    return 0


def cmd_extract(args) -> int:
    inv = load_inventory(args.dictionary)
    if args.pairs:
        pairs = read_pairs(args.pairs)
    elif args.source and args.target:
        cfg = AlignConfig(args.min_anchors, args.max_ratio)
        pairs = align_sentences(read_sentences(args.source), read_sentences(args.target), inv, cfg)
    else:
        raise UsageError("extract needs --pairs or both --source and --target")
    words = _words(args.words, inv)
    instances = extract_training(pairs, inv, _function_words(args.function_words), words)
    if args.output in (None, "-"):
        for inst in instances:
            sys.stdout.write(f"{inst.word}\t{inst.tag}\t{','.join(sorted(inst.context))}\n")
    else:
        save_instances(instances, args.output)
    print(f"{len(pairs)} aligned pairs, {len(instances)} tagged instances", file=sys.stderr)
    return 0


def _training_inputs(args):
    inv = load_inventory(args.dictionary)
    taxonomy = load_taxonomy(args.taxonomy) if args.taxonomy else Taxonomy()
    cws = load_cws(args.cws) if args.cws else {}
    return inv, taxonomy, cws


def cmd_train(args) -> int:
    if args.output in (None, "-"):
        raise UsageError("train needs --output MODEL_FILE")
    inv, taxonomy, cws = _training_inputs(args)
    model = train(load_instances(args.instances), inv, taxonomy, cws, _model_config(args))
    save_model(model, args.output)
    return 0


def cmd_tag(args) -> int:
    model = load_model(args.model)
    with _output(args.output) as out:
        for line_no, d in tag_file(model, args.corpus, args.abstain):
            out.write(format_decision(line_no, d) + "\n")
    return 0


def cmd_eval(args) -> int:
    if args.counts:
        counts = load_counts(args.counts)
    elif args.model and args.instances:
        model = load_model(args.model)
        counts, _ = evaluate(model, load_instances(args.instances), args.abstain)
    else:
        raise UsageError("eval needs --counts, or --model with --instances")
    with _output(args.output) as out:
        out.write(aggregate(counts).format_table() + "\n")
    return 0


def cmd_experiment(args) -> int:
    inv, taxonomy, cws = _training_inputs(args)
    result = run_experiment(
        load_instances(args.instances), inv, taxonomy, cws,
        baseline=_model_config(args, use_ess=False),
        ess=_model_config(args, use_ess=True),
        split_spec=SplitSpec(args.train_fraction, args.seed),
        baseline_abstain=args.baseline_abstain,
        ess_abstain=args.ess_abstain,
    )
    with _output(args.output) as out:
        out.write("# experiment 1: base senses only\n")
        out.write(result.baseline.format_table() + "\n\n")
        out.write("# experiment 2: extended sense sets\n")
        out.write(result.ess.format_table() + "\n\n")
        out.write(f"recall_delta={result.recall_delta:.1f}\n")
    return 0


def cmd_synth(args) -> int:
    spec = SynthSpec(
        words=args.words, senses=args.senses, depth=args.depth,
        vocab_per_sense=args.vocab_per_sense, context_size=args.context_size,
        sentences_per_sense=args.sentences_per_sense, overlap=args.overlap,
        sparsity=args.sparsity, background_sentences=args.background_sentences, seed=args.seed,
    )
    paths = write_synthetic(generate_synthetic(spec), args.output_dir)
    for name, path in paths.items():
        print(f"{name}\t{path}")
    return 0


# --- parser -------------------------------------------------------------

def _add_model_options(p):
    p.add_argument("--alpha", type=float, default=0.5, help="hypernym count-transfer factor")
    p.add_argument("--n1", type=float, default=None, help="prior smoothing constant (default |S(w)|)")
    p.add_argument("--n2", type=float, default=None, help="likelihood smoothing constant (default |C(w)|+1)")
    p.add_argument("--cws-restrict", type=parse_bool, default=True)


def _add_training_inputs(p):
    p.add_argument("--instances", required=True)
    p.add_argument("--dictionary", required=True)
    p.add_argument("--taxonomy")
    p.add_argument("--cws")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="file of key = value defaults")
    common.add_argument("--output", "-o", default="-")

    parser = _Parser(prog="senseselect", description="Noun sense selection from co-occurrence context.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("cws", parents=[common], help="extract co-occurrence word sets")
    p.add_argument("--corpus", required=True, help="raw text, one sentence per line")
    p.add_argument("--words", help="comma-separated target words")
    p.add_argument("--dictionary", help="take target words from this dictionary")
    p.add_argument("--function-words")
    p.add_argument("--min-joint", type=int, default=3)
    p.add_argument("--threshold", type=float, default=10.83)
    p.add_argument("--top-k", type=int, default=200)
    p.set_defaults(func=cmd_cws)

    p = sub.add_parser("extract", parents=[common], help="sense-tag training data from a bitext")
    p.add_argument("--dictionary", required=True)
    p.add_argument("--pairs", help="pre-aligned source<TAB>target file")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--words")
    p.add_argument("--function-words")
    p.add_argument("--min-anchors", type=int, default=2)
    p.add_argument("--max-ratio", type=float, default=3.0)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", parents=[common], help="train a model file")
    _add_training_inputs(p)
    _add_model_options(p)
    p.add_argument("--use-ess", type=parse_bool, default=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tag", parents=[common], help="disambiguate a corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--abstain", type=parse_abstain, default=None, help="auto, true or false")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("eval", parents=[common], help="recall/precision/F report")
    p.add_argument("--counts", help="word<TAB>sense<TAB>gold<TAB>estimated<TAB>correct file")
    p.add_argument("--model")
    p.add_argument("--instances")
    p.add_argument("--abstain", type=parse_abstain, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("experiment", parents=[common], help="paired baseline vs ESS run")
    _add_training_inputs(p)
    _add_model_options(p)
    p.add_argument("--train-fraction", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--baseline-abstain", type=parse_abstain, default=None)
    p.add_argument("--ess-abstain", type=parse_abstain, default=None)
    p.set_defaults(func=cmd_experiment, use_ess=None)

    p = sub.add_parser("synth", parents=[common], help="write synthetic fixture files")
    p.add_argument("--output-dir", required=True)
    for name, typ in (("words", int), ("senses", int), ("depth", int), ("vocab-per-sense", int),
                      ("context-size", int), ("sentences-per-sense", int), ("overlap", float),
                      ("sparsity", float), ("background-sentences", int), ("seed", int)):
        p.add_argument(f"--{name}", type=typ,
                       default=getattr(SynthSpec(), name.replace("-", "_")))
    p.set_defaults(func=cmd_synth)
    return parser


def _apply_config(parser, argv) -> None:
    """Install config-file values as subparser defaults, below explicit flags."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    command = next((a for a in argv if a in sub_action.choices), None)
    if command is None:
        return
    subparser = sub_action.choices[command]
    dests = {a.dest: a for a in subparser._actions}
    for key in values:
        if key not in dests or key in ("config", "help"):
            raise UsageError(f"unknown config key {key!r} for {command}")
    for key, raw in values.items():
        action = dests[key]
        # defaults bypass `type`, so convert here; also relaxes required=True
        try:
            value = action.type(raw) if action.type else raw
        except (ValueError, argparse.ArgumentTypeError):
            raise UsageError(f"bad value for config key {key!r}: {raw!r}") from None
        subparser.set_defaults(**{key: value})
        action.required = False


def cli_main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if not argv:
            parser.print_usage(sys.stderr)
            return 1
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            return 1
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else 0
    except (FormatError, OSError, UnknownWordError, UnknownSenseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_main())
