from pathlib import Path

import pytest

from senseselect.bitext import load_instances
from senseselect.cli import cli_main
from senseselect.corpus import load_cws
from senseselect.experiment import evaluate
from senseselect.metrics import aggregate
from senseselect.model import load_model

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = cli_main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_no_arguments(capsys):
    code, out, err = run(capsys)
    assert code == 1
    assert "usage" in err


def test_unknown_subcommand_and_flag(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "eval", "--bogus")[0] == 1


def test_missing_file_is_data_error(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "--counts", tmp_path / "nope.tsv")
    assert code == 2
    assert "error" in err


def test_eval_baseline_counts(capsys):
    code, out, _ = run(capsys, "eval", "--counts", FIXTURES / "baseline_counts.tsv")
    assert code == 0
    assert "micro_recall=56.9;micro_precision=98.4;micro_f=72.1" in out


def test_eval_ess_counts(capsys):
    code, out, _ = run(capsys, "eval", "--counts", FIXTURES / "ess_counts.tsv")
    assert "micro_recall=96.1;micro_precision=96.1;micro_f=96.1" in out


@pytest.fixture
def synth_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "synth", "--output-dir", tmp_path / "s", "--sentences-per-sense", 80,
                       "--sparsity", 0.4, "--seed", 3)
    assert code == 0
    return tmp_path / "s"


def test_train_then_eval_matches_library(capsys, synth_dir, tmp_path):
    model_path = tmp_path / "base.model"
    code, _, _ = run(capsys, "train", "--instances", synth_dir / "instances.tsv",
                     "--dictionary", synth_dir / "dictionary.tsv", "--taxonomy", synth_dir / "taxonomy.tsv",
                     "--cws", synth_dir / "cws.tsv", "--use-ess=false", "-o", model_path)
    assert code == 0
    code, out, _ = run(capsys, "eval", "--model", model_path, "--instances", synth_dir / "instances.tsv")
    assert code == 0
    model = load_model(model_path)
    assert not model.config.use_ess
    counts, _ = evaluate(model, load_instances(synth_dir / "instances.tsv"))
    assert aggregate(counts).summary_line() in out


def test_config_file_and_flag_precedence(capsys, synth_dir, tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text(
        f"instances = {synth_dir / 'instances.tsv'}\n"
        f"dictionary = {synth_dir / 'dictionary.tsv'}\n"
        f"taxonomy = {synth_dir / 'taxonomy.tsv'}\n"
        f"cws = {synth_dir / 'cws.tsv'}\n"
        "use-ess = false\n"
        "alpha = 0.25\n"
    )
    out_model = tmp_path / "m.model"
    assert run(capsys, "train", "--config", cfg, "--alpha", "0.75", "-o", out_model)[0] == 0
    model = load_model(out_model)
    assert model.config.alpha == 0.75 and model.config.use_ess is False
    cfg.write_text("no_such_key = 1\n")
    assert run(capsys, "train", "--config", cfg, "-o", out_model)[0] == 1


def test_experiment_command(capsys, synth_dir):
    code, out, _ = run(capsys, "experiment", "--instances", synth_dir / "instances.tsv",
                       "--dictionary", synth_dir / "dictionary.tsv", "--taxonomy", synth_dir / "taxonomy.tsv",
                       "--cws", synth_dir / "cws.tsv", "--seed", 1)
    assert code == 0
    assert out.count("micro_recall=") == 2
    assert "recall_delta=" in out


def test_cws_extract_tag_pipeline(capsys, tmp_path):
    (tmp_path / "dict.tsv").write_text(
        "bank\tenterprise\teunhaeng\nbank\tshore\tgangbyeon\n"
        "river\triver\tgang\nloan\tloan\tdaechul\nboat\tboat\tbae\nmoney\tmoney\tdon\n"
    )
    src = ["The bank gave a loan and money."] * 4 + ["A boat by the bank of the river."] * 4
    tgt = ["eunhaeng daechul don juotda"] * 4 + ["gang gangbyeon bae"] * 4
    (tmp_path / "en.txt").write_text("\n".join(src) + "\n")
    (tmp_path / "ko.txt").write_text("\n".join(tgt) + "\n")
    (tmp_path / "raw.txt").write_text("\n".join(src + ["Nothing else here today."] * 20) + "\n")

    code, _, err = run(capsys, "extract", "--dictionary", tmp_path / "dict.tsv", "--source", tmp_path / "en.txt",
                       "--target", tmp_path / "ko.txt", "-o", tmp_path / "inst.tsv")
    assert code == 0 and "8 tagged instances" in err
    assert {i.tag for i in load_instances(tmp_path / "inst.tsv")} == {"enterprise", "shore"}

    code, _, _ = run(capsys, "cws", "--corpus", tmp_path / "raw.txt", "--dictionary", tmp_path / "dict.tsv",
                     "--min-joint", 2, "--threshold", 1, "-o", tmp_path / "cws.tsv")
    assert code == 0
    assert {"river", "loan"} <= set(load_cws(tmp_path / "cws.tsv")["bank"])

    code, _, _ = run(capsys, "train", "--instances", tmp_path / "inst.tsv", "--dictionary", tmp_path / "dict.tsv",
                     "--cws", tmp_path / "cws.tsv", "-o", tmp_path / "m.model")
    assert code == 0
    (tmp_path / "new.txt").write_text("The bank near the river.\nno ambiguity\nA bank loan.\n")
    code, out, _ = run(capsys, "tag", "--model", tmp_path / "m.model", "--corpus", tmp_path / "new.txt")
    rows = [line.split("\t") for line in out.splitlines()]
    assert [(r[0], r[1], r[2]) for r in rows] == [("1", "bank", "shore"), ("3", "bank", "enterprise")]


def test_train_requires_output(capsys, synth_dir):
    code, _, _ = run(capsys, "train", "--instances", synth_dir / "instances.tsv",
                     "--dictionary", synth_dir / "dictionary.tsv")
    assert code == 1


def test_corrupt_model_is_data_error(capsys, tmp_path):
    (tmp_path / "m.model").write_text("# senseselect-model 7\n")
    (tmp_path / "c.txt").write_text("x\n")
    assert run(capsys, "tag", "--model", tmp_path / "m.model", "--corpus", tmp_path / "c.txt")[0] == 2
