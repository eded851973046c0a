import pytest

from conftest import ADJ_F, DET_F, NOUN_F, NOUN_M, ADJ_M, DET_M
from fstagger.cli import main
from fstagger.corpus import read_tagged_corpus
from fstagger.model import load_model


@pytest.fixture(scope="module")
def work(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    assert main(["generate", "--tokens", "1200", "--seed", "5", "--output", str(d / "train.txt")]) == 0
    assert main(["generate", "--tokens", "150", "--seed", "6", "--output", str(d / "test.txt")]) == 0
    assert main(["train", "--corpus", str(d / "train.txt"), "--model", str(d / "m.json"),
                 "--method", "3"]) == 0
    return d


def test_generate_to_stdout_is_deterministic(capsys):
    main(["generate", "--tokens", "50", "--seed", "2"])
    one = capsys.readouterr().out
    main(["generate", "--tokens", "50", "--seed", "2"])
    assert capsys.readouterr().out == one
    sents, _ = read_tagged_corpus(one)
    assert sum(map(len, sents)) == 50


def test_tag_round_trips_through_reader(work, capsys):
    out = work / "tagged.txt"
    assert main(["tag", "--model", str(work / "m.json"), "--input", str(work / "test.txt"),
                 "--output", str(out)]) == 0
    tagged, _ = read_tagged_corpus(out.read_text(encoding="utf-8"))
    gold, _ = read_tagged_corpus((work / "test.txt").read_text(encoding="utf-8"))
    assert [s.words for s in tagged] == [s.words for s in gold]


def test_tag_log_probs_and_empty_input(work, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    out = tmp_path / "o.txt"
    assert main(["tag", "--model", str(work / "m.json"), "--input", str(empty), "--output", str(out)]) == 0
    assert out.read_text() == ""
    assert main(["tag", "--model", str(work / "m.json"), "--input", str(work / "test.txt"),
                 "--output", str(out), "--log-probs", "--order", "1"]) == 0
    text = out.read_text(encoding="utf-8")
    n_sents = len(read_tagged_corpus((work / "test.txt").read_text(encoding="utf-8"))[0])
    assert text.count("# log_prob=") == n_sents


def test_eval_single_tagger_one_row(work, capsys):
    assert main(["eval", "--model", str(work / "m.json"), "--corpus", str(work / "test.txt"),
                 "--taggers", "fsT3", "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and lines[1].startswith("fsT3\t")


def test_eval_default_and_breakdown(work, capsys):
    assert main(["eval", "--model", str(work / "m.json"), "--corpus", str(work / "test.txt"),
                 "--breakdown"]) == 0
    out = capsys.readouterr().out
    for name in ("tT1", "tT2", "lpT", "fsT3"):
        assert f"\n{name} " in out
    assert "pos=" in out and "average ambiguity" in out


def test_eval_unknown_tagger_exits_1(work, capsys):
    assert main(["eval", "--model", str(work / "m.json"), "--corpus", str(work / "test.txt"),
                 "--taggers", "fsT2"]) == 1  # model has no method-2 PFRs
    assert "fstagger eval" in capsys.readouterr().err


def test_stats_default_buckets(work, capsys):
    assert main(["stats", "--corpus", str(work / "train.txt"), "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [ln.split("\t")[0] for ln in lines[1:]] == [">= 128", "64 - 127", "32 - 63", "16 - 31",
                                                       "8 - 15", "4 - 7", "2 - 3", "1"]
    assert main(["stats", "--corpus", str(work / "train.txt")]) == 0
    assert "distinct trigrams:" in capsys.readouterr().out


def _agreement_corpus(path):
    rows = [((DET_F, NOUN_F, ADJ_F), 30), ((DET_M, NOUN_M, ADJ_M), 30), ((DET_F, NOUN_F), 10)]
    lines = []
    for k, (tags, n) in enumerate(rows):
        for _ in range(n):
            lines += [f"w{k}{i}\t{t}" for i, t in enumerate(tags)] + [""]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def test_explain_prints_chain(tmp_path, capsys):
    corpus = tmp_path / "agr.txt"
    _agreement_corpus(corpus)
    model = tmp_path / "agr.json"
    assert main(["train", "--corpus", str(corpus), "--model", str(model), "--method", "3",
                 "--min-context-freq", "0"]) == 0
    capsys.readouterr()
    assert main(["explain", "--model", str(model), DET_F, NOUN_F, ADJ_F]) == 0
    out = capsys.readouterr().out
    steps = [ln for ln in out.splitlines() if ln.startswith("  p(")]
    assert [s.split()[0] for s in steps] == ["p(0pos:ADJ", "p(0gen:FEM", "p(0num:SG"]
    assert "product =" in out


def test_explain_errors(work, capsys):
    m = str(work / "m.json")
    assert main(["explain", "--model", m, "pos=NOPE", "pos=NOPE", "pos=NOPE"]) == 2
    assert main(["explain", "--model", m, "--method", "trigram", "pos=PREP", "pos=PREP", "pos=PREP"]) == 2
    assert main(["tag", "--model", str(work / "missing.json")]) == 1


def test_config_file_and_flag_override(work, tmp_path):
    cfg = tmp_path / "train.cfg"
    cfg.write_text("# settings\nmethod = 2\nepsilon = 0.1\nmin-context-freq = 7\n", encoding="utf-8")
    model = tmp_path / "c.json"
    args = ["train", "--corpus", str(work / "train.txt"), "--model", str(model), "--config", str(cfg)]
    assert main(args + ["--epsilon", "0.05"]) == 0
    m = load_model(model)
    assert m.method == "2"
    assert m.config.epsilon == 0.05 and m.config.min_context_freq == 7
    cfg.write_text("bogus = 1\n", encoding="utf-8")
    assert main(args) == 2


def test_inapplicable_option_exits_2(work, tmp_path, capsys):
    args = ["train", "--corpus", str(work / "train.txt"), "--model", str(tmp_path / "x.json")]
    assert main(args + ["--method", "3", "--min-gain", "0.1"]) == 2
    assert main(args + ["--method", "4", "--epsilon", "0.1"]) == 2
    assert "does not apply" in capsys.readouterr().err
    assert not (tmp_path / "x.json").exists()


def test_bad_input_exits_1(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("word_without_tag\n", encoding="utf-8")
    assert main(["stats", "--corpus", str(bad)]) == 1
    assert main(["generate", "--profile", "no-such-profile"]) == 1


def test_argparse_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["train", "--corpus", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["generate", "--tokens", "-3"])
