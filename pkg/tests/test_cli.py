import io
import json

import pytest

from sentlang.cli import iter_paragraphs, main

TEXT = (
    "Le chat dort sur le lit. The dog is in the garden (with the cat).\n"
    "\n"
    "¿Dónde está el perro? Er sagte: „komm her“ und ging.\n"
)


@pytest.fixture
def text_file(tmp_path):
    p = tmp_path / "in.txt"
    p.write_text(TEXT, encoding="utf-8")
    return p


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("fmt", ["plain", "tsv", "jsonl"])
def test_tag_formats_emit_one_record_per_sentence(capsys, text_file, fmt):
    code, out, _ = run(capsys, ["tag", str(text_file), "--format", fmt])
    assert code == 0
    assert len(out.splitlines()) == 4


def test_formats_agree_on_decisions(capsys, text_file):
    _, plain, _ = run(capsys, ["tag", str(text_file)])
    _, tsv, _ = run(capsys, ["tag", str(text_file), "--format", "tsv"])
    _, jsonl, _ = run(capsys, ["tag", str(text_file), "--format", "jsonl"])
    from_plain = [line.split()[1] for line in plain.splitlines()]
    from_tsv = [line.split("\t")[4] for line in tsv.splitlines()]
    from_json = ["+".join(json.loads(line)["tag"]) or "und" for line in jsonl.splitlines()]
    assert from_plain == from_tsv == from_json == ["fr", "en", "es", "de"]


def test_jsonl_segments_and_scores(capsys, text_file):
    _, out, _ = run(capsys, ["tag", str(text_file), "--format", "jsonl", "--segments", "--scores"])
    records = [json.loads(line) for line in out.splitlines()]
    second = records[1]
    assert second["scores"]["en"] > 0
    assert [s["kind"] for s in second["segments"]] == ["parenthesis"]
    assert second["segments"][0]["text"] == "(with the cat)"
    assert TEXT[second["start"]:second["end"]] == second["text"]


def test_stdin_and_empty_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    assert run(capsys, ["tag"]) == (0, "", "")
    monkeypatch.setattr("sys.stdin", io.StringIO("The cat."))
    code, out, _ = run(capsys, ["tag"])
    assert code == 0 and out.split()[1] == "en"


def test_unknown_language_is_config_error(capsys, text_file):
    code, _, err = run(capsys, ["tag", str(text_file), "--languages", "fr,xx"])
    assert code == 2 and "xx" in err


def test_missing_input_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, ["tag", str(tmp_path / "nope.txt")])
    assert code == 1 and "nope.txt" in err


def test_bad_worker_count(capsys, text_file):
    assert run(capsys, ["tag", str(text_file), "--workers", "0"])[0] == 2


def test_unbalanced_delimiter_reported_on_stderr(capsys, tmp_path):
    p = tmp_path / "u.txt"
    p.write_text("The cat (sleeps on the mat.\n", encoding="utf-8")
    code, out, err = run(capsys, ["tag", str(p)])
    assert code == 0 and out.split()[1] == "en"
    assert "warning" in err and "parenthesis" in err


def test_workers_match_serial(capsys, tmp_path):
    p = tmp_path / "many.txt"
    p.write_text(TEXT * 200, encoding="utf-8")
    _, serial, _ = run(capsys, ["tag", str(p), "--format", "tsv"])
    _, parallel, _ = run(capsys, ["tag", str(p), "--format", "tsv", "--workers", "2"])
    assert serial == parallel and len(serial.splitlines()) == 800


def test_iter_paragraphs_offsets():
    paras = list(iter_paragraphs(io.StringIO("a b\nc\n\n\nd\n")))
    assert paras == [("a b\nc\n", 0), ("d\n", 8)]


# --- lexicon-check


def test_lexicon_check_shipped(capsys):
    code, out, _ = run(capsys, ["lexicon-check"])
    assert code == 0
    rows = {line.split()[0]: line.split() for line in out.splitlines()[1:5]}
    assert set(rows) == {"de", "en", "es", "fr"}
    assert "ñ" in rows["es"][3]


def test_lexicon_check_empty_word_list_warns(capsys, make_root):
    root = make_root({"xx": ("# empty\n", "a\n")})
    code, _, err = run(capsys, ["lexicon-check", "--lexicon-root", str(root)])
    assert code == 0 and "empty" in err


def test_lexicon_check_malformed_line(capsys, make_root):
    root = make_root({"xx": ("one\ntwo words\n", "a\n")})
    code, _, err = run(capsys, ["lexicon-check", "--lexicon-root", str(root)])
    assert code == 2 and ":2" in err


def test_lexicon_check_missing_root(capsys, tmp_path):
    code, _, _ = run(capsys, ["lexicon-check", "--lexicon-root", str(tmp_path / "none"), "--languages", "fr"])
    assert code == 2


# --- evaluate


def test_evaluate_writes_json(capsys, tmp_path):
    corpus = tmp_path / "c.tsv"
    corpus.write_text("fr\tLe chat dort sur le lit.\nen\tThe dog is here.\nen\tok\n", encoding="utf-8")
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, ["evaluate", "--corpus", str(corpus), "--report-json", str(report)])
    assert code == 0 and "fr" in out
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["per_language"]["en"]["n_undetermined"] == 1


def test_evaluate_bad_gold_label(capsys, tmp_path):
    corpus = tmp_path / "c.tsv"
    corpus.write_text("it\til gatto\n", encoding="utf-8")
    code, _, err = run(capsys, ["evaluate", "--corpus", str(corpus)])
    assert code == 2 and "'it'" in err


def test_evaluate_missing_corpus(capsys, tmp_path):
    assert run(capsys, ["evaluate", "--corpus", str(tmp_path / "none.tsv")])[0] == 1
