import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from jmorph.cli import Pipeline, main

FIX = Path(__file__).parent / "fixtures"


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


class TestAnalyze:
    def test_golden(self):
        code, out, _ = run(["analyze"], (FIX / "analyze_input.txt").read_text(encoding="utf-8"))
        assert code == 0
        assert out == (FIX / "analyze_golden.txt").read_text(encoding="utf-8")

    def test_examples(self):
        assert run(["analyze"], "N#お/30 医者/38 様/55$\n")[1] == "医者\tformal animate polite\n"
        assert run(["analyze"], "V#言った$\n")[1] == "言った\t言う\tv\tpfv\n"
        assert run(["analyze"], "V#見られない$\n")[1].splitlines() == [
            "見られない\t見る\tv\tpasv neg", "見られない\t見る\tv\tpot neg"]

    def test_mixed_lines_continue(self):
        code, out, err = run(["analyze"], "V#言った\nN#x/99$\nV#言った$\n")
        assert code == 1
        assert out == "言った\t言う\tv\tpfv\n"
        assert err.startswith("line 1:") and "line 2:" in err

    def test_lemma_filter_and_no_filter(self):
        filtered = run(["analyze"], "V#信じられている|信じる$\n")[1]
        assert "信ずる" not in filtered
        raw = run(["analyze", "--no-filter"], "V#信じられている|信じる$\n")[1]
        assert "信ずる" in raw

    def test_no_filter_exposes_invalid_orders(self):
        out = run(["analyze", "--no-filter"], "V#食べないです$\n")[1]
        assert out == "食べないです\t食べる\tv\tneg pol\n"
        assert run(["analyze"], "V#食べないです$\n")[1] == "食べないです\t?\t?\t?\n"

    def test_bad_lines(self):
        for line in ["X#foo$", "V#$", "V#a b$", "V#言った|$"]:
            assert run(["analyze"], line + "\n")[0] == 1

    def test_custom_configs(self, tmp_path):
        lex = tmp_path / "lex.tsv"
        lex.write_text("lemma\treading\tgroup\n走る\t\tgodan-r\n", encoding="utf-8")
        roles = tmp_path / "roles.tsv"
        roles.write_text("1\tnoun-head\n2\tcollective-suffix\n", encoding="utf-8")
        rules = tmp_path / "rules.tsv"
        rules.write_text("terminal\tte\n", encoding="utf-8")
        code, out, _ = run(["analyze", "--lexicon", str(lex), "--pos-map", str(roles), "--rules", str(rules)],
                           "V#走って$\nN#少年/1 ら/2$\n")
        assert code == 0
        assert out == "走って\t走る\tv\tte\n少年\tcollective\n"

    def test_missing_config(self):
        assert run(["analyze", "--lexicon", "/nonexistent.tsv"])[0] == 2


class TestGenerate:
    def test_te_prog(self):
        code, out, _ = run(["generate", "食べる", "te", "prog"])
        assert code == 0 and out.splitlines() == ["食べている", "食べてる"]

    def test_dictionary_form(self):
        assert run(["generate", "食べる"])[1] == "食べる\n"

    def test_unknown_lemma(self):
        assert run(["generate", "ほげる", "pfv"])[0] == 2

    def test_unknown_tag(self):
        assert run(["generate", "食べる", "archaic"])[0] == 2


class TestEvaluate:
    def test_example_fixture(self):
        code, out, _ = run(["evaluate", str(FIX / "example_gold.tsv")])
        assert code == 0
        assert "recall=1.000" in out.splitlines()[-3]
        assert out.splitlines()[-2].startswith("class=v")

    def test_json(self):
        code, out, _ = run(["evaluate", "--json", "--eval-mode", "type", str(FIX / "example_gold.tsv")])
        assert code == 0
        assert '"summary": true' in out.splitlines()[-1]

    def test_empty_gold(self, tmp_path):
        p = tmp_path / "gold.tsv"
        p.write_text("# nothing\n", encoding="utf-8")
        code, _, err = run(["evaluate", str(p)])
        assert code == 2 and "nothing to evaluate" in err

    def test_single_row(self, tmp_path):
        p = tmp_path / "gold.tsv"
        p.write_text("言った\t言う\tv\tpfv\n", encoding="utf-8")
        assert "precision=1.000 recall=1.000" in run(["evaluate", str(p)])[1]

    def test_single_row_with_spurious(self, tmp_path):
        p = tmp_path / "gold.tsv"
        p.write_text("見られない\t見る\tv\tpot+neg\n", encoding="utf-8")
        assert "precision=0.500 recall=1.000" in run(["evaluate", str(p)])[1]


def test_usage_error():
    assert run([])[0] == 2


def test_pipeline_is_reusable():
    pipe = Pipeline()
    assert pipe.analyze_line("V#言った$") == ["言った\t言う\tv\tpfv"]


def test_console_script_is_byte_stable():
    data = (FIX / "analyze_input.txt").read_bytes()
    env = dict(os.environ, PYTHONIOENCODING="ascii")
    outs = [subprocess.run([sys.executable, "-m", "jmorph.cli", "analyze"], input=data,
                           capture_output=True, env=env, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] == (FIX / "analyze_golden.txt").read_bytes()
