import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jmorph.evaluate import EmptyEvalSet, GoldFormatError, evaluate, parse_gold, split_by_class
from jmorph.verbs import Analysis

from oracles import EVAL_ANALYSES, EVAL_MIXTURES as MIXTURES, eval_item as item

a, b, c, d = EVAL_ANALYSES


@pytest.mark.parametrize("items,p,r", MIXTURES)
def test_mixtures(items, p, r):
    rep = evaluate(items)
    assert rep.precision == pytest.approx(p, abs=1e-12)
    assert rep.recall == pytest.approx(r, abs=1e-12)
    assert rep.n_items == len(items)


def test_empty_set():
    with pytest.raises(EmptyEvalSet):
        evaluate([])


def test_bad_mode():
    with pytest.raises(ValueError):
        evaluate([item({a}, {a})], mode="sentence")


def test_type_mode_dedupes():
    items = [item({a}, {a}, "s1"), item({a}, {a}, "s1"), item({b}, {a}, "s2")]
    assert evaluate(items, "token").precision == pytest.approx(2 / 3)
    assert evaluate(items, "type").precision == pytest.approx(0.5)


def test_per_item():
    rep = evaluate([item({a, b}, {a}, "見られない")])
    assert rep.per_item == (("見られない", 0.5, True),)


def test_outputs():
    rep = evaluate([item({a, b}, {a}, "見られない"), item(set(), {a}, "z")])
    rows = [json.loads(line) for line in rep.json_lines().splitlines()]
    assert rows[-1]["summary"] and rows[-1]["recall"] == 0.5
    assert rows[0] == {"surface": "見られない", "precision": 0.5, "hit": True}
    assert "precision=0.250 recall=0.500" in rep.table()


def test_split_by_class():
    adj = Analysis("好き", "adj", ("pol",))
    v = Analysis("好く", "v", ("pol",))
    groups = split_by_class([item({v}, {v, adj}, "好きです"), item({a}, {a}, "y")])
    assert [i.surface for i in groups["adj"]] == ["好きです"]
    assert [i.surface for i in groups["v"]] == ["y"]


class TestGold:
    def test_parse(self):
        rows = ["# header", "見られない\t見る\tv\tpot+neg", "見られない\t見る\tv\tpasv+neg\t見る",
                "食べる\t食べる\tv\t-", "寝る\t寝る\tv\t"]
        entries = parse_gold(rows)
        assert [e.surface for e in entries] == ["見られない", "食べる", "寝る"]
        assert entries[0].gold == {Analysis("見る", "v", ("pot", "neg")), Analysis("見る", "v", ("pasv", "neg"))}
        assert entries[0].mecab_lemma == "見る"
        assert entries[1].gold == {Analysis("食べる", "v", ())}
        assert entries[2].mecab_lemma is None

    def test_bad_row(self):
        with pytest.raises(GoldFormatError):
            parse_gold(["only\ttwo"])


sets = st.sets(st.sampled_from([a, b, c, d]), max_size=4)


@given(st.lists(st.tuples(sets, sets), min_size=1, max_size=8))
def test_bounds(pairs):
    rep = evaluate([item(p, g) for p, g in pairs])
    assert 0.0 <= rep.precision <= 1.0 and 0.0 <= rep.recall <= 1.0


@given(st.lists(sets.filter(bool), min_size=1, max_size=8))
def test_perfect(golds):
    rep = evaluate([item(g, g) for g in golds])
    assert rep.precision == rep.recall == 1.0


@given(st.lists(st.tuples(sets, sets), min_size=1, max_size=8), st.integers(0, 7))
def test_removing_a_wrong_analysis(pairs, k):
    items = [item(p, g) for p, g in pairs]
    k %= len(items)
    wrong = items[k].produced - items[k].gold
    if not wrong:
        return
    trimmed = list(items)
    trimmed[k] = item(items[k].produced - {min(wrong)}, items[k].gold)
    before, after = evaluate(items), evaluate(trimmed)
    assert after.precision >= before.precision
    assert after.recall == before.recall
