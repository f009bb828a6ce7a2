"""Acceptance criteria 1-8; each test prints one PASS/FAIL line with its tolerance.

Run ``pytest tests/test_acceptance.py -v`` to see the report lines.
"""
import random
import time
from pathlib import Path

import pytest

from jmorph import fst, postfilter, verbs
from jmorph.cli import Pipeline, judge
from jmorph.evaluate import evaluate, load_gold, split_by_class
from jmorph.lexicon import PRONOUN_ROWS, seed_lexicon
from jmorph.nouns import analyze_noun, parse_line
from jmorph.symbols import encode
from jmorph.verbs import Analysis, compile_grammar

from oracles import (
    ALPHABET, ATTESTED_MULTI, EUPHONY_GOLD, EVAL_MIXTURES, NOUN_FIXTURE, EXAMPLE_FIXTURE, PRONOUN_GOLD,
    all_inputs, enumerate_paths, random_machine,
)

GOLD = Path(__file__).parent / "fixtures" / "example_gold.tsv"
COLLECTIVES = ["達", "等", "ら", "たち", "かた", "方"]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number} [PRIMARY] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_example_golden_suite(report):
    t0 = time.perf_counter()
    compile_grammar.cache_clear()
    verbs._phonology_cached.cache_clear()
    grammar = compile_grammar(seed_lexicon())
    misses = []
    rows = 0
    for line, want in NOUN_FIXTURE:
        rows += 1
        if analyze_noun(parse_line(line)).format() != want:
            misses.append(line)
    for surface, _, gold in EXAMPLE_FIXTURE:
        got = set(grammar.analyze(surface))
        for lemma, cls, tags in gold:
            rows += 1
            if Analysis(lemma, cls, tags) not in got:
                misses.append(f"{surface} {lemma} {cls} {' '.join(tags)}")
    elapsed = time.perf_counter() - t0
    recall = 1 - len(misses) / rows
    report(1, not misses and elapsed < 5.0,
           f"example golden suite: {rows} expected analyses, recall {recall:.3f} (need 1.0), "
           f"{elapsed:.2f} s including grammar build (limit 5 s); misses={misses}")


def test_criterion_2_fst_relational_oracle(report):
    machines, checked, bad = [], 0, []
    for seed in range(500):
        rng = random.Random(seed)
        alphabet = ALPHABET[:rng.randint(1, 4)]
        t = random_machine(rng, alphabet=alphabet)
        machines.append(t)
        for s in all_inputs(alphabet, 4):
            checked += 1
            if fst.apply_codes(t, encode(s)) != enumerate_paths(t, encode(s)):
                bad.append(("apply", seed, s))
        twice = fst.invert(fst.invert(t))
        if twice.arcs != t.arcs or twice.finals != t.finals:
            bad.append(("invert", seed))
    for i in range(500):
        a, b, c = machines[i], machines[(i + 1) % 500], machines[(i + 2) % 500]
        left = fst.compose(fst.compose(a, b), c)
        right = fst.compose(a, fst.compose(b, c))
        for s in all_inputs(ALPHABET, 4):
            if fst.apply_codes(left, encode(s)) != fst.apply_codes(right, encode(s)):
                bad.append(("assoc", i, s))
                break
    report(2, not bad,
           f"500 random machines (<=6 states, alphabet<=4), {checked} apply_down checks on inputs of length <=4, "
           f"500 invert involutions, 500 compose associativity triples; exact match required; "
           f"failures={bad[:5]}")


def test_criterion_3_round_trip(report):
    lex = seed_lexicon()
    grammar = compile_grammar(lex)
    singles = [(t,) for t in ("pol", "pfv", "neg", "pasv", "te", "prog", "cond", "vol", "imp", "caus", "pot",
                              "adv")]
    sequences = singles + ATTESTED_MULTI
    pairs = surfaces = 0
    misses = []
    for e in lex:
        cls = e.group.word_class.value
        for tags in sequences:
            produced = grammar.generate(e.lemma, tags)
            pairs += bool(produced)
            for s in produced:
                surfaces += 1
                if Analysis(e.lemma, cls, tuple(tags)) not in grammar.analyze(s):
                    misses.append((e.lemma, tags, s))
    report(3, not misses and pairs > 0,
           f"round trip over {len(lex)} lemmas x {len(sequences)} tag sequences: {pairs} generating pairs, "
           f"{surfaces} surfaces, {len(misses)} misses (need 0); misses={misses[:5]}")


def test_criterion_4_euphony_gold(report):
    grammar = compile_grammar(seed_lexicon())
    bad = [(l, t, grammar.generate(l, t)) for l, t, want in EUPHONY_GOLD if grammar.generate(l, t) != sorted(want)]
    # しまう is not a generated auxiliary, so ちゃう is checked on the phonology tape
    phon = verbs.phonology()
    chau = [("食べ[+]て[+]しま[+]う", ["食べちゃう", "食べてしまう"]),
            ("飲み[^]て[+]しま[+]う", ["飲んじゃう", "飲んでしまう"]),
            ("書き[^]て[+]しま[+]い[^]た", ["書いちゃった", "書いてしまった"])]
    bad += [(tape, phon.apply_down(tape)) for tape, want in chau if phon.apply_down(tape) != want]
    rows = len(EUPHONY_GOLD) + len(chau)
    report(4, not bad and len(EUPHONY_GOLD) >= 22,
           f"euphony gold: {len(EUPHONY_GOLD)} generate rows over 9 godan rows + する/くる/来る/行く "
           f"plus {len(chau)} ちゃう phonology rows; {rows - len(bad)}/{rows} exact (need all, >=22); bad={bad}")


def test_criterion_5_pronoun_table(report):
    bad = []
    for surface, attrs in PRONOUN_GOLD:
        got = analyze_noun(parse_line(f"N#{surface}/59$")).format()
        if got != f"prn\t{attrs}":
            bad.append((surface, got))
    combos = 0
    for surface, _ in PRONOUN_GOLD:
        for coll in COLLECTIVES:
            combos += 1
            attrs = analyze_noun(parse_line(f"N#{surface}/59 {coll}/51$")).format().split("\t")[1].split()
            if "pl" not in attrs or "collective" in attrs:
                bad.append((surface, coll, attrs))
    report(5, not bad and len(PRONOUN_ROWS) == 17,
           f"pronoun table: {len(PRONOUN_ROWS)} rows / {len(PRONOUN_GOLD)} surfaces exact, "
           f"{combos} pronoun+collective inputs all pl and never collective; failures={bad[:5]}")


def test_criterion_6_eval_formulas(report):
    bad = []
    for items, p, r in EVAL_MIXTURES:
        rep = evaluate(items)
        if abs(rep.precision - p) > 1e-12 or abs(rep.recall - r) > 1e-12:
            bad.append((p, r, rep.precision, rep.recall))
    report(6, not bad and len(EVAL_MIXTURES) >= 5,
           f"{len(EVAL_MIXTURES)} hand-computed mixtures incl. empty produced set, tolerance 1e-12; bad={bad}")


def _random_sets(rng, n):
    tags = ["caus", "pasv", "pot", "pol", "neg", "te", "prog", "cond", "vol", "imp", "pfv", "adv"]
    lemmas = ["見る", "信じる", "信ずる"]
    for _ in range(n):
        yield {Analysis(rng.choice(lemmas), "v", tuple(rng.choice(tags) for _ in range(rng.randint(0, 5))))
               for _ in range(rng.randint(0, 10))}


def test_criterion_7_postfilter_algebra(report):
    rng = random.Random(7)
    bad = []
    trials = 2000
    for s, extra in zip(_random_sets(rng, trials), _random_sets(rng, trials)):
        lemma = rng.choice([None, "見る", "信じる"])
        once = postfilter.filter(s, lemma)
        if postfilter.filter(once, lemma) != once:
            bad.append("idempotence")
        if not once <= postfilter.filter(s | extra, lemma):
            bad.append("monotonicity")
        if not once <= s:
            bad.append("non-increase")
    entries = load_gold(GOLD)
    raw = evaluate(judge(Pipeline(filter_enabled=False), entries))
    filt = evaluate(judge(Pipeline(filter_enabled=True), entries))
    ok = not bad and filt.precision >= raw.precision and filt.recall == 1.0
    report(7, ok,
           f"{trials} randomized sets: idempotent, monotone, non-increasing ({len(bad)} violations); "
           f"fixture precision {raw.precision:.3f} -> {filt.precision:.3f} (must not drop), "
           f"recall {raw.recall:.3f} -> {filt.recall:.3f} (must stay 1.0)")


def test_criterion_8_adjectives_more_precise(report):
    items = judge(Pipeline(), load_gold(GOLD))
    groups = split_by_class(items)
    p_adj = evaluate(groups["adj"]).precision
    p_v = evaluate(groups["v"]).precision
    report(8, p_adj >= p_v,
           f"directional trend: adjective precision {p_adj:.3f} >= verb precision {p_v:.3f} "
           f"on the combined fixture (no numeric tolerance)")
