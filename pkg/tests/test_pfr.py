import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ADJ_F, DET_F, NOUN_F, PREP, build_tables, corpus, tables_for
from fstagger.counts import count_ngrams, ratio_ok, trigram_transition
from fstagger.features import POS, TagSet, complete_context, removal_order
from fstagger.pfr import (PFR, PFRStore, TrainingConfig, UnusableContextError, build_class_tree,
                          build_pfr_store, enumerate_subcontexts, event_context,
                          frequent_subcontexts, is_sound, method3_pattern, parse_pfr_line,
                          preselect_method1, preselect_method2, preselect_method3, reduce_context,
                          reduce_many, replay_violations, subcontext_lattice)


# -- independent count oracle ------------------------------------------------

class Oracle:
    """Complete contexts and conditionals recounted from the raw trigram table."""

    def __init__(self, tables, feature):
        ts = self.ts = tables.tagset
        self.tables = tables
        self.inst = []  # (full items of the instance, weight)
        self.complete = set()
        for (a, b, c), n in tables.trigram.items():
            self.inst.append((complete_context(ts, a, b, ts.tags[c].pairs), n))
            self.complete.add(complete_context(ts, a, b, ts.prefix_before(c, feature)))
        self._memo = {}

    def p(self, event, ctx):
        key = (event, ctx)
        if key not in self._memo:
            self._memo[key] = self._p(event, ctx)
        return self._memo[key]

    def _p(self, event, ctx):
        num = den = 0
        for items, n in self.inst:
            if ctx <= items:
                den += n
                num += n if (0, event) in items else 0
        return Fraction(num, den) if den else None

    def sound(self, event, ctx, eps):
        p = self.p(event, ctx)
        return p is not None and all(ratio_ok(p, self.p(event, k), eps)
                                     for k in self.complete if ctx <= k)

    def reduce(self, event, ctx, eps):
        p0 = self.p(event, ctx)
        cur, changed = ctx, True
        while changed:
            changed = False
            for item in removal_order(self.ts, cur):
                trial = cur - {item}
                if ratio_ok(self.p(event, trial), p0, eps) and self.sound(event, trial, eps):
                    cur, changed = trial, True
        return cur


# -- records and store -------------------------------------------------------

def test_pfr_render_parse_round_trip():
    ts = TagSet()
    rec = PFR(ts.fv_id("gen", "FEM"), ts.parse_context("1gen:FEM 0pos:ADJ"), 170, 174)
    line = rec.render(ts)
    assert line == "0gen:FEM | 0pos:ADJ 1gen:FEM ; 170/174"
    assert parse_pfr_line(line, ts) == rec
    assert rec.fraction == Fraction(85, 87)
    assert round(rec.probability, 3) == 0.977
    with pytest.raises(ValueError):
        parse_pfr_line("1gen:FEM | 0pos:ADJ ; 1/2", ts)


def test_store_matching_and_mean():
    ts = TagSet()
    adj = ts.fv_id("pos", "ADJ")
    r1 = PFR(adj, ts.parse_context("1gen:FEM 1pos:NOUN 2pos:DET"), 148, 1000)
    r2 = PFR(adj, ts.parse_context("0num:SG 1num:SG 1pos:NOUN 2pos:DET"), 414, 1000)
    r3 = PFR(adj, ts.parse_context("1pos:VERB"), 1, 2)
    store = PFRStore("2", [r1, r2, r3])
    full = ts.parse_context("0num:SG 1gen:FEM 1num:SG 1pos:NOUN 2gen:FEM 2num:SG 2pos:DET 2typ:DEF")
    assert set(store.matching(adj, full)) == {r1, r2}
    assert store.mean_probability(adj, full) == pytest.approx(0.281, abs=1e-15)
    assert store.mean_probability(adj, ts.parse_context("1pos:NOUN")) is None
    assert store.mean_probability(ts.fv_id("pos", "X"), full) is None
    assert store.mean_probability(adj, ts.parse_context("1pos:VERB 2pos:DET")) == 0.5


ctx_items = st.frozensets(st.tuples(st.integers(0, 2), st.integers(1, 6)), max_size=5)


@settings(max_examples=80, deadline=None)
@given(st.lists(ctx_items, min_size=0, max_size=12), ctx_items)
def test_store_matching_is_subset_test(contexts, query):
    recs = [PFR(1, c, k % 3, 3) for k, c in enumerate(contexts)]
    store = PFRStore("1", recs)
    got = sorted(store.matching(1, query), key=repr)
    want = sorted({r for r in recs if r.context <= query}, key=repr)
    assert sorted(set(got), key=repr) == want


def test_store_dump_round_trip():
    tables = tables_for("french-like", 2000, 1)
    store = build_pfr_store(tables, "3")
    ts = tables.tagset
    again = PFRStore("3", [parse_pfr_line(line, ts) for line in store.dump(ts).splitlines()])
    assert again == store
    again.sort(ts)
    assert again.dump(ts) == store.dump(ts)


def test_config_validation():
    with pytest.raises(ValueError):
        TrainingConfig(epsilon=-0.1)
    with pytest.raises(ValueError):
        TrainingConfig(min_node_freq=-1)
    assert TrainingConfig().epsilon == 0.03


# -- subcontexts ---------------------------------------------------------------

def test_powerset_of_seven_members(agreement_tables):
    ts = agreement_tables.tagset
    det, noun, adj = (ts.find_tag(t).id for t in (DET_F, NOUN_F, ADJ_F))
    subs = list(enumerate_subcontexts(ts, det, noun, adj, ts.lookup_fv("pos", "ADJ")))
    assert len(subs) == 128 == len(set(subs))
    fem = ts.lookup_fv("gen", "FEM")
    gen_subs = set(enumerate_subcontexts(ts, det, noun, adj, fem))
    assert ts.parse_context("0pos:ADJ 1gen:FEM") in gen_subs
    assert all((0, fem) not in s for s in gen_subs)


def test_lattice_union_shares_subsets():
    ts = TagSet()
    a = ts.parse_tag("pos=DET|gen=FEM").id
    b = ts.parse_tag("pos=DET|gen=MAS").id
    n = ts.parse_tag("pos=NOUN").id
    ev = ts.lookup_fv("pos", "NOUN")
    one = set(enumerate_subcontexts(ts, n, a, n, ev))
    two = set(enumerate_subcontexts(ts, n, b, n, ev))
    merged = subcontext_lattice(ts, [(n, a, n), (n, b, n)], ev)
    assert merged == one | two
    assert len(merged) == 8 + 8 - 4


def test_frequent_subcontexts_match_brute_force(agreement_tables):
    t = agreement_tables
    lat = t.lattice("gen")
    for threshold in (1, 5, 60, 130):
        got = set(frequent_subcontexts(lat, threshold))
        want = set()
        for ctx in lat.contexts:
            for r in range(len(ctx) + 1):
                for sub in itertools.combinations(sorted(ctx), r):
                    sub = frozenset(sub)
                    if t.context_count(sub) >= threshold:
                        want.add(sub)
        assert got == want


# -- preselection ----------------------------------------------------------

def _method1_brute(tables, event, threshold, special):
    ts = tables.tagset
    feature = ts.feature_of(event)
    lat = tables.lattice(feature)
    out = set()
    for ctx in lat.contexts:
        for r in range(len(ctx) + 1):
            for sub in itertools.combinations(sorted(ctx), r):
                sub = frozenset(sub)
                feats = {(p, ts.feature_of(fv)) for p, fv in sub}
                if not any(f == feature for _, f in feats):
                    continue
                if special and ((1, POS) not in feats or
                                (feature != POS and (0, POS) not in feats)):
                    continue
                if tables.context_count(sub) >= max(threshold, 1):
                    out.add(sub)
    return out


@pytest.mark.parametrize("special", [True, False])
@pytest.mark.parametrize("feature,value", [("gen", "FEM"), ("pos", "ADJ"), ("num", "SG")])
def test_method1_preselection_matches_brute_force(agreement_tables, special, feature, value):
    t = agreement_tables
    event = t.tagset.lookup_fv(feature, value)
    cfg = TrainingConfig(min_context_freq=5, special_conditions=special)
    assert set(preselect_method1(event, t, cfg)) == _method1_brute(t, event, 5, special)


def test_method1_same_feature_other_value(agreement_tables):
    t = agreement_tables
    ts = t.tagset
    fem = ts.lookup_fv("gen", "FEM")
    got = set(preselect_method1(fem, t, TrainingConfig()))
    assert ts.parse_context("0pos:ADJ 1gen:MAS 1pos:NOUN") in got
    assert ts.parse_context("0pos:ADJ 1pos:NOUN") not in got
    assert preselect_method1(fem, t, TrainingConfig(min_context_freq=10 ** 6)) == []


def test_method1_preselection_on_generated_corpus():
    tables = tables_for("french-like", 400, 5)
    ts = tables.tagset
    for f, v in [("gen", "FEM"), ("pos", "NOUN")]:
        event = ts.lookup_fv(f, v)
        cfg = TrainingConfig(min_context_freq=3)
        assert set(preselect_method1(event, tables, cfg)) == _method1_brute(tables, event, 3, True)


def test_class_tree_root_classes():
    tables = tables_for("french-like", 2000, 1)
    lat = tables.lattice("num")
    ts = tables.tagset
    assert {ts.fv(v).value for v in lat.values} == {"SG", "PL"}
    tree = build_class_tree(tables, "num", TrainingConfig())
    assert tree.weight == tables.n_instances
    assert tree.children  # something is informative about num


def test_class_tree_zero_gain():
    rows = {}
    for x, y, z in itertools.product(["pos=A", "pos=B"], repeat=3):
        rows[x, y, z] = 5
    t = build_tables(rows)
    tree = build_class_tree(t, "pos", TrainingConfig())
    assert tree.children is None
    assert preselect_method2(t.tagset.lookup_fv("pos", "A"), t, TrainingConfig()) == [frozenset()]


def test_class_tree_follows_the_only_dependency():
    rows = {}
    for g2, g1 in itertools.product(["F", "M"], repeat=2):
        rows[f"pos=D|gen={g2}", f"pos=N|gen={g1}", f"pos=A|gen={g1}"] = 5
    t = build_tables(rows)
    ts = t.tagset
    tree = build_class_tree(t, "gen", TrainingConfig())
    assert tree.attribute == (1, "gen")
    for leaf in tree.leaves():
        assert [(p, f) for p, f, _ in leaf.path] == [(1, "gen")]
    got = preselect_method2(ts.lookup_fv("gen", "F"), t, TrainingConfig())
    assert got == [ts.parse_context("1gen:F"), ts.parse_context("1gen:M")]


def test_method3_patterns():
    t = build_tables({(PREP, DET_F, NOUN_F): 5, (PREP, PREP, NOUN_F): 5})
    ts = t.tagset
    noun = ts.lookup_fv("pos", "NOUN")
    fem = ts.lookup_fv("gen", "FEM")
    assert ts.parse_context("2pos:PREP 1pos:DET") in preselect_method3(noun, t)
    assert preselect_method3(fem, t) == [ts.parse_context("1pos:DET 1gen:FEM 0pos:NOUN")]
    ctx = complete_context(ts, ts.find_tag(PREP).id, ts.find_tag(PREP).id, [noun])
    assert method3_pattern(ts, "gen", ctx) is None


# -- reduction -----------------------------------------------------------------

def test_reduction_of_the_agreement_context(agreement_tables):
    t = agreement_tables
    ts = t.tagset
    fem = ts.lookup_fv("gen", "FEM")
    det, noun, adj = (ts.find_tag(x).id for x in (DET_F, NOUN_F, ADJ_F))
    full = event_context(ts, det, noun, adj, fem)
    assert t.fv_conditional_counts(fem, full) == (44, 44)
    red = reduce_context(fem, full, t, 0.03)
    assert red == ts.parse_context("0pos:ADJ 1gen:FEM")
    num, den = t.fv_conditional_counts(fem, red)
    assert (num, den) == (170, 174)
    assert 0.97 <= (num / den) / 1.0 <= 1.03
    assert red == Oracle(t, "gen").reduce(fem, full, 0.03)


def test_reduction_with_zero_epsilon_keeps_context():
    t = build_tables({("pos=X", "pos=P", "pos=A"): 1, ("pos=X", "pos=P", "pos=B"): 1,
                      ("pos=Y", "pos=P", "pos=A"): 1, ("pos=Y", "pos=P", "pos=B"): 3,
                      ("pos=X", "pos=Q", "pos=A"): 3, ("pos=X", "pos=Q", "pos=B"): 1})
    ts = t.tagset
    ctx = ts.parse_context("2pos:X 1pos:P")
    assert reduce_context(ts.lookup_fv("pos", "A"), ctx, t, 0.0) == ctx


def test_unusable_context(agreement_tables):
    ts = agreement_tables.tagset
    ctx = ts.parse_context("1pos:ADJ 2pos:VERB")
    with pytest.raises(UnusableContextError):
        reduce_context(ts.lookup_fv("pos", "ADJ"), ctx, agreement_tables, 0.03)
    assert not is_sound(ts.lookup_fv("pos", "ADJ"), ctx, agreement_tables, 0.03)


@pytest.mark.parametrize("eps", [0.0, 0.03, 0.2, 1.0])
def test_reduction_matches_oracle_and_bitmask_path(eps):
    tables = tables_for("french-like", 600, 11)
    ts = tables.tagset
    rnd = random.Random(int(eps * 100))
    keys = sorted(tables.trigram)
    oracles = {}
    for _ in range(25):
        a, b, c = rnd.choice(keys)
        event = rnd.choice(ts.tags[c].pairs)
        feature = ts.feature_of(event)
        full = event_context(ts, a, b, c, event)
        ctx = frozenset(x for x in full if rnd.random() < 0.7)
        if not is_sound(event, ctx, tables, eps):
            continue
        oracle = oracles.setdefault(feature, Oracle(tables, feature))
        red = reduce_context(event, ctx, tables, eps)
        assert red <= ctx
        assert red == oracle.reduce(event, ctx, eps)
        assert oracle.sound(event, red, eps)
        lat = tables.lattice(feature)
        col = lat.value_col[event]
        assert reduce_many(lat, ctx, [col], eps)[col] == red
        # local minimality: no further single removal is admissible
        p0 = oracle.p(event, ctx)
        for item in red:
            trial = red - {item}
            assert not (ratio_ok(oracle.p(event, trial), p0, eps) and oracle.sound(event, trial, eps))


def test_large_epsilon_reduces_to_empty_when_possible():
    # every probability nonzero and within a factor of two of every other
    rows = {}
    for x, y in itertools.product(["pos=X", "pos=Y"], repeat=2):
        rows[x, y, "pos=A"] = 3 if x == "pos=X" else 2
        rows[x, y, "pos=B"] = 2
    t = build_tables(rows)
    ts = t.tagset
    ctx = ts.parse_context("2pos:X 1pos:Y")
    assert reduce_context(ts.lookup_fv("pos", "A"), ctx, t, 1.0) == frozenset()


# -- whole stores --------------------------------------------------------------

@pytest.mark.parametrize("method", ["1", "2", "3"])
def test_empty_corpus_empty_store(method):
    ts = TagSet()
    assert len(build_pfr_store(count_ngrams([], ts), method)) == 0


def test_method3_on_pos_only_is_the_trigram_table():
    _, sents, ts = corpus("pos-only", 1500, 4)
    tables = count_ngrams(sents, ts)
    store = build_pfr_store(tables, "3", TrainingConfig(min_context_freq=0))
    n = 0
    for rec in store:
        by_pos = {p: fv for p, fv in rec.context}
        t2 = ts.find_tag(str(ts.fv(by_pos[2]))).id
        t1 = ts.find_tag(str(ts.fv(by_pos[1]))).id
        t0 = ts.find_tag(str(ts.fv(rec.event))).id
        assert rec.probability == trigram_transition(t0, t1, t2, tables)
        n += 1
    hists = {(a, b) for a, b, _ in tables.trigram}
    assert n == len(hists) * len({c for _, _, c in tables.trigram})


@pytest.mark.parametrize("method", ["1", "2"])
def test_reduced_stores_pass_independent_replay(method):
    tables = tables_for("french-like", 800, 2)
    ts = tables.tagset
    cfg = TrainingConfig(min_context_freq=3)
    store = build_pfr_store(tables, method, cfg)
    assert len(store) > 0
    assert replay_violations(store, tables, cfg.epsilon) == []
    recs = list(store)
    keys = {(r.event, r.context) for r in recs}
    assert len(keys) == len(recs)  # no duplicate PFRs
    # the brute-force oracle is slow, so it audits a fixed sample
    oracles = {}
    for rec in random.Random(int(method)).sample(recs, min(400, len(recs))):
        feature = ts.feature_of(rec.event)
        o = oracles.setdefault(feature, Oracle(tables, feature))
        assert o.p(rec.event, rec.context) == rec.fraction
        assert o.sound(rec.event, rec.context, cfg.epsilon), rec.render(ts)


def test_store_far_smaller_than_instances():
    tables = tables_for("french-like", 2000, 1)
    store = build_pfr_store(tables, "2")
    pairs = sum(len(tables.tagset.tags[c].pairs) for (_, _, c) in tables.trigram)
    assert len(store) < pairs


def test_replay_flags_a_planted_violation(agreement_tables):
    t = agreement_tables
    ts = t.tagset
    fem = ts.lookup_fv("gen", "FEM")
    bad = PFR(fem, ts.parse_context("0pos:ADJ"), 172, 226)  # ignores the agreement
    out = replay_violations(PFRStore("1", [bad]), t, 0.03)
    assert out and all(r is bad for r, _, _ in out)


def test_store_deterministic():
    tables = tables_for("french-like", 2000, 1)
    ts = tables.tagset
    a = build_pfr_store(tables, "2")
    b = build_pfr_store(count_ngrams(corpus("french-like", 2000, 1)[1], ts), "2")
    assert a.dump(ts) == b.dump(ts)
