import json

import pytest

from conftest import corpus, tables_for
from fstagger.generator import (CorpusGenerator, ProfileError, french_like, generate,
                                get_profile, pos_only)


def _value(ts, t, feature):
    v = ts.value_of(t, feature)
    return None if v is None else ts.fvpairs[v].value


def test_fixed_seed_is_byte_identical():
    assert generate("french-like", 800, 3) == generate("french-like", 800, 3)
    assert generate("french-like", 800, 3) != generate("french-like", 800, 4)


def test_exact_token_count():
    for n in (1, 17, 500):
        text = generate("french-like", n, 2)
        assert sum(1 for ln in text.splitlines() if ln.strip()) == n


def test_pos_only_tags_are_single_pairs():
    _, sents, ts = corpus("pos-only", 2000, 1)
    used = {t for s in sents for t in s.tags}
    assert all(len(ts.tags[t].pairs) == 1 for t in used)
    assert len(CorpusGenerator(pos_only()).tag_inventory()) == 12


def test_french_like_inventory_size():
    inv = CorpusGenerator(french_like()).tag_inventory()
    fvs = {p for t in inv for p in t.split("|")}
    assert len(inv) == 386
    assert len(fvs) == 57


def test_trigram_shape_on_10k_tokens():
    tables = tables_for("french-like", 10000, 1)
    b = tables.tagset.boundary.id
    freqs = [n for k, n in tables.trigram.items() if b not in k]
    assert 2000 <= len(freqs) <= 9998
    assert sum(1 for f in freqs if f == 1) / len(freqs) > 0.5


def test_agreement_holds():
    _, sents, ts = corpus("french-like", 5000, 7)
    pairs = 0
    for s in sents:
        for a, b in zip(s.tags, s.tags[1:]):
            pa, pb = _value(ts, a, "pos"), _value(ts, b, "pos")
            if (pa, pb) in (("NOUN", "ADJ"), ("DET", "NOUN")):
                pairs += 1
                assert _value(ts, a, "num") == _value(ts, b, "num")
                assert _value(ts, a, "gen") in (None, _value(ts, b, "gen"))
    assert pairs > 100


def test_profile_json_round_trip(tmp_path):
    prof = french_like()
    path = tmp_path / "p.json"
    path.write_text(json.dumps(prof.to_dict()), encoding="utf-8")
    assert generate(get_profile(str(path)), 300, 5) == generate(prof, 300, 5)


def test_profile_errors(tmp_path):
    with pytest.raises(ProfileError):
        get_profile("no-such-profile")
    d = french_like().to_dict()
    d["grammar"]["S"][0][1].append("UNDEFINED")
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d), encoding="utf-8")
    with pytest.raises(ProfileError):
        get_profile(str(path))
    d = french_like().to_dict()
    del d["frames"]
    path.write_text(json.dumps(d), encoding="utf-8")
    with pytest.raises(ProfileError):
        get_profile(str(path))
