import json

import pytest

from fstagger.corpus import read_lexicon_override, read_tagged_corpus
from fstagger.generator import generate
from fstagger.model import (ModelChecksumError, ModelError, ModelFormatError, ModelVersionError,
                            corpus_summary, dumps_model, load_model, loads_model, save_model, train)


@pytest.fixture(scope="module")
def data():
    sents, ts = read_tagged_corpus(generate("french-like", 1500, 8))
    test, _ = read_tagged_corpus(generate("french-like", 200, 9), ts)
    return sents, ts, [s.words for s in test]


@pytest.mark.parametrize("method", ["1", "2", "3", "4", "trigram"])
def test_round_trip_tags_identically(data, method, tmp_path):
    sents, ts, words = data
    model = train(sents, ts, method)
    path = tmp_path / "m.json"
    save_model(model, path)
    again = load_model(path)
    assert dumps_model(again) == dumps_model(model)
    assert again.lexicon == model.lexicon
    assert again.tables.trigram == model.tables.trigram
    a = model.tagger().tag_sentences(words)
    b = again.tagger().tag_sentences(words)
    assert [r.tags for r in a] == [r.tags for r in b]
    assert [r.log_prob for r in a] == [r.log_prob for r in b]


def test_serialization_is_deterministic():
    dumps = []
    for _ in range(2):
        sents, ts = read_tagged_corpus(generate("french-like", 1500, 8))
        dumps.append(dumps_model(train(sents, ts, "2")))
    assert dumps[0] == dumps[1]


def test_trigram_model_has_no_fs_parts(data):
    sents, ts, _ = data
    model = train(sents, ts, "trigram")
    assert model.stores == {} and model.trees is None and model.methods == []
    with pytest.raises(ModelError):
        model.source("2")
    with pytest.raises(ModelError):
        model.source("4")
    body = json.loads(dumps_model(model))["body"]
    assert body["pfr"] == {} and "trees" not in body


def test_load_errors(data):
    sents, ts, _ = data
    text = dumps_model(train(sents, ts, "3"))
    doc = json.loads(text)
    with pytest.raises(ModelFormatError):
        loads_model("{not json")
    with pytest.raises(ModelFormatError):
        loads_model(json.dumps({"format": "other", "body": {}}))
    with pytest.raises(ModelVersionError):
        loads_model(json.dumps(dict(doc, version=2)))
    tampered = json.loads(text)
    tampered["body"]["order"] = 1
    with pytest.raises(ModelChecksumError):
        loads_model(json.dumps(tampered))
    assert issubclass(ModelChecksumError, ModelError)


def test_unknown_method(data):
    sents, ts, _ = data
    with pytest.raises(ValueError):
        train(sents, ts, "7")


def test_lexicon_override(data):
    sents, ts, _ = data
    model = train(sents, ts, "3")
    word = sents[0].words[0]
    noun_fv = ts.lookup_fv("pos", "NOUN")
    noun = next(t.id for t in ts.tags if ts.value_of(t.id, "pos") == noun_fv)
    over = read_lexicon_override(f"{word}\t{ts.format_tag(ts.tags[noun])}\t5\n", ts)
    lm = model.lexical_model(over)
    assert lm.candidates(word)[0] == (noun,)
    assert model.lexical_model().candidates(word)[0] != (noun,)  # base model untouched


def test_summary_counts(data):
    sents, ts, _ = data
    s = corpus_summary(train(sents, ts, "2"))
    assert s["tokens"] == 1500
    assert s["distinct_trigrams"] <= s["distinct_trigrams_with_padding"]
    assert s["pfr_method2"] > 0
