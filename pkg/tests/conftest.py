import functools

import pytest

from fstagger.corpus import read_tagged_corpus
from fstagger.counts import CountTables, count_ngrams
from fstagger.features import TagSet
from fstagger.generator import generate

DET_F = "pos=DET|gen=FEM|num=SG|typ=DEF"
DET_M = "pos=DET|gen=MAS|num=SG|typ=DEF"
NOUN_F = "pos=NOUN|gen=FEM|num=SG"
NOUN_M = "pos=NOUN|gen=MAS|num=SG"
ADJ_F = "pos=ADJ|gen=FEM|num=SG"
ADJ_M = "pos=ADJ|gen=MAS|num=SG"
PREP = "pos=PREP"
VERB = "pos=VERB|num=SG|per=3"


def build_tables(trigram_counts):
    """CountTables straight from ``{(t2, t1, t0) tag strings: count}``."""
    ts = TagSet()
    tri = {}
    uni = {}
    for (a, b, c), n in trigram_counts.items():
        key = (ts.parse_tag(a).id, ts.parse_tag(b).id, ts.parse_tag(c).id)
        tri[key] = tri.get(key, 0) + n
        uni[key[2]] = uni.get(key[2], 0) + n
    return CountTables(ts, uni, tri, {}, 0)


@pytest.fixture
def agreement_tables():
    """Hand-built counts around a DET NOUN ADJ feminine agreement.

    p(0gen:FEM | 0pos:ADJ 1gen:FEM) = 170/174 and
    p(0num:SG | 0pos:ADJ 1num:SG 2pos:DET) = 96/96.
    """
    return build_tables({
        (DET_F, NOUN_F, ADJ_F): 44,
        (PREP, NOUN_F, ADJ_F): 126,
        (PREP, NOUN_F, ADJ_M): 4,
        (DET_M, NOUN_M, ADJ_M): 50,
        (DET_M, NOUN_M, ADJ_F): 2,
        (DET_F, NOUN_F, VERB): 60,
    })


@functools.lru_cache(maxsize=None)
def _corpus(profile, tokens, seed):
    text = generate(profile, tokens, seed)
    sentences, ts = read_tagged_corpus(text)
    return text, sentences, ts


def corpus(profile="french-like", tokens=2000, seed=1):
    """``(text, sentences, tagset)``; the tagset is shared, so don't mutate it."""
    return _corpus(profile, tokens, seed)


@functools.lru_cache(maxsize=None)
def tables_for(profile="french-like", tokens=2000, seed=1):
    _, sentences, ts = corpus(profile, tokens, seed)
    return count_ngrams(sentences, ts)
