"""Trained model bundle and its on-disk JSON form.

The file wraps a canonical JSON body with a format tag, a version number
and the SHA-256 of the body, so truncated or edited files are rejected.
"""

import hashlib
import json
from dataclasses import dataclass, field

from .corpus import Lexicon, build_lexicon, open_class_tags
from .counts import CountTables, count_ngrams
from .decoder import LexicalModel, Tagger
from .dtree import DecisionTree, build_trees, tree_from_json, tree_to_json
from .features import TagSet
from .pfr import PFRStore, TrainingConfig, build_pfr_store, parse_pfr_line
from .transitions import PFRSource, TreeSource, TrigramSource

FORMAT = "fstagger-model"
VERSION = 1
DEFAULT_OPEN_CLASS = ("NOUN", "ADJ", "VERB", "PROPN")
FS_METHODS = ("1", "2", "3", "4")


class ModelError(ValueError):
    pass


class ModelFormatError(ModelError):
    pass


class ModelVersionError(ModelError):
    pass


class ModelChecksumError(ModelError):
    pass


@dataclass
class Model:
    tagset: TagSet
    tables: CountTables
    lexicon: Lexicon
    method: str = "2"
    order: int = 2
    config: TrainingConfig = field(default_factory=TrainingConfig)
    open_class: tuple = DEFAULT_OPEN_CLASS
    stores: dict = field(default_factory=dict)  # method -> PFRStore
    trees: dict = None  # fv id -> DecisionTree

    @property
    def methods(self):
        out = sorted(self.stores)
        if self.trees is not None:
            out.append("4")
        return out

    def source(self, method=None):
        method = str(method or self.method)
        if method == "trigram":
            return TrigramSource(self.tables, self.order)
        if method == "4":
            if self.trees is None:
                raise ModelError("model has no decision trees (train with method 4)")
            return TreeSource(self.trees, self.tables)
        if method not in self.stores:
            raise ModelError(f"model has no PFRs for method {method}")
        return PFRSource(self.stores[method], self.tables)

    def open_tags(self):
        return open_class_tags(self.tagset, self.open_class, set(self.tables.unigram))

    def lexical_model(self, override=None):
        lex = self.lexicon
        if override is not None:
            lex = Lexicon({w: dict(r) for w, r in self.lexicon.entries.items()})
            lex.override(override)
        return LexicalModel(lex, self.open_tags(), self.tagset)

    def tagger(self, method=None, order=None, override=None):
        order = order or self.order
        return Tagger(self.source(method), self.lexical_model(override), order, self.tagset.boundary.id)


def train(sentences, tagset, method="2", config=None, order=2, open_class=DEFAULT_OPEN_CLASS,
          extra_methods=()):
    """Count, build the lexicon and train ``method`` (plus ``extra_methods``)."""
    config = config or TrainingConfig()
    tables = count_ngrams(sentences, tagset)
    model = Model(tagset, tables, build_lexicon(sentences), str(method), order, config,
                  tuple(open_class))
    for m in dict.fromkeys([str(method), *map(str, extra_methods)]):
        if m in ("1", "2", "3"):
            model.stores[m] = build_pfr_store(tables, m, config)
        elif m == "4":
            model.trees = build_trees(tables, config)
        elif m != "trigram":
            raise ValueError(f"unknown method {m!r}")
    return model


# -- serialization -----------------------------------------------------------

def _body(model):
    ts = model.tagset
    body = {
        "fvpairs": [str(fv) for fv in ts.fvpairs],
        "tags": ts.tag_strings(),
        "counts": {
            "n_sentences": model.tables.n_sentences,
            "unigram": sorted([t, n] for t, n in model.tables.unigram.items()),
            "trigram": sorted([a, b, c, n] for (a, b, c), n in model.tables.trigram.items()),
            "initial": sorted([a, b, n] for (a, b), n in model.tables.initial_bigram.items()),
        },
        "lexicon": {w: sorted([t, n] for t, n in row.items())
                    for w, row in model.lexicon.entries.items()},
        "method": model.method,
        "order": model.order,
        "config": model.config.as_dict(),
        "open_class": list(model.open_class),
        "pfr": {m: store.dump(ts).splitlines() for m, store in model.stores.items()},
    }
    if model.trees is not None:
        body["trees"] = {ts.render((0, e)): tree_to_json(t.root, ts) for e, t in model.trees.items()}
    return body


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def dumps_model(model):
    body = _body(model)
    digest = hashlib.sha256(_canonical(body).encode("utf-8")).hexdigest()
    doc = {"format": FORMAT, "version": VERSION, "sha256": digest, "body": body}
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def save_model(model, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_model(model))


def loads_model(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT or "body" not in doc:
        raise ModelFormatError("not a model file")
    if doc.get("version") != VERSION:
        raise ModelVersionError(f"model version {doc.get('version')!r} is not supported "
                                f"(expected {VERSION})")
    body = doc["body"]
    if hashlib.sha256(_canonical(body).encode("utf-8")).hexdigest() != doc.get("sha256"):
        raise ModelChecksumError("model checksum mismatch")
    try:
        return _from_body(body)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model body: {exc}") from None


def _from_body(body):
    ts = TagSet()
    for fv in body["fvpairs"]:
        feature, _, value = fv.partition("=")
        ts.fv_id(feature, value)
    for tag in body["tags"]:
        ts.parse_tag(tag)
    if ts.tag_strings() != body["tags"]:
        raise ModelFormatError("tag inventory does not round-trip")
    c = body["counts"]
    tables = CountTables(ts, {t: n for t, n in c["unigram"]},
                         {(a, b, t): n for a, b, t, n in c["trigram"]},
                         {(a, b): n for a, b, n in c["initial"]}, c["n_sentences"])
    lex = Lexicon({w: {t: n for t, n in row} for w, row in body["lexicon"].items()})
    config = TrainingConfig(**body["config"])
    model = Model(ts, tables, lex, body["method"], body["order"], config, tuple(body["open_class"]))
    for m, lines in body["pfr"].items():
        model.stores[m] = PFRStore(m, [parse_pfr_line(line, ts) for line in lines])
    if "trees" in body:
        trees = {}
        for key, data in body["trees"].items():
            _, event = ts.parse_item(key)
            trees[event] = DecisionTree(event, tree_from_json(data, ts))
        model.trees = trees
    return model


def load_model(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError:
        raise ModelFormatError(f"{path}: not UTF-8 text") from None
    return loads_model(text)


def corpus_summary(model):
    """Figures printed after training."""
    ts = model.tagset
    n_tags = len(ts) - 1  # without the boundary tag
    b = ts.boundary.id
    distinct = sum(1 for key in model.tables.trigram if b not in key)
    out = {"tokens": model.tables.n_tokens, "sentences": model.tables.n_sentences,
           "tags": n_tags, "fvpairs": len(ts.fvpairs) - 1, "distinct_trigrams": distinct,
           "distinct_trigrams_with_padding": len(model.tables.trigram),
           "possible_trigrams": n_tags ** 3,
           "percent_of_possible": 100.0 * distinct / n_tags ** 3 if n_tags else 0.0}
    for m, store in sorted(model.stores.items()):
        out[f"pfr_method{m}"] = len(store)
    if model.trees is not None:
        out["trees"] = len(model.trees)
        out["tree_leaves"] = sum(t.n_leaves() for t in model.trees.values())
    return out
