"""Accuracy, ambiguity and tagger comparison reports."""

from dataclasses import dataclass, field

from .decoder import Tagger

TAGGER_NAMES = ("tT1", "tT2", "lpT", "fsT1", "fsT2", "fsT3", "fsT4")


class EvaluationError(ValueError):
    pass


@dataclass
class AccuracyRow:
    tagger: str
    tokens: int
    correct: int
    order: object = None  # 1, 2 or None when not applicable
    per_feature: dict = field(default_factory=dict)  # feature -> accuracy
    fallbacks: int = 0

    @property
    def errors(self):
        return self.tokens - self.correct

    @property
    def accuracy(self):
        return self.correct / self.tokens if self.tokens else 0.0


def accuracy(gold, predicted, tagset=None, breakdown=False, name=""):
    """Exact full-bundle match rate of ``predicted`` (tag-id lists) against ``gold`` sentences.

    With ``breakdown`` (needs ``tagset``) every feature also gets its own
    match rate: the token counts as right for feature f when gold and
    prediction carry the same f value or both lack f.
    """
    if len(gold) != len(predicted):
        raise EvaluationError(f"{len(gold)} gold sentences but {len(predicted)} predicted")
    tokens = correct = 0
    feats = tagset.features if (breakdown and tagset is not None) else []
    feat_ok = dict.fromkeys(feats, 0)
    for k, (sent, pred) in enumerate(zip(gold, predicted)):
        if len(sent.tags) != len(pred):
            raise EvaluationError(f"sentence {k}: {len(sent.tags)} gold tokens but {len(pred)} predicted")
        for g, p in zip(sent.tags, pred):
            tokens += 1
            correct += g == p
            for f in feats:
                feat_ok[f] += tagset.value_of(g, f) == tagset.value_of(p, f)
    per_feature = {f: n / tokens for f, n in feat_ok.items()} if tokens else {}
    return AccuracyRow(name, tokens, correct, per_feature=per_feature)


def ambiguity(sentences, lexical):
    """Mean number of candidate tags per token after lexicon lookup."""
    counts = [len(lexical.candidates(w)[0]) for s in sentences for w in s.words]
    return sum(counts) / len(counts) if counts else 0.0


@dataclass
class EvalReport:
    corpus: str
    rows: list
    ambiguity: float
    n_tags: int
    n_fvpairs: int
    train_tokens: int


def _tagger_for(model, name):
    """``(Tagger, order)`` for a tagger name such as ``tT2`` or ``fsT3``."""
    ts = model.tagset
    lexical = model.lexical_model()
    b = ts.boundary.id
    if name == "lpT":
        return Tagger(None, lexical, model.order, b, baseline=True), None
    if name in ("tT1", "tT2"):
        order = int(name[-1])
        return Tagger(model.source("trigram"), lexical, order, b), order
    if name.startswith("fsT") and name[3:] in ("1", "2", "3", "4"):
        return Tagger(model.source(name[3:]), lexical, model.order, b), model.order
    raise EvaluationError(f"unknown tagger {name!r}; expected one of {', '.join(TAGGER_NAMES)}")


def default_taggers(model):
    return ["tT1", "tT2", "lpT"] + [f"fsT{m}" for m in model.methods]


def compare_taggers(gold, model, taggers=None, corpus="", breakdown=False):
    """Tag ``gold`` with every named tagger and score it."""
    taggers = list(taggers or default_taggers(model))
    words = [s.words for s in gold]
    rows = []
    for name in taggers:
        tagger, order = _tagger_for(model, name)
        results = tagger.tag_sentences(words)
        row = accuracy(gold, [r.tags for r in results], model.tagset, breakdown, name)
        row.order = order
        row.fallbacks = sum(1 for r in results if r.fallback)
        rows.append(row)
    # inventory sizes as seen in training; reading gold may have added unseen tags
    ts = model.tagset
    b = ts.boundary.id
    seen = [t for t in model.tables.unigram if t != b]
    fvs = {fv for t in seen for fv in ts.decompose(t)}
    return EvalReport(corpus, rows, ambiguity(gold, model.lexical_model()), len(seen), len(fvs),
                      model.tables.n_tokens)


def format_report(report):
    head = f"{'tagger':<7} {'train words':>11} {'tags':>5} {'fv-prs':>6} {'order':>5} " \
           f"{'tokens':>7} {'errors':>7} {'accuracy':>9}"
    lines = [head]
    for r in report.rows:
        order = "-" if r.order is None else str(r.order)
        lines.append(f"{r.tagger:<7} {report.train_tokens:>11,} {report.n_tags:>5} "
                     f"{report.n_fvpairs:>6} {order:>5} {r.tokens:>7} {r.errors:>7} "
                     f"{100 * r.accuracy:>8.2f}%")
        if r.per_feature:
            lines.append("        " + "  ".join(f"{f}={100 * a:.2f}%" for f, a in r.per_feature.items()))
    lines.append(f"average ambiguity: {report.ambiguity:.2f} tags per word")
    return "\n".join(lines) + "\n"


def report_tsv(report):
    out = ["tagger\tcorpus\ttags\tfv_pairs\torder\ttokens\terrors\taccuracy"]
    for r in report.rows:
        order = "" if r.order is None else str(r.order)
        out.append(f"{r.tagger}\t{report.corpus}\t{report.n_tags}\t{report.n_fvpairs}\t{order}\t"
                   f"{r.tokens}\t{r.errors}\t{r.accuracy:.6f}")
    return "\n".join(out) + "\n"
