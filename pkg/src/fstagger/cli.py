"""Command-line entry point: ``fstagger {train,tag,eval,stats,explain,generate}``."""

import argparse
import io
import logging
import sys

from .corpus import CorpusFormatError, read_lexicon_override, read_tagged_corpus, read_untagged
from .counts import DEFAULT_BUCKETS, count_ngrams, format_histogram, histogram_tsv, trigram_histogram
from .evaluation import EvaluationError, compare_taggers, format_report, report_tsv
from .features import TagFormatError
from .generator import ProfileError, generate, get_profile
from .model import DEFAULT_OPEN_CLASS, ModelError, corpus_summary, load_model, save_model, train
from .pfr import METHODS, TrainingConfig
from .transitions import explain_transition

log = logging.getLogger("fstagger")

# training options and the methods they apply to
TRAINING_KEYS = {
    "epsilon": ("1", "2"),
    "min_context_freq": ("1", "2", "3"),
    "min_gain": ("2", "4"),
    "min_node_freq": ("2", "4"),
    "special_conditions": ("1",),
}


class UsageError(Exception):
    pass


def _bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def _nonneg_float(text):
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _order(text):
    v = int(text)
    if v not in (1, 2):
        raise argparse.ArgumentTypeError("order must be 1 or 2")
    return v


CONVERTERS = {"epsilon": _nonneg_float, "min_context_freq": _nonneg_int, "min_gain": _nonneg_float,
              "min_node_freq": _nonneg_int, "special_conditions": _bool, "order": _order,
              "seed": int, "tokens": _nonneg_int, "method": str, "open_class": str,
              "include_padding": _bool, "log_probs": _bool, "breakdown": _bool}


def read_config_file(path):
    """``key = value`` lines; ``#`` starts a comment; keys may use - or _."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _add_training_flags(p):
    p.add_argument("--method", choices=METHODS, help="training method (default 2)")
    p.add_argument("--epsilon", type=_nonneg_float, help="relative tolerance (default 0.03)")
    p.add_argument("--min-context-freq", type=_nonneg_int, help="preselection threshold (default 5)")
    p.add_argument("--min-gain", type=_nonneg_float, help="tree gain threshold in bits (default 0.01)")
    p.add_argument("--min-node-freq", type=_nonneg_int, help="tree node frequency floor (default 5)")
    p.add_argument("--special-conditions", type=_bool, help="method 1 pos conditions (default true)")
    p.add_argument("--open-class", help="comma-separated open-class pos values for unknown words")


def build_parser():
    parser = argparse.ArgumentParser(prog="fstagger", description="Feature-structure HMM tagger")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model from a tagged corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True, help="output model path")
    p.add_argument("--config", help="key=value file; flags override it")
    p.add_argument("--order", type=_order)
    _add_training_flags(p)

    p = sub.add_parser("tag", help="tag untagged text (one word per line)")
    p.add_argument("--model", required=True)
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    p.add_argument("--method", choices=METHODS, help="source to use if the model holds several")
    p.add_argument("--order", type=_order)
    p.add_argument("--lexicon", help="word<TAB>tag<TAB>count override file")
    p.add_argument("--log-probs", action="store_true")

    p = sub.add_parser("eval", help="compare taggers on a gold corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--taggers", help="comma list, e.g. tT1,tT2,lpT,fsT2")
    p.add_argument("--breakdown", action="store_true", help="per-feature accuracy")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    p.add_argument("--output", default="-")

    p = sub.add_parser("stats", help="trigram frequency histogram of a tagged corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--include-padding", action="store_true",
                   help="count trigrams that contain the boundary tag")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    p.add_argument("--output", default="-")

    p = sub.add_parser("explain", help="chain decomposition of one transition")
    p.add_argument("--model", required=True)
    p.add_argument("--method", choices=METHODS)
    p.add_argument("trigram", nargs=3, metavar=("T2", "T1", "T0"),
                   help="tags t_{i-2} t_{i-1} t_i")

    p = sub.add_parser("generate", help="write a synthetic tagged corpus")
    p.add_argument("--profile", default="french-like", help="profile name or JSON file")
    p.add_argument("--tokens", type=_nonneg_int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--output", default="-")
    return parser


def _open_in(path):
    if path == "-":
        return io.TextIOWrapper(sys.stdin.buffer, encoding="utf-8")
    return open(path, encoding="utf-8")


def _write(path, text):
    if path == "-":
        sys.stdout.buffer.write(text.encode("utf-8"))
        sys.stdout.buffer.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _training_settings(args):
    """Merge config file and flags; reject options that do not apply to the method."""
    given = read_config_file(args.config) if args.config else {}
    unknown = set(given) - set(TRAINING_KEYS) - {"method", "order", "open_class"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    settings = {}
    for key, value in given.items():
        try:
            settings[key] = CONVERTERS[key](value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"config {key}: {exc}") from None
    for key in list(TRAINING_KEYS) + ["method", "order", "open_class"]:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    method = str(settings.get("method", "2"))
    if method not in METHODS:
        raise UsageError(f"method must be one of {', '.join(METHODS)}")
    for key, methods in TRAINING_KEYS.items():
        if key in settings and method not in methods:
            raise UsageError(f"{key.replace('_', '-')} does not apply to method {method}")
    cfg = TrainingConfig(**{k: settings[k] for k in TRAINING_KEYS if k in settings})
    open_class = settings.get("open_class")
    open_class = tuple(x.strip() for x in open_class.split(",") if x.strip()) if open_class \
        else DEFAULT_OPEN_CLASS
    return method, settings.get("order", 2), cfg, open_class


def cmd_train(args):
    method, order, cfg, open_class = _training_settings(args)
    with open(args.corpus, encoding="utf-8") as fh:
        sentences, tagset = read_tagged_corpus(fh)
    model = train(sentences, tagset, method, cfg, order, open_class)
    save_model(model, args.model)
    summary = corpus_summary(model)
    lines = [f"{k}: {v:.4g}" if isinstance(v, float) else f"{k}: {v}" for k, v in summary.items()]
    _write("-", "\n".join(lines) + "\n")
    return 0


def _tag_output(sentences, results, tagset, log_probs):
    out = []
    for words, res in zip(sentences, results):
        for w, t in zip(words, res.tags):
            out.append(f"{w}\t{tagset.format_tag(t)}\n")
        if res.fallback:
            out.append("#lexical-fallback\n")
        if log_probs:
            out.append(f"# log_prob={res.log_prob!r}\n")
        out.append("\n")
    return "".join(out)


def cmd_tag(args):
    model = load_model(args.model)
    override = None
    if args.lexicon:
        with open(args.lexicon, encoding="utf-8") as fh:
            override = read_lexicon_override(fh, model.tagset)
    with _open_in(args.input) as fh:
        sentences = [s.words for s in read_untagged(fh)]
    tagger = model.tagger(args.method, args.order, override)
    results = tagger.tag_sentences(sentences)
    _write(args.output, _tag_output(sentences, results, model.tagset, args.log_probs))
    return 0


def cmd_eval(args):
    model = load_model(args.model)
    with open(args.corpus, encoding="utf-8") as fh:
        gold, _ = read_tagged_corpus(fh, model.tagset)
    taggers = [t.strip() for t in args.taggers.split(",")] if args.taggers else None
    report = compare_taggers(gold, model, taggers, corpus=args.corpus, breakdown=args.breakdown)
    _write(args.output, report_tsv(report) if args.format == "tsv" else format_report(report))
    return 0


def cmd_stats(args):
    with open(args.corpus, encoding="utf-8") as fh:
        sentences, tagset = read_tagged_corpus(fh)
    tables = count_ngrams(sentences, tagset)
    rows = trigram_histogram(tables, DEFAULT_BUCKETS, args.include_padding)
    if args.format == "tsv":
        text = histogram_tsv(rows)
    else:
        n_tags = len(tagset) - 1
        text = (f"tokens: {tables.n_tokens}\nsentences: {tables.n_sentences}\ntags: {n_tags}\n"
                f"fv-pairs: {len(tagset.fvpairs) - 1}\n"
                f"distinct trigrams: {sum(r.count for r in rows)}\n\n" + format_histogram(rows))
    _write(args.output, text)
    return 0


def cmd_explain(args):
    model = load_model(args.model)
    ts = model.tagset
    ids = []
    for text in args.trigram:
        tag = ts.find_tag(text)
        if tag is None:
            raise UsageError(f"tag {text!r} is not in the model tagset")
        ids.append(tag.id)
    t2, t1, t0 = ids
    method = args.method or model.method
    if method == "trigram":
        raise UsageError("explain needs a feature-structure method (1-4)")
    exp = explain_transition(t0, t1, t2, model.source(method))
    _write("-", exp.render(ts))
    return 0


def cmd_generate(args):
    text = generate(get_profile(args.profile), args.tokens, args.seed)
    _write(args.output, text)
    return 0


COMMANDS = {"train": cmd_train, "tag": cmd_tag, "eval": cmd_eval, "stats": cmd_stats,
            "explain": cmd_explain, "generate": cmd_generate}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"fstagger {args.command}: {exc}", file=sys.stderr)
        return 2
    except (OSError, CorpusFormatError, TagFormatError, ModelError, ProfileError,
            EvaluationError) as exc:
        print(f"fstagger {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
