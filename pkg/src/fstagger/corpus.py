"""Tagged corpus reading/writing and the word -> tag lexicon."""

import io
from collections import Counter
from dataclasses import dataclass, field

from .features import POS, TagSet


class CorpusFormatError(ValueError):
    pass


@dataclass
class Sentence:
    words: list
    tags: list = None  # tag ids, or None for untagged input

    def __len__(self):
        return len(self.words)

    @property
    def tagged(self):
        return self.tags is not None


def _lines(source):
    if isinstance(source, (str, bytes)):
        source = io.StringIO(source.decode("utf-8") if isinstance(source, bytes) else source)
    for lineno, line in enumerate(source, 1):
        yield lineno, line.rstrip("\n").rstrip("\r")


def read_tagged_corpus(source, tagset=None):
    """Read ``word<TAB>tag`` lines; blank lines end sentences.

    Returns ``(sentences, tagset)``.  Lines starting with ``#`` are comments.
    Passing an existing tagset registers new tags into it.
    """
    if tagset is None:
        tagset = TagSet()
    sentences = []
    words, tags = [], []
    for lineno, line in _lines(source):
        if not line.strip():
            if words:
                sentences.append(Sentence(words, tags))
                words, tags = [], []
            continue
        if line.startswith("#"):
            continue
        word, sep, tag = line.partition("\t")
        if not sep or not word:
            raise CorpusFormatError(f"line {lineno}: expected word<TAB>tag, got {line!r}")
        tag = tag.split("\t")[0]
        try:
            tags.append(tagset.parse_tag(tag).id)
        except ValueError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
        words.append(word)
    if words:
        sentences.append(Sentence(words, tags))
    return sentences, tagset


def read_untagged(source):
    """One word per line (first TAB column), blank line between sentences."""
    sentences, words = [], []
    for _, line in _lines(source):
        if not line.strip():
            if words:
                sentences.append(Sentence(words))
                words = []
            continue
        if line.startswith("#"):
            continue
        words.append(line.split("\t")[0])
    if words:
        sentences.append(Sentence(words))
    return sentences


def format_tagged(sentences, tagset):
    out = []
    for sent in sentences:
        for word, tag in zip(sent.words, sent.tags):
            out.append(f"{word}\t{tagset.format_tag(tag)}\n")
        out.append("\n")
    return "".join(out)


def corpus_tokens(sentences):
    return sum(len(s) for s in sentences)


@dataclass
class Lexicon:
    """``entries[word][tag_id] = f(word, tag)``."""

    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self._totals = None

    def __contains__(self, word):
        return word in self.entries

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, Lexicon) and self.entries == other.entries

    def add(self, word, tag_id, count=1):
        row = self.entries.setdefault(word, {})
        row[tag_id] = row.get(tag_id, 0) + count
        self._totals = None

    def candidates(self, word):
        return sorted(self.entries.get(word, ()))

    def items(self, word):
        """Sorted ``[(tag_id, count), ...]`` for ``word``."""
        return sorted(self.entries.get(word, {}).items())

    def count(self, word, tag_id):
        return self.entries.get(word, {}).get(tag_id, 0)

    def tag_totals(self):
        """f(t) = sum over words of f(w, t)."""
        if self._totals is None:
            totals = Counter()
            for row in self.entries.values():
                totals.update(row)
            self._totals = totals
        return self._totals

    def override(self, other):
        """Replace the rows of every word listed in ``other``."""
        for word, row in other.entries.items():
            self.entries[word] = dict(row)
        self._totals = None


def build_lexicon(sentences):
    lex = Lexicon()
    for sent in sentences:
        if not sent.tagged:
            raise CorpusFormatError("build_lexicon needs a tagged corpus")
        for word, tag in zip(sent.words, sent.tags):
            lex.add(word, tag)
    return lex


def read_lexicon_override(source, tagset):
    """Read ``word<TAB>tag<TAB>count`` lines; every tag must already exist."""
    lex = Lexicon()
    for lineno, line in _lines(source):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise CorpusFormatError(f"line {lineno}: expected word<TAB>tag<TAB>count")
        word, tagtext, count = parts
        tag = tagset.find_tag(tagtext)
        if tag is None:
            raise CorpusFormatError(f"line {lineno}: tag {tagtext!r} is not in the model tagset")
        try:
            n = int(count)
        except ValueError:
            raise CorpusFormatError(f"line {lineno}: bad count {count!r}") from None
        if n < 0:
            raise CorpusFormatError(f"line {lineno}: negative count")
        lex.add(word, tag.id, n)
    return lex


def open_class_tags(tagset, open_class, known=None):
    """Tag ids whose pos value is in ``open_class`` (optionally only ``known`` ones)."""
    open_class = set(open_class)
    out = []
    for tag in tagset.tags:
        if known is not None and tag.id not in known:
            continue
        if tagset.pos_value(tag) in open_class:
            out.append(tag.id)
    return out


def ambiguity_classes(sentences, lexicon, n_open):
    """Number of candidate tags for every token."""
    return [len(lexicon.entries[w]) if w in lexicon else n_open
            for s in sentences for w in s.words]


__all__ = ["Sentence", "Lexicon", "CorpusFormatError", "read_tagged_corpus",
           "read_untagged", "format_tagged", "build_lexicon",
           "read_lexicon_override", "open_class_tags", "corpus_tokens", "POS"]
