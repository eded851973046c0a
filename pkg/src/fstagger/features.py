"""Feature-value pairs, feature-structure tags and positioned contexts.

A tag such as ``pos=ADJ|gen=FEM|num=SG`` is a bundle of feature-value pairs
(fv-pairs).  Inside a trigram every fv-pair carries a position index:
0 for the current tag, 1 for the previous one and 2 for the one before.
A positioned fv-pair is the tuple ``(position, fv_id)`` and a context is a
frozenset of those tuples.
"""

from typing import Iterable, NamedTuple

POS = "pos"
BOUNDARY_VALUE = "BOUND"
BOUNDARY_TAG = "pos=BOUND"


class TagFormatError(ValueError):
    pass


class FVPair(NamedTuple):
    feature: str
    value: str

    def __str__(self):
        return f"{self.feature}={self.value}"


class Tag(NamedTuple):
    """A registered tag: dense id plus fv-pair ids in canonical order."""

    id: int
    pairs: tuple


def feature_rank(feature):
    """Sort key of the chain-rule order: ``pos`` first, the rest by name."""
    return (feature != POS, feature)


def _check_symbol(text, what):
    if not text or any(ch in text for ch in "|=\t\n ") or text != text.strip():
        raise TagFormatError(f"invalid {what}: {text!r}")


class TagSet:
    """Interning table for features, fv-pairs and tags.

    Ids are assigned in registration order, so re-registering the same tag
    strings in the same order reproduces the same ids.  The boundary tag
    ``pos=BOUND`` is always tag 0.
    """

    def __init__(self):
        self.fvpairs = []
        self._fv_index = {}
        self.tags = []
        self._tag_index = {}
        self.boundary = self.parse_tag(BOUNDARY_TAG)

    def __len__(self):
        return len(self.tags)

    def __eq__(self, other):
        return isinstance(other, TagSet) and self.tag_strings() == other.tag_strings() \
            and self.fvpairs == other.fvpairs

    @property
    def features(self):
        return sorted({fv.feature for fv in self.fvpairs}, key=feature_rank)

    @property
    def canonical_order(self):
        return self.features

    def fv_id(self, feature, value):
        pair = FVPair(feature, value)
        idx = self._fv_index.get(pair)
        if idx is None:
            _check_symbol(feature, "feature")
            _check_symbol(value, "value")
            idx = len(self.fvpairs)
            self.fvpairs.append(pair)
            self._fv_index[pair] = idx
        return idx

    def lookup_fv(self, feature, value):
        return self._fv_index.get(FVPair(feature, value))

    def fv(self, fv_id):
        return self.fvpairs[fv_id]

    def feature_of(self, fv_id):
        return self.fvpairs[fv_id].feature

    def fv_key(self, fv_id):
        fv = self.fvpairs[fv_id]
        return feature_rank(fv.feature) + (fv.value,)

    def _canonical(self, fv_ids):
        return tuple(sorted(fv_ids, key=self.fv_key))

    def tag_from_pairs(self, fv_ids):
        """Register (if new) and return the tag made of ``fv_ids``."""
        fv_ids = list(fv_ids)
        feats = [self.feature_of(i) for i in fv_ids]
        if len(set(feats)) != len(feats):
            raise TagFormatError("duplicate feature in tag: " +
                                 "|".join(str(self.fv(i)) for i in fv_ids))
        if not fv_ids:
            raise TagFormatError("empty tag")
        key = frozenset(fv_ids)
        tid = self._tag_index.get(key)
        if tid is None:
            tid = len(self.tags)
            self.tags.append(Tag(tid, self._canonical(fv_ids)))
            self._tag_index[key] = tid
        return self.tags[tid]

    def parse_tag(self, text):
        """Parse ``feature=value|feature=value`` into a canonical Tag."""
        text = text.strip()
        if not text:
            raise TagFormatError("empty tag string")
        ids = []
        for atom in text.split("|"):
            feature, sep, value = atom.partition("=")
            if not sep:
                raise TagFormatError(f"malformed atom {atom!r} in tag {text!r}")
            ids.append(self.fv_id(feature.strip(), value.strip()))
        return self.tag_from_pairs(ids)

    def find_tag(self, text):
        """Like parse_tag but never registers anything; None when unknown."""
        ids = []
        for atom in text.strip().split("|"):
            feature, sep, value = atom.partition("=")
            if not sep:
                raise TagFormatError(f"malformed atom {atom!r} in tag {text!r}")
            idx = self.lookup_fv(feature.strip(), value.strip())
            if idx is None:
                return None
            ids.append(idx)
        tid = self._tag_index.get(frozenset(ids))
        return None if tid is None else self.tags[tid]

    def tag(self, tag_id):
        return self.tags[tag_id]

    def format_tag(self, tag):
        if isinstance(tag, int):
            tag = self.tags[tag]
        return "|".join(str(self.fvpairs[i]) for i in tag.pairs)

    def tag_strings(self):
        return [self.format_tag(t) for t in self.tags]

    def value_of(self, tag, feature):
        """fv id of ``feature`` inside ``tag`` or None."""
        if isinstance(tag, int):
            tag = self.tags[tag]
        for i in tag.pairs:
            if self.fvpairs[i].feature == feature:
                return i
        return None

    def decompose(self, tag):
        if isinstance(tag, int):
            tag = self.tags[tag]
        return list(tag.pairs)

    def pos_value(self, tag):
        i = self.value_of(tag, POS)
        return None if i is None else self.fvpairs[i].value

    def prefix_before(self, tag, feature):
        """fv-pairs of ``tag`` that precede ``feature`` in the chain order."""
        if isinstance(tag, int):
            tag = self.tags[tag]
        rank = feature_rank(feature)
        return tuple(i for i in tag.pairs if feature_rank(self.feature_of(i)) < rank)

    def has_nested_tags(self):
        """True if some tag's pair set strictly contains another tag's."""
        sets = [frozenset(t.pairs) for t in self.tags]
        for a in sets:
            for b in sets:
                if a < b:
                    return True
        return False

    # positioned rendering -------------------------------------------------

    def render(self, item):
        position, fv_id = item
        fv = self.fvpairs[fv_id]
        return f"{position}{fv.feature}:{fv.value}"

    def item_key(self, item):
        position, fv_id = item
        fv = self.fvpairs[fv_id]
        return (position, fv.feature, fv.value)

    def render_context(self, context):
        return " ".join(self.render(i) for i in sorted(context, key=self.item_key))

    def parse_item(self, text, register=True):
        """Parse ``0gen:FEM`` into ``(0, fv_id)``."""
        text = text.strip()
        if len(text) < 4 or text[0] not in "012" or ":" not in text:
            raise TagFormatError(f"malformed positioned fv-pair {text!r}")
        feature, _, value = text[1:].partition(":")
        if register:
            return int(text[0]), self.fv_id(feature, value)
        idx = self.lookup_fv(feature, value)
        if idx is None:
            raise TagFormatError(f"unknown fv-pair in {text!r}")
        return int(text[0]), idx

    def parse_context(self, text, register=True):
        return frozenset(self.parse_item(t, register) for t in text.split())


def decompose_tag(tagset, tag):
    return tagset.decompose(tag)


def complete_context(tagset, t2, t1, fixed0: Iterable[int] = ()):
    """All fv-pairs of t2 (position 2), t1 (position 1) and ``fixed0`` at 0.

    ``t2`` may be None for first-order use.
    """
    items = set()
    if t2 is not None:
        items.update((2, i) for i in tagset.decompose(t2))
    if t1 is not None:
        items.update((1, i) for i in tagset.decompose(t1))
    items.update((0, i) for i in fixed0)
    return frozenset(items)


def removal_order(tagset, context):
    """Positions 2, 1, 0; within a position, features in chain order."""
    return sorted(context, key=lambda it: (-it[0],) + tagset.fv_key(it[1]))
