"""Frequency tables: tag n-grams, fv-pair/context co-occurrences, frequency histogram.

Every sentence is padded as ``BOUND BOUND t_0 ... t_{n-1} BOUND`` before
counting, so a sentence of n tokens contributes n + 1 trigram instances and
the initial-state term of the HMM becomes an ordinary transition out of
``(BOUND, BOUND)``.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

DEFAULT_BUCKETS = ((128, None), (64, 127), (32, 63), (16, 31), (8, 15), (4, 7), (2, 3), (1, 1))


class CountTables:
    def __init__(self, tagset, unigram=None, trigram=None, initial_bigram=None, n_sentences=0):
        self.tagset = tagset
        self.unigram = Counter(unigram or {})
        self.trigram = Counter(trigram or {})
        self.initial_bigram = Counter(initial_bigram or {})
        self.n_sentences = n_sentences
        self.bigram = Counter()
        for (a, b, _), n in self.trigram.items():
            self.bigram[a, b] += n
        self._index = None
        self._lattices = {}
        self._fv_memo = {}

    def __eq__(self, other):
        return (isinstance(other, CountTables) and self.unigram == other.unigram
                and self.trigram == other.trigram and self.initial_bigram == other.initial_bigram
                and self.n_sentences == other.n_sentences)

    @property
    def n_instances(self):
        return sum(self.trigram.values())

    @property
    def n_tokens(self):
        return sum(self.unigram.values())

    # -- fv-pair / context co-occurrence -----------------------------------

    def _type_index(self):
        if self._index is None:
            self._index = _ItemIndex.from_trigrams(self.tagset, self.trigram)
        return self._index

    def context_count(self, context):
        """Number of trigram instances whose positioned fv-pairs include ``context``."""
        return self._type_index().count(context)

    def fv_conditional_counts(self, event, context):
        """``(numerator, denominator)`` of p(0event | context)."""
        key = (event, context)
        hit = self._fv_memo.get(key)
        if hit is None:
            index = self._type_index()
            den = index.count(context)
            num = index.count(context | {(0, event)}) if den else 0
            hit = self._fv_memo[key] = (num, den)
        return hit

    def fv_marginal(self, event):
        return self.fv_conditional_counts(event, frozenset())

    def lattice(self, feature):
        """Distinct complete contexts for events of ``feature`` (memoized)."""
        lat = self._lattices.get(feature)
        if lat is None:
            lat = self._lattices[feature] = FeatureLattice(self, feature)
        return lat


class _ItemIndex:
    """Boolean incidence matrix of distinct trigram types x positioned fv-pairs."""

    def __init__(self, rows, weights):
        items = sorted({it for r in rows for it in r})
        self.col = {it: j for j, it in enumerate(items)}
        self.matrix = np.zeros((len(rows), len(items)), dtype=bool)
        for i, r in enumerate(rows):
            self.matrix[i, [self.col[it] for it in r]] = True
        self.weights = np.asarray(weights, dtype=np.int64)

    @classmethod
    def from_trigrams(cls, tagset, trigram):
        rows, weights = [], []
        for (a, b, c), n in sorted(trigram.items()):
            items = {(2, i) for i in tagset.tags[a].pairs}
            items.update((1, i) for i in tagset.tags[b].pairs)
            items.update((0, i) for i in tagset.tags[c].pairs)
            rows.append(items)
            weights.append(n)
        return cls(rows, weights)

    def mask(self, context):
        cols = []
        for it in context:
            j = self.col.get(it)
            if j is None:
                return None
            cols.append(j)
        if not cols:
            return np.ones(len(self.weights), dtype=bool)
        return self.matrix[:, cols].all(axis=1)

    def count(self, context):
        m = self.mask(context)
        return 0 if m is None else int(self.weights[m].sum())


class FeatureLattice:
    """Observed complete contexts for the events of one feature.

    Row k is one distinct complete context (all fv-pairs of t_{i-2} and
    t_{i-1} plus the fv-pairs of t_i that precede the feature in the chain
    order).  ``num[k, v]`` counts instances of row k whose t_i carries value
    ``values[v]``; ``den[k]`` counts all instances of row k.
    """

    def __init__(self, tables, feature):
        ts = tables.tagset
        self.feature = feature
        row_of, contexts, den, value_counts = {}, [], [], []
        values = set()
        for (a, b, c), n in sorted(tables.trigram.items()):
            prefix = ts.prefix_before(c, feature)
            key = (a, b, prefix)
            k = row_of.get(key)
            if k is None:
                k = row_of[key] = len(contexts)
                ctx = {(2, i) for i in ts.tags[a].pairs}
                ctx.update((1, i) for i in ts.tags[b].pairs)
                ctx.update((0, i) for i in prefix)
                contexts.append(frozenset(ctx))
                den.append(0)
                value_counts.append(Counter())
            den[k] += n
            v = ts.value_of(c, feature)
            if v is not None:
                value_counts[k][v] += n
                values.add(v)
        self.values = sorted(values, key=ts.fv_key)
        self.value_col = {v: j for j, v in enumerate(self.values)}
        self.contexts = contexts
        self.items = sorted({it for c in contexts for it in c},
                            key=lambda it: (-it[0],) + ts.fv_key(it[1]))
        self.col = {it: j for j, it in enumerate(self.items)}
        self.matrix = np.zeros((len(contexts), len(self.items)), dtype=bool)
        for k, ctx in enumerate(contexts):
            self.matrix[k, [self.col[it] for it in ctx]] = True
        self.den = np.asarray(den, dtype=np.int64)
        self.num = np.zeros((len(contexts), len(self.values)), dtype=np.int64)
        for k, vc in enumerate(value_counts):
            for v, n in vc.items():
                self.num[k, self.value_col[v]] = n
        # p(e | complete context) uses superset matching like every other count.
        # Without nested tags only rows sharing (t2, t1) can contain each other.
        den_sup, num_sup = self.den.copy(), self.num.copy()
        if ts.has_nested_tags():
            for k, ctx in enumerate(contexts):
                m = self.matrix[:, [self.col[it] for it in ctx]].all(axis=1)
                den_sup[k] = self.den[m].sum()
                num_sup[k] = self.num[m].sum(axis=0)
        else:
            by_hist = {}
            for (a, b, _), k in row_of.items():
                by_hist.setdefault((a, b), []).append(k)
            for group in by_hist.values():
                for k in group:
                    for k2 in group:
                        if k2 != k and contexts[k] < contexts[k2]:
                            den_sup[k] += self.den[k2]
                            num_sup[k] += self.num[k2]
        self.den_sup, self.num_sup = den_sup, num_sup
        with np.errstate(invalid="ignore", divide="ignore"):
            self.prob = num_sup / den_sup[:, None]
        self._memo = {}
        self._bits_memo = {}

    def __len__(self):
        return len(self.contexts)

    def mask(self, context):
        cols = []
        for it in context:
            j = self.col.get(it)
            if j is None:
                return None
            cols.append(j)
        if not cols:
            return np.ones(len(self.contexts), dtype=bool)
        return self.matrix[:, cols].all(axis=1)

    def counts(self, context):
        """``(num vector over values, den)`` for ``context``."""
        m = self.mask(context)
        if m is None:
            return np.zeros(len(self.values), dtype=np.int64), 0
        return self.num[m].sum(axis=0), int(self.den[m].sum())

    def bits(self, context):
        """Bitmask of ``context`` over the columns, or None if an item is unknown."""
        b = 0
        for it in context:
            j = self.col.get(it)
            if j is None:
                return None
            b |= 1 << j
        return b

    def context_of(self, bits):
        out, j = [], 0
        while bits:
            if bits & 1:
                out.append(self.items[j])
            bits >>= 1
            j += 1
        return frozenset(out)

    def bits_memo(self, epsilon):
        """Memo ``bits -> (p list, den, sound bitmask, zero bitmask, num)`` for one epsilon."""
        return self._bits_memo.setdefault(epsilon, {})

    def evaluate_bits(self, bits, epsilon, rows=None):
        """Counts and ratio-band soundness for a bitmask context.

        Returns ``(p, den, sound, zero, num)`` where ``sound`` and ``zero``
        are bitmasks over value columns (``zero``: numerator is 0).
        """
        memo = self.bits_memo(epsilon)
        hit = memo.get(bits)
        if hit is None:
            if rows is None:
                cols, b = [], bits
                while b:
                    low = b & -b
                    cols.append(low.bit_length() - 1)
                    b ^= low
                rows = np.flatnonzero(self.matrix[:, cols].all(axis=1)) if cols \
                    else np.arange(len(self.contexts))
            num = self.num[rows].sum(axis=0)
            den = int(self.den[rows].sum())
            zero = _bitmask(num == 0)
            if den:
                p = num / den
                with np.errstate(divide="ignore", invalid="ignore"):
                    sound = _bitmask(band_check(p, self.prob[rows], epsilon))
                hit = (p.tolist(), den, sound, zero, num)
            else:
                hit = ([0.0] * len(self.values), 0, 0, zero, num)
            memo[bits] = hit
        return hit

    def evaluate_children(self, bits, child_bits, rows, member, epsilon):
        """``evaluate_bits`` for ``bits | b`` for every b in ``child_bits`` in one shot.

        ``rows`` are the rows matching ``bits``; ``member[r, c]`` says whether
        row ``rows[r]`` also holds child c's extra item.
        """
        memo = self.bits_memo(epsilon)
        num = member.T.astype(np.int64) @ self.num[rows]
        den = member.T.astype(np.int64) @ self.den[rows]
        P = self.prob[rows][:, None, :]
        m3 = member[:, :, None]
        hi = np.where(m3, P, -np.inf).max(axis=0)
        lo = np.where(m3, P, np.inf).min(axis=0)
        p = num / den[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            ok = (p / hi >= 1 - epsilon) & (p / lo <= 1 + epsilon)
        ok |= (p == 0) & (hi == 0)
        nbytes = (len(self.values) + 7) // 8
        sound = np.packbits(ok, axis=1, bitorder="little").tobytes()
        zero = np.packbits(num == 0, axis=1, bitorder="little").tobytes()
        plist = p.tolist()
        for c, b in enumerate(child_bits):
            key = bits | b
            if key not in memo:
                sl = slice(c * nbytes, (c + 1) * nbytes)
                memo[key] = (plist[c], int(den[c]), int.from_bytes(sound[sl], "little"),
                             int.from_bytes(zero[sl], "little"), num[c])

    def evaluate(self, context, epsilon):
        """Counts plus, per value, whether every matching row satisfies the ratio band.

        Returns ``(num, den, sound)``; ``sound[v]`` is True when
        ``p(v|context) / p(v|K)`` lies in ``[1-eps, 1+eps]`` for every observed
        complete context K containing ``context`` (0/0 counts as equal).
        """
        key = (context, epsilon)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        m = self.mask(context)
        if m is None or not m.any():
            nv = len(self.values)
            hit = (np.zeros(nv, dtype=np.int64), 0, np.zeros(nv, dtype=bool))
        else:
            num = self.num[m].sum(axis=0)
            den = int(self.den[m].sum())
            with np.errstate(divide="ignore", invalid="ignore"):
                hit = (num, den, band_check(num / den, self.prob[m], epsilon))
        self._memo[key] = hit
        return hit


def band_check(p_sub, p_rows, epsilon):
    """Vectorised ``p_sub / p_row in [1-eps, 1+eps]`` over all rows, per column.

    Callers silence numpy's divide warnings (0/0 is handled explicitly).
    """
    hi = p_rows.max(axis=0)
    lo = p_rows.min(axis=0)
    ok = (p_sub / hi >= 1 - epsilon) & (p_sub / lo <= 1 + epsilon)
    return ok | ((p_sub == 0) & (hi == 0))


def _bitmask(flags):
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def ratio_ok(p_sub, p_full, epsilon):
    """Scalar form of the ratio band; 0/0 counts as a ratio of 1."""
    if p_full == 0:
        return p_sub == 0
    r = p_sub / p_full
    return 1 - epsilon <= r <= 1 + epsilon


def count_ngrams(sentences, tagset):
    """Count unigrams, padded trigrams, bigram histories and sentence-initial pairs."""
    b = tagset.boundary.id
    unigram, trigram, initial = Counter(), Counter(), Counter()
    n = 0
    for sent in sentences:
        if not sent.words:
            continue
        n += 1
        tags = sent.tags
        unigram.update(tags)
        padded = [b, b] + list(tags) + [b]
        for i in range(2, len(padded)):
            trigram[padded[i - 2], padded[i - 1], padded[i]] += 1
        initial[tags[0], tags[1] if len(tags) > 1 else b] += 1
    return CountTables(tagset, unigram, trigram, initial, n)


def lexical_probability(word, tag, lexicon, open_tags=()):
    """p(word | tag) = f(word, tag) / f(tag); uniform over ``open_tags`` for unknown words."""
    if word not in lexicon:
        return 1.0 / len(open_tags) if tag in open_tags else 0.0
    f_wt = lexicon.count(word, tag)
    if not f_wt:
        return 0.0
    return f_wt / lexicon.tag_totals()[tag]


def trigram_transition(t0, t1, t2, tables):
    """f(t2 t1 t0) / f(t2 t1), or 0 when the history is unseen."""
    den = tables.bigram.get((t2, t1), 0)
    if not den:
        return 0.0
    return tables.trigram.get((t2, t1, t0), 0) / den


@dataclass
class HistogramRow:
    low: int
    high: int  # None = open-ended
    count: int
    percent: float

    @property
    def label(self):
        if self.high is None:
            return f">= {self.low}"
        if self.low == self.high:
            return str(self.low)
        return f"{self.low} - {self.high}"


def _check_buckets(buckets):
    spans = sorted(buckets, key=lambda b: b[0])
    if not spans or spans[0][0] != 1:
        raise ValueError("buckets must start at 1")
    for (lo, hi), (nlo, _) in zip(spans, spans[1:]):
        if hi is None or hi < lo or nlo != hi + 1:
            raise ValueError("buckets must partition [1, inf) without gaps")
    if spans[-1][1] is not None:
        raise ValueError("last bucket must be open-ended")


def trigram_histogram(tables, buckets=DEFAULT_BUCKETS, include_padding=False):
    """Distinct trigrams per frequency range, in the order of ``buckets``."""
    _check_buckets(buckets)
    b = tables.tagset.boundary.id
    freqs = [n for key, n in tables.trigram.items()
             if n > 0 and (include_padding or b not in key)]
    total = len(freqs)
    rows = []
    for lo, hi in buckets:
        c = sum(1 for f in freqs if f >= lo and (hi is None or f <= hi))
        rows.append(HistogramRow(lo, hi, c, 100.0 * c / total if total else 0.0))
    return rows


def format_histogram(rows):
    total = sum(r.count for r in rows)
    lines = [f"{'frequency range':>16}  {'trigrams':>9}  {'percent':>8}"]
    for r in rows:
        lines.append(f"{r.label:>16}  {r.count:>9,}  {r.percent:>7.3g}%")
    lines.append(f"{'sum':>16}  {total:>9,}  {100.0 if total else 0.0:>7.3g}%")
    return "\n".join(lines) + "\n"


def histogram_tsv(rows):
    out = ["range\tcount\tpercent"]
    out += [f"{r.label}\t{r.count}\t{r.percent:.4f}" for r in rows]
    return "\n".join(out) + "\n"

