"""Viterbi decoding of the HMM objective, baselines and a brute-force oracle.

The score of a tag sequence is the product over positions of the
transition probability (histories padded with the boundary tag) and the
lexical probability p(w|t).  Scores are kept as natural logs; a zero
probability is -inf.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .counts import lexical_probability

BRUTE_FORCE_CAP = 10 ** 6
# log scores this close count as tied; float sums are not associative, so
# mathematically equal paths can differ in the last bits
TIE_TOL = 1e-9


def _near(m):
    return m - TIE_TOL * max(1.0, abs(m)) if np.isfinite(m) else m


def _first_near_max(x, axis=0):
    """Index of the first entry within tie tolerance of the max along ``axis``."""
    m = np.max(x, axis=axis, keepdims=True)
    lim = np.where(np.isfinite(m), m - TIE_TOL * np.maximum(1.0, np.abs(m)), m)
    return np.argmax(x >= lim, axis=axis)


class DecodeCapError(ValueError):
    """Too many candidate sequences for exhaustive enumeration."""


@dataclass
class DecodeResult:
    tags: list
    log_prob: float
    fallback: bool = False


class LexicalModel:
    """Candidate tags and p(w|t) per word.

    Known words take the tags seen with them in the lexicon.  Unknown words
    take every open-class tag, each with probability 1/|open tags|.
    """

    def __init__(self, lexicon, open_tags, tagset=None):
        self.lexicon = lexicon
        self.open_tags = sorted(open_tags)
        if not self.open_tags and tagset is not None:
            self.open_tags = [t.id for t in tagset.tags if t.id != tagset.boundary.id]
        self._open = set(self.open_tags)
        self._memo = {}

    def candidates(self, word):
        """``(tag ids ascending, lexical probabilities)``."""
        hit = self._memo.get(word)
        if hit is None:
            tags = self.lexicon.candidates(word) if word in self.lexicon else self.open_tags
            probs = np.array([lexical_probability(word, t, self.lexicon, self._open) for t in tags],
                             dtype=float)
            hit = self._memo[word] = (tuple(tags), probs)
        return hit

    def best_tag(self, word):
        """Lexically most frequent tag (smallest id on ties)."""
        if word in self.lexicon:
            items = self.lexicon.items(word)
            return max(items, key=lambda kv: (kv[1], -kv[0]))[0]
        return self.open_tags[0] if self.open_tags else None


def _log(p):
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(p, dtype=float))


@dataclass
class Lattice:
    words: list
    candidates: list  # tuple of tag ids per position
    log_lex: list  # float arrays aligned with candidates

    @classmethod
    def build(cls, words, lexical):
        cands, logs = [], []
        for w in words:
            tags, probs = lexical.candidates(w)
            cands.append(tags)
            logs.append(_log(probs))
        return cls(list(words), cands, logs)

    def n_paths(self):
        n = 1
        for c in self.candidates:
            n *= len(c)
        return n


class TransitionCache:
    """Log transition vectors per (t2, t1, candidate tuple).

    Meant to live for one decoding run only.
    """

    def __init__(self, source):
        self.source = source
        self._memo = {}

    def log_row(self, t2, t1, cands):
        key = (t2, t1, cands)
        row = self._memo.get(key)
        if row is None:
            row = self._memo[key] = _log(self.source.batch(t2, t1, cands))
        return row


def lexical_baseline(words, lexical):
    return [lexical.best_tag(w) for w in words]


def viterbi(words, lexical, source, order=2, boundary=0, cache=None):
    """Best tag sequence under the HMM objective.

    Backpointer ties go to the smallest tag id; among equal final states the
    smallest last tag, then the smallest previous tag, wins.  Scores within
    ``TIE_TOL`` (relative) of each other are ties.  When every
    path has probability zero the lexical baseline is returned with
    ``fallback=True`` and ``log_prob=-inf``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if not words:
        return DecodeResult([], 0.0)
    cache = cache or TransitionCache(source)
    lat = Lattice.build(words, lexical)
    cands, loglex = lat.candidates, lat.log_lex
    bound = (boundary,)
    n = len(words)
    back = []
    if order == 1:
        score = (0.0 + cache.log_row(None, boundary, cands[0])) + loglex[0]
        for i in range(1, n):
            T = np.stack([cache.log_row(None, b, cands[i]) for b in cands[i - 1]])
            tot = score[:, None] + T
            arg = _first_near_max(tot, axis=0)
            score = tot[arg, np.arange(len(cands[i]))] + loglex[i]
            back.append(arg)
        best = int(_first_near_max(score))
        log_prob = float(score[best])
        path = [best]
        for i in range(n - 1, 0, -1):
            path.append(int(back[i - 1][path[-1]]))
        path.reverse()
        tags = [cands[i][k] for i, k in enumerate(path)]
    else:
        score = ((0.0 + cache.log_row(boundary, boundary, cands[0])) + loglex[0])[None, :]
        for i in range(1, n):
            A = cands[i - 2] if i >= 2 else bound
            B = cands[i - 1]
            T = np.stack([np.stack([cache.log_row(a, b, cands[i]) for b in B]) for a in A])
            tot = score[:, :, None] + T
            arg = _first_near_max(tot, axis=0)
            best_prev = np.take_along_axis(tot, arg[None], axis=0)[0]
            score = best_prev + loglex[i][None, :]
            back.append(arg)
        flat = int(_first_near_max(score.T.ravel()))
        nb = score.shape[0]
        c_idx, b_idx = divmod(flat, nb)
        log_prob = float(score[b_idx, c_idx])
        idx = [0] * n
        idx[n - 1] = c_idx
        if n >= 2:
            idx[n - 2] = b_idx
        for i in range(n - 1, 1, -1):
            a = int(back[i - 1][idx[i - 1], idx[i]])
            idx[i - 2] = a
        tags = [cands[i][k] for i, k in enumerate(idx)]
    if log_prob == -math.inf:
        return DecodeResult(lexical_baseline(words, lexical), -math.inf, True)
    return DecodeResult(tags, log_prob)


def path_log_prob(words, tags, lexical, source, order=2, boundary=0, cache=None):
    """Log score of one given tag sequence, accumulated left to right."""
    cache = cache or TransitionCache(source)
    lat = Lattice.build(words, lexical)
    s = 0.0
    for i, t in enumerate(tags):
        cands = lat.candidates[i]
        if t not in cands:
            return -math.inf
        k = cands.index(t)
        t1 = tags[i - 1] if i >= 1 else boundary
        t2 = (tags[i - 2] if i >= 2 else boundary) if order == 2 else None
        s = (s + cache.log_row(t2, t1, cands)[k]) + lat.log_lex[i][k]
    return s


def brute_force_decode(words, lexical, source, order=2, boundary=0, cap=BRUTE_FORCE_CAP):
    """Exhaustive argmax with the same scoring and tie-break as ``viterbi``.

    Among maximal sequences (within ``TIE_TOL``) the one whose reversed
    tag-id sequence is lexicographically smallest is returned.
    """
    if not words:
        return DecodeResult([], 0.0)
    lat = Lattice.build(words, lexical)
    if lat.n_paths() > cap:
        raise DecodeCapError(f"{lat.n_paths()} candidate sequences exceed the cap of {cap}")
    cache = TransitionCache(source)
    scored = [(path_log_prob(words, tags, lexical, source, order, boundary, cache), tags)
              for tags in itertools.product(*lat.candidates)]
    top = max(s for s, _ in scored)
    if top == -math.inf:
        return DecodeResult(lexical_baseline(words, lexical), -math.inf, True)
    lim = _near(top)
    s, tags = min(((s, t) for s, t in scored if s >= lim), key=lambda st: st[1][::-1])
    return DecodeResult(list(tags), s)


class Tagger:
    """Decode many sentences with one source; transition rows are memoized per run."""

    def __init__(self, source, lexical, order=2, boundary=0, baseline=False):
        self.source = source
        self.lexical = lexical
        self.order = order
        self.boundary = boundary
        self.baseline = baseline

    def tag_sentences(self, sentences):
        cache = TransitionCache(self.source) if self.source is not None else None
        out = []
        for words in sentences:
            if self.baseline:
                out.append(DecodeResult(lexical_baseline(words, self.lexical), math.nan))
            else:
                out.append(viterbi(words, self.lexical, self.source, self.order, self.boundary, cache))
        return out
