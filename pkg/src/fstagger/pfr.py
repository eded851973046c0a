"""Probabilistic feature relations: preselection, context reduction, storage.

A PFR is a triple ``<event | reduced context ; p>`` where the event is an
fv-pair of the current tag (position 0) and the reduced context is a set
of positioned fv-pairs.  Methods 1-3 differ in how candidate contexts are
preselected; methods 1 and 2 then shrink each candidate while the event's
relative frequency stays within a relative tolerance ``epsilon`` of its
value in every observed complete context the candidate covers.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .counts import ratio_ok
from .features import POS, complete_context, removal_order

log = logging.getLogger(__name__)

METHODS = ("1", "2", "3", "4", "trigram")


class UnusableContextError(ValueError):
    """The context never occurs, so p(event | context) is undefined."""


@dataclass
class TrainingConfig:
    epsilon: float = 0.03
    min_context_freq: int = 5
    min_gain: float = 0.01
    min_node_freq: int = 5
    special_conditions: bool = True

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        for name in ("min_context_freq", "min_gain", "min_node_freq"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    def as_dict(self):
        return {"epsilon": self.epsilon, "min_context_freq": self.min_context_freq,
                "min_gain": self.min_gain, "min_node_freq": self.min_node_freq,
                "special_conditions": self.special_conditions}


@dataclass(frozen=True)
class PFR:
    event: int
    context: frozenset
    numerator: int
    denominator: int

    @property
    def probability(self):
        return self.numerator / self.denominator

    @property
    def fraction(self):
        return Fraction(self.numerator, self.denominator)

    def render(self, tagset):
        return f"{tagset.render((0, self.event))} | {tagset.render_context(self.context)} ; " \
               f"{self.numerator}/{self.denominator}"


class PFRStore:
    """PFRs grouped by event, with a superset-matching index."""

    def __init__(self, method, records=()):
        self.method = str(method)
        self.by_event = {}
        for r in records:
            self.by_event.setdefault(r.event, []).append(r)
        self._index = {}

    def __len__(self):
        return sum(len(v) for v in self.by_event.values())

    def __iter__(self):
        for event in sorted(self.by_event):
            yield from self.by_event[event]

    def __eq__(self, other):
        return (isinstance(other, PFRStore) and self.method == other.method
                and {e: set(v) for e, v in self.by_event.items()}
                == {e: set(v) for e, v in other.by_event.items()})

    def sort(self, tagset):
        for event, recs in self.by_event.items():
            recs.sort(key=lambda r: (len(r.context), sorted(tagset.item_key(i) for i in r.context)))
        self.by_event = dict(sorted(self.by_event.items()))
        self._index.clear()

    def _event_index(self, event):
        idx = self._index.get(event)
        if idx is None:
            recs = self.by_event.get(event, [])
            sizes = np.array([len(r.context) for r in recs], dtype=np.int64)
            probs = ([r.numerator for r in recs], [r.denominator for r in recs])
            postings = {}
            for k, r in enumerate(recs):
                for item in r.context:
                    postings.setdefault(item, []).append(k)
            postings = {it: np.array(ks, dtype=np.int64) for it, ks in postings.items()}
            idx = self._index[event] = (sizes, probs, postings)
        return idx

    def matching_indices(self, event, context):
        """Positions (in ``by_event[event]``) of the PFRs whose context is a subset of ``context``."""
        sizes, _, postings = self._event_index(event)
        if not len(sizes):
            return np.zeros(0, dtype=np.int64)
        hits = [postings[it] for it in context if it in postings]
        if hits:
            counts = np.bincount(np.concatenate(hits), minlength=len(sizes))
        else:
            counts = np.zeros(len(sizes), dtype=np.int64)
        return np.flatnonzero(counts == sizes)

    def matching(self, event, context):
        recs = self.by_event.get(event, [])
        return [recs[k] for k in self.matching_indices(event, context)]

    def mean_probability(self, event, context):
        """Arithmetic mean over all matching PFRs, or None when nothing matches.

        The mean is formed exactly from the integer counts and rounded once.
        """
        idx = self.matching_indices(event, context)
        if not len(idx):
            return None
        nums, dens = self._event_index(event)[1]
        if len(idx) == 1:
            k = int(idx[0])
            return nums[k] / dens[k]
        lcm = math.lcm(*(dens[k] for k in idx))
        return sum(nums[k] * (lcm // dens[k]) for k in idx) / (lcm * len(idx))

    def dump(self, tagset):
        return "".join(r.render(tagset) + "\n" for r in self)


def parse_pfr_line(line, tagset):
    """Inverse of ``PFR.render``."""
    head, _, rest = line.partition("|")
    ctx, _, frac = rest.rpartition(";")
    pos, event = tagset.parse_item(head)
    if pos != 0:
        raise ValueError(f"PFR event must be at position 0: {line!r}")
    num, _, den = frac.strip().partition("/")
    return PFR(event, tagset.parse_context(ctx), int(num), int(den))


# -- subcontext lattice ------------------------------------------------------

def event_context(tagset, t2, t1, t0, event):
    """Complete context of ``event`` in trigram (t2, t1, t0)."""
    feature = tagset.feature_of(event)
    return complete_context(tagset, t2, t1, tagset.prefix_before(t0, feature))


def enumerate_subcontexts(tagset, t2, t1, t0, event):
    """Every subset of the event's complete context in the trigram, smallest first."""
    items = removal_order(tagset, event_context(tagset, t2, t1, t0, event))
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def subcontext_lattice(tagset, trigrams, event):
    lattice = set()
    for t2, t1, t0 in trigrams:
        lattice.update(enumerate_subcontexts(tagset, t2, t1, t0, event))
    return lattice


def frequent_subcontexts(lattice, threshold):
    """All subsets of observed complete contexts occurring at least ``threshold`` times."""
    threshold = max(threshold, 1)
    M = lattice.matrix
    W = lattice.den
    out = []

    def grow(items, rows, start):
        sub = M[rows]
        support = W[rows] @ sub
        for j in range(start, M.shape[1]):
            if support[j] >= threshold:
                ctx = items + (j,)
                out.append(ctx)
                grow(ctx, rows[sub[:, j]], j + 1)

    out.append(())
    grow((), np.arange(M.shape[0]), 0)
    return [frozenset(lattice.items[j] for j in ctx) for ctx in out]


def _method1_eligible(tagset, feature, context, special):
    has_feature = has_pos1 = has_pos0 = False
    for position, fv in context:
        f = tagset.feature_of(fv)
        if f == feature:
            has_feature = True
        if f == POS:
            if position == 1:
                has_pos1 = True
            elif position == 0:
                has_pos0 = True
    if not has_feature:
        return False
    if special:
        return has_pos1 and (has_pos0 or feature == POS)
    return True


def _method1_candidates(tagset, lattice, threshold, special, epsilon=None):
    """``(bitmask, row indices)`` for every frequent method-1 context.

    With the special conditions the pos items of t_{i-1} (and t_i) are fixed
    first.  Items of the event's feature are enumerated before the others,
    so every itemset holding one is reached through a path that starts with
    one and no ineligible itemset is ever visited.  Given ``epsilon`` the
    lattice memo is filled for every candidate along the way.
    """
    feature = lattice.feature
    threshold = max(threshold, 1)
    M, W = lattice.matrix, lattice.den
    anchor_pos = ()
    if special:
        anchor_pos = (1,) if feature == POS else (1, 0)
    anchor_cols = {p: [j for j, (q, fv) in enumerate(lattice.items)
                       if q == p and tagset.feature_of(fv) == POS] for p in anchor_pos}
    fixed = {j for cols in anchor_cols.values() for j in cols}
    free = [j for j in range(M.shape[1]) if j not in fixed]
    free.sort(key=lambda j: (tagset.feature_of(lattice.items[j][1]) != feature, j))
    n_feat = sum(1 for j in free if tagset.feature_of(lattice.items[j][1]) == feature)
    Mf = M[:, free]
    bit = [1 << j for j in free]
    out = []

    def grow(bits, rows, start, stop):
        sub = Mf[rows]
        support = W[rows] @ sub
        ks = np.flatnonzero(support[start:stop] >= threshold) + start
        if not len(ks):
            return
        if epsilon is not None:
            lattice.evaluate_children(bits, [bit[k] for k in ks], rows, sub[:, ks], epsilon)
        for k in ks:
            child_rows = rows[sub[:, k]]
            child = bits | bit[k]
            out.append((child, child_rows))
            grow(child, child_rows, k + 1, len(free))

    anchors = [()]
    for p in anchor_pos:
        anchors = [a + (j,) for a in anchors for j in anchor_cols[p]]
    for anchor in anchors:
        rows = np.flatnonzero(M[:, list(anchor)].all(axis=1)) if anchor else np.arange(M.shape[0])
        if W[rows].sum() < threshold:
            continue
        bits = sum(1 << j for j in anchor)
        if anchor and feature == POS:
            # the t_{i-1} pos item already carries the feature
            if epsilon is not None:
                lattice.evaluate_bits(bits, epsilon, rows)
            out.append((bits, rows))
            grow(bits, rows, 0, len(free))
        else:
            grow(bits, rows, 0, n_feat)
    return out


def preselect_method1(event, tables, config):
    """Frequent subcontexts carrying some value of the event's feature.

    With ``special_conditions`` the context must also hold a pos fv-pair of
    t_{i-1} and (except for pos events, whose chain prefix is empty) of t_i.
    """
    ts = tables.tagset
    lat = tables.lattice(ts.feature_of(event))
    cands = _method1_candidates(ts, lat, config.min_context_freq, config.special_conditions)
    return sorted((lat.context_of(b) for b, _ in cands), key=lambda c: _context_key(ts, c))


def _context_key(tagset, context):
    return (len(context), sorted(tagset.item_key(i) for i in context))


def _entropy_rows(counts):
    """Entropy in bits of each row of a class-count matrix, and the row totals."""
    tot = counts.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = counts / tot[:, None]
        h = -np.where(p > 0, p * np.log2(np.where(p > 0, p, 1)), 0.0).sum(axis=1)
    return np.where(tot > 0, h, 0.0), tot


@dataclass
class ClassNode:
    """Node of the multi-way preselection tree (method 2)."""
    path: tuple  # ((position, feature, fv_id or None), ...)
    weight: int
    attribute: tuple = None  # (position, feature) tested here
    children: dict = None  # fv_id or None (absent) -> ClassNode

    def leaves(self):
        if not self.children:
            yield self
            return
        for key in sorted(self.children, key=lambda k: (k is None, k if k is not None else -1)):
            yield from self.children[key].leaves()


def build_class_tree(tables, feature, config):
    """Multi-way tree classifying complete contexts by the value of ``feature`` at t_i.

    Classes are the observed values plus "absent".  Attributes are positioned
    features of the context; every attribute value, absent included, gets a
    branch.  A node is split while the best gain exceeds ``min_gain`` and its
    frequency exceeds ``min_node_freq``.
    """
    ts = tables.tagset
    lat = tables.lattice(feature)
    classes = np.concatenate([lat.num, (lat.den - lat.num.sum(axis=1))[:, None]], axis=1)
    attrs = sorted({(p, ts.feature_of(fv)) for p, fv in lat.items},
                   key=lambda a: (-a[0],) + (a[1] != POS, a[1]))
    codes, code_values = [], []
    for position, feat in attrs:
        values = sorted({fv for p, fv in lat.items if p == position and ts.feature_of(fv) == feat},
                        key=ts.fv_key)
        col = {fv: j for j, fv in enumerate(values)}
        code = np.full(len(lat), len(values), dtype=np.int64)
        for k, ctx in enumerate(lat.contexts):
            for p, fv in ctx:
                if p == position and fv in col:
                    code[k] = col[fv]
        codes.append(code)
        code_values.append(values + [None])

    def grow(rows, path, used):
        node_counts = classes[rows].sum(axis=0)
        weight = int(node_counts.sum())
        node = ClassNode(path, weight)
        if weight <= config.min_node_freq:
            return node
        h_node, _ = _entropy_rows(node_counts[None, :])
        best, best_gain = None, -1.0
        for a, code in enumerate(codes):
            if a in used:
                continue
            groups = np.zeros((len(code_values[a]), classes.shape[1]))
            np.add.at(groups, code[rows], classes[rows])
            h, tot = _entropy_rows(groups)
            gain = float(h_node[0] - (tot * h).sum() / weight)
            if gain > best_gain + 1e-12:
                best, best_gain = a, gain
        if best is None or best_gain <= config.min_gain:
            return node
        node.attribute = attrs[best]
        node.children = {}
        code = codes[best]
        for j, fv in enumerate(code_values[best]):
            sub = rows[code[rows] == j]
            if len(sub):
                node.children[fv] = grow(sub, path + ((attrs[best][0], attrs[best][1], fv),),
                                         used | {best})
        return node

    return grow(np.arange(len(lat)), (), frozenset())


def preselect_method2(event, tables, config):
    """One context per leaf of the classification tree (its present-valued tests)."""
    ts = tables.tagset
    feature = ts.feature_of(event)
    tree = build_class_tree(tables, feature, config)
    lat = tables.lattice(feature)
    out = set()
    for leaf in tree.leaves():
        ctx = frozenset((p, fv) for p, _, fv in leaf.path if fv is not None)
        if lat.counts(ctx)[1] >= max(config.min_context_freq, 1):
            out.add(ctx)
    return sorted(out, key=lambda c: _context_key(ts, c))


def method3_pattern(tagset, feature, context):
    """Instantiate the fixed method-3 pattern on a complete context, or None."""
    by = {}
    for p, fv in context:
        by[p, tagset.feature_of(fv)] = fv
    if feature == POS:
        if (2, POS) in by and (1, POS) in by:
            return frozenset({(2, by[2, POS]), (1, by[1, POS])})
        return None
    if (1, POS) in by and (1, feature) in by and (0, POS) in by:
        return frozenset({(1, by[1, POS]), (1, by[1, feature]), (0, by[0, POS])})
    return None


def preselect_method3(event, tables, config=None):
    ts = tables.tagset
    feature = ts.feature_of(event)
    lat = tables.lattice(feature)
    threshold = max(config.min_context_freq if config else 0, 1)
    out = {method3_pattern(ts, feature, c) for c in lat.contexts}
    out.discard(None)
    return sorted((c for c in out if lat.counts(c)[1] >= threshold),
                  key=lambda c: _context_key(ts, c))


# -- reduction ---------------------------------------------------------------

def reduce_context(event, context, tables, epsilon):
    """Greedily drop fv-pairs while the event's probability stays within epsilon.

    A removal is accepted when the ratio p(e|reduced) / p(e|C) is within
    ``[1-eps, 1+eps]`` both for the starting context and for every observed
    complete context that still contains the reduced one.  Passes over the
    members (positions 2, 1, 0; chain order inside a position) repeat until
    no member can be dropped.
    """
    ts = tables.tagset
    lat = tables.lattice(ts.feature_of(event))
    num, den, _ = lat.evaluate(context, epsilon)
    if den == 0:
        raise UnusableContextError(ts.render_context(context))
    v = lat.value_col.get(event)
    p0 = num[v] / den if v is not None else 0.0
    current = frozenset(context)
    changed = True
    while changed:
        changed = False
        for item in removal_order(ts, current):
            trial = current - {item}
            n, d, sound = lat.evaluate(trial, epsilon)
            p = n[v] / d if v is not None else 0.0
            if (v is None or sound[v]) and ratio_ok(p, p0, epsilon):
                current = trial
                changed = True
    return current


def is_sound(event, context, tables, epsilon):
    ts = tables.tagset
    lat = tables.lattice(ts.feature_of(event))
    v = lat.value_col.get(event)
    _, den, sound = lat.evaluate(frozenset(context), epsilon)
    return den > 0 and (v is None or bool(sound[v]))


def _bit_indices(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _reduce_bits(lattice, bits, values, epsilon):
    """Greedy reduction of a bitmask context for a bitmask of value columns.

    Bit order is removal order.  Values whose runs are in the same state
    (current context, members left to try in this pass, changed flag) share
    every trial evaluation; values with p = 0 in the start context only need
    the numerator to stay 0.  Returns ``{col: reduced bitmask}``.
    """
    memo = lattice.bits_memo(epsilon)
    evaluate = lattice.evaluate_bits
    p0, _, _, zero0, _ = evaluate(bits, epsilon)
    lo, hi = 1 - epsilon, 1 + epsilon
    pending = {(bits, bits, False): values}
    done = {}
    while pending:
        (cur, rest, changed), vs = pending.popitem()
        if not rest:
            if changed:
                nxt = (((cur, cur, False), vs),)
            else:
                for v in _bit_indices(vs):
                    done[v] = cur
                continue
        else:
            low = rest & -rest
            trial = cur ^ low
            hit = memo.get(trial)
            if hit is None:
                hit = evaluate(trial, epsilon)
            p, _, sound, zero, _ = hit
            ok = vs & zero0 & zero
            for v in _bit_indices(vs & ~zero0):
                if sound >> v & 1 and lo <= p[v] / p0[v] <= hi:
                    ok |= 1 << v
            nxt = (((trial, rest ^ low, True), ok), ((cur, rest ^ low, changed), vs & ~ok))
        for key, group in nxt:
            if group:
                pending[key] = pending.get(key, 0) | group
    return done


def reduce_many(lattice, context, cols, epsilon):
    """``reduce_context`` for several value columns of one lattice; ``{col: context}``."""
    bits = lattice.bits(context)
    if bits is None or not lattice.evaluate_bits(bits, epsilon)[1]:
        raise UnusableContextError(str(sorted(context)))
    mask = sum(1 << v for v in cols)
    return {v: lattice.context_of(b) for v, b in _reduce_bits(lattice, bits, mask, epsilon).items()}


def _reduced_records(tables, feature, candidates, config):
    """Reduce every sound (context, value) candidate; candidates are ``(bits, rows or None)``."""
    lat = tables.lattice(feature)
    eps = config.epsilon
    found = {}
    skipped = 0
    for bits, rows in candidates:
        _, den, sound, _, _ = lat.evaluate_bits(bits, eps, rows)
        if den == 0:
            skipped += 1
            continue
        skipped += len(lat.values) - bin(sound).count("1")
        if not sound:
            continue
        for j, red in _reduce_bits(lat, bits, sound, eps).items():
            if (j, red) not in found:
                _, d, _, _, n = lat.evaluate_bits(red, eps)
                found[j, red] = (int(n[j]), d)
    if skipped:
        log.debug("%s: %d (context, value) candidates fail the ratio band", feature, skipped)
    return [PFR(lat.values[j], lat.context_of(red), n, d) for (j, red), (n, d) in found.items()]


def build_pfr_store(tables, method, config=None):
    """Train PFRs for every fv-pair observed in t_i with method 1, 2 or 3."""
    config = config or TrainingConfig()
    method = str(method)
    if method not in ("1", "2", "3"):
        raise ValueError(f"PFR methods are 1, 2 and 3, not {method!r}")
    ts = tables.tagset
    store = PFRStore(method)
    features = sorted({ts.feature_of(fv) for key in tables.trigram for fv in ts.tags[key[2]].pairs},
                      key=lambda f: (f != POS, f))
    for feature in features:
        lat = tables.lattice(feature)
        if not lat.values:
            continue
        probe = lat.values[0]
        if method == "3":
            for ctx in preselect_method3(probe, tables, config):
                num, den = lat.counts(ctx)
                for j, event in enumerate(lat.values):
                    store.by_event.setdefault(event, []).append(PFR(event, ctx, int(num[j]), den))
            continue
        if method == "1":
            cands = _method1_candidates(ts, lat, config.min_context_freq,
                                        config.special_conditions, config.epsilon)
        else:
            cands = [(lat.bits(c), None) for c in preselect_method2(probe, tables, config)]
        for rec in _reduced_records(tables, feature, cands, config):
            store.by_event.setdefault(rec.event, []).append(rec)
    store.sort(ts)
    return store


def replay_violations(store, tables, epsilon):
    """``(pfr, complete context, ratio)`` for every ratio-band violation.

    Audit path independent of the training lattice: complete contexts and
    their conditionals are recounted directly from the trigram table.
    """
    ts = tables.tagset
    types = sorted(tables.trigram.items())
    t_items = [complete_context(ts, a, b, ts.tags[c].pairs) for (a, b, c), _ in types]
    t_weight = np.array([n for _, n in types], dtype=np.int64)
    col = {it: j for j, it in enumerate(sorted({it for r in t_items for it in r}))}
    T = np.zeros((len(types), len(col)), dtype=bool)
    for i, r in enumerate(t_items):
        T[i, [col[it] for it in r]] = True

    def rows_with(ctx, matrix, colmap):
        if any(it not in colmap for it in ctx):
            return np.zeros(matrix.shape[0], dtype=bool)
        return matrix[:, [colmap[it] for it in ctx]].all(axis=1)

    per_feature = {}
    out = []
    for rec in store:
        feature = ts.feature_of(rec.event)
        if feature not in per_feature:
            ctxs = sorted({complete_context(ts, a, b, ts.prefix_before(c, feature))
                           for (a, b, c), _ in types}, key=lambda c: _context_key(ts, c))
            ccol = {it: j for j, it in enumerate(sorted({it for c in ctxs for it in c}))}
            C = np.zeros((len(ctxs), len(ccol)), dtype=bool)
            for i, c in enumerate(ctxs):
                C[i, [ccol[it] for it in c]] = True
            values = sorted({fv for (_, _, c), _ in types for fv in ts.tags[c].pairs
                             if ts.feature_of(fv) == feature})
            vcol = {fv: j for j, fv in enumerate(values)}
            V = np.zeros((len(types), len(values)), dtype=np.int64)
            for i, ((_, _, c), n) in enumerate(types):
                v = ts.value_of(c, feature)
                if v is not None:
                    V[i, vcol[v]] = n
            dens = np.zeros(len(ctxs), dtype=np.int64)
            nums = np.zeros((len(ctxs), len(values)), dtype=np.int64)
            for i, c in enumerate(ctxs):
                m = rows_with(c, T, col)
                dens[i] = t_weight[m].sum()
                nums[i] = V[m].sum(axis=0)
            per_feature[feature] = (ctxs, ccol, C, dens, nums, vcol)
        ctxs, ccol, C, dens, nums, vcol = per_feature[feature]
        if rec.event in vcol:
            num_e = nums[:, vcol[rec.event]]
        else:
            num_e = np.zeros(len(ctxs), dtype=np.int64)
        matched = np.flatnonzero(rows_with(rec.context, C, ccol))
        p_sub = rec.probability
        p_full = num_e[matched] / dens[matched]
        with np.errstate(divide="ignore", invalid="ignore"):
            r = p_sub / p_full
        ok = np.where(p_full == 0, p_sub == 0, (1 - epsilon <= r) & (r <= 1 + epsilon))
        for k in np.flatnonzero(~ok):
            ratio = math.inf if p_full[k] == 0 else float(r[k])
            out.append((rec, ctxs[matched[k]], ratio))
    return out
