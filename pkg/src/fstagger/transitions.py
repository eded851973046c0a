"""Tag transition probabilities p(t_i | t_{i-2}, t_{i-1}).

Feature-structure sources rebuild a tag probability as the chain product
of its fv-pair conditionals, each taken in the context of the two previous
tags plus the fv-pairs of t_i that come earlier in the chain order.
"""

from dataclasses import dataclass, field

import numpy as np

from .counts import trigram_transition
from .dtree import tree_probability
from .features import complete_context


class TrigramSource:
    """Relative-frequency tag n-grams.

    The bigram estimate sums trigram counts over t_{i-2}, so both orders
    come from the same padded table.
    """

    kind = "trigram"

    def __init__(self, tables, order=2):
        if order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        self.tables = tables
        self.order = order
        self._pair = {}
        self._hist = {}
        for (a, b, c), n in tables.trigram.items():
            self._pair[b, c] = self._pair.get((b, c), 0) + n
            self._hist[b] = self._hist.get(b, 0) + n

    def transition(self, t0, t1, t2):
        """Order-2 relative frequency, or the bigram one when ``t2`` is None."""
        if t2 is None or self.order == 1:
            den = self._hist.get(t1, 0)
            return self._pair.get((t1, t0), 0) / den if den else 0.0
        return trigram_transition(t0, t1, t2, self.tables)

    def batch(self, t2, t1, candidates):
        return np.array([self.transition(c, t1, t2) for c in candidates], dtype=float)


class FeatureSource:
    """Base for sources that supply fv-pair conditionals."""

    kind = "fs"

    def __init__(self, tables):
        self.tables = tables
        self.tagset = tables.tagset
        self._marginal = {}

    def marginal(self, event):
        p = self._marginal.get(event)
        if p is None:
            num, den = self.tables.fv_marginal(event)
            p = self._marginal[event] = num / den if den else 0.0
        return p

    def conditional(self, event, context):
        raise NotImplementedError

    def explain(self, event, context):
        """``(probability, evidence lines)`` for one chain step."""
        raise NotImplementedError

    def transition(self, t0, t1, t2):
        return tag_transition(t0, t1, t2, self)

    def batch(self, t2, t1, candidates):
        return batch_transitions(t2, t1, candidates, self)


class PFRSource(FeatureSource):
    """Mean of all stored PFRs whose context is contained in the query."""

    def __init__(self, store, tables):
        super().__init__(tables)
        self.store = store
        self.kind = f"pfr{store.method}"

    def conditional(self, event, context):
        p = self.store.mean_probability(event, context)
        return self.marginal(event) if p is None else p

    def explain(self, event, context):
        recs = self.store.matching(event, context)
        if not recs:
            return self.marginal(event), [f"no PFR matches; marginal {self.marginal(event):.4g}"]
        lines = [r.render(self.tagset) + f" (={r.probability:.4g})" for r in recs]
        p = self.store.mean_probability(event, context)
        if len(recs) > 1:
            lines.append(f"mean of {len(recs)} PFRs = {p:.4g}")
        return p, lines


class TreeSource(FeatureSource):
    """One decision tree per fv-pair; empty leaves and unseen events back off."""

    kind = "tree"

    def __init__(self, trees, tables):
        super().__init__(tables)
        self.trees = trees

    def conditional(self, event, context):
        tree = self.trees.get(event)
        p = None if tree is None else tree_probability(tree, context)
        return self.marginal(event) if p is None else p

    def explain(self, event, context):
        tree = self.trees.get(event)
        if tree is None:
            return self.marginal(event), [f"no tree; marginal {self.marginal(event):.4g}"]
        leaf, path = tree.leaf_for(context)
        steps = " ".join(("+" if hit else "-") + self.tagset.render(t) for t, hit in path) or "(root)"
        p = leaf.probability
        if p is None:
            return self.marginal(event), [f"path {steps} -> 0/0; marginal {self.marginal(event):.4g}"]
        return p, [f"path {steps} -> {leaf.numerator}/{leaf.denominator} (={p:.4g})"]


class ExactSource(FeatureSource):
    """Relative frequencies taken directly at the query context (no reduction).

    Queried with complete contexts this is the full-information limit of the
    PFR methods: the chain product telescopes to the trigram ratio.
    """

    kind = "exact"

    def conditional(self, event, context):
        num, den = self.tables.fv_conditional_counts(event, frozenset(context))
        return num / den if den else self.marginal(event)

    def explain(self, event, context):
        num, den = self.tables.fv_conditional_counts(event, frozenset(context))
        if not den:
            return self.marginal(event), [f"context unseen; marginal {self.marginal(event):.4g}"]
        return num / den, [f"{num}/{den}"]


def fv_conditional(event, context, source):
    return source.conditional(event, context)


def _chain(tagset, t0):
    return tagset.decompose(t0)


def tag_transition(t0, t1, t2, source):
    """Chain product over the fv-pairs of ``t0`` in canonical order (0 stays 0)."""
    ts = source.tagset
    base = complete_context(ts, t2, t1)
    p = 1.0
    prefix = []
    for event in _chain(ts, t0):
        p *= source.conditional(event, base | {(0, e) for e in prefix})
        if p == 0.0:
            return 0.0
        prefix.append(event)
    return p


def batch_transitions(t2, t1, candidates, source):
    """``tag_transition`` for each candidate, sharing conditionals across common prefixes."""
    ts = source.tagset
    base = complete_context(ts, t2, t1)
    memo = {}
    out = np.empty(len(candidates), dtype=float)
    for k, t0 in enumerate(candidates):
        p = 1.0
        prefix = ()
        for event in _chain(ts, t0):
            key = (prefix, event)
            q = memo.get(key)
            if q is None:
                q = memo[key] = source.conditional(event, base | {(0, e) for e in prefix})
            p *= q
            if p == 0.0:
                break
            prefix += (event,)
        out[k] = p
    return out


@dataclass
class ExplainStep:
    event: int
    context: frozenset
    probability: float
    evidence: list = field(default_factory=list)


@dataclass
class Explanation:
    t0: int
    t1: int
    t2: int
    steps: list
    product: float
    trigram: float = None

    def render(self, tagset):
        head = (f"p({tagset.format_tag(self.t0)} | {tagset.format_tag(self.t2)}, "
                f"{tagset.format_tag(self.t1)})")
        lines = [head]
        for st in self.steps:
            lines.append(f"  p({tagset.render((0, st.event))} | {tagset.render_context(st.context)})"
                         f" = {st.probability:.4g}")
            lines += [f"      {e}" for e in st.evidence]
        lines.append(f"  product = {' * '.join(f'{s.probability:.4g}' for s in self.steps)}"
                     f" = {self.product:.4g}")
        if self.trigram is not None:
            lines.append(f"  trigram relative frequency = {self.trigram:.4g}")
        return "\n".join(lines) + "\n"


def explain_transition(t0, t1, t2, source):
    """The chain decomposition of one transition with the evidence for each factor."""
    ts = source.tagset
    base = complete_context(ts, t2, t1)
    steps, prefix, p = [], [], 1.0
    for event in _chain(ts, t0):
        ctx = base | {(0, e) for e in prefix}
        q, evidence = source.explain(event, ctx)
        steps.append(ExplainStep(event, ctx, q, evidence))
        p *= q
        prefix.append(event)
    return Explanation(t0, t1, t2, steps, p, trigram_transition(t0, t1, t2, source.tables))


def chain_product(probabilities):
    """Product of conditionals in the given order."""
    p = 1.0
    for q in probabilities:
        p *= q
    return p


__all__ = ["TrigramSource", "PFRSource", "TreeSource", "ExactSource", "fv_conditional", "tag_transition",
           "batch_transitions", "explain_transition", "chain_product"]
