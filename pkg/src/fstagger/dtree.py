"""Binary probability decision trees, one per fv-pair (method 4).

Each tree classifies trigram instances by whether t_i carries the event
fv-pair.  Internal nodes test the presence of one positioned fv-pair of
the event's complete context; leaves hold the exact fraction of instances
reaching them that carry the event.
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .pfr import TrainingConfig


@dataclass(frozen=True)
class Leaf:
    numerator: int
    denominator: int

    @property
    def probability(self):
        return self.numerator / self.denominator if self.denominator else None


@dataclass(frozen=True)
class Internal:
    test: tuple  # positioned fv-pair
    present: "Node"
    absent: "Node"


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class DecisionTree:
    event: int
    root: Node

    def leaf_for(self, context):
        """``(leaf, [(test, taken_present), ...])`` reached by ``context``."""
        node, path = self.root, []
        while isinstance(node, Internal):
            hit = node.test in context
            path.append((node.test, hit))
            node = node.present if hit else node.absent
        return node, path

    def paths(self):
        """Every ``(present tests, absent tests, leaf)`` from the root."""
        stack = [(self.root, (), ())]
        while stack:
            node, pos, neg = stack.pop()
            if isinstance(node, Leaf):
                yield frozenset(pos), frozenset(neg), node
            else:
                stack.append((node.absent, pos, neg + (node.test,)))
                stack.append((node.present, pos + (node.test,), neg))

    def depth(self):
        def d(node):
            return 0 if isinstance(node, Leaf) else 1 + max(d(node.present), d(node.absent))
        return d(self.root)

    def n_leaves(self):
        return sum(1 for _ in self.paths())


def entropy_bits(k, n):
    """Binary entropy of k positives out of n, in bits."""
    if n <= 0 or k <= 0 or k >= n:
        return 0.0
    p = k / n
    return -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


def information_gain(instances, test):
    """Gain in bits of splitting ``instances`` on presence of ``test``.

    ``instances`` is an iterable of ``(context, has_event, weight)``.
    """
    n = k = pn = pk = 0
    for ctx, has_event, w in instances:
        n += w
        k += w if has_event else 0
        if test in ctx:
            pn += w
            pk += w if has_event else 0
    if n == 0:
        return 0.0
    an, ak = n - pn, k - pk
    return entropy_bits(k, n) - (pn / n) * entropy_bits(pk, pn) - (an / n) * entropy_bits(ak, an)


def _entropy_vec(k, n):
    with np.errstate(divide="ignore", invalid="ignore"):
        p = k / n
        h = -(p * np.log2(p) + (1 - p) * np.log2(1 - p))
    return np.where((n > 0) & (k > 0) & (k < n), h, 0.0)


def build_tree(event, tables, config=None):
    """Grow the tree for ``event`` over all trigram instances.

    At each node every candidate test that splits the node into two
    non-empty parts is scored; the best (first in column order on ties) is
    used unless its gain is below ``min_gain`` (or zero), the node holds
    fewer than ``min_node_freq`` instances, or the smaller part would.
    """
    config = config or TrainingConfig()
    ts = tables.tagset
    lat = tables.lattice(ts.feature_of(event))
    j = lat.value_col.get(event)
    W = lat.den
    K = lat.num[:, j] if j is not None else np.zeros(len(lat), dtype=np.int64)

    def grow(rows, used):
        n = int(W[rows].sum())
        k = int(K[rows].sum())
        leaf = Leaf(k, n)
        if n == 0 or n < config.min_node_freq:
            return leaf
        sub = lat.matrix[rows]
        pn = W[rows] @ sub
        pk = K[rows] @ sub
        an, ak = n - pn, k - pk
        gain = entropy_bits(k, n) - (pn / n) * _entropy_vec(pk, pn) - (an / n) * _entropy_vec(ak, an)
        valid = (pn > 0) & (an > 0)
        if used:
            valid[list(used)] = False
        if not valid.any():
            return leaf
        gain = np.where(valid, gain, -np.inf)
        best = int(np.argmax(gain))
        if gain[best] <= 0 or gain[best] < config.min_gain:
            return leaf
        if min(pn[best], an[best]) < config.min_node_freq:
            return leaf
        hit = sub[:, best]
        return Internal(lat.items[best], grow(rows[hit], used | {best}),
                        grow(rows[~hit], used | {best}))

    return DecisionTree(event, grow(np.arange(len(lat)), frozenset()))


def build_trees(tables, config=None):
    """One tree per fv-pair observed in t_i, keyed by fv id."""
    ts = tables.tagset
    events = sorted({fv for (_, _, c) in tables.trigram for fv in ts.tags[c].pairs}, key=ts.fv_key)
    return {e: build_tree(e, tables, config) for e in events}


NO_INFORMATION = None


def tree_probability(tree, context) -> Optional[float]:
    """Leaf probability for ``context``, or None for an empty (0/0) leaf."""
    leaf, _ = tree.leaf_for(context)
    return leaf.probability


def dump_tree(tree, tagset):
    lines = [f"tree {tagset.render((0, tree.event))}"]

    def walk(node, indent, mark):
        pad = "  " * indent + mark
        if isinstance(node, Leaf):
            p = "n/a" if node.probability is None else f"{node.probability:.4g}"
            lines.append(f"{pad}{node.numerator}/{node.denominator} (={p})")
        else:
            lines.append(f"{pad}?{tagset.render(node.test)}")
            walk(node.present, indent + 1, "+ ")
            walk(node.absent, indent + 1, "- ")

    walk(tree.root, 0, "")
    return "\n".join(lines) + "\n"


def tree_to_json(node, tagset):
    if isinstance(node, Leaf):
        return {"num": node.numerator, "den": node.denominator}
    return {"test": tagset.render(node.test), "present": tree_to_json(node.present, tagset),
            "absent": tree_to_json(node.absent, tagset)}


def tree_from_json(data, tagset):
    if "test" in data:
        return Internal(tagset.parse_item(data["test"]), tree_from_json(data["present"], tagset),
                        tree_from_json(data["absent"], tagset))
    return Leaf(int(data["num"]), int(data["den"]))
