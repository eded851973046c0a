"""
How sparse are trigrams over a rich tagset?
===========================================

A synthetic French-like corpus has a few hundred distinct tags.  Most tag
trigrams are seen exactly once, which is what makes splitting tags into
fv-pairs worthwhile.
"""

from fstagger import (build_tree, count_ngrams, dump_tree, format_histogram, generate,
                      read_tagged_corpus, trigram_histogram)

text = generate("french-like", 10000, seed=1)
sentences, ts = read_tagged_corpus(text)
tables = count_ngrams(sentences, ts)
print(f"{tables.n_tokens} tokens, {tables.n_sentences} sentences, {len(ts) - 1} tags")

# frequency histogram of distinct trigrams (sentence padding excluded)
print(format_histogram(trigram_histogram(tables)))

# a decision tree for one event: which context pairs predict feminine gender?
tree = build_tree(ts.lookup_fv("gen", "FEM"), tables)
print(f"tree depth {tree.depth()}, {tree.n_leaves()} leaves")
print("\n".join(dump_tree(tree, ts).splitlines()[:25]))
