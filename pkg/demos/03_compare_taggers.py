"""
Trigram tagger vs feature-structure taggers
===========================================

Train on 5,000 generated tokens, test on 1,500 held-out ones.  Method 1
is left out because it is the slowest to train; add it to ``methods`` to
see all four.
"""

import time

from fstagger import compare_taggers, format_report, generate, read_tagged_corpus, train

train_sents, ts = read_tagged_corpus(generate("french-like", 5000, seed=1))
gold, _ = read_tagged_corpus(generate("french-like", 1500, seed=2), ts)

methods = ["2", "3", "4"]
t = time.perf_counter()
model = train(train_sents, ts, methods[0], extra_methods=methods[1:])
print(f"trained methods {', '.join(methods)} in {time.perf_counter() - t:.1f}s")
for m, store in sorted(model.stores.items()):
    print(f"  method {m}: {len(store)} rules")

report = compare_taggers(gold, model, ["tT1", "tT2", "lpT"] + [f"fsT{m}" for m in methods])
print(format_report(report))

# sentences where every path had probability zero fall back to the lexical baseline
for row in report.rows:
    print(f"{row.tagger:<5} fallback sentences: {row.fallbacks}")
