"""
Splitting a tag transition into feature-value decisions
=======================================================

A tag like ``pos=ADJ|gen=FEM|num=SG`` is predicted one fv-pair at a time,
each conditioned on the two previous tags and on the pairs already chosen.
Here we build a handful of counts by hand and look at the pieces.
"""

from fstagger import (CountTables, PFRSource, TagSet, build_pfr_store, explain_transition,
                      reduce_context, trigram_transition)
from fstagger.features import complete_context

ts = TagSet()
det_f = ts.parse_tag("pos=DET|gen=FEM|num=SG|typ=DEF").id
det_m = ts.parse_tag("pos=DET|gen=MAS|num=SG|typ=DEF").id
noun_f = ts.parse_tag("pos=NOUN|gen=FEM|num=SG").id
noun_m = ts.parse_tag("pos=NOUN|gen=MAS|num=SG").id
adj_f = ts.parse_tag("pos=ADJ|gen=FEM|num=SG").id
adj_m = ts.parse_tag("pos=ADJ|gen=MAS|num=SG").id
prep = ts.parse_tag("pos=PREP").id
verb = ts.parse_tag("pos=VERB|num=SG|per=3").id

# trigram type -> frequency; feminine nouns are mostly followed by feminine adjectives
counts = {(det_f, noun_f, adj_f): 44, (prep, noun_f, adj_f): 126, (prep, noun_f, adj_m): 4,
          (det_m, noun_m, adj_m): 50, (det_m, noun_m, adj_f): 2, (det_f, noun_f, verb): 60}
unigram = {}
for (_, _, c), n in counts.items():
    unigram[c] = unigram.get(c, 0) + n
tables = CountTables(ts, unigram, counts)

# the plain trigram estimate sees only whole tags
print("trigram p(ADJ.f | DET.f NOUN.f) =", round(trigram_transition(adj_f, noun_f, det_f, tables), 4))

# the gender decision for the adjective, conditioned on everything in sight ...
fem = ts.lookup_fv("gen", "FEM")
full = complete_context(ts, det_f, noun_f, [ts.lookup_fv("pos", "ADJ")])
print("complete context:", ts.render_context(full))

# ... can be cut down to the few pairs that matter, within a 3% tolerance
small = reduce_context(fem, full, tables, 0.03)
num, den = tables.fv_conditional_counts(fem, small)
print("reduced context: ", ts.render_context(small), f"-> {num}/{den} = {num / den:.3f}")

# method 3 keeps fixed patterns without reduction; method 1 reduces everything it sees
for method in ("1", "3"):
    store = build_pfr_store(tables, method)
    print(f"\nmethod {method}: {len(store)} rules")
    print(explain_transition(adj_f, noun_f, det_f, PFRSource(store, tables)).render(ts))
