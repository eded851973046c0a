"""Feature-structure HMM tagger.

Tags are bundles of feature-value pairs.  Transition probabilities are
rebuilt from per-pair conditionals estimated either as reduced-context
relations or with decision trees, then decoded with a second-order
Viterbi search.
"""

from .corpus import Lexicon, Sentence, build_lexicon, read_tagged_corpus, read_untagged
from .counts import CountTables, count_ngrams, format_histogram, trigram_histogram, trigram_transition
from .decoder import DecodeResult, LexicalModel, Tagger, brute_force_decode, viterbi
from .dtree import DecisionTree, build_tree, build_trees, dump_tree, information_gain
from .evaluation import accuracy, compare_taggers, format_report
from .features import FVPair, Tag, TagSet, complete_context
from .generator import generate, get_profile
from .model import Model, load_model, save_model, train
from .pfr import (PFR, PFRStore, TrainingConfig, build_pfr_store, reduce_context,
                  replay_violations)
from .transitions import ExactSource, PFRSource, TreeSource, TrigramSource, explain_transition, tag_transition

__version__ = "0.1.0"

__all__ = [
    "Lexicon", "Sentence", "build_lexicon", "read_tagged_corpus", "read_untagged",
    "CountTables", "count_ngrams", "format_histogram", "trigram_histogram", "trigram_transition",
    "DecodeResult", "LexicalModel", "Tagger", "brute_force_decode", "viterbi",
    "DecisionTree", "build_tree", "build_trees", "dump_tree", "information_gain",
    "accuracy", "compare_taggers", "format_report",
    "FVPair", "Tag", "TagSet", "complete_context",
    "generate", "get_profile",
    "Model", "load_model", "save_model", "train",
    "PFR", "PFRStore", "TrainingConfig", "build_pfr_store", "reduce_context", "replay_violations",
    "ExactSource", "PFRSource", "TreeSource", "TrigramSource", "explain_transition", "tag_transition",
]
