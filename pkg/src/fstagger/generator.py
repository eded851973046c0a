"""Synthetic tagged corpora with feature-structure tags and agreement.

A profile describes frames (terminal categories: a pos plus the features
they carry with weighted values), a weighted grammar over frames,
agreement rules that copy feature values from a nearby preceding token,
and a lexicon of word forms.  The lexicon is built from the profile's own
``lexicon_seed`` so corpora drawn with different sampling seeds share one
vocabulary, which is what a train/test split needs.
"""

import json
import random
from dataclasses import dataclass, field

from .features import TagSet


class ProfileError(ValueError):
    pass


@dataclass
class Frame:
    pos: str
    features: dict  # feature -> [(value, weight), ...]
    lexclass: str = "closed"

    def values(self, feature):
        return [v for v, _ in self.features[feature]]


@dataclass
class AgreementRule:
    targets: tuple
    features: tuple
    sources: tuple
    window: int
    fallback: dict = field(default_factory=dict)


@dataclass
class Profile:
    name: str
    frames: dict
    grammar: dict  # nonterminal -> [(weight, [symbols])]
    start: str
    agreement: list = field(default_factory=list)
    closed: dict = field(default_factory=dict)  # frame -> [([feature=value, ...], [words])]
    lemmas: dict = field(default_factory=dict)  # lexclass -> number of lemmas
    zipf: float = 1.1
    lexicon_seed: int = 0

    def validate(self):
        for nt, rules in self.grammar.items():
            for _, seq in rules:
                for sym in seq:
                    if sym not in self.grammar and sym not in self.frames:
                        raise ProfileError(f"grammar symbol {sym!r} in {nt!r} is undefined")
        if self.start not in self.grammar:
            raise ProfileError(f"start symbol {self.start!r} is undefined")
        for rule in self.agreement:
            if rule.window < 1:
                raise ProfileError("agreement window must be >= 1")
            for t in rule.targets:
                frame = self.frames.get(t)
                if frame is None:
                    raise ProfileError(f"agreement target {t!r} is not a frame")
                for f in rule.features:
                    if f not in frame.features:
                        raise ProfileError(f"agreement feature {f!r} missing in target {t!r}")
            for s in rule.sources:
                frame = self.frames.get(s)
                if frame is None:
                    raise ProfileError(f"agreement source {s!r} is not a frame")
                for f in rule.features:
                    if f in frame.features:
                        vals = set(frame.values(f))
                    elif f in rule.fallback:
                        vals = {rule.fallback[f]}
                    else:
                        raise ProfileError(
                            f"source {s!r} lacks {f!r} and the rule gives no fallback")
                    for t in rule.targets:
                        if not vals <= set(self.frames[t].values(f)):
                            raise ProfileError(
                                f"values of {f!r} in source {s!r} cannot be copied to {t!r}")

    def to_dict(self):
        return {
            "name": self.name, "start": self.start, "zipf": self.zipf,
            "lexicon_seed": self.lexicon_seed, "lemmas": self.lemmas,
            "frames": {k: {"pos": f.pos, "lexclass": f.lexclass,
                           "features": {a: [list(x) for x in b] for a, b in f.features.items()}}
                       for k, f in self.frames.items()},
            "grammar": {k: [[w, list(s)] for w, s in v] for k, v in self.grammar.items()},
            "agreement": [{"targets": list(r.targets), "features": list(r.features),
                           "sources": list(r.sources), "window": r.window,
                           "fallback": r.fallback} for r in self.agreement],
            "closed": {k: [[list(c), list(w)] for c, w in v] for k, v in self.closed.items()},
        }

    @classmethod
    def from_dict(cls, d):
        try:
            frames = {k: Frame(f["pos"], {a: [tuple(x) for x in b] for a, b in f["features"].items()},
                               f.get("lexclass", "closed"))
                      for k, f in d["frames"].items()}
            prof = cls(
                name=d["name"], frames=frames, start=d["start"],
                grammar={k: [(w, list(s)) for w, s in v] for k, v in d["grammar"].items()},
                agreement=[AgreementRule(tuple(r["targets"]), tuple(r["features"]),
                                         tuple(r["sources"]), int(r["window"]),
                                         dict(r.get("fallback", {})))
                           for r in d.get("agreement", [])],
                closed={k: [(list(c), list(w)) for c, w in v] for k, v in d.get("closed", {}).items()},
                lemmas=dict(d.get("lemmas", {})), zipf=float(d.get("zipf", 1.1)),
                lexicon_seed=int(d.get("lexicon_seed", 0)))
        except (KeyError, TypeError) as exc:
            raise ProfileError(f"malformed profile: {exc}") from None
        prof.validate()
        return prof


# -- word forms -------------------------------------------------------------

_CONS = "bcdfglmnprstv"
_VOWS = "aeiou"

VERB_MOD = {"IND": "", "SUBJ": "", "COND": "r", "IMP": ""}
VERB_TNS = {"PRES": "", "IMPF": "ai", "FUT": "er", "PAST": "a", "PERF": "u", "PQP": "iss"}
VERB_PN = {("1", "SG"): "e", ("2", "SG"): "es", ("3", "SG"): "e",
           ("1", "PL"): "ons", ("2", "PL"): "ez", ("3", "PL"): "ent"}


class _Lexicon:
    """Lemma inventories and inflection for the open classes."""

    def __init__(self, profile, closed_words):
        rng = random.Random(profile.lexicon_seed)
        taken = set(closed_words)

        def stem(syllables):
            while True:
                s = "".join(rng.choice(_CONS) + rng.choice(_VOWS) for _ in range(syllables))
                s += rng.choice(_CONS)
                if s not in taken:
                    taken.add(s)
                    return s

        n = profile.lemmas
        self.verbs = [stem(1 + (i % 2)) for i in range(n.get("verb", 0))]
        self.aux = [stem(1) for _ in range(n.get("aux", 0))]
        self.nouns = {"MAS": [], "FEM": []}
        shared = self.verbs[: max(1, len(self.verbs) // 5)] if self.verbs else []
        for i in range(n.get("noun", 0)):
            gen = "MAS" if i % 2 == 0 else "FEM"
            if i < len(shared):
                lemma = shared[i] + "e"  # homograph of a present-tense verb form
            else:
                lemma = stem(2)
                if i % 7 == 3:
                    lemma += "s"  # invariant plural
                elif gen == "FEM" and i % 3 == 0:
                    lemma += "e"
            self.nouns[gen].append(lemma)
        self.adjs = []
        for i in range(n.get("adj", 0)):
            if i < len(shared) // 2:
                self.adjs.append(shared[i] + "é")  # homograph of a participle
            elif i % 3 == 1:
                self.adjs.append(stem(2) + "e")  # same form in both genders
            else:
                self.adjs.append(stem(2))
        self.propns = [stem(2).capitalize() for _ in range(n.get("propn", 0))]
        self.simple = {}  # pos -> word list for generic closed-less classes
        for lexclass, count in n.items():
            if lexclass.startswith("word:"):
                self.simple[lexclass[5:]] = [stem(1 + i % 2) for i in range(count)]
        names = sorted(self.simple)
        for a, b in zip(names, names[1:] + names[:1]):
            self.simple[a] += self.simple[b][:3]  # cross-class homographs
        self.zipf = profile.zipf

    def pick(self, rng, items):
        weights = [1.0 / (r + 1) ** self.zipf for r in range(len(items))]
        return rng.choices(items, weights)[0]

    def realize(self, rng, lexclass, pos, morph):
        if lexclass == "noun":
            lemma = self.pick(rng, self.nouns[morph["gen"]])
            if morph["num"] == "PL" and not lemma.endswith("s"):
                return lemma + "s"
            return lemma
        if lexclass == "adj":
            form = self.pick(rng, self.adjs)
            if morph["gen"] == "FEM" and not form.endswith("e"):
                form += "e"
            if morph["num"] == "PL":
                form += "s"
            return form
        if lexclass == "propn":
            return self.pick(rng, self.propns)
        if lexclass in ("verb", "aux"):
            stem = self.pick(rng, self.verbs if lexclass == "verb" else self.aux)
            mod = morph["mod"]
            if mod == "INF":
                return stem + "er"
            if mod == "GER":
                return stem + "ant"
            if mod == "PART":
                return stem + "é" + ("e" if morph["gen"] == "FEM" else "") + \
                    ("s" if morph["num"] == "PL" else "")
            return stem + VERB_MOD[mod] + VERB_TNS[morph["tns"]] + VERB_PN[morph["per"], morph["num"]]
        if lexclass == "word":
            return self.pick(rng, self.simple[pos])
        raise ProfileError(f"unknown lexical class {lexclass!r}")


class CorpusGenerator:
    def __init__(self, profile):
        profile.validate()
        self.profile = profile
        closed_words = {w for rows in profile.closed.values() for _, ws in rows for w in ws}
        self.lexicon = _Lexicon(profile, closed_words)

    def _expand(self, rng, symbol, out, depth=0):
        if symbol in self.profile.frames:
            out.append(symbol)
            return
        if depth > 500:
            raise ProfileError("grammar recursion too deep")
        rules = self.profile.grammar[symbol]
        seq = rng.choices([s for _, s in rules], [w for w, _ in rules])[0]
        for sym in seq:
            self._expand(rng, sym, out, depth + 1)

    def _morph(self, rng, frames, i, assigned):
        frame = self.profile.frames[frames[i]]
        morph = {}
        for feature in sorted(frame.features):
            value = None
            for rule in self.profile.agreement:
                if frames[i] not in rule.targets or feature not in rule.features:
                    continue
                for j in range(i - 1, max(-1, i - 1 - rule.window), -1):
                    if frames[j] in rule.sources:
                        value = assigned[j].get(feature, rule.fallback.get(feature))
                        break
                if value is not None:
                    break
            if value is None or value not in frame.values(feature):
                vals = frame.features[feature]
                value = rng.choices([v for v, _ in vals], [w for _, w in vals])[0]
            morph[feature] = value
        return morph

    def _word(self, rng, frame_name, morph):
        frame = self.profile.frames[frame_name]
        if frame.lexclass == "closed":
            for cond, words in self.profile.closed.get(frame_name, ()):
                if all(morph.get(c.split("=")[0]) == c.split("=")[1] for c in cond):
                    return rng.choice(words)
            raise ProfileError(f"no closed-class word for {frame_name} {morph}")
        return self.lexicon.realize(rng, frame.lexclass, frame.pos, morph)

    def sentence(self, rng):
        frames = []
        self._expand(rng, self.profile.start, frames)
        assigned, tokens = [], []
        for i, name in enumerate(frames):
            morph = self._morph(rng, frames, i, assigned)
            assigned.append(morph)
            pairs = [f"pos={self.profile.frames[name].pos}"] + [f"{k}={v}" for k, v in morph.items()]
            tokens.append((self._word(rng, name, morph), "|".join(pairs)))
        return tokens

    def corpus(self, n_tokens, seed):
        """Sentences totalling exactly ``n_tokens`` tokens (the last one may be cut)."""
        rng = random.Random(seed)
        out, total = [], 0
        while total < n_tokens:
            sent = self.sentence(rng)[: n_tokens - total]
            out.append(sent)
            total += len(sent)
        return out

    def tag_inventory(self):
        """All tag strings the frames can produce."""
        tags = []
        for frame in self.profile.frames.values():
            combos = [[("pos", frame.pos)]]
            for feature in sorted(frame.features):
                combos = [c + [(feature, v)] for c in combos for v in frame.values(feature)]
            tags += ["|".join(f"{a}={b}" for a, b in c) for c in combos]
        return sorted(set(tags))


def render_corpus(sentences, tagset=None):
    """``word<TAB>tag`` text with tags in canonical order."""
    tagset = tagset or TagSet()
    lines = []
    for sent in sentences:
        for word, tag in sent:
            lines.append(f"{word}\t{tagset.format_tag(tagset.parse_tag(tag))}\n")
        lines.append("\n")
    return "".join(lines)


def generate(profile="french-like", n_tokens=10000, seed=0):
    if isinstance(profile, str):
        profile = get_profile(profile)
    return render_corpus(CorpusGenerator(profile).corpus(n_tokens, seed))


# -- built-in profiles ------------------------------------------------------

_GN = {"gen": [("MAS", 0.5), ("FEM", 0.5)], "num": [("SG", 0.7), ("PL", 0.3)]}
_PN = {"per": [("1", 0.15), ("2", 0.1), ("3", 0.75)], "num": [("SG", 0.7), ("PL", 0.3)]}
_FINITE = {"mod": [("IND", 0.86), ("SUBJ", 0.06), ("COND", 0.05), ("IMP", 0.03)],
           "tns": [("PRES", 0.53), ("IMPF", 0.15), ("FUT", 0.1), ("PAST", 0.11), ("PERF", 0.07),
                   ("PQP", 0.04)],
           **_PN}


def french_like():
    F = Frame
    frames = {
        "DET": F("DET", {"typ": [("DEF", 0.5), ("IND", 0.28), ("DEM", 0.08), ("POSS", 0.09),
                                 ("PART", 0.05)], **_GN}),
        "NOUN": F("NOUN", dict(_GN), "noun"),
        "ADJ": F("ADJ", {"typ": [("QUAL", 0.85), ("ORD", 0.15)], **_GN}, "adj"),
        "PROPN": F("PROPN", {"gen": [("MAS", 0.5), ("FEM", 0.5)], "num": [("SG", 1.0)]}, "propn"),
        "PRON.NOM3": F("PRON", {"typ": [("PERS", 1.0)], "cas": [("NOM", 1.0)], "per": [("3", 1.0)],
                                **_GN}),
        "PRON.NOM12": F("PRON", {"typ": [("PERS", 1.0)], "cas": [("NOM", 1.0)],
                                 "per": [("1", 0.6), ("2", 0.4)], "num": [("SG", 0.65), ("PL", 0.35)]}),
        "PRON.ACC3": F("PRON", {"typ": [("PERS", 1.0)], "cas": [("ACC", 1.0)], "per": [("3", 1.0)],
                                **_GN}),
        "PRON.ACC12": F("PRON", {"typ": [("PERS", 1.0)], "cas": [("ACC", 1.0)],
                                 "per": [("1", 0.6), ("2", 0.4)], "num": [("SG", 0.65), ("PL", 0.35)]}),
        "PRON.DAT": F("PRON", {"typ": [("PERS", 1.0)], "cas": [("DAT", 1.0)], **_PN}),
        "PRON.REL": F("PRON", {"typ": [("REL", 1.0)], "cas": [("NOM", 0.6), ("ACC", 0.4)]}),
        "PRON.DEM": F("PRON", {"typ": [("DEM", 1.0)], **_GN}),
        "PRON.IND": F("PRON", {"typ": [("IND", 1.0)], **_GN}),
        "PRON.REFL": F("PRON", {"typ": [("REFL", 1.0)], **_PN}),
        "VERB": F("VERB", dict(_FINITE), "verb"),
        "VERB.INF": F("VERB", {"mod": [("INF", 1.0)]}, "verb"),
        "VERB.PART": F("VERB", {"mod": [("PART", 1.0)], **_GN}, "verb"),
        "VERB.GER": F("VERB", {"mod": [("GER", 1.0)]}, "verb"),
        "AUX": F("AUX", dict(_FINITE), "aux"),
        "AUX.INF": F("AUX", {"mod": [("INF", 1.0)]}, "aux"),
        "AUX.PART": F("AUX", {"mod": [("PART", 1.0)], **_GN}, "aux"),
        "AUX.GER": F("AUX", {"mod": [("GER", 1.0)]}, "aux"),
        "PREP": F("PREP", {"typ": [("SIMP", 1.0)]}),
        "PREP.CONTR": F("PREP", {"typ": [("CONTR", 1.0)], "num": [("SG", 0.7), ("PL", 0.3)]}),
        "ADV.NEG": F("ADV", {"typ": [("NEG", 1.0)]}),
        "ADV": F("ADV", {"typ": [("MAN", 0.5), ("INT", 0.2), ("TMP", 0.2), ("LOC", 0.1)]}),
        "CONJ.COORD": F("CONJ", {"typ": [("COORD", 1.0)]}),
        "CONJ.SUB": F("CONJ", {"typ": [("SUB", 1.0)]}),
        "PUNCT.SENT": F("PUNCT", {"typ": [("SENT", 1.0)]}),
        "PUNCT.COMMA": F("PUNCT", {"typ": [("COMMA", 1.0)]}),
        "NUM": F("NUM", {}),
        "INTJ": F("INTJ", {}),
    }
    grammar = {
        "S": [(0.62, ["CL", "PUNCT.SENT"]),
              (0.14, ["CL", "PUNCT.COMMA", "CONJ.COORD", "CL", "PUNCT.SENT"]),
              (0.12, ["CONJ.SUB", "CL", "PUNCT.COMMA", "CL", "PUNCT.SENT"]),
              (0.09, ["PP", "PUNCT.COMMA", "CL", "PUNCT.SENT"]),
              (0.03, ["INTJ", "PUNCT.COMMA", "CL", "PUNCT.SENT"])],
        "CL": [(0.7, ["SUBJ", "VP"]), (0.3, ["SUBJ", "VP", "PP"])],
        "SUBJ": [(0.5, ["NP"]), (0.19, ["PRON.NOM3"]), (0.17, ["PRON.NOM12"]), (0.07, ["PROPN"]),
                 (0.04, ["PRON.DEM"]), (0.03, ["PRON.IND"])],
        "NP": [(0.42, ["DET", "NOUN"]), (0.14, ["DET", "ADJ", "NOUN"]),
               (0.24, ["DET", "NOUN", "ADJ"]), (0.05, ["DET", "NUM", "NOUN"]),
               (0.08, ["DET", "NOUN", "PRON.REL", "VG"]), (0.07, ["DET", "NOUN", "VERB.PART"])],
        "OBJ": [(0.75, ["NP"]), (0.15, ["PROPN"]), (0.1, ["NUM", "NOUN"])],
        "PP": [(0.7, ["PREP", "OBJ"]), (0.2, ["PREP.CONTR", "NOUN"]),
               (0.1, ["PREP.CONTR", "NOUN", "ADJ"])],
        "VP": [(0.4, ["VG"]), (0.35, ["VG", "OBJ"]), (0.1, ["VG", "PRON.DAT", "OBJ"]),
               (0.08, ["VG", "ADV"]), (0.07, ["VERB.GER", "VG"])],
        "VG": [(0.36, ["VERB"]), (0.06, ["PRON.REFL", "VERB"]), (0.12, ["ADV.NEG", "VERB", "ADV.NEG"]),
               (0.1, ["PRON.ACC3", "VERB"]), (0.05, ["PRON.ACC12", "VERB"]),
               (0.04, ["ADV.NEG", "PRON.ACC3", "VERB", "ADV.NEG"]),
               (0.14, ["AUX", "VERB.PART"]), (0.03, ["AUX", "ADV", "VERB.PART"]),
               (0.07, ["VERB", "VERB.INF"]), (0.03, ["VERB", "AUX.INF", "VERB.PART"])],
    }
    subjects = ("NOUN", "PRON.NOM3", "PRON.NOM12", "PROPN", "PRON.DEM", "PRON.IND")
    agreement = [
        AgreementRule(("NOUN",), ("gen", "num"), ("DET",), 2),
        AgreementRule(("ADJ",), ("gen", "num"), ("NOUN", "DET"), 2),
        AgreementRule(("PRON.REFL",), ("per", "num"), subjects, 3, {"per": "3", "num": "SG"}),
        AgreementRule(("VERB", "AUX"), ("per", "num"), subjects, 4,
                      {"per": "3", "num": "SG"}),
        AgreementRule(("VERB.PART", "AUX.PART"), ("gen", "num"),
                      ("NOUN", "PRON.NOM3", "PROPN", "PRON.DEM", "PRON.IND"), 5),
    ]
    closed = {
        "DET": [(["typ=DEF", "gen=MAS", "num=SG"], ["le"]), (["typ=DEF", "gen=FEM", "num=SG"], ["la"]),
                (["typ=DEF", "num=PL"], ["les"]),
                (["typ=IND", "gen=MAS", "num=SG"], ["un"]), (["typ=IND", "gen=FEM", "num=SG"], ["une"]),
                (["typ=IND", "num=PL"], ["des"]),
                (["typ=DEM", "gen=MAS", "num=SG"], ["ce", "cet"]),
                (["typ=DEM", "gen=FEM", "num=SG"], ["cette"]), (["typ=DEM", "num=PL"], ["ces"]),
                (["typ=POSS", "gen=MAS", "num=SG"], ["son", "mon"]),
                (["typ=POSS", "gen=FEM", "num=SG"], ["sa", "ma", "son"]),
                (["typ=POSS", "num=PL"], ["ses", "mes"]),
                (["typ=PART", "gen=MAS", "num=SG"], ["du"]), (["typ=PART", "gen=FEM", "num=SG"], ["de"]),
                (["typ=PART", "num=PL"], ["des"])],
        "PRON.NOM3": [(["gen=MAS", "num=SG"], ["il"]), (["gen=FEM", "num=SG"], ["elle"]),
                      (["gen=MAS", "num=PL"], ["ils"]), (["gen=FEM", "num=PL"], ["elles"])],
        "PRON.NOM12": [(["per=1", "num=SG"], ["je"]), (["per=2", "num=SG"], ["tu"]),
                       (["per=1", "num=PL"], ["nous"]), (["per=2", "num=PL"], ["vous"])],
        "PRON.ACC3": [(["gen=MAS", "num=SG"], ["le"]), (["gen=FEM", "num=SG"], ["la"]),
                      (["num=PL"], ["les"])],
        "PRON.ACC12": [(["per=1", "num=SG"], ["me"]), (["per=2", "num=SG"], ["te"]),
                       (["per=1", "num=PL"], ["nous"]), (["per=2", "num=PL"], ["vous"])],
        "PRON.DAT": [(["per=1", "num=SG"], ["me"]), (["per=2", "num=SG"], ["te"]),
                     (["per=3", "num=SG"], ["lui"]), (["per=1", "num=PL"], ["nous"]),
                     (["per=2", "num=PL"], ["vous"]), (["per=3", "num=PL"], ["leur"])],
        "PRON.REL": [(["cas=NOM"], ["qui"]), (["cas=ACC"], ["que"])],
        "PRON.DEM": [(["gen=MAS", "num=SG"], ["celui"]), (["gen=FEM", "num=SG"], ["celle"]),
                     (["gen=MAS", "num=PL"], ["ceux"]), (["gen=FEM", "num=PL"], ["celles"])],
        "PRON.IND": [(["gen=MAS", "num=SG"], ["chacun", "aucun"]),
                     (["gen=FEM", "num=SG"], ["chacune", "aucune"]),
                     (["gen=MAS", "num=PL"], ["certains", "plusieurs"]),
                     (["gen=FEM", "num=PL"], ["certaines", "plusieurs"])],
        "PRON.REFL": [(["per=1", "num=SG"], ["me"]), (["per=2", "num=SG"], ["te"]),
                      (["per=3", "num=SG"], ["se"]), (["per=1", "num=PL"], ["nous"]),
                      (["per=2", "num=PL"], ["vous"]), (["per=3", "num=PL"], ["se"])],
        "INTJ": [([], ["oh", "ah", "bon", "eh"])],
        "PREP": [([], ["de", "à", "dans", "sur", "pour", "avec", "par", "en", "sans", "chez"])],
        "PREP.CONTR": [(["num=SG"], ["du", "au"]), (["num=PL"], ["des", "aux"])],
        "ADV.NEG": [([], ["ne", "pas", "plus", "jamais"])],
        "ADV": [(["typ=MAN"], ["bien", "vite", "mal", "ainsi"]), (["typ=INT"], ["très", "trop", "plus"]),
                (["typ=TMP"], ["souvent", "toujours", "hier", "jamais"]),
                (["typ=LOC"], ["ici", "là", "loin"])],
        "CONJ.COORD": [([], ["et", "ou", "mais"])],
        "CONJ.SUB": [([], ["que", "si", "quand", "comme"])],
        "PUNCT.SENT": [([], [".", ".", ".", "!", "?"])],
        "PUNCT.COMMA": [([], [","])],
        "NUM": [([], ["deux", "trois", "dix", "cent", "un"])],
    }
    return Profile("french-like", frames, grammar, "S", agreement, closed,
                   {"noun": 140, "adj": 50, "verb": 45, "aux": 2, "propn": 20}, 1.1, 7)


def pos_only():
    """Twelve atomic POS tags generated by a dense second-order chain."""
    rng = random.Random(11)
    names = ["N", "V", "A", "D", "P", "R", "C", "X", "M", "Q", "U", "Z"]
    frames = {n: Frame(n, {}, "word") for n in names}
    # grammar as a right-branching chain: state symbols "after_a_b"
    grammar = {"S": [(1.0, ["H_B_B"])]}
    states = ["B"] + names
    for a in states:
        for b in states:
            if a != "B" and b == "B":
                continue
            rules = []
            for n in names:
                w = rng.random() ** 3 + 0.02
                rules.append((w, [n, f"H_{b}_{n}"]))
            if b != "B":
                rules.append((0.5, []))  # end of sentence
            grammar[f"H_{a}_{b}"] = rules
    lemmas = {f"word:{n}": 25 for n in names}
    return Profile("pos-only", frames, grammar, "S", [], {}, lemmas, 1.0, 5)


PROFILES = {"french-like": french_like, "pos-only": pos_only}


def get_profile(name):
    if name in PROFILES:
        return PROFILES[name]()
    try:
        with open(name, encoding="utf-8") as fh:
            return Profile.from_dict(json.load(fh))
    except FileNotFoundError:
        raise ProfileError(f"unknown profile {name!r}") from None
