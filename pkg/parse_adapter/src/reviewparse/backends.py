"""Parsing backends: a pretrained spaCy pipeline, or a builtin rule parser.

The spaCy backend is the intended production path and is loaded lazily so
the package imports without spaCy installed. The builtin backend is a small
deterministic rule system — honest about what it is (it reports itself as
``builtin``) — for environments where no statistical model can be
downloaded. Both emit the same 10-column rows and both guarantee the
well-formedness contract in :mod:`reviewparse.conllu`.
"""

from __future__ import annotations

import re

from .conllu import Row
from .errors import ModelError

BUILTIN_MODEL = "builtin"
BUILTIN_VERSION = "1.0"

SPACY_HINT = (
    "install it with: pip install spacy && python -m spacy download {name} "
    "(or pass --model builtin for the rule-based fallback)"
)

# ---------------------------------------------------------------- builtin

_SENT_SPLIT = re.compile(r"(?<=[.!?])\s+|\n+")
_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)?|\S", re.UNICODE)

_DETERMINERS = frozenset(
    "the a an this that these those my your his her its our their no every "
    "some any each another".split()
)
_PRONOUNS = frozenset("i you he she it we they me him them us who what".split())
_ADPOSITIONS = frozenset(
    "of in on at by with from for to about over under between through "
    "into during after before against across behind".split()
)
_CONJUNCTIONS = frozenset("and or but nor yet".split())
_ADVERBS = frozenset(
    "very really quite so too not never always often sometimes rarely "
    "just still here there now then".split()
)
# verb forms the rules rely on, mapped to their lemmas
_VERBS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "be": "be",
    "been": "be", "being": "be", "am": "be",
    "has": "have", "have": "have", "had": "have", "having": "have",
    "does": "do", "do": "do", "did": "did",
    "sounds": "sound", "sound": "sound", "sounded": "sound",
    "seems": "seem", "seem": "seem", "seemed": "seem",
    "looks": "look", "look": "look", "looked": "look",
    "feels": "feel", "feel": "feel", "felt": "feel",
    "makes": "make", "make": "make", "made": "make",
    "gets": "get", "get": "get", "got": "get",
    "plays": "play", "play": "play", "played": "play",
    "delivers": "deliver", "deliver": "deliver", "delivered": "deliver",
    "brings": "bring", "bring": "bring", "brought": "bring",
    "keeps": "keep", "keep": "keep", "kept": "keep",
    "opens": "open", "open": "open", "opened": "open",
    "remains": "remain", "remain": "remain", "remained": "remain",
}
_ADJECTIVES = frozenset(
    "awesome lyrical great good bad brutal dark heavy melodic raw epic "
    "catchy fast slow old new grim frosty atmospheric aggressive bleak "
    "crisp dense harsh mellow crushing soaring haunting thunderous solid "
    "boring dull fresh loud quiet deep rich thin warm cold sharp".split()
)
_ADJ_SUFFIXES = ("ical", "ous", "ful", "less", "ish", "ive", "able", "ible", "al")


def _tag(word: str, sentence_initial: bool) -> str:
    folded = word.casefold()
    if not any(ch.isalnum() for ch in word):
        return "PUNCT"
    if folded.replace(".", "").replace(",", "").isdigit():
        return "NUM"
    if folded in _DETERMINERS:
        return "DET"
    if folded in _PRONOUNS:
        return "PRON"
    if folded in _ADPOSITIONS:
        return "ADP"
    if folded in _CONJUNCTIONS:
        return "CCONJ"
    if folded in _VERBS:
        return "VERB"
    if folded in _ADVERBS or folded.endswith("ly"):
        return "ADV"
    if folded in _ADJECTIVES or folded.endswith(_ADJ_SUFFIXES):
        return "ADJ"
    if folded.endswith(("ing", "ed")) and len(folded) > 4:
        return "VERB"
    if word[:1].isupper() and not sentence_initial:
        return "PROPN"
    return "NOUN"


def _lemma(word: str, upos: str) -> str:
    folded = word.casefold()
    if upos == "VERB" and folded in _VERBS:
        return _VERBS[folded]
    if upos in ("NOUN", "PROPN", "VERB") and folded.endswith("s"):
        # crude plural / 3rd-person strip; leave -ss/-us/-is words alone
        if not folded.endswith(("ss", "us", "is")) and len(folded) > 3:
            return folded[:-1]
    return folded


class BuiltinBackend:
    """Deterministic rule tagger/parser with no external dependencies."""

    name = BUILTIN_MODEL
    version = BUILTIN_VERSION

    def parse(self, text: str) -> list[tuple[tuple[Row, ...], str]]:
        sentences = []
        for raw in _SENT_SPLIT.split(text):
            raw = raw.strip()
            if not raw:
                continue
            words = _TOKEN.findall(raw)
            if not words:
                continue
            tags = [_tag(word, i == 0) for i, word in enumerate(words)]
            heads, rels = _attach(words, tags)
            rows = tuple(
                Row(id=i + 1, form=words[i], lemma=_lemma(words[i], tags[i]),
                    upos=tags[i], head=heads[i], deprel=rels[i])
                for i in range(len(words))
            )
            sentences.append((rows, raw))
        return sentences


def _attach(words: list[str], tags: list[str]) -> tuple[list[int], list[str]]:
    """Pick one root and a head for every other token (1-based heads)."""
    n = len(words)
    root = next((i for i, t in enumerate(tags) if t == "VERB"), None)
    if root is None:
        root = next((i for i, t in enumerate(tags) if t in ("NOUN", "PROPN")), None)
    if root is None:
        root = next((i for i, t in enumerate(tags) if t != "PUNCT"), 0)

    def next_nominal(start):
        # nearest following noun in the same phrase: stop at anything that
        # plausibly opens a new one
        for j in range(start + 1, n):
            if tags[j] in ("VERB", "CCONJ", "ADP", "PUNCT"):
                return None
            if tags[j] in ("NOUN", "PROPN"):
                return j
        return None

    def prev_verb(start):
        for j in range(start - 1, -1, -1):
            if tags[j] == "VERB":
                return j
        return None

    heads = [0] * n
    rels = ["dep"] * n
    for i, tag in enumerate(tags):
        if i == root:
            heads[i], rels[i] = 0, "root"
            continue
        if tag == "PUNCT":
            heads[i], rels[i] = root + 1, "punct"
        elif tag == "DET":
            noun = next_nominal(i)
            heads[i], rels[i] = (noun + 1, "det") if noun is not None else (root + 1, "dep")
        elif tag == "ADJ":
            noun = next_nominal(i)
            if noun is not None:
                heads[i], rels[i] = noun + 1, "amod"
            else:
                verb = prev_verb(i)
                # predicate position: adjective complements the verb
                heads[i], rels[i] = (verb + 1, "acomp") if verb is not None else (root + 1, "amod")
        elif tag in ("NOUN", "PROPN", "PRON"):
            verb = prev_verb(i)
            if verb is None and tags[root] == "VERB":
                heads[i], rels[i] = root + 1, "nsubj"
            elif verb is not None:
                heads[i], rels[i] = verb + 1, "obj"
            else:
                heads[i], rels[i] = root + 1, "nmod"
        elif tag == "ADV":
            heads[i], rels[i] = root + 1, "advmod"
        elif tag == "ADP":
            noun = next_nominal(i)
            heads[i], rels[i] = (noun + 1, "case") if noun is not None else (root + 1, "dep")
        elif tag == "CCONJ":
            heads[i], rels[i] = root + 1, "cc"
        elif tag == "NUM":
            noun = next_nominal(i)
            heads[i], rels[i] = (noun + 1, "nummod") if noun is not None else (root + 1, "dep")
        else:
            heads[i], rels[i] = root + 1, "dep"
    return heads, rels


# ----------------------------------------------------------------- spacy

class SpacyBackend:
    """Wrap a pretrained spaCy pipeline; loaded on construction."""

    def __init__(self, model_name: str):
        try:
            import spacy
        except ImportError:
            raise ModelError(
                f"spaCy is not installed; model {model_name!r} unavailable — "
                + SPACY_HINT.format(name=model_name)
            ) from None
        try:
            self._nlp = spacy.load(model_name)
        except OSError:
            raise ModelError(
                f"spaCy model {model_name!r} is not downloaded — "
                + SPACY_HINT.format(name=model_name)
            ) from None
        meta = self._nlp.meta
        self.name = model_name
        self.version = str(meta.get("version", "unknown"))

    def parse(self, text: str) -> list[tuple[tuple[Row, ...], str]]:
        sentences = []
        for sent in self._nlp(text).sents:
            rows = []
            offset = sent.start
            for i, token in enumerate(sent, start=1):
                if token.is_space:
                    continue
                head = 0 if token.head is token else token.head.i - offset + 1
                deprel = token.dep_.lower() or "dep"
                if head == 0:
                    deprel = "root"
                feats = str(token.morph) or "_"
                rows.append(Row(
                    id=i, form=token.text, lemma=token.lemma_ or token.text,
                    upos=token.pos_ or "X", xpos=token.tag_ or "_",
                    feats=feats, head=head, deprel=deprel,
                ))
            if rows:
                sentences.append((_renumber(rows), sent.text.strip()))
        return sentences


def _renumber(rows: list[Row]) -> tuple[Row, ...]:
    """Close ID gaps left by dropped whitespace tokens."""
    mapping = {row.id: i + 1 for i, row in enumerate(rows)}
    out = []
    for i, row in enumerate(rows, start=1):
        head = mapping.get(row.head, 0)
        deprel = "root" if head == 0 else row.deprel
        out.append(Row(
            id=i, form=row.form, lemma=row.lemma, upos=row.upos,
            xpos=row.xpos, feats=row.feats, head=head, deprel=deprel,
        ))
    return tuple(out)


def get_backend(model: str):
    """Return a parsing backend for ``model`` or raise ModelError."""
    if model == BUILTIN_MODEL:
        return BuiltinBackend()
    return SpacyBackend(model)
