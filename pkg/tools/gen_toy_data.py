#!/usr/bin/env python3
"""Regenerate the bundled toy dataset under data/toy/.

The dataset is synthetic but structured: three dense groups of four
genres each (reviewers stay inside their group), one weak bridge album
between two groups, two deliberately omnivorous reviewers (outlier
removal fodder), two weakly attached ambient genres (k-core fodder), one
orphan review, one duplicated album row, and one genre spelled with
different casing in two places. Review texts come from three sentence
templates, and parses.conllu is the template expansion in CoNLL-U form —
committed so the text stage runs without any parser installed.

Deterministic: running this script always reproduces the committed files.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "toy"

GROUPS = {
    "X": {
        "genres": ["Black metal", "Atmospheric black metal", "Pagan metal", "Viking metal"],
        "adjectives": ["norwegian", "atmospheric", "frosty", "grim"],
        "nouns": ["riff", "atmosphere", "scream", "forest"],
    },
    "Y": {
        "genres": ["Death metal", "Brutal death metal", "Technical death metal", "Grindcore"],
        "adjectives": ["brutal", "technical", "relentless", "guttural"],
        "nouns": ["blast", "growl", "breakdown", "drumming"],
    },
    "Z": {
        "genres": ["Heavy metal", "Power metal", "Progressive metal", "Thrash metal"],
        "adjectives": ["catchy", "soaring", "melodic", "anthemic"],
        "nouns": ["chorus", "solo", "hook", "ballad"],
    },
}

GENERIC = [("great", "album"), ("great", "band"), ("great", "production")]

# album_id, band_id, title, year, country, genres
ALBUMS = [
    ("a01", "bx1", "Frost Rites", 1994, "Norway", ["Black metal"]),
    ("a02", "bx1", "Pale Winter", 1996, "Norway", ["Black metal", "Atmospheric black metal"]),
    ("a03", "bx2", "Longship", 1995, "Norway", ["Pagan metal", "Viking metal"]),
    ("a04", "bx2", "Raven Oath", 1997, "Norway", ["Black metal", "Viking metal"]),
    ("a05", "bx3", "Fen Lights", 1998, "Finland", ["Atmospheric black metal", "Pagan metal"]),
    ("a06", "bx3", "Old Grove", 2001, "Finland", ["Pagan metal"]),
    ("a07", "bx4", "Hollow Sky", 1999, "", ["Atmospheric black metal", "Viking metal"]),
    ("a08", "bx4", "Ash Crown", 2003, "", ["Black metal", "Pagan metal", "Viking metal"]),
    ("a09", "by1", "Carnal Ledger", 1991, "USA", ["Death metal"]),
    ("a10", "by1", "Sutured", 1993, "USA", ["Death metal", "Brutal death metal"]),
    ("a11", "by2", "Lattice of Gore", 1992, "Sweden", ["Technical death metal", "Grindcore"]),
    ("a12", "by2", "Grind Theorem", 1994, "Sweden", ["Death metal", "Grindcore"]),
    ("a13", "by3", "Axiom Flesh", 1995, "USA", ["Brutal death metal", "Technical death metal"]),
    ("a14", "by3", "Spiral Autopsy", 1998, "USA", ["Technical death metal"]),
    ("a15", "by4", "Pulped", 1996, "", ["Brutal death metal", "Grindcore"]),
    ("a16", "by4", "Vile Calculus", 2000, "", ["Death metal", "Brutal death metal", "Technical death metal"]),
    ("a17", "bz1", "Steel Dawn", 1980, "UK", ["Heavy metal"]),
    ("a18", "bz1", "Iron Parade", 1982, "UK", ["Heavy metal", "Power metal"]),
    ("a19", "bz2", "Sword Season", 1985, "Germany", ["Power metal", "Thrash metal"]),
    ("a20", "bz2", "Pit Anthem", 1987, "Germany", ["Heavy metal", "Thrash metal"]),
    ("a21", "bz3", "Glass Citadel", 1989, "USA", ["Progressive metal", "Power metal"]),
    ("a22", "bz3", "Meridian Suite", 1992, "USA", ["Progressive metal"]),
    # same genre as a19/a20 but cased differently; must not become a new genre
    ("a23", "bz4", "Chrome Palace", 1990, "Sweden", ["Heavy metal", "Progressive metal", "Thrash Metal"]),
    ("a24", "bz4", "Crystal March", 1995, "Sweden", ["Power metal", "Progressive metal"]),
    # weak bridge between groups X and Y
    ("a25", "bx1", "Split Tape", 2005, "Norway", ["Black metal", "Death metal"]),
    # periphery: reviewed by almost nobody, pruned by the main core
    ("a26", "bp1", "Drift", 2000, "", ["Ambient"]),
    ("a27", "bp1", "Still Air", 2002, "", ["Ambient", "Dark ambient"]),
]

GROUP_ALBUMS = {
    "X": ["a01", "a02", "a03", "a04", "a05", "a06", "a07", "a08"],
    "Y": ["a09", "a10", "a11", "a12", "a13", "a14", "a15", "a16"],
    "Z": ["a17", "a18", "a19", "a20", "a21", "a22", "a23", "a24"],
}


def sentence_a(adj: str, noun: str) -> tuple[str, list[tuple]]:
    """'This album has a ADJ NOUN .' — adjective modifies the object noun."""
    text = f"This album has a {adj} {noun} ."
    rows = [
        (1, "This", "this", "DET", "DT", 2, "det"),
        (2, "album", "album", "NOUN", "NN", 3, "nsubj"),
        (3, "has", "have", "VERB", "VBZ", 0, "root"),
        (4, "a", "a", "DET", "DT", 6, "det"),
        (5, adj, adj, "ADJ", "JJ", 6, "amod"),
        (6, noun, noun, "NOUN", "NN", 3, "dobj"),
        (7, ".", ".", "PUNCT", ".", 3, "punct"),
    ]
    return text, rows


def sentence_b(adj: str, noun: str) -> tuple[str, list[tuple]]:
    """'The NOUN sounds ADJ .' — predicative adjective over a noun subject."""
    text = f"The {noun} sounds {adj} ."
    rows = [
        (1, "The", "the", "DET", "DT", 2, "det"),
        (2, noun, noun, "NOUN", "NN", 3, "nsubj"),
        (3, "sounds", "sound", "VERB", "VBZ", 0, "root"),
        (4, adj, adj, "ADJ", "JJ", 3, "acomp"),
        (5, ".", ".", "PUNCT", ".", 3, "punct"),
    ]
    return text, rows


def sentence_c(adj: str, plural: str, lemma: str) -> tuple[str, list[tuple]]:
    """'This album has ADJ PLURAL .' — plural surface form, singular lemma."""
    text = f"This album has {adj} {plural} ."
    rows = [
        (1, "This", "this", "DET", "DT", 2, "det"),
        (2, "album", "album", "NOUN", "NN", 3, "nsubj"),
        (3, "has", "have", "VERB", "VBZ", 0, "root"),
        (4, adj, adj, "ADJ", "JJ", 5, "amod"),
        (5, plural, lemma, "NOUN", "NNS", 3, "dobj"),
        (6, ".", ".", "PUNCT", ".", 3, "punct"),
    ]
    return text, rows


def make_reviews() -> list[dict]:
    rng = random.Random(20240601)
    reviews: list[dict] = []

    def add(user, album, score, sentences=None):
        row = {"user_id": user, "album_id": album, "score": score}
        if sentences:
            row["text"] = " ".join(t for t, _ in sentences)
            row["_sentences"] = sentences
        reviews.append(row)

    for gname, group in GROUPS.items():
        albums = GROUP_ALBUMS[gname]
        adjectives, nouns = group["adjectives"], group["nouns"]
        for i in range(8):
            user = f"u{gname.lower()}{i + 1:02d}"
            picks = [albums[(i + k) % 8] for k in range(3 + (i % 2))]
            for j, album in enumerate(picks):
                score = 75 + ((i * 5 + j * 7) % 24)
                sentences = []
                if (i + j) % 4 != 3:  # most reviews carry text
                    adj = adjectives[(i + j) % 4]
                    noun = nouns[(i + 2 * j) % 4]
                    maker = sentence_a if (i + j) % 2 == 0 else sentence_b
                    sentences.append(maker(adj, noun))
                    if (i + j) % 3 == 0:  # every third: praise sentence too
                        g_adj, g_noun = GENERIC[(i + j) % 3]
                        sentences.append(sentence_a(g_adj, g_noun))
                add(user, album, score, sentences or None)
            if i % 3 == 1:  # sprinkle negative reviews; some carry text
                album = albums[(i + 5) % 8]
                sentences = None
                if i == 1:
                    sentences = [sentence_b(adjectives[0], nouns[0])]
                add(user, album, 40 + 3 * i, sentences)

    # the plural-lemma showcase, and one explicit generic-praise sentence
    add("uz01", "a18", 88, [sentence_c("catchy", "choruses", "chorus"),
                            sentence_a("great", "album")])
    # bridge album: a reviewer who reviews nothing else, so the two groups
    # share exactly one weak edge; its features land in both clusters
    add("ub01", "a25", 85, [sentence_a("norwegian", "growl")])
    # periphery reviewers; the first review's text ends up referencing only
    # genres outside the main core, so the text stage must skip it
    add("up01", "a26", 90, [sentence_b("ambient", "drone")])
    add("up01", "a02", 82, None)
    add("up02", "a27", 86, None)
    # omnivores: broad positive coverage, to be removed as outliers
    for user, albums in (
        ("uom01", ["a01", "a05", "a09", "a13", "a17", "a21", "a26"]),
        ("uom02", ["a03", "a08", "a11", "a16", "a19", "a24", "a27"]),
    ):
        for album in albums:
            add(user, album, 80 + rng.randrange(15), None)
    # orphan: album absent from albums.csv
    add("ux02", "zz99", 95, None)

    reviews.sort(key=lambda r: (r["user_id"], r["album_id"]))
    return reviews


def write_reviews(reviews: list[dict], path: Path) -> None:
    lines = []
    for row in reviews:
        obj = {k: v for k, v in row.items() if not k.startswith("_")}
        lines.append(json.dumps(obj, ensure_ascii=False))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_albums(path: Path) -> None:
    lines = ["album_id,band_id,title,year,country,genres"]
    for album_id, band_id, title, year, country, genres in ALBUMS:
        lines.append(f"{album_id},{band_id},{title},{year},{country},{';'.join(genres)}")
    # duplicated identical row: the loader must collapse it
    a = ALBUMS[0]
    lines.append(f"{a[0]},{a[1]},{a[2]},{a[3]},{a[4]},{';'.join(a[5])}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_parses(reviews: list[dict], path: Path) -> None:
    chunks = ["# parser = toy-template 1.0"]
    for row in reviews:
        sentences = row.get("_sentences")
        if not sentences:
            continue
        for text, tokens in sentences:
            lines = [
                f"# review_id = {row['user_id']}|{row['album_id']}",
                f"# text = {text}",
            ]
            for tid, form, lemma, upos, xpos, head, deprel in tokens:
                lines.append(
                    f"{tid}\t{form}\t{lemma}\t{upos}\t{xpos}\t_\t{head}\t{deprel}\t_\t_"
                )
            chunks.append("\n".join(lines))
    path.write_text("\n\n".join(chunks) + "\n", encoding="utf-8")


def write_config(path: Path) -> None:
    path.write_text(
        "version = 1\n"
        "reviews_path = data/toy/reviews.jsonl\n"
        "albums_path = data/toy/albums.csv\n"
        "parses_path = data/toy/parses.conllu\n"
        "out_dir = out/toy\n"
        "score_threshold = 75\n"
        "outlier_user_count = 2\n"
        "runs = 100\n"
        "base_seed = 7\n"
        "max_rounds = 50\n"
        "max_size = 16\n"
        "max_depth = 3\n"
        "top_n_features = 50\n",
        encoding="utf-8",
    )


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    reviews = make_reviews()
    write_reviews(reviews, OUT / "reviews.jsonl")
    write_albums(OUT / "albums.csv")
    write_parses(reviews, OUT / "parses.conllu")
    write_config(OUT / "toy.cfg")
    with_text = sum(1 for r in reviews if "_sentences" in r)
    print(f"wrote {len(reviews)} reviews ({with_text} with text), "
          f"{len(ALBUMS) + 1} album rows -> {OUT}")


if __name__ == "__main__":
    main()
