import math
import random
from collections import Counter

import pytest

from genrenet import (
    AccuracyReport,
    AlbumRecord,
    ClusterTree,
    DataError,
    Feature,
    ReviewRecord,
    collect_cluster_features,
    evaluate_accuracy,
    join_corpus,
    match_patterns,
    modified_tfidf,
    read_documents,
    top_features,
)
from genrenet.conllu import ParsedDocument, Sentence, Token
from genrenet.textfeat import document_features, load_judgments

from oracles import tfidf_oracle


def tok(i, form, lemma, upos, head, deprel):
    return Token(i, form, lemma, upos, "_", "_", head, deprel, "_", "_")


def sentence(tokens, review=("u", "a")):
    return Sentence(tuple(tokens), (), review)


AWESOME_ALBUM = sentence([
    tok(1, "This", "this", "PRON", 5, "nsubj"),
    tok(2, "is", "be", "AUX", 5, "cop"),
    tok(3, "an", "an", "DET", 5, "det"),
    tok(4, "awesome", "awesome", "ADJ", 5, "amod"),
    tok(5, "album", "album", "NOUN", 0, "root"),
    tok(6, ".", ".", "PUNCT", 5, "punct"),
])

LYRICAL_THEME = sentence([
    tok(1, "The", "the", "DET", 2, "det"),
    tok(2, "theme", "theme", "NOUN", 3, "nsubj"),
    tok(3, "is", "be", "AUX", 0, "root"),
    tok(4, "lyrical", "lyrical", "ADJ", 3, "acomp"),
    tok(5, ".", ".", "PUNCT", 3, "punct"),
])


# -- pattern matching ----------------------------------------------------------

def test_adjective_modifier_pattern():
    assert match_patterns(AWESOME_ALBUM) == [Feature("awesome", "album")]


def test_subject_predicate_pattern():
    assert match_patterns(LYRICAL_THEME) == [Feature("lyrical", "theme")]


def test_checked_in_fixture_round_trip(repo_root):
    docs = read_documents(repo_root / "tests" / "fixtures" / "patterns.conllu")
    (doc,) = docs
    assert match_patterns(doc.sentences[0]) == [Feature("awesome", "album")]
    assert match_patterns(doc.sentences[1]) == [Feature("lyrical", "theme")]


def test_no_match_without_adjective_or_wrong_relations():
    plain = sentence([
        tok(1, "I", "i", "PRON", 2, "nsubj"),
        tok(2, "listened", "listen", "VERB", 0, "root"),
    ])
    assert match_patterns(plain) == []
    # amod whose head is a verb: not a feature
    odd = sentence([
        tok(1, "loud", "loud", "ADJ", 2, "amod"),
        tok(2, "play", "play", "VERB", 0, "root"),
    ])
    assert match_patterns(odd) == []
    # nsubj+acomp hanging off a NOUN head: not a feature
    nounhead = sentence([
        tok(1, "song", "song", "NOUN", 0, "root"),
        tok(2, "it", "it", "PRON", 1, "nsubj"),
        tok(3, "good", "good", "ADJ", 1, "acomp"),
    ])
    assert match_patterns(nounhead) == []


def test_lemmas_are_casefolded_and_proper_nouns_count():
    s = sentence([
        tok(1, "Norwegian", "Norwegian", "ADJ", 2, "amod"),
        tok(2, "Mayhem", "Mayhem", "PROPN", 0, "root"),
    ])
    assert match_patterns(s) == [Feature("norwegian", "mayhem")]


def test_plural_surface_singular_lemma():
    s = sentence([
        tok(1, "catchy", "catchy", "ADJ", 2, "amod"),
        tok(2, "choruses", "chorus", "NOUN", 0, "root"),
    ])
    assert match_patterns(s) == [Feature("catchy", "chorus")]


def test_verb_pattern_emits_cross_product():
    s = sentence([
        tok(1, "riff", "riff", "NOUN", 3, "nsubj"),
        tok(2, "solo", "solo", "NOUN", 3, "nsubj"),
        tok(3, "sound", "sound", "VERB", 0, "root"),
        tok(4, "heavy", "heavy", "ADJ", 3, "acomp"),
        tok(5, "fast", "fast", "ADJ", 3, "acomp"),
    ])
    assert match_patterns(s) == [
        Feature("fast", "riff"),
        Feature("fast", "solo"),
        Feature("heavy", "riff"),
        Feature("heavy", "solo"),
    ]


def test_duplicate_features_in_one_sentence_are_kept():
    s = sentence([
        tok(1, "good", "good", "ADJ", 2, "amod"),
        tok(2, "song", "song", "NOUN", 0, "root"),
        tok(3, "good", "good", "ADJ", 4, "amod"),
        tok(4, "song", "song", "NOUN", 2, "conj"),
    ])
    assert match_patterns(s) == [Feature("good", "song")] * 2


def test_matching_is_token_order_invariant():
    rng = random.Random(5)
    base = AWESOME_ALBUM.tokens
    for _ in range(10):
        perm = list(range(1, len(base) + 1))
        rng.shuffle(perm)
        relabel = {old: new for old, new in zip(range(1, len(base) + 1), perm)}
        moved = [
            Token(relabel[t.id], t.form, t.lemma, t.upos, t.xpos, t.feats,
                  relabel.get(t.head, 0), t.deprel, t.deps, t.misc)
            for t in base
        ]
        moved.sort(key=lambda t: t.id)
        assert match_patterns(sentence(moved)) == [Feature("awesome", "album")]


def test_feature_validation_and_ordering():
    with pytest.raises(DataError):
        Feature("", "album")
    assert Feature("a", "b") < Feature("a", "c") < Feature("b", "a")


# -- per-cluster collection ------------------------------------------------------

def corpus_with(album_genres):
    albums = {
        aid: AlbumRecord(aid, f"b_{aid}", genres=tuple(gs))
        for aid, gs in album_genres.items()
    }
    reviews = [ReviewRecord(f"u_{aid}", aid, 90) for aid in album_genres]
    return join_corpus(reviews, albums)


def doc_for(album_id, sentences_, user="u1"):
    return ParsedDocument(user, album_id, tuple(sentences_))


def leaves_for(**genres_by_label):
    return [ClusterTree(label, tuple(gs), 1.0) for label, gs in genres_by_label.items()]


def test_collect_counts_once_per_cluster():
    corpus = corpus_with({"a1": ["X1", "X2"]})  # both genres in the same cluster
    leaves = leaves_for(**{"1": ["X1", "X2"], "2": ["Y1"]})
    out = collect_cluster_features([doc_for("a1", [AWESOME_ALBUM])], corpus, leaves)
    assert out.per_cluster["1"][Feature("awesome", "album")] == 1
    assert not out.per_cluster["2"]
    assert out.skipped == 0


def test_collect_attributes_to_every_touched_cluster():
    corpus = corpus_with({"a1": ["X1", "Y1"]})  # spans two clusters
    leaves = leaves_for(**{"1": ["X1"], "2": ["Y1"]})
    out = collect_cluster_features([doc_for("a1", [LYRICAL_THEME])], corpus, leaves)
    assert out.per_cluster["1"][Feature("lyrical", "theme")] == 1
    assert out.per_cluster["2"][Feature("lyrical", "theme")] == 1


def test_collect_skips_out_of_scope_reviews():
    corpus = corpus_with({"a1": ["X1"], "a2": ["Zed"]})  # Zed not clustered
    leaves = leaves_for(**{"1": ["X1"], "2": ["Y1"]})
    docs = [doc_for("a1", [AWESOME_ALBUM]), doc_for("a2", [LYRICAL_THEME])]
    out = collect_cluster_features(docs, corpus, leaves)
    assert out.skipped == 1
    assert sum(out.per_cluster["1"].values()) == 1


def test_collect_accumulates_repeats_across_documents():
    corpus = corpus_with({"a1": ["X1"]})
    leaves = leaves_for(**{"1": ["X1"], "2": ["Y1"]})
    docs = [
        doc_for("a1", [AWESOME_ALBUM], user="u1"),
        doc_for("a1", [AWESOME_ALBUM, AWESOME_ALBUM], user="u2"),
    ]
    out = collect_cluster_features(docs, corpus, leaves)
    assert out.per_cluster["1"][Feature("awesome", "album")] == 3


def test_collect_rejects_genre_in_two_clusters():
    corpus = corpus_with({"a1": ["X1"]})
    bad = leaves_for(**{"1": ["X1"], "2": ["X1"]})
    with pytest.raises(DataError):
        collect_cluster_features([], corpus, bad)


# -- modified tf-idf ---------------------------------------------------------------

def counters(**by_label):
    return {
        label: Counter({Feature(a, n): tf for (a, n), tf in counts.items()})
        for label, counts in by_label.items()
    }


def test_adjective_present_everywhere_scores_zero():
    per_cluster = counters(
        c1={("great", "album"): 7},
        c2={("great", "riff"): 2},     # same adjective, different noun
        c3={("great", "album"): 1},
    )
    scored = modified_tfidf(per_cluster)
    for label in per_cluster:
        assert all(s.tfidf == 0.0 and s.idf == 0.0 for s in scored[label])


def test_unique_adjective_scores_tf_times_log_n():
    per_cluster = counters(
        c1={("frosty", "riff"): 5},
        c2={("brutal", "blast"): 1},
        c3={("catchy", "hook"): 1},
        c4={("soaring", "chorus"): 1},
    )
    (score,) = modified_tfidf(per_cluster)["c1"]
    assert score.tf == 5
    assert score.tfidf == pytest.approx(5 * math.log(4), abs=1e-9)


def test_df_counts_adjective_not_feature():
    per_cluster = counters(
        c1={("dark", "riff"): 3},
        c2={("dark", "mood"): 2},  # dark appears in 2 of 2 clusters
    )
    scored = modified_tfidf(per_cluster)
    assert scored["c1"][0].idf == 0.0
    assert scored["c2"][0].idf == 0.0


def test_scores_sorted_by_tfidf_then_feature():
    per_cluster = counters(
        c1={("aa", "x"): 2, ("bb", "x"): 2, ("cc", "x"): 9},
        c2={("dd", "y"): 1},
    )
    ranked = modified_tfidf(per_cluster)["c1"]
    assert [(s.feature.adjective_lemma, s.tf) for s in ranked] == [
        ("cc", 9), ("aa", 2), ("bb", 2),
    ]


def test_single_cluster_rejected():
    with pytest.raises(DataError):
        modified_tfidf(counters(c1={("a", "b"): 1}))


def test_tfidf_matches_spreadsheet_oracle():
    rng = random.Random(11)
    adjectives = ["grim", "brutal", "catchy", "soaring", "raw", "great"]
    nouns = ["riff", "blast", "chorus", "hook"]
    per_cluster = {}
    for label in ("c1", "c2", "c3"):
        counts = {}
        for _ in range(rng.randint(3, 10)):
            pair = (rng.choice(adjectives), rng.choice(nouns))
            counts[pair] = counts.get(pair, 0) + rng.randint(1, 6)
        per_cluster[label] = counts
    scored = modified_tfidf(counters(**{k: v for k, v in per_cluster.items()}))
    expected = tfidf_oracle(per_cluster)
    for label in per_cluster:
        got = [(s.feature.adjective_lemma, s.feature.noun_lemma, s.tf, s.idf, s.tfidf)
               for s in scored[label]]
        want = [(a, n, tf, pytest.approx(idf), pytest.approx(tfidf))
                for a, n, tf, idf, tfidf in expected[label]]
        assert got == want


def test_top_features_truncates_in_rank_order():
    per_cluster = counters(
        c1={(f"adj{i:02d}", "noun"): i + 1 for i in range(60)},
        c2={("other", "noun"): 1},
    )
    ranked = modified_tfidf(per_cluster)["c1"]
    top = top_features(ranked, n=50)
    assert len(top) == 50
    assert top == ranked[:50]
    assert top_features(ranked[:3], n=50) == ranked[:3]
    with pytest.raises(DataError):
        top_features(ranked, n=0)


# -- accuracy ------------------------------------------------------------------

def scored_top(label_features):
    return {
        label: [
            # tf/idf values are irrelevant to accuracy
            type("S", (), {"feature": Feature(a, n)})()
            for a, n in feats
        ]
        for label, feats in label_features.items()
    }


def test_accuracy_multiplies_before_dividing():
    assert AccuracyReport(35, 50).accuracy == 70.0
    assert AccuracyReport(1, 3).accuracy == pytest.approx(100 / 3)
    assert AccuracyReport(50, 50).accuracy == 100.0


def test_accuracy_validation():
    with pytest.raises(DataError):
        AccuracyReport(5, 4)
    with pytest.raises(DataError):
        AccuracyReport(0, 0)


def test_evaluate_accuracy_per_cluster_and_overall():
    top = scored_top({
        "1": [("awesome", "album"), ("grim", "riff")],
        "2": [("catchy", "hook")],
    })
    judgments = [
        ("1", Feature("awesome", "album"), True),
        ("1", Feature("grim", "riff"), False),
        ("2", Feature("catchy", "hook"), True),
    ]
    per_cluster, overall = evaluate_accuracy(judgments, top)
    assert per_cluster["1"].accuracy == 50.0
    assert per_cluster["2"].accuracy == 100.0
    assert overall.n_correct == 2 and overall.n_total == 3


def test_evaluate_accuracy_rejects_unknown_features():
    top = scored_top({"1": [("awesome", "album")]})
    judgments = [
        ("1", Feature("stale", "entry"), True),
        ("9", Feature("awesome", "album"), True),
    ]
    with pytest.raises(DataError) as exc:
        evaluate_accuracy(judgments, top)
    message = str(exc.value)
    assert "stale,entry" in message and "9:awesome,album" in message


def test_judgment_file_round_trip(tmp_path):
    path = tmp_path / "j.csv"
    path.write_text(
        "cluster,adjective,noun,correct\n"
        "1,awesome,album,1\n"
        "1,grim,riff,0\n",
        encoding="utf-8",
    )
    rows = load_judgments(path)
    assert rows == [
        ("1", Feature("awesome", "album"), True),
        ("1", Feature("grim", "riff"), False),
    ]
    top = scored_top({"1": [("awesome", "album"), ("grim", "riff")]})
    _, overall = evaluate_accuracy(path, top)
    assert overall.accuracy == 50.0


def test_judgment_file_validation(tmp_path):
    bad_flag = tmp_path / "bad.csv"
    bad_flag.write_text("cluster,adjective,noun,correct\n1,a,b,yes\n", encoding="utf-8")
    with pytest.raises(DataError):
        load_judgments(bad_flag)
    bad_header = tmp_path / "hdr.csv"
    bad_header.write_text("cluster,adj,correct\n1,a,1\n", encoding="utf-8")
    with pytest.raises(DataError):
        load_judgments(bad_header)


def test_document_features_concatenates_sentences():
    doc = ParsedDocument("u", "a", (AWESOME_ALBUM, LYRICAL_THEME))
    assert document_features(doc) == [
        Feature("awesome", "album"),
        Feature("lyrical", "theme"),
    ]
