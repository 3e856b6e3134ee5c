import math
import random

import pytest

from corpus import corpus
from graphcall import metrics
from graphcall.errors import LengthMismatch

# Garbled generation vs its intended ground truth: the call sequences differ,
# so call-generation accuracy must score the pair as a mismatch.
GARBLED_PREDICTION = (
    "root>'s eccentricity is [GR(GL(\"gpr\", {\"lollipop_graph\"}), "
    '"toolx:eccentricity", <root>)-->r].root>\'s eccentricity is '
    '[GR(GL("gpr", {"lollipop_graph"}), "toolx:eccentricity", <root>)-->r1].'
    "root>'s eccentricity is [GR(GL(\"gpr"
)
GARBLED_GOLD = (
    'Nodes [GR(GL("gpr", {"lollipop_graph"}), "toolx:periphery")-->r] have the '
    'largest eccentricity [GR(GL("gpr", {"lollipop_graph"}), "toolx:eccentricity")] '
    "in the lollipop graph, which make them part of its periphery."
)
MATCHING_PREDICTION = (
    'The length of shortest path between node #3 and node #2 in the diamond graph is '
    '[GR(GL("gpr", {"diamond_graph"}), "toolx:shortest_path", "node#3", "node#2")-->r].'
)
MATCHING_GOLD = (
    'In the diamond graph, the length of shortest path between node #3 and node #2 is '
    '[GR(GL("gpr", {"diamond_graph"}), "toolx:shortest_path", "node#3", "node#2")-->r].'
)


class TestRouge:
    def test_identical_strings_score_100(self):
        for text in ("the cat sat", "a b c d e f", "Paper #1 has topic X."):
            assert metrics.rouge(text, text) == (100.0, 100.0, 100.0, 100.0)

    def test_hand_derived_unigram_case(self):
        r1, r2, rl, rlsum = metrics.rouge("the cat", "the cat sat")
        # Unigram P = 2/2, R = 2/3, F1 = 0.8.
        assert r1 == pytest.approx(80.0, abs=0.01)
        assert rl == pytest.approx(80.0, abs=0.01)
        assert rlsum == pytest.approx(80.0, abs=0.01)

    def test_disjoint_vocabulary_scores_zero(self):
        assert metrics.rouge("alpha beta", "gamma delta") == (0.0, 0.0, 0.0, 0.0)

    def test_empty_strings(self):
        assert metrics.rouge("", "") == (100.0, 100.0, 100.0, 100.0)
        assert metrics.rouge("", "words here")[0] == 0.0
        assert metrics.rouge("words here", "")[0] == 0.0

    def test_lsum_aggregates_lines(self):
        pred = "the cat sat\nthe dog ran"
        gold = "the dog ran\nthe cat sat"
        _, _, rl, rlsum = metrics.rouge(pred, gold)
        assert rlsum == pytest.approx(100.0)
        assert rl < 100.0

    def test_tokenization_case_and_punctuation(self):
        r1 = metrics.rouge("The CAT!", "the cat")[0]
        assert r1 == pytest.approx(100.0)


class TestBleu:
    def test_identical_corpora(self):
        texts = ["the quick brown fox jumps over the lazy dog today", "graphs have nodes and links and more"]
        score, bp = metrics.bleu(texts, texts)
        assert score == pytest.approx(100.0)
        assert bp == 1.0

    def test_half_length_perfect_precision(self):
        score, bp = metrics.bleu(["a b c d"], ["a b c d e f g h"])
        assert bp == pytest.approx(math.exp(-1.0))
        assert score == pytest.approx(100.0 * math.exp(-1.0))

    def test_empty_candidate(self):
        score, bp = metrics.bleu([""], ["some reference text"])
        assert score == 0.0
        assert bp == 0.0

    def test_zero_ngram_precision_zeroes_score(self):
        score, _ = metrics.bleu(["a b x y"], ["a b c d"])
        assert score == 0.0  # no common 2-gram; no smoothing

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            metrics.bleu(["a"], ["a", "b"])


class TestApiAccuracy:
    def test_identical_outputs(self):
        texts = corpus()[:20]
        assert metrics.api_accuracy(texts, texts) == 100.0

    def test_garbled_pair_scores_zero(self):
        assert metrics.api_accuracy([GARBLED_PREDICTION], [GARBLED_GOLD]) == 0.0

    def test_prose_differences_ignored(self):
        assert metrics.api_accuracy([MATCHING_PREDICTION], [MATCHING_GOLD]) == 100.0

    def test_result_name_and_whitespace_invariance(self):
        pred = 'x [GR( GL("gpr", {"bull_graph"}) , "toolx:order" ) --> r1 ] y'
        gold = 'z [GR(GL("gpr", {"bull_graph"}), "toolx:order")-->r] w'
        assert metrics.api_accuracy([pred], [gold]) == 100.0

    def test_unparseable_prediction_is_mismatch(self):
        gold = 'a [GR(GL("gpr", {"bull_graph"}), "toolx:order")-->r] b'
        pred = "a [GR(GL( broken b"
        assert metrics.api_accuracy([pred], [gold]) == 0.0

    def test_call_count_must_match(self):
        one = 'x [GR(GL("g"), "toolx:order")-->r]'
        two = one + ' and [GR(GL("g"), "toolx:size")-->r]'
        assert metrics.api_accuracy([one], [two]) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            metrics.api_accuracy(["a"], [])


class TestPerStatementIdentity:
    def test_rouge_identity_for_every_corpus_statement(self):
        for text in corpus():
            assert metrics.rouge(text, text) == (100.0, 100.0, 100.0, 100.0)

    def test_bleu_identity_for_every_scoreable_statement(self):
        # Unsmoothed BLEU needs at least one 4-gram; shorter statements score
        # 0 by design and are skipped here.
        for text in corpus():
            if len(metrics.tokenize(text)) < 4:
                continue
            score, bp = metrics.bleu([text], [text])
            assert score == pytest.approx(100.0)
            assert bp == 1.0


class TestEvaluate:
    def test_identity_report(self):
        texts = corpus()[:30]
        report = metrics.evaluate(texts, texts)
        assert report.rouge1 == report.rouge2 == report.rougeL == report.rougeLsum == 100.0
        assert report.bleu == pytest.approx(100.0)
        assert report.bp == 1.0
        assert report.api_accuracy == 100.0
        assert report.n == 30

    def test_permutation_symmetry(self):
        rng = random.Random(0)
        golds = corpus()[:20]
        preds = [g if i % 3 else g.replace("the", "a") for i, g in enumerate(golds)]
        base = metrics.evaluate(preds, golds)
        order = list(range(20))
        rng.shuffle(order)
        shuffled = metrics.evaluate([preds[i] for i in order], [golds[i] for i in order])
        assert shuffled.rouge1 == pytest.approx(base.rouge1)
        assert shuffled.bleu == pytest.approx(base.bleu)
        assert shuffled.bp == pytest.approx(base.bp)
        assert shuffled.api_accuracy == pytest.approx(base.api_accuracy)

    def test_percentages_within_bounds(self):
        golds = corpus()[:15]
        preds = ["completely unrelated text"] * 15
        report = metrics.evaluate(preds, golds)
        for value in (report.rouge1, report.rouge2, report.rougeL, report.rougeLsum, report.bleu, report.api_accuracy):
            assert 0.0 <= value <= 100.0
        assert report.bp <= 1.0
