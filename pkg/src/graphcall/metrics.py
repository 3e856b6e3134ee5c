"""Generation evaluation: ROUGE-1/2/L/LSum, corpus BLEU with brevity penalty,
and call-generation accuracy.

Tokenization everywhere is lowercasing followed by splitting on
non-alphanumeric runs.  ROUGE scores are F1; BLEU uses modified n-gram
precisions for n = 1..4 with uniform weights and no smoothing (a zero
precision zeroes the score).  All scores are percentages.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

from . import dsl
from .errors import LengthMismatch

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text):
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class MetricReport:
    rouge1: float
    rouge2: float
    rougeL: float
    rougeLsum: float
    bleu: float
    bp: float
    api_accuracy: float
    n: int

    def as_dict(self):
        return {
            "rouge1": self.rouge1,
            "rouge2": self.rouge2,
            "rougeL": self.rougeL,
            "rougeLsum": self.rougeLsum,
            "bleu": self.bleu,
            "bp": self.bp,
            "api_accuracy": self.api_accuracy,
            "n": self.n,
        }


def _ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _f1(overlap, pred_total, gold_total):
    if pred_total == 0 and gold_total == 0:
        return 1.0
    if overlap == 0:
        return 0.0
    precision = overlap / pred_total
    recall = overlap / gold_total
    return 2 * precision * recall / (precision + recall)


def _rouge_n(pred_tokens, gold_tokens, n):
    pred = _ngrams(pred_tokens, n)
    gold = _ngrams(gold_tokens, n)
    overlap = sum(min(count, gold[gram]) for gram, count in pred.items())
    return _f1(overlap, sum(pred.values()), sum(gold.values()))


def _lcs_length(a, b):
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def _rouge_l(pred_tokens, gold_tokens):
    lcs = _lcs_length(pred_tokens, gold_tokens)
    return _f1(lcs, len(pred_tokens), len(gold_tokens))


def _union_lcs(gold_line, pred_lines):
    """Token positions of ``gold_line`` matched by an LCS with any pred line."""
    hit = set()
    for pred_line in pred_lines:
        # Backtrack one LCS to mark matched gold positions.
        la, lb = len(gold_line), len(pred_line)
        table = [[0] * (lb + 1) for _ in range(la + 1)]
        for i in range(1, la + 1):
            for j in range(1, lb + 1):
                if gold_line[i - 1] == pred_line[j - 1]:
                    table[i][j] = table[i - 1][j - 1] + 1
                else:
                    table[i][j] = max(table[i - 1][j], table[i][j - 1])
        i, j = la, lb
        while i > 0 and j > 0:
            if gold_line[i - 1] == pred_line[j - 1]:
                hit.add(i - 1)
                i -= 1
                j -= 1
            elif table[i - 1][j] >= table[i][j - 1]:
                i -= 1
            else:
                j -= 1
    return len(hit)


def _rouge_lsum(pred, gold):
    pred_lines = [tokenize(line) for line in pred.splitlines() if line.strip()]
    gold_lines = [tokenize(line) for line in gold.splitlines() if line.strip()]
    pred_total = sum(len(line) for line in pred_lines)
    gold_total = sum(len(line) for line in gold_lines)
    union = sum(_union_lcs(line, pred_lines) for line in gold_lines)
    return _f1(union, pred_total, gold_total)


def rouge(pred, gold):
    """Per-pair (rouge1, rouge2, rougeL, rougeLsum) F1 percentages."""
    pt, gt = tokenize(pred), tokenize(gold)
    return (
        100.0 * _rouge_n(pt, gt, 1),
        100.0 * _rouge_n(pt, gt, 2),
        100.0 * _rouge_l(pt, gt),
        100.0 * _rouge_lsum(pred, gold),
    )


def bleu(preds, golds):
    """Corpus BLEU percentage and brevity penalty.

    BP = exp(1 - r/c) when the candidate corpus is shorter than the
    reference corpus, else 1.
    """
    if len(preds) != len(golds):
        raise LengthMismatch(f"{len(preds)} predictions vs {len(golds)} references")
    cand_len = 0
    ref_len = 0
    matched = [0] * 4
    totals = [0] * 4
    for pred, gold in zip(preds, golds):
        pt, gt = tokenize(pred), tokenize(gold)
        cand_len += len(pt)
        ref_len += len(gt)
        for n in range(1, 5):
            pred_grams = _ngrams(pt, n)
            gold_grams = _ngrams(gt, n)
            matched[n - 1] += sum(min(c, gold_grams[g]) for g, c in pred_grams.items())
            totals[n - 1] += sum(pred_grams.values())
    if cand_len == 0:
        return 0.0, 0.0
    bp = 1.0 if cand_len >= ref_len else math.exp(1.0 - ref_len / cand_len)
    if any(t == 0 or m == 0 for m, t in zip(matched, totals)):
        return 0.0, bp
    log_precision = sum(0.25 * math.log(m / t) for m, t in zip(matched, totals))
    return 100.0 * bp * math.exp(log_precision), bp


def extract_calls(text):
    """Canonicalized call sequence of a statement, in source order."""
    stmt = dsl.parse_statement(text)
    return [dsl.canonicalize(call) for call in stmt.calls]


def api_accuracy(preds, golds):
    """Percentage of pairs whose canonicalized call sequences match exactly.

    Surrounding prose is ignored; a prediction whose calls fail to parse
    yields a differing (possibly empty) sequence and counts as a mismatch.
    """
    if len(preds) != len(golds):
        raise LengthMismatch(f"{len(preds)} predictions vs {len(golds)} references")
    if not preds:
        return 0.0
    hits = sum(1 for p, g in zip(preds, golds) if extract_calls(p) == extract_calls(g))
    return 100.0 * hits / len(preds)


def evaluate(preds, golds):
    """Corpus-level report: mean per-pair ROUGE F1s, corpus BLEU/BP, and
    call-generation accuracy."""
    if len(preds) != len(golds):
        raise LengthMismatch(f"{len(preds)} predictions vs {len(golds)} references")
    if not preds:
        return MetricReport(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0)
    per_pair = [rouge(p, g) for p, g in zip(preds, golds)]
    n = len(per_pair)
    r1, r2, rl, rlsum = (sum(scores[i] for scores in per_pair) / n for i in range(4))
    bleu_score, bp = bleu(preds, golds)
    return MetricReport(
        rouge1=r1,
        rouge2=r2,
        rougeL=rl,
        rougeLsum=rlsum,
        bleu=bleu_score,
        bp=bp,
        api_accuracy=api_accuracy(preds, golds),
        n=n,
    )
