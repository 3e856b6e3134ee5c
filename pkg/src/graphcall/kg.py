"""Knowledge-graph embedding and entity/relation search.

Triples (head, relation, tail) come from link records whose label names the
relation.  Embeddings are trained with the margin-ranking objective
``[margin + d(h + r, t) - d(h' + r, t')]+`` over corrupted negatives, with
entity vectors renormalized to unit L2 norm after every epoch.  Search
answers a query by ranking every candidate for the missing slot by distance.
"""

from __future__ import annotations

import json

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import EmptyTraining, MissingRelationLabels, UnknownEntity, UnknownRelation
from .values import natural_key


def distance(head_vec, relation_vec, tail_vec):
    """L2 distance between head + relation and tail.

    Unchanged when the same constant vector is added to both head and tail.
    """
    return float(np.linalg.norm(head_vec + relation_vec - tail_vec))


def margin_loss(h, r, t, h_neg, t_neg, margin):
    """Hinge loss and analytic gradients for one positive/negative triple pair.

    Gradients are valid away from the hinge corner and zero-distance points.
    """
    pos_diff = h + r - t
    neg_diff = h_neg + r - t_neg
    d_pos = float(np.linalg.norm(pos_diff))
    d_neg = float(np.linalg.norm(neg_diff))
    loss = margin + d_pos - d_neg
    zeros = np.zeros_like(h)
    if loss <= 0:
        return 0.0, (zeros, zeros, zeros, zeros, zeros)
    g_pos = pos_diff / d_pos if d_pos > 0 else zeros
    g_neg = neg_diff / d_neg if d_neg > 0 else zeros
    grad_h = g_pos
    grad_t = -g_pos
    grad_r = g_pos - g_neg
    grad_h_neg = -g_neg
    grad_t_neg = g_neg
    return loss, (grad_h, grad_r, grad_t, grad_h_neg, grad_t_neg)


class TransEEmbedder(BaseEstimator):
    """Translation-based embeddings with argmin search over candidates."""

    def __init__(self, dim=50, margin=1.0, learning_rate=0.01, epochs=100, seed=0):
        self.dim = dim
        self.margin = margin
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.seed = seed

    def fit(self, dataset):
        triples = []
        for link in dataset.links:
            if link.label is None:
                raise MissingRelationLabels(
                    f"link ({link.source}, {link.target}) has no relation label"
                )
            triples.append((link.source, str(link.label), link.target))
        if not triples:
            raise EmptyTraining("no triples to train on")

        entities = sorted({h for h, _, _ in triples} | {t for _, _, t in triples}, key=natural_key)
        relations = sorted({r for _, r, _ in triples}, key=natural_key)
        e_index = {e: k for k, e in enumerate(entities)}
        r_index = {r: k for k, r in enumerate(relations)}

        rng = np.random.default_rng(self.seed)
        bound = 6.0 / np.sqrt(self.dim)
        E = rng.uniform(-bound, bound, size=(len(entities), self.dim))
        R = rng.uniform(-bound, bound, size=(len(relations), self.dim))
        E /= np.linalg.norm(E, axis=1, keepdims=True)

        indexed = [(e_index[h], r_index[r], e_index[t]) for h, r, t in triples]
        lr = self.learning_rate
        n_entities = len(entities)
        for _ in range(self.epochs):
            order = rng.permutation(len(indexed))
            for idx in order:
                hi, ri, ti = indexed[idx]
                if rng.random() < 0.5:
                    hc = _corrupt(rng, n_entities, hi)
                    tc = ti
                else:
                    hc = hi
                    tc = _corrupt(rng, n_entities, ti)
                loss, grads = margin_loss(E[hi], R[ri], E[ti], E[hc], E[tc], self.margin)
                if loss <= 0:
                    continue
                gh, gr, gt, ghn, gtn = grads
                E[hi] -= lr * gh
                R[ri] -= lr * gr
                E[ti] -= lr * gt
                E[hc] -= lr * ghn
                E[tc] -= lr * gtn
            E /= np.linalg.norm(E, axis=1, keepdims=True)

        self.entities_ = entities
        self.relations_ = relations
        self.entity_factors_ = E
        self.relation_factors_ = R
        self.triples_ = triples
        self._e_index = e_index
        self._r_index = r_index
        return self

    def _entity_vec(self, entity):
        entity = str(entity)
        if entity not in self._e_index:
            raise UnknownEntity(f"no entity {entity!r}")
        return self.entity_factors_[self._e_index[entity]]

    def _relation_vec(self, relation):
        relation = str(relation)
        if relation not in self._r_index:
            raise UnknownRelation(f"no relation {relation!r}")
        return self.relation_factors_[self._r_index[relation]]

    def search_tail_entity(self, head, relation):
        check_is_fitted(self, "entity_factors_")
        h, r = self._entity_vec(head), self._relation_vec(relation)
        return _argmin(
            ((distance(h, r, self.entity_factors_[self._e_index[e]]), e) for e in self.entities_)
        )

    def search_head_entity(self, relation, tail):
        check_is_fitted(self, "entity_factors_")
        r, t = self._relation_vec(relation), self._entity_vec(tail)
        return _argmin(
            ((distance(self.entity_factors_[self._e_index[e]], r, t), e) for e in self.entities_)
        )

    def search_relation(self, head, tail):
        check_is_fitted(self, "entity_factors_")
        h, t = self._entity_vec(head), self._entity_vec(tail)
        return _argmin(
            ((distance(h, self.relation_factors_[self._r_index[r]], t), r) for r in self.relations_)
        )

    def save(self, path):
        check_is_fitted(self, "entity_factors_")
        doc = {
            "kind": "transe",
            "hyper": self.get_params(),
            "entities": {e: self.entity_factors_[k].tolist() for e, k in self._e_index.items()},
            "relations": {r: self.relation_factors_[k].tolist() for r, k in self._r_index.items()},
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        model = cls(**doc["hyper"])
        entities = sorted(doc["entities"], key=natural_key)
        relations = sorted(doc["relations"], key=natural_key)
        model.entities_ = entities
        model.relations_ = relations
        model.entity_factors_ = np.array([doc["entities"][e] for e in entities])
        model.relation_factors_ = np.array([doc["relations"][r] for r in relations])
        model.triples_ = []
        model._e_index = {e: k for k, e in enumerate(entities)}
        model._r_index = {r: k for k, r in enumerate(relations)}
        return model


def train_transe(dataset, **hyper):
    return TransEEmbedder(**hyper).fit(dataset)


def _corrupt(rng, n_entities, original):
    if n_entities < 2:
        return original
    other = int(rng.integers(n_entities - 1))
    return other + 1 if other >= original else other


def _argmin(scored):
    best = min(scored, key=lambda se: (se[0], natural_key(se[1])))
    return best[1]
