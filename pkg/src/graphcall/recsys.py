"""Personalized ranking over timestamped user-item interactions.

Training follows the pairwise-ranking objective: sampled (user, seen item,
unseen item) triplets, stochastic gradient steps maximizing
``ln sigmoid(score(u,i+) - score(u,i-))`` with L2 regularization, where the
score is the factor dot product.  Each user's last interaction by timestamp
is held out of training for evaluation.
"""

from __future__ import annotations

import json

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import BadK, EmptyTraining, NotBipartite, UnknownItem, UnknownUser
from .values import natural_key


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def triplet_loss(user_vec, pos_vec, neg_vec, l2):
    """Loss and analytic gradients for one (u, i+, i-) triplet.

    loss = -ln sigmoid(u . (i+ - i-)) + l2/2 * (|u|^2 + |i+|^2 + |i-|^2)
    """
    diff = pos_vec - neg_vec
    x = float(user_vec @ diff)
    sig = 1.0 / (1.0 + np.exp(-x))
    loss = -np.log(sig) + 0.5 * l2 * (
        user_vec @ user_vec + pos_vec @ pos_vec + neg_vec @ neg_vec
    )
    coeff = -(1.0 - sig)
    grad_user = coeff * diff + l2 * user_vec
    grad_pos = coeff * user_vec + l2 * pos_vec
    grad_neg = -coeff * user_vec + l2 * neg_vec
    return float(loss), (grad_user, grad_pos, grad_neg)


class BprRanker(BaseEstimator):
    """Latent-factor ranker trained on implicit feedback.

    Parameters mirror common practice and are all overridable: factor
    dimension, learning rate, L2 weight, epoch count, and the RNG seed that
    makes initialization and sampling deterministic.
    """

    def __init__(self, dim=32, learning_rate=0.05, l2=0.01, epochs=50, seed=0):
        self.dim = dim
        self.learning_rate = learning_rate
        self.l2 = l2
        self.epochs = epochs
        self.seed = seed

    def fit(self, dataset):
        interactions = _bipartite_interactions(dataset)
        if not interactions:
            raise EmptyTraining("no user-item interactions to train on")

        train, heldout = _holdout_last(interactions)
        users = sorted({u for u, _, _ in interactions}, key=natural_key)
        items = sorted({i for _, i, _ in interactions}, key=natural_key)
        u_index = {u: k for k, u in enumerate(users)}
        i_index = {i: k for k, i in enumerate(items)}

        rng = np.random.default_rng(self.seed)
        U = rng.uniform(-0.01, 0.01, size=(len(users), self.dim))
        V = rng.uniform(-0.01, 0.01, size=(len(items), self.dim))

        seen = {u: set() for u in users}
        for u, i in train:
            seen[u].add(i)
        triplets = [(u_index[u], i_index[i]) for u, i in train]
        unseen = {
            u_index[u]: np.array([i_index[i] for i in items if i not in seen[u]], dtype=int)
            for u in users
        }

        epoch_losses = []
        lr = self.learning_rate
        for _ in range(self.epochs):
            order = rng.permutation(len(triplets))
            for idx in order:
                ui, pi = triplets[idx]
                candidates = unseen[ui]
                if len(candidates) == 0:
                    continue
                ni = int(candidates[rng.integers(len(candidates))])
                _, (gu, gp, gn) = triplet_loss(U[ui], V[pi], V[ni], self.l2)
                U[ui] -= lr * gu
                V[pi] -= lr * gp
                V[ni] -= lr * gn
            epoch_losses.append(_mean_rank_loss(U, V, triplets, unseen))

        self.users_ = users
        self.items_ = items
        self.user_factors_ = U
        self.item_factors_ = V
        self.seen_ = {u: sorted(s, key=natural_key) for u, s in seen.items()}
        self.heldout_ = heldout
        self.epoch_losses_ = epoch_losses
        self._u_index = u_index
        self._i_index = i_index
        return self

    def _user_vec(self, user):
        user = str(user)
        if user not in self._u_index:
            raise UnknownUser(f"no user {user!r}")
        return self.user_factors_[self._u_index[user]]

    def _item_vec(self, item):
        item = str(item)
        if item not in self._i_index:
            raise UnknownItem(f"no item {item!r}")
        return self.item_factors_[self._i_index[item]]

    def recommendation(self, user, item):
        """Interest likelihood sigmoid(u . i), strictly inside (0, 1)."""
        check_is_fitted(self, "user_factors_")
        return float(_sigmoid(self._user_vec(user) @ self._item_vec(item)))

    def topk_recommendation(self, user, k):
        """The k highest-scoring items outside the user's training history,
        ties broken by ascending item id."""
        check_is_fitted(self, "user_factors_")
        if k < 1:
            raise BadK(f"k must be >= 1, got {k}")
        uvec = self._user_vec(user)
        seen = set(self.seen_[str(user)])
        scored = [
            (float(uvec @ self.item_factors_[self._i_index[i]]), i)
            for i in self.items_
            if i not in seen
        ]
        scored.sort(key=lambda si: (-si[0], natural_key(si[1])))
        return [i for _, i in scored[:k]]

    def save(self, path):
        check_is_fitted(self, "user_factors_")
        doc = {
            "kind": "bpr",
            "hyper": self.get_params(),
            "users": {u: self.user_factors_[k].tolist() for u, k in self._u_index.items()},
            "items": {i: self.item_factors_[k].tolist() for i, k in self._i_index.items()},
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        model = cls(**doc["hyper"])
        users = sorted(doc["users"], key=natural_key)
        items = sorted(doc["items"], key=natural_key)
        model.users_ = users
        model.items_ = items
        model.user_factors_ = np.array([doc["users"][u] for u in users])
        model.item_factors_ = np.array([doc["items"][i] for i in items])
        model._u_index = {u: k for k, u in enumerate(users)}
        model._i_index = {i: k for k, i in enumerate(items)}
        model.seen_ = {u: [] for u in users}
        model.heldout_ = {}
        model.epoch_losses_ = []
        return model


def train_bpr(dataset, **hyper):
    return BprRanker(**hyper).fit(dataset)


def _bipartite_interactions(dataset):
    """(user, item, timestamp) tuples; link sources are users, targets items."""
    sources = {l.source for l in dataset.links}
    targets = {l.target for l in dataset.links}
    overlap = sources & targets
    if overlap:
        raise NotBipartite(f"nodes appear as both user and item: {sorted(overlap)[:3]}")
    return [(l.source, l.target, l.timestamp or 0) for l in dataset.links]


def _holdout_last(interactions):
    """Split off each user's last interaction by timestamp for testing."""
    by_user = {}
    for u, i, ts in interactions:
        by_user.setdefault(u, []).append((ts, i))
    train, heldout = [], {}
    for u in sorted(by_user, key=natural_key):
        events = sorted(by_user[u], key=lambda ti: (ti[0], natural_key(ti[1])))
        if len(events) >= 2:
            heldout[u] = events[-1][1]
            events = events[:-1]
        for _, i in events:
            train.append((u, i))
    if not train:
        raise EmptyTraining("holdout split left no training interactions")
    return train, heldout


def _mean_rank_loss(U, V, triplets, unseen):
    """Mean -ln sigmoid over every training pair against all unseen items."""
    total, count = 0.0, 0
    for ui, pi in triplets:
        candidates = unseen[ui]
        if len(candidates) == 0:
            continue
        x = (V[pi] - V[candidates]) @ U[ui]
        total += float(np.sum(-np.log(_sigmoid(x))))
        count += len(candidates)
    return total / max(count, 1)
