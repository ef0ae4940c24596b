"""scikit-learn style wrappers around the two solvers.

``fit`` takes an instance (object, file text or path) and learns an optimal
code; ``transform`` then encodes rows of messages into the concatenated
transmissions of all senders, sender 1 first.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_instance, check_messages
from .cellular import cellular_minsearch, verify_cellular_decoding
from .fitting import DEFAULT_BUDGET, minrank_search
from .oracle import verify_decoding


class _CodeTransformer(TransformerMixin, BaseEstimator):

    def transform(self, X):
        check_is_fitted(self, "generator_")
        rows = check_messages(X, self.instance_.n, self.instance_.q)
        mat = self.generator_.matrix()
        blocks = []
        senders = [sender for sender, _ in self.generator_.items()]
        for s in range(1, self.instance_.num_senders + 1):
            cols = [c for c, sender in enumerate(senders) if sender == s]
            blocks.append(rows @ mat[:, cols] % self.instance_.q)
        return np.hstack(blocks) if blocks else np.zeros((rows.shape[0], 0), dtype=np.int64)

    def predict(self, X=None):
        """Per-receiver decoding verdicts for the fitted code."""
        check_is_fitted(self, "generator_")
        return np.array(self._verdicts(), dtype=bool)

    def score(self, X=None, y=None):
        """Fraction of receivers that decode (1.0 for a fitted code)."""
        return float(np.mean(self.predict()))


class MinrankIndexCoder(_CodeTransformer):
    """Optimal code when every receiver hears every sender."""

    def __init__(self, budget=DEFAULT_BUDGET, workers=1, use_prop1=True):
        self.budget = budget
        self.workers = workers
        self.use_prop1 = use_prop1

    def fit(self, instance, y=None):
        inst = check_instance(instance).without_coverage()
        res = minrank_search(inst, self.budget, self.workers, self.use_prop1)
        self.instance_ = inst
        self.n_opt_ = res.n_opt
        self.generator_ = res.generator
        self.assignment_ = res.assignment
        self.template_ = res.template
        self.n_features_in_ = inst.n
        return self

    def _verdicts(self):
        return verify_decoding(self.instance_, self.generator_)


class CellularIndexCoder(_CodeTransformer):
    """Optimal code when receivers hear sender 1, sender 2, or both."""

    def __init__(self, budget=DEFAULT_BUDGET, workers=1):
        self.budget = budget
        self.workers = workers

    def fit(self, instance, y=None):
        inst = check_instance(instance, require_coverage=True)
        res = cellular_minsearch(inst, self.budget, self.workers)
        self.instance_ = inst
        self.n_opt_ = res.n_opt
        self.generator_ = res.generator
        self.assignment_ = res.assignment
        self.template_ = res.template
        self.dims_ = res.dims
        self.n_features_in_ = inst.n
        return self

    def _verdicts(self):
        return verify_cellular_decoding(self.instance_, self.generator_)
