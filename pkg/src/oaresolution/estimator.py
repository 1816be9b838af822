"""scikit-learn style front end over a run matrix."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import DesignError, FractionalDesign, FullFactorial, subset_label, subsets
from .effects import ResourceGuard, alias_table, interaction_space
from .strength import strength_by_independence
from .verify import verify_identities

__all__ = ["DesignAnalyzer", "check_runs"]


def check_runs(X, level_counts=None) -> FractionalDesign:
    """Validate an ``(N, k)`` matrix of 0-based levels as a simple fraction.

    When ``level_counts`` is omitted each factor gets ``max level + 1``
    levels (at least 2).
    """
    X = check_array(X, dtype=None, ensure_min_features=1)
    if not np.issubdtype(X.dtype, np.integer):
        if not np.all(np.equal(np.mod(X, 1), 0)):
            raise DesignError("run matrix must hold integer levels")
        X = X.astype(np.int64)
    if level_counts is None:
        level_counts = tuple(max(2, int(c) + 1) for c in X.max(axis=0))
    f = FullFactorial(tuple(level_counts))
    if X.shape[1] != f.k:
        raise DesignError(f"run matrix has {X.shape[1]} columns for {f.k} factors")
    return FractionalDesign.from_cells(f, (tuple(int(a) for a in row) for row in X))


class DesignAnalyzer(TransformerMixin, BaseEstimator):
    """Analyze a simple fraction given as a run matrix.

    ``fit`` computes maximum strength, maximum Box-Hunter resolution, the
    generalized wordlength pattern and the alias table. ``transform`` codes
    runs by the interaction contrasts ``U_I`` for ``1 <= |I| <= max_order``,
    one column per basis vector.

    Parameters
    ----------
    level_counts : tuple of int, optional
        Levels per factor; inferred from the data when omitted.
    max_order : int, optional
        Largest effect order in the alias table and in ``transform``;
        defaults to the number of factors.
    max_factors, max_cells : int
        Resource guard on the full factorial.
    """

    def __init__(self, level_counts=None, max_order=None, max_factors=10, max_cells=4096):
        self.level_counts = level_counts
        self.max_order = max_order
        self.max_factors = max_factors
        self.max_cells = max_cells

    def fit(self, X, y=None):
        design = check_runs(X, self.level_counts)
        guard = ResourceGuard(self.max_factors, self.max_cells)
        report = verify_identities(design, guard)
        self.design_ = design
        self.n_features_in_ = design.k
        self.strength_report_ = strength_by_independence(design)
        self.t_max_ = report.t_max
        self.r_max_ = report.r_max
        self.gwlp_ = report.gwlp.pattern
        self.verification_ = report
        self.alias_report_ = alias_table(design, self.max_order, guard)
        return self

    def _effects(self):
        order = self.design_.k if self.max_order is None else self.max_order
        return subsets(self.design_.k, order)

    def transform(self, X):
        check_is_fitted(self, "design_")
        X = check_array(X, dtype=np.int64)
        f: FullFactorial = self.design_.parent
        if X.shape[1] != f.k:
            raise DesignError(f"expected {f.k} columns, got {X.shape[1]}")
        idx = [f.index_of(tuple(int(a) for a in row)) for row in X]
        cols = []
        for I in self._effects():
            for vec in interaction_space(f, I).space.basis:
                cols.append([float(vec[i]) for i in idx])
        return np.array(cols, dtype=float).T.reshape(len(idx), len(cols))

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "design_")
        names = []
        for I in self._effects():
            dim = interaction_space(self.design_.parent, I).dim
            names.extend(f"{subset_label(I)}_{j}" for j in range(dim))
        return np.array(names, dtype=object)
