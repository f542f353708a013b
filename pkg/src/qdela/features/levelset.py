"""Level-set classification features (f8-f16).

For each quantile level q in {0.10, 0.25, 0.50} the dataset is split
into y <= quantile vs y > quantile and both a linear (pooled
covariance) and a quadratic (per-class covariance) Gaussian
discriminant are scored by stratified cross-validation.
"""

from __future__ import annotations

import numpy as np

from ..types import Dataset
from .common import (
    FeatureVector,
    InsufficientSamples,
    STATUS_INSUFFICIENT,
)

__all__ = ["ela_level", "LEVEL_QUANTILES"]

LEVEL_QUANTILES = (0.10, 0.25, 0.50)

# feature codes per quantile: (ratio, mmce_lda, mmce_qda)
_CODES = {
    0.10: ("f8", "f11", "f14"),
    0.25: ("f9", "f12", "f15"),
    0.50: ("f10", "f13", "f16"),
}

_REG_SCALE = 1e-8


def _regularise(cov: np.ndarray) -> np.ndarray:
    d = cov.shape[0]
    lam = _REG_SCALE * np.trace(cov) / d
    return cov + lam * np.eye(d)


class _LDA:
    def fit(self, X, labels):
        self.means = [X[labels == c].mean(axis=0) for c in (0, 1)]
        self.priors = [np.mean(labels == c) for c in (0, 1)]
        n = len(labels)
        pooled = sum(
            np.cov(X[labels == c], rowvar=False, bias=True) * np.sum(labels == c)
            for c in (0, 1)
        ) / n
        pooled = _regularise(np.atleast_2d(pooled))
        self.prec = np.linalg.pinv(pooled)
        return self

    def predict(self, X):
        scores = np.column_stack(
            [
                X @ self.prec @ mu - 0.5 * mu @ self.prec @ mu + np.log(max(pi, 1e-300))
                for mu, pi in zip(self.means, self.priors)
            ]
        )
        return np.argmax(scores, axis=1)


class _QDA:
    def fit(self, X, labels):
        self.means = []
        self.precs = []
        self.logdets = []
        self.priors = []
        for c in (0, 1):
            Xc = X[labels == c]
            cov = _regularise(np.atleast_2d(np.cov(Xc, rowvar=False, bias=True)))
            sign, logdet = np.linalg.slogdet(cov)
            self.means.append(Xc.mean(axis=0))
            self.precs.append(np.linalg.pinv(cov))
            self.logdets.append(logdet if sign > 0 else 0.0)
            self.priors.append(len(Xc) / len(X))
        return self

    def predict(self, X):
        scores = []
        for mu, prec, logdet, pi in zip(self.means, self.precs, self.logdets, self.priors):
            diff = X - mu
            maha = np.einsum("ij,jk,ik->i", diff, prec, diff)
            scores.append(-0.5 * logdet - 0.5 * maha + np.log(max(pi, 1e-300)))
        return np.argmax(np.column_stack(scores), axis=1)


def _stratified_folds(labels: np.ndarray, folds: int) -> np.ndarray:
    """Fold index per sample; round-robin inside each class (deterministic)."""
    assignment = np.empty(len(labels), dtype=int)
    for c in (0, 1):
        idx = np.where(labels == c)[0]
        assignment[idx] = np.arange(len(idx)) % folds
    return assignment


def _cv_mmce(model_cls, X, labels, folds: int) -> float:
    assignment = _stratified_folds(labels, folds)
    errors = []
    for f in range(folds):
        train = assignment != f
        test = ~train
        pred = model_cls().fit(X[train], labels[train]).predict(X[test])
        errors.append(float(np.mean(pred != labels[test])))
    return float(np.mean(errors))


def ela_level(D: Dataset, level_folds: int = 10) -> FeatureVector:
    """Cross-validated misclassification errors and LDA/QDA ratios.

    A quantile whose minority class cannot populate every fold yields
    insufficient-samples for its three features; the other quantiles
    still compute.
    """
    fv = FeatureVector()
    D = D.canonical_order()
    enough_rows = D.m >= 10 * level_folds
    for q in LEVEL_QUANTILES:
        ratio_code, lda_code, qda_code = _CODES[q]
        threshold = np.quantile(D.y, q)
        labels = (D.y <= threshold).astype(int)
        counts = np.bincount(labels, minlength=2)
        if not enough_rows or counts.min() < level_folds:
            for code in (ratio_code, lda_code, qda_code):
                fv.set_undefined(code, STATUS_INSUFFICIENT)
            continue
        mmce_lda = _cv_mmce(_LDA, D.X, labels, level_folds)
        mmce_qda = _cv_mmce(_QDA, D.X, labels, level_folds)
        fv.set(lda_code, mmce_lda)
        fv.set(qda_code, mmce_qda)
        if mmce_qda == 0.0:
            # 0/0 is defined as 1; a zero-error QDA against a fallible LDA
            # has no finite ratio
            fv.set(ratio_code, 1.0 if mmce_lda == 0.0 else float("inf"))
        else:
            fv.set(ratio_code, mmce_lda / mmce_qda)
    return fv
