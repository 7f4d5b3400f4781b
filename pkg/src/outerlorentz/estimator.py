"""Transformer interface: rows of function values in, outer Lorentz norms out."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .lorentz import LorentzExponents, lorentz_norm
from .setting import FiniteSetting, setting_from_json
from .tokens import parse_exponent, parse_size


def check_setting(setting) -> FiniteSetting:
    """Accept a FiniteSetting, a JSON-style dict or a path to a JSON file."""
    if isinstance(setting, FiniteSetting):
        return setting
    return setting_from_json(setting)


def check_functions(F, setting: FiniteSetting) -> np.ndarray:
    """2-D float array with one column per point; finite values only."""
    F = check_array(F, dtype=float, ensure_2d=False)
    F = np.atleast_2d(F)
    if F.shape[1] != setting.n:
        raise ValueError(f"expected {setting.n} values per function, got {F.shape[1]}")
    return F


class OuterLorentzNorm(TransformerMixin, BaseEstimator):
    """Outer L^{p,q} quasi-norm of each row with respect to a size.

    ``fit`` takes the setting (the estimator learns nothing from data);
    ``transform`` maps an ``(n_functions, n_points)`` array to a column of
    norms.

    Parameters
    ----------
    size : str
        Size token, e.g. ``"ell:inf"``, ``"ell:2"`` or ``"lift:ell1:3"``.
    p, q : float or str
        Lorentz exponents; ``"inf"`` is accepted.
    """

    def __init__(self, size="ell:inf", p=1.0, q="inf"):
        self.size = size
        self.p = p
        self.q = q

    def fit(self, X, y=None):
        self.setting_ = check_setting(X)
        self.size_ = parse_size(self.size, self.setting_)
        self.exponents_ = LorentzExponents(parse_exponent(self.p), parse_exponent(self.q))
        self.n_features_in_ = self.setting_.n
        return self

    def transform(self, X):
        check_is_fitted(self, "size_")
        F = check_functions(X, self.setting_)
        e = self.exponents_
        return np.array([[lorentz_norm(f, self.size_, e.p, e.q)] for f in F])

    def get_feature_names_out(self, input_features=None):
        return np.array([f"L{self.p},{self.q}({self.size})"], dtype=object)
