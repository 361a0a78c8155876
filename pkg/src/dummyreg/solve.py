"""Ordinary least squares with rank checking and Student-t inference.

Estimation goes through a pivoted QR factorization, never an explicit
normal-equations inverse. Exact collinearity (the dummy variable trap)
is a hard error naming the dependent columns. P-values come from a
self-contained Student-t CDF built on the regularized incomplete beta
function; an independent quadrature oracle lives in the oracle module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np
from scipy.linalg import qr, solve_triangular

from .encode import ColumnLabel, DesignInfo, DesignMatrix, profile_row
from .errors import (
    DimensionMismatch,
    RankDeficient,
    TooFewRows,
    UnknownLabel,
)

RANK_TOL = 1e-10


@dataclass(frozen=True)
class FitResult:
    coefficients: np.ndarray
    stderr: np.ndarray
    t_values: np.ndarray
    p_two_tailed: np.ndarray
    df_residual: int
    sigma2: float
    cov: np.ndarray
    labels: tuple[ColumnLabel, ...]
    r_squared: float
    rss: float
    fitted: np.ndarray
    residuals: np.ndarray

    def __post_init__(self):
        labels = tuple(
            ColumnLabel(l, l) if isinstance(l, str) else l for l in self.labels
        )
        object.__setattr__(self, "labels", labels)
        for name in ("coefficients", "stderr", "t_values", "p_two_tailed",
                     "cov", "fitted", "residuals"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_cols(self) -> int:
        return len(self.coefficients)

    def index_of(self, label: str) -> int:
        for i, lab in enumerate(self.labels):
            if lab.text == label:
                return i
        raise UnknownLabel(label)


def fit(design: DesignMatrix) -> FitResult:
    """Least-squares fit of the design's response on its columns."""
    x = design.values
    y = design.response
    n, p = x.shape
    if n <= p:
        raise TooFewRows(n, p)

    q, r, piv = qr(x, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    scale = diag.max() if diag.size else 0.0
    if scale == 0.0:
        dependent = np.ones(p, dtype=bool)
    else:
        dependent = diag < RANK_TOL * scale
    if dependent.any():
        names = [design.labels[piv[j]].text for j in np.flatnonzero(dependent)]
        raise RankDeficient(names)

    pivoted = solve_triangular(r, q.T @ y)
    coefficients = np.empty(p)
    coefficients[piv] = pivoted

    fitted = x @ coefficients
    residuals = y - fitted
    rss = float(residuals @ residuals)
    df = n - p
    sigma2 = rss / df

    r_inv = solve_triangular(r, np.eye(p))
    cov_pivoted = sigma2 * (r_inv @ r_inv.T)
    cov = np.empty((p, p))
    cov[np.ix_(piv, piv)] = cov_pivoted

    stderr = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    t_values = np.zeros(p)
    for i in range(p):
        if stderr[i] > 0:
            t_values[i] = coefficients[i] / stderr[i]
        elif coefficients[i] != 0:
            t_values[i] = math.copysign(math.inf, coefficients[i])
    p_two = np.array([2.0 * (1.0 - student_t_cdf(abs(t), df)) for t in t_values])

    tss = float(((y - y.mean()) ** 2).sum())
    r_squared = 0.0 if tss == 0 else min(max(1.0 - rss / tss, 0.0), 1.0)

    return FitResult(
        coefficients=coefficients,
        stderr=stderr,
        t_values=t_values,
        p_two_tailed=p_two,
        df_residual=df,
        sigma2=sigma2,
        cov=cov,
        labels=design.labels,
        r_squared=r_squared,
        rss=rss,
        fitted=fitted,
        residuals=residuals,
    )


# --- Student-t CDF via the regularized incomplete beta function -------

_BETA_MAXIT = 300
_BETA_EPS = 3e-16
_BETA_FPMIN = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETA_FPMIN:
        d = _BETA_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_FPMIN:
            d = _BETA_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETA_FPMIN:
            c = _BETA_FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_FPMIN:
            d = _BETA_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETA_FPMIN:
            c = _BETA_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def _betai(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_cdf(t: float, df: int) -> float:
    """P(T <= t) for Student's t with df degrees of freedom.

    Symmetric by construction: cdf(-t) and cdf(t) share one tail value,
    so their sum is 1 to full precision.
    """
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    t = float(t)
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * _betai(0.5 * df, 0.5, x)
    return 1.0 - tail if t > 0 else tail


def one_tailed_p(fit_result: FitResult, label: str, direction: str) -> float:
    """Directional p-value: half the two-tailed p when the estimate's
    sign matches the stated direction, else the complement."""
    if direction not in ("less", "greater"):
        raise ValueError("direction must be 'less' or 'greater'")
    i = fit_result.index_of(label)
    estimate = float(fit_result.coefficients[i])
    p_two = float(fit_result.p_two_tailed[i])
    agrees = estimate > 0 if direction == "greater" else estimate < 0
    return p_two / 2.0 if agrees else 1.0 - p_two / 2.0


@dataclass(frozen=True)
class LinearCombination:
    estimate: float
    stderr: float
    t_value: float
    p_two_tailed: float


def linear_combination(
    fit_result: FitResult, weights: Sequence[float]
) -> LinearCombination:
    """Estimate and test w'b for a fixed weight vector w."""
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (fit_result.n_cols,):
        raise DimensionMismatch(w.shape[0] if w.ndim == 1 else w.shape,
                                fit_result.n_cols)
    estimate = float(w @ fit_result.coefficients)
    variance = float(w @ fit_result.cov @ w)
    stderr = math.sqrt(max(variance, 0.0))
    if stderr == 0.0:
        t_value = 0.0 if estimate == 0.0 else math.copysign(math.inf, estimate)
    else:
        t_value = estimate / stderr
    p_two = 2.0 * (1.0 - student_t_cdf(abs(t_value), fit_result.df_residual))
    return LinearCombination(estimate, stderr, t_value, p_two)


def predict_mean(
    fit_result: FitResult,
    profile: Mapping[str, object],
    design: Union[DesignMatrix, DesignInfo],
) -> float:
    """Estimated mean response for one profile of predictor settings."""
    row = profile_row(design, profile)
    if row.shape != (fit_result.n_cols,):
        raise DimensionMismatch(row.shape[0], fit_result.n_cols)
    return float(row @ fit_result.coefficients)
