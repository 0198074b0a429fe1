"""Decision functions on the probability scale.

These are the quantities whose signs at modes and endpoint limits decide each
transform order: delta, delta_ps, delta_qmit, delta_dmrl, the centered variant
used by the qmit/dmrl endpoint conditions, and the expected-proportional-
shortfall / mean-residual / mean-inactivity quantile functions they are built
from.  Endpoint limits go through :func:`qorder.limits.limit_at`, preferring
the analytic tail hints of the built-in families.
"""

from __future__ import annotations

import math

from .errors import DomainError, NonFiniteMeanError, QuadratureError
from .limits import (
    LimitValue,
    centered_delta_tail_hint,
    delta_ps_tail_hint,
    delta_tail_hint,
    limit_at,
)
from .oracle import quadrature
from .shape import ratio_qd

__all__ = [
    "delta",
    "delta_ps",
    "delta_qmit",
    "delta_dmrl",
    "centered_delta",
    "eps",
    "mrl_quantile",
    "mit_quantile",
    "delta_limit",
    "centered_delta_limit",
    "delta_ps_limit",
    "finite_mean",
]

_QUAD_TOL = 1e-8


def finite_mean(X) -> float:
    try:
        m = X.mean
    except QuadratureError as exc:
        raise NonFiniteMeanError(f"mean of {X.label()} does not converge") from exc
    if not math.isfinite(m):
        raise NonFiniteMeanError(f"mean of {X.label()} is not finite")
    return m


def lower_weighted_integral(X, p):
    """Integral of q * quantile_density_X(q) over (0, p)."""
    return quadrature(lambda q: q * X.quantile_density(q), 0.0, float(p), rel_tol=_QUAD_TOL)


def upper_weighted_integral(X, p):
    """Integral of (1-q) * quantile_density_X(q) over (p, 1)."""
    return quadrature(lambda q: (1.0 - q) * X.quantile_density(q), float(p), 1.0, rel_tol=_QUAD_TOL)


def delta(X, Y, p):
    """F^-1(p) * (f(F^-1(p))/g(G^-1(p))) - G^-1(p)."""
    return X.quantile(p) * ratio_qd(X, Y, p) - Y.quantile(p)


def delta_ps(X, Y, p):
    """F^-1(p)/E[X] - G^-1(p)/E[Y]."""
    ex, ey = finite_mean(X), finite_mean(Y)
    if ex == 0.0 or ey == 0.0:
        raise DomainError("delta_ps requires nonzero means")
    return X.quantile(p) / ex - Y.quantile(p) / ey


def delta_qmit(X, Y, p):
    """ratio(p) * int_0^p q*qd_X - int_0^p q*qd_Y; >= 0 everywhere iff X <=qmit Y."""
    return ratio_qd(X, Y, p) * lower_weighted_integral(X, p) - lower_weighted_integral(Y, p)


def delta_dmrl(X, Y, p):
    """int_p^1 (1-q)*qd_Y - ratio(p) * int_p^1 (1-q)*qd_X; >= 0 everywhere iff X <=dmrl Y."""
    return upper_weighted_integral(Y, p) - ratio_qd(X, Y, p) * upper_weighted_integral(X, p)


def centered_delta(X, Y, p):
    """ratio(p)*(F^-1(p)-E[X]) - (G^-1(p)-E[Y]).

    Its limit at 1- is the qmit endpoint condition; at 0+ the dmrl one.
    """
    return ratio_qd(X, Y, p) * (X.quantile(p) - finite_mean(X)) - (
        Y.quantile(p) - finite_mean(Y)
    )


def eps(X, p):
    """Expected proportional shortfall at quantile level p."""
    finite_mean(X)
    q = X.quantile(p)
    if q < 0.0:
        raise DomainError("EPS is defined for non-negative quantile values only")
    num = upper_weighted_integral(X, p)
    if q == 0.0:
        return math.inf
    return num / q


def mrl_quantile(X, p):
    """Mean residual life at the p-th quantile: m(F^-1(p))."""
    finite_mean(X)
    return upper_weighted_integral(X, p) / (1.0 - float(p))


def mit_quantile(X, p):
    """Mean inactivity time at the p-th quantile."""
    return lower_weighted_integral(X, p) / float(p)


def delta_limit(X, Y, endpoint, force_numeric=False) -> LimitValue:
    hint = None if force_numeric else delta_tail_hint(X, Y, endpoint)
    return limit_at(lambda p: delta(X, Y, p), endpoint, hint)


def centered_delta_limit(X, Y, endpoint, force_numeric=False) -> LimitValue:
    hint = None if force_numeric else centered_delta_tail_hint(X, Y, endpoint)
    return limit_at(lambda p: centered_delta(X, Y, p), endpoint, hint)


def delta_ps_limit(X, Y, endpoint, force_numeric=False) -> LimitValue:
    hint = None if force_numeric else delta_ps_tail_hint(X, Y, endpoint)
    return limit_at(lambda p: delta_ps(X, Y, p), endpoint, hint)
