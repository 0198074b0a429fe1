"""Monotonicity segmentation of functions on (0,1).

`find_shape` splits a function into monotone pieces by locating derivative
sign changes on a logit-uniform grid and refining each one by bisection.  The
quantile-density ratio of two models, whose shape drives every theorem in the
order engine, lives here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, TooOscillatoryError
from .oracle import logit_grid, _eval

__all__ = [
    "GridConfig",
    "Mode",
    "Segment",
    "ShapeReport",
    "ratio_qd",
    "find_shape",
    "tukey_unimodal_region",
    "CONSTANT",
    "INCREASING",
    "DECREASING",
    "UNIMODAL_MAX",
    "UNIMODAL_MIN",
    "N_MODAL",
]

CONSTANT = "Constant"
INCREASING = "Increasing"
DECREASING = "Decreasing"
UNIMODAL_MAX = "UnimodalMax"
UNIMODAL_MIN = "UnimodalMin"
N_MODAL = "NModal"

# a grid-panel difference below this (relative to the function scale) carries
# no sign information: it is indistinguishable from evaluation noise
_FLAT_REL = 1e-13


@dataclass(frozen=True)
class GridConfig:
    n: int = 4096
    p_min: float = 1e-6
    max_modes: int = 16


@dataclass(frozen=True)
class Mode:
    location: float
    kind: str  # "max" | "min"


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    direction: str  # "increasing" | "decreasing"


@dataclass(frozen=True)
class ShapeReport:
    classification: str
    modes: list[Mode] = field(default_factory=list)
    segments: list[Segment] = field(default_factory=list)
    plateaus: list[tuple[float, float]] = field(default_factory=list)

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    def to_dict(self):
        return {
            "classification": self.classification,
            "n_modes": self.n_modes,
            "modes": [{"p": m.location, "kind": m.kind} for m in self.modes],
            "segments": [
                {"lo": s.lo, "hi": s.hi, "direction": s.direction} for s in self.segments
            ],
        }


def ratio_qd(X, Y, p):
    """Quantile-density ratio f(F^-1(p))/g(G^-1(p)) = qd_Y(p)/qd_X(p)."""
    return Y.quantile_density(p) / X.quantile_density(p)


def _refine_mode(fn, lo, hi, kind):
    """Locate the extremum of fn inside (lo, hi) to high accuracy."""
    sgn = 1.0 if kind == "max" else -1.0
    while hi - lo > 1e-10:
        m = 0.5 * (lo + hi)
        d = 0.25 * (hi - lo)
        s = sgn * (float(fn(m + d)) - float(fn(m - d)))
        if s > 0.0:
            lo = m
        elif s < 0.0:
            hi = m
        else:
            break
    m = 0.5 * (lo + hi)
    # parabola polish: removes the noise-floor bias of pure sign bisection
    for d in (1e-5, 1e-7):
        d = min(d, 0.5 * m, 0.5 * (1.0 - m))
        if d <= 0.0:
            break
        fa, fb, fc = float(fn(m - d)), float(fn(m)), float(fn(m + d))
        den = fa - 2.0 * fb + fc
        if den == 0.0 or not math.isfinite(den):
            break
        step = 0.5 * d * (fa - fc) / den
        if abs(step) <= d:
            m = m + step
    return min(max(m, lo - 1e-9), hi + 1e-9)


def find_shape(fn, cfg: GridConfig = GridConfig()):
    """Segment fn on (0,1) into monotone pieces and type its modes."""
    grid = logit_grid(cfg.n, cfg.p_min)
    vals = _eval(fn, grid)
    if np.any(~np.isfinite(vals)):
        raise DomainError("function not finite on the working grid")
    diffs = np.diff(vals)
    # local scales: a global max would let an endpoint blow-up swamp real
    # structure elsewhere on the grid
    local = np.maximum(np.maximum(np.abs(vals[:-1]), np.abs(vals[1:])), 1e-300)
    flat_tol = _FLAT_REL * local
    signs = np.zeros(len(diffs), dtype=int)
    signs[diffs > flat_tol] = 1
    signs[diffs < -flat_tol] = -1

    plateaus = []
    run_start = None
    for i, s in enumerate(signs):
        if s == 0:
            if run_start is None:
                run_start = i
        elif run_start is not None:
            if i - run_start >= 3:
                plateaus.append((float(grid[run_start]), float(grid[i])))
            run_start = None
    if run_start is not None and len(signs) - run_start >= 3:
        plateaus.append((float(grid[run_start]), float(grid[-1])))

    sig_idx = np.nonzero(signs)[0]
    if sig_idx.size == 0:
        return ShapeReport(CONSTANT, plateaus=plateaus)

    # transitions between consecutive significant panels of opposite sign
    brackets = []
    prev = sig_idx[0]
    for i in sig_idx[1:]:
        if signs[i] != signs[prev]:
            kind = "max" if signs[prev] > 0 else "min"
            brackets.append((float(grid[prev]), float(grid[i + 1]), kind))
        prev = i
    if len(brackets) > cfg.max_modes:
        raise TooOscillatoryError(
            f"{len(brackets)} derivative sign changes exceed max_modes={cfg.max_modes}",
            modes=[0.5 * (b[0] + b[1]) for b in brackets],
        )

    modes = [Mode(_refine_mode(fn, lo, hi, kind), kind) for lo, hi, kind in brackets]

    first_dir = "increasing" if signs[sig_idx[0]] > 0 else "decreasing"
    bounds = [0.0] + [m.location for m in modes] + [1.0]
    directions = [first_dir]
    for _ in modes:
        directions.append("decreasing" if directions[-1] == "increasing" else "increasing")
    segments = [Segment(bounds[i], bounds[i + 1], directions[i]) for i in range(len(directions))]

    if not modes:
        cls = INCREASING if first_dir == "increasing" else DECREASING
    elif len(modes) == 1:
        cls = UNIMODAL_MAX if modes[0].kind == "max" else UNIMODAL_MIN
    else:
        cls = N_MODAL
    return ShapeReport(cls, modes=modes, segments=segments, plateaus=plateaus)


def tukey_unimodal_region(alpha1: float, alpha2: float) -> bool:
    """Sufficient condition for the Tukey quantile-density ratio to be
    increasing-then-decreasing, for alpha1, alpha2 outside {1, 2}."""
    for a in (alpha1, alpha2):
        if a in (1.0, 2.0):
            raise DomainError("alpha in {1, 2} is a special case handled separately")
    if alpha1 == alpha2:
        raise DomainError("alpha1 == alpha2 makes the ratio constant; not covered here")
    return (
        (alpha2 - alpha1) * (alpha2 + alpha1 - 3.0) <= 0.0
        and (alpha2 - 2.0) * (alpha2 - 1.0) < 0.0
        and (alpha1 - 2.0) * (alpha1 - 1.0) > 0.0
    )
