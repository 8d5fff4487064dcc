"""Measure-vs-field sweeps under the RG flow and finite-size scaling of their slopes."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import BoundaryWarning, ConfigurationError, DataError
from .measures.closed import MeasureId, _from_log
from .rgflow import flow_array


@dataclass(frozen=True)
class GridSpec:
    g_min: float = 0.0
    g_max: float = 2.5
    points: int = 501

    def __post_init__(self):
        if not (0.0 <= self.g_min < self.g_max) or not math.isfinite(self.g_max):
            raise ConfigurationError(f"need 0 <= g_min < g_max, got [{self.g_min}, {self.g_max}]")
        if self.points < 3 or self.points % 2 == 0:
            raise ConfigurationError(f"need an odd number (>= 3) of grid points, got {self.points}")

    @property
    def step(self):
        return (self.g_max - self.g_min) / (self.points - 1)

    def values(self):
        return np.linspace(self.g_min, self.g_max, self.points)


DEFAULT_GRID = GridSpec(0.0, 2.5, 501)
FINE_GRID = GridSpec(0.8, 1.2, 4001)
FINE_FROM_STEP = 4
DEFAULT_STEPS = tuple(range(4, 11))


def scaling_grid(n):
    """Grid used for the scaling run at step ``n``."""
    return FINE_GRID if n >= FINE_FROM_STEP else DEFAULT_GRID


@dataclass(frozen=True)
class SweepResult:
    grid: GridSpec
    n: int
    measure: MeasureId
    values: np.ndarray = field(repr=False)
    derivative: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class ScalingPoint:
    n: int
    N: int
    g_ext: float
    abs_deriv: float


@dataclass(frozen=True)
class ScalingFit:
    theta: float
    intercept: float
    r_squared: float
    points: list


def differentiate(values, grid):
    """First derivative on a uniform grid.

    Central differences inside, second-order one-sided stencils at the ends.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        raise ConfigurationError("need at least 3 points to differentiate")
    h = grid.step if isinstance(grid, GridSpec) else float(grid)
    if not h > 0:
        raise ConfigurationError(f"grid spacing must be positive, got {h}")
    return np.gradient(values, h, edge_order=2)


def sweep(measure, grid=DEFAULT_GRID, n=0):
    """Evaluate ``measure`` after ``n`` RG steps at every grid field."""
    measure = MeasureId.parse(measure)
    if n < 0:
        raise ConfigurationError(f"step must be >= 0, got {n}")
    log_g, code = flow_array(grid.values(), n)
    values = _from_log(measure, log_g, code)
    return SweepResult(grid=grid, n=int(n), measure=measure, values=values, derivative=differentiate(values, grid))


def find_extremum(result):
    """Locate the largest |dM/dg| and refine it with a parabola through its neighbours."""
    d = np.abs(result.derivative)
    g = result.grid.values()
    i = int(np.argmax(d))
    if i == 0 or i == d.size - 1:
        warnings.warn(
            f"|dM/dg| peaks on the grid boundary at g={g[i]:.6g} (n={result.n}); widen the grid",
            BoundaryWarning,
            stacklevel=2,
        )
        return ScalingPoint(n=result.n, N=2 ** (result.n + 1), g_ext=float(g[i]), abs_deriv=float(d[i]))
    y0, y1, y2 = d[i - 1], d[i], d[i + 1]
    curv = y0 - 2.0 * y1 + y2
    delta = 0.0 if curv == 0.0 else 0.5 * (y0 - y2) / curv
    peak = y1 - 0.25 * (y0 - y2) * delta
    return ScalingPoint(
        n=result.n,
        N=2 ** (result.n + 1),
        g_ext=float(g[i] + delta * result.grid.step),
        abs_deriv=float(peak),
    )


def fit_scaling(points):
    """Least-squares line through (ln N, ln |dM/dg|_ext); the slope is theta."""
    if len(points) < 3:
        raise DataError(f"need at least 3 scaling points, got {len(points)}")
    if any(not p.abs_deriv > 0 for p in points):
        raise DataError("all extremal derivatives must be positive")
    x = np.log([float(p.N) for p in points])
    y = np.log([p.abs_deriv for p in points])
    fit = stats.linregress(x, y)
    return ScalingFit(
        theta=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue**2),
        points=list(points),
    )


def scaling_points(measure, steps=DEFAULT_STEPS, grid=None):
    """Extremum of the derivative at each step; ``grid=None`` picks ``scaling_grid(n)``."""
    return [find_extremum(sweep(measure, grid or scaling_grid(n), n)) for n in steps]


def scaling_run(measure, steps=DEFAULT_STEPS, grid=None):
    return fit_scaling(scaling_points(measure, steps, grid))
