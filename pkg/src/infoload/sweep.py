"""Utility curves, efficiency phase sweeps and the critical information ceiling.

The phase boundary has a closed form: the market is efficient iff at least a
theta-fraction of agents have an unconstrained optimum at or above the ceiling,
so the critical ceiling is an order statistic of the population's optima.  The
grid sweep is validated against that quantile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from infoload.agent import Trader, unconstrained_optimum, utility_on_grid
from infoload.market import MarketConfig, MarketOutcome, run_market
from infoload.errors import ConfigError

PhasePoint = Tuple[float, float, bool]  # (i_max, fraction_informed, efficient)


@dataclass
class UtilityCurve:
    trader: Trader
    grid: np.ndarray
    utilities: np.ndarray
    argmax_index: int

    @property
    def i_argmax(self) -> float:
        return float(self.grid[self.argmax_index])

    def sign_changes(self) -> int:
        """Number of sign changes in the first differences (Fig-3 shape check)."""
        diffs = np.diff(self.utilities)
        signs = np.sign(diffs[diffs != 0])
        return int(np.sum(signs[1:] != signs[:-1]))


@dataclass
class PhaseSeries:
    points: List[PhasePoint]
    critical_i_max: Optional[float]  # largest efficient ceiling, None if never efficient


@dataclass
class PhaseDiagram:
    i_max_grid: np.ndarray
    multipliers: np.ndarray
    fractions: np.ndarray  # shape (n_multipliers, n_i_max)
    efficient: np.ndarray  # bool, same shape
    critical_per_row: List[Optional[float]]


def utility_curve(trader: Trader, i_max: float, n_points: int) -> UtilityCurve:
    """Expected utility on a uniform grid over [0, i_max], argmax annotated."""
    if n_points < 2:
        raise ConfigError("sweep.n_points", f"must be >= 2, got {n_points}")
    grid = np.linspace(0.0, i_max, n_points)
    util = utility_on_grid(trader, grid)
    return UtilityCurve(trader=trader, grid=grid, utilities=util,
                        argmax_index=int(np.argmax(util)))


def _scaled_traders(traders: Sequence[Trader], multiplier: float) -> List[Trader]:
    return [replace(t, cost=t.cost.scaled(multiplier)) for t in traders]


def sweep_imax(traders: Sequence[Trader], i_max_grid: Sequence[float],
               theta: float) -> PhaseSeries:
    """Run the market at every ceiling and locate the efficiency boundary."""
    grid = list(i_max_grid)
    if len(grid) == 0 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("sweep.i_max_grid", "grid must be non-empty and strictly increasing")
    pre = [unconstrained_optimum(t) for t in traders]
    points: List[PhasePoint] = []
    for i_max in grid:
        out = run_market(MarketConfig(i_max=i_max, theta=theta), traders,
                         precomputed=pre, keep_outcomes=False)
        points.append((i_max, out.fraction_informed, out.efficient))

    fractions = [p[1] for p in points]
    if any(b > a + 1e-15 for a, b in zip(fractions, fractions[1:])):
        raise AssertionError("phase series violates fraction monotonicity")
    efficients = [p[2] for p in points]
    if any(b and not a for a, b in zip(efficients, efficients[1:])):
        raise AssertionError("phase series violates the monotone-phase property")

    critical = None
    for i_max, _, eff in points:
        if eff:
            critical = i_max
    return PhaseSeries(points=points, critical_i_max=critical)


def critical_imax_quantile(traders: Sequence[Trader], theta: float) -> Optional[float]:
    """Exact phase boundary: the ceil(theta*n)-th largest unconstrained optimum.

    Returns inf for populations efficient at any finite ceiling and None when
    the boundary sits at 0 (never efficient).
    """
    i_us = sorted((unconstrained_optimum(t).as_float() for t in traders), reverse=True)
    k = math.ceil(theta * len(i_us))
    value = i_us[k - 1]
    return None if value == 0.0 else value


def sweep_2d(traders: Sequence[Trader], i_max_grid: Sequence[float],
             multipliers: Sequence[float], theta: float) -> PhaseDiagram:
    """Phase diagram over (information ceiling, cost-scale multiplier)."""
    mults = list(multipliers)
    if len(mults) == 0 or any(b <= a for a, b in zip(mults, mults[1:])):
        raise ConfigError("sweep.cost_multiplier_grid", "must be non-empty and strictly increasing")
    if any(m <= 0 for m in mults):
        raise ConfigError("sweep.cost_multiplier_grid", "multipliers must be positive")

    rows_frac, rows_eff, criticals = [], [], []
    for m in mults:
        series = sweep_imax(_scaled_traders(traders, m), i_max_grid, theta)
        rows_frac.append([p[1] for p in series.points])
        rows_eff.append([p[2] for p in series.points])
        criticals.append(series.critical_i_max)
    return PhaseDiagram(
        i_max_grid=np.asarray(list(i_max_grid), dtype=float),
        multipliers=np.asarray(mults, dtype=float),
        fractions=np.asarray(rows_frac, dtype=float),
        efficient=np.asarray(rows_eff, dtype=bool),
        critical_per_row=criticals,
    )
