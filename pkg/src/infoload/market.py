"""Population sampling, market-level efficiency classification and the three
costless-information conjecture checks.

Efficiency is structural: a market is efficient when the fraction of traders
whose constrained optimum sits at the information ceiling reaches the
threshold theta.  Heterogeneity enters through per-trader curve parameters,
chiefly the cost scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from infoload.agent import (
    AgentOutcome,
    Regime,
    Trader,
    UnconstrainedOptimum,
    expected_utility,
    optimize_information,
    unconstrained_optimum,
)
from infoload.curves import (
    CostCurve,
    ExpGrowthCost,
    ExpSaturating,
    Hyperbolic,
    PowerCost,
    SuccessCurve,
    ZeroCost,
)
from infoload.errors import ConfigError, ParameterError, PreconditionError

Interval = Tuple[float, float]


def _check_interval(name: str, iv: Interval, lower_bound: float = 0.0) -> None:
    lo, hi = iv
    if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
        raise ConfigError(name, f"degenerate or non-finite interval {iv!r}")
    if lo <= lower_bound:
        raise ConfigError(name, f"lower bound must exceed {lower_bound}, got {lo}")


@dataclass(frozen=True)
class PopulationSpec:
    """Recipe for a heterogeneous trader population, fully seeded."""

    n_agents: int
    gain: Interval
    loss: Interval
    success_family: str  # "exp_saturating" | "hyperbolic"
    success_param: Interval
    cost_family: str  # "power" | "exp_growth" | "zero"
    cost_scale: Interval = (1.0, 1.0)
    cost_shape: Interval = (2.0, 2.0)  # exponent for power, rate for exp_growth
    master_seed: int = 0

    def __post_init__(self):
        if self.n_agents < 1:
            raise ConfigError("population.n_agents", "must be >= 1")
        _check_interval("population.gain", self.gain)
        _check_interval("population.loss", self.loss)
        if self.success_family not in ("exp_saturating", "hyperbolic"):
            raise ConfigError("population.success.family", f"unknown family {self.success_family!r}")
        _check_interval("population.success.param", self.success_param)
        if self.cost_family not in ("power", "exp_growth", "zero"):
            raise ConfigError("population.cost.family", f"unknown family {self.cost_family!r}")
        if self.cost_family != "zero":
            _check_interval("population.cost.scale", self.cost_scale)
            lower = 1.0 if self.cost_family == "power" else 0.0
            _check_interval("population.cost.shape", self.cost_shape, lower_bound=lower)
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("population.master_seed", "must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class MarketConfig:
    i_max: float
    theta: float
    participation_rule: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.i_max) and self.i_max > 0):
            raise ConfigError("market.i_max", f"must be a positive finite real, got {self.i_max}")
        if not 0 < self.theta <= 1:
            raise ConfigError("market.theta", f"must lie in (0, 1], got {self.theta}")


@dataclass
class MarketOutcome:
    fraction_informed: float
    efficient: bool
    counts: dict  # Regime value -> int, over participating agents
    mean_utility: float
    n_agents: int
    n_excluded: int = 0
    outcomes: Optional[List[AgentOutcome]] = None


@dataclass(frozen=True)
class ReturnModel:
    """Security return as optimal forecast plus independent white noise."""

    r_of: float
    noise_sd: float

    def __post_init__(self):
        if self.noise_sd < 0:
            raise ParameterError("noise_sd must be non-negative")


@dataclass
class ReturnSample:
    mean: float
    sd: float
    n: int
    values: np.ndarray


@dataclass
class ConjectureVerdict:
    name: str
    passed: bool
    detail: str
    counterexample: Optional[int] = None


def _agent_rng(master_seed: int, k: int) -> np.random.Generator:
    # keyed substream: identical regardless of sampling order or parallelism
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(k,)))


def _uniform(rng: np.random.Generator, iv: Interval) -> float:
    lo, hi = iv
    return float(lo) if lo == hi else float(rng.uniform(lo, hi))


def _make_success(family: str, param: float) -> SuccessCurve:
    return ExpSaturating(param) if family == "exp_saturating" else Hyperbolic(param)


def _make_cost(family: str, scale: float, shape: float) -> CostCurve:
    if family == "zero":
        return ZeroCost()
    if family == "power":
        return PowerCost(scale, shape)
    return ExpGrowthCost(scale, shape)


def sample_population(spec: PopulationSpec) -> List[Trader]:
    """Draw the population; agent k depends only on (master_seed, k)."""
    traders = []
    for k in range(spec.n_agents):
        rng = _agent_rng(spec.master_seed, k)
        gain = _uniform(rng, spec.gain)
        loss = _uniform(rng, spec.loss)
        s_param = _uniform(rng, spec.success_param)
        c_scale = _uniform(rng, spec.cost_scale)
        c_shape = _uniform(rng, spec.cost_shape)
        traders.append(Trader(
            gain=gain,
            loss=loss,
            success=_make_success(spec.success_family, s_param),
            cost=_make_cost(spec.cost_family, c_scale, c_shape),
        ))
    return traders


def run_market(config: MarketConfig, traders: Sequence[Trader],
               precomputed: Optional[Sequence[UnconstrainedOptimum]] = None,
               keep_outcomes: bool = True) -> MarketOutcome:
    """Solve every trader at the configured ceiling and classify efficiency."""
    if len(traders) == 0:
        raise PreconditionError("trader collection must be non-empty")
    if precomputed is not None and len(precomputed) != len(traders):
        raise PreconditionError("precomputed optima must match the trader collection")

    outcomes = []
    for idx, trader in enumerate(traders):
        try:
            pre = precomputed[idx] if precomputed is not None else None
            outcomes.append(optimize_information(trader, config.i_max, precomputed=pre))
        except ArithmeticError as exc:
            raise type(exc)(f"agent {idx}: {exc}") from exc

    if config.participation_rule:
        participating = [o for o in outcomes if o.u_star >= 0]
        n_excluded = len(outcomes) - len(participating)
    else:
        participating = outcomes
        n_excluded = 0

    counts = {r.value: 0 for r in Regime}
    for o in participating:
        counts[o.regime.value] += 1
    n_part = len(participating)
    fraction = counts[Regime.FULLY_INFORMED.value] / n_part if n_part else 0.0
    mean_u = float(np.mean([o.u_star for o in participating])) if n_part else math.nan
    return MarketOutcome(
        fraction_informed=fraction,
        efficient=fraction >= config.theta,
        counts=counts,
        mean_utility=mean_u,
        n_agents=len(traders),
        n_excluded=n_excluded,
        outcomes=outcomes if keep_outcomes else None,
    )


def check_conjecture1(traders: Sequence[Trader], i_max: float, theta: float) -> ConjectureVerdict:
    """Costless information: every trader corners at i_max and the market is efficient."""
    for idx, t in enumerate(traders):
        if not isinstance(t.cost, ZeroCost):
            raise PreconditionError(f"agent {idx} has a non-zero cost curve")
    outcome = run_market(MarketConfig(i_max=i_max, theta=theta), traders)
    for idx, o in enumerate(outcome.outcomes):
        if o.i_star != i_max or not o.fully_informed:
            return ConjectureVerdict(
                name="conjecture1", passed=False,
                detail=f"agent {idx} chose i_star={o.i_star} != i_max={i_max}",
                counterexample=idx,
            )
    if not outcome.efficient or outcome.fraction_informed != 1.0:
        return ConjectureVerdict(
            name="conjecture1", passed=False,
            detail=f"market not efficient: fraction_informed={outcome.fraction_informed}",
        )
    return ConjectureVerdict(
        name="conjecture1", passed=True,
        detail=f"all {len(traders)} agents fully informed at i_max={i_max}",
    )


def check_conjecture2(efficient_leg: Tuple[MarketConfig, Sequence[Trader]],
                      inefficient_leg: Tuple[MarketConfig, Sequence[Trader]]) -> ConjectureVerdict:
    """Overload can coexist with efficiency or break it, under the same ceiling."""
    cfg_a, traders_a = efficient_leg
    cfg_b, traders_b = inefficient_leg
    if cfg_a.i_max != cfg_b.i_max:
        raise PreconditionError("both legs must share the same i_max")
    out_a = run_market(cfg_a, traders_a)
    out_b = run_market(cfg_b, traders_b)
    interior_a = out_a.counts[Regime.INTERIOR.value]
    problems = []
    if not out_a.efficient:
        problems.append(f"efficient leg failed (fraction={out_a.fraction_informed})")
    if interior_a == 0:
        problems.append("efficient leg has no interior (overloaded) agent")
    if out_b.efficient:
        problems.append(f"inefficient leg failed (fraction={out_b.fraction_informed})")
    if problems:
        return ConjectureVerdict(name="conjecture2", passed=False, detail="; ".join(problems))
    return ConjectureVerdict(
        name="conjecture2", passed=True,
        detail=(f"efficient at theta={cfg_a.theta} with {interior_a} interior agents; "
                f"inefficient at theta={cfg_b.theta}"),
    )


def check_conjecture3(traders: Sequence[Trader], theta: float,
                      i_max_schedule: Sequence[float],
                      divergence_bound: float = -1e6) -> ConjectureVerdict:
    """Unbounded information: everyone overloads and utility diverges to -inf."""
    for idx, t in enumerate(traders):
        if isinstance(t.cost, ZeroCost):
            raise PreconditionError(f"agent {idx} has a zero cost curve")
    schedule = list(i_max_schedule)
    if len(schedule) < 10 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise PreconditionError("schedule must be strictly increasing with length >= 10")

    pre = [unconstrained_optimum(t) for t in traders]
    fractions, ceiling_utils, efficients = [], [], []
    for i_max in schedule:
        out = run_market(MarketConfig(i_max=i_max, theta=theta), traders,
                         precomputed=pre, keep_outcomes=False)
        fractions.append(out.fraction_informed)
        efficients.append(out.efficient)
        ceiling_utils.append(max(expected_utility(t, i_max) for t in traders))

    problems = []
    if any(b > a for a, b in zip(fractions, fractions[1:])):
        problems.append("fraction_informed not non-increasing")
    if fractions[-1] != 0.0:
        problems.append(f"fraction_informed at final ceiling is {fractions[-1]}, not 0")
    tail = ceiling_utils[-3:]
    if not all(b < a for a, b in zip(tail, tail[1:])):
        problems.append("ceiling utility not eventually decreasing")
    if not ceiling_utils[-1] < divergence_bound:
        problems.append(f"ceiling utility {ceiling_utils[-1]} not below {divergence_bound}")
    crossed = False
    for frac, eff in zip(fractions, efficients):
        if frac < theta:
            crossed = True
        if crossed and eff:
            problems.append("efficient verdict after threshold crossing")
            break
    if problems:
        return ConjectureVerdict(name="conjecture3", passed=False, detail="; ".join(problems))
    return ConjectureVerdict(
        name="conjecture3", passed=True,
        detail=(f"fraction_informed falls to 0 and ceiling utility reaches "
                f"{ceiling_utils[-1]:.4g} over {len(schedule)} ceilings"),
    )


def simulate_muthian_returns(model: ReturnModel, n: int, seed: int) -> ReturnSample:
    """Draw n returns r_of + eps with Gaussian white noise; mean recovers r_of."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if model.noise_sd == 0.0:
        return ReturnSample(mean=model.r_of, sd=0.0, n=n,
                            values=np.full(n, model.r_of))
    rng = np.random.default_rng(seed)
    values = model.r_of + model.noise_sd * rng.standard_normal(n)
    return ReturnSample(mean=float(values.mean()),
                       sd=float(values.std(ddof=1)) if n > 1 else 0.0,
                       n=n, values=values)
