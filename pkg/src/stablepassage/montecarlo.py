"""Path simulation of stable processes for first-passage estimates.

Paths are Euler sums of exact stable increments.  The time step adapts to
the distance ``d`` from the nearest boundary that matters::

    dt = clip(rel_step * d**alpha, step, max_step)

By scaling, a step of size ``rel_step * d**alpha`` moves the path by about
``rel_step**(1/alpha) * d``, so the relative resolution is uniform across
scales.  ``step`` is the floor, i.e. the finest time step used next to
the target.  First-entry times have heavy tails, so a constant step
everywhere would make the cost per path unbounded; far from the target
the step grows with d.

Paths are simulated in blocks of ``block_size``.  Block ``k`` draws from
``numpy.random.SeedSequence(seed, spawn_key=(k,))``, so results depend
only on (seed, block_size) and not on the number of worker threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
from typing import List, Optional, Tuple

import numpy as np

from .errors import BudgetExceededError, DomainError, EmptySampleError
from .hitting import interval_avoidance_prob
from .stable import StableParams, standard_draws

__all__ = [
    "MCConfig",
    "EmpiricalDistribution",
    "OccupationEstimate",
    "LadderLevel",
    "block_seed",
    "first_entry_interval",
    "first_passage_above",
    "occupation_before_entry",
    "hit_zero_before_up",
    "hit_zero_ladder",
    "ks_distance",
    "residual_hit_bound",
]

_CENSORED, _TARGET, _UPPER = 0, 1, 2


@dataclass(frozen=True)
class MCConfig:
    """Simulation settings.

    ``horizon`` and ``radius`` truncate paths in time and space; truncated
    paths are counted as censored.  ``draw_budget`` caps the total number
    of stable draws; exceeding it raises :class:`BudgetExceededError`.
    """

    n_paths: int
    step: float = 1e-4
    seed: int = 0
    horizon: float = math.inf
    radius: float = 1e6
    rel_step: float = 1e-3
    max_step: float = math.inf
    block_size: int = 50_000
    workers: int = 1
    draw_budget: float = 2e10

    def __post_init__(self):
        if int(self.n_paths) != self.n_paths or self.n_paths < 1:
            raise DomainError(f"n_paths must be a positive integer, got {self.n_paths}")
        for name in ("step", "horizon", "radius", "rel_step", "max_step", "draw_budget"):
            v = getattr(self, name)
            if not v > 0:
                raise DomainError(f"{name} must be positive, got {v}")
        if self.max_step < self.step:
            raise DomainError("max_step must not be below step")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.block_size < 1 or self.workers < 1:
            raise DomainError("block_size and workers must be >= 1")

    @property
    def worst_case_draws(self):
        """Draws needed if every step sat at the floor until the horizon."""
        return self.n_paths * self.horizon / self.step


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Event positions of the paths that triggered the event, sorted, plus
    the fraction of paths censored by horizon or radius."""

    samples: np.ndarray
    censored_mass: float
    n_paths: int

    def __post_init__(self):
        if self.samples.size + round(self.censored_mass * self.n_paths) != self.n_paths:
            raise ValueError("censored paths and samples do not add up to n_paths")

    @property
    def retained_mass(self):
        return self.samples.size / self.n_paths

    def cdf(self, y):
        """Empirical CDF among the retained samples."""
        if self.samples.size == 0:
            raise EmptySampleError("no retained samples")
        return np.searchsorted(self.samples, y, side="right") / self.samples.size


@dataclass(frozen=True)
class OccupationEstimate:
    """Mean time spent in each bin before the stopping event."""

    edges: np.ndarray
    mean: np.ndarray
    std_error: np.ndarray
    censored_mass: float
    notes: Tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class LadderLevel:
    epsilon: float
    estimate: float
    std_error: float


def block_seed(seed, block):
    """Seed sequence of a simulation block."""
    return np.random.SeedSequence(int(seed), spawn_key=(int(block),))


@dataclass
class _Block:
    position: np.ndarray
    outcome: np.ndarray
    occupation: Optional[np.ndarray]
    draws: int


def _simulate_block(p, x0, n, rng, cfg, target, upper, edges, budget):
    alpha, rho = p.alpha, p.rho
    inv_alpha = 1.0 / alpha
    X = np.full(n, float(x0))
    T = np.zeros(n)
    idx = np.arange(n)
    position = np.full(n, np.nan)
    outcome = np.zeros(n, dtype=np.int8)
    occ = np.zeros((n, len(edges) - 1)) if edges is not None else None
    lo, hi = target if target is not None else (None, None)
    draws = 0
    while idx.size:
        # distance to the nearest boundary that stops the path
        if lo is not None:
            d = np.maximum(lo - X, X - hi)
        else:
            d = np.full(X.size, np.inf)
        if upper is not None:
            d = np.minimum(d, upper - X)
        dt = np.clip(cfg.rel_step * d**alpha, cfg.step, cfg.max_step)
        if occ is not None:
            k = np.searchsorted(edges, X, side="right") - 1
            m = (k >= 0) & (k < occ.shape[1])
            occ[idx[m], k[m]] += dt[m]
        X = X + dt**inv_alpha * standard_draws(alpha, rho, X.size, rng)
        T += dt
        draws += X.size
        if draws > budget:
            raise BudgetExceededError(
                f"simulation exceeded its draw budget of {budget:.3g} draws"
            )
        done = np.zeros(X.size, dtype=bool)
        if lo is not None:
            hit = (X > lo) & (X < hi)
            position[idx[hit]] = X[hit]
            outcome[idx[hit]] = _TARGET
            done |= hit
        if upper is not None:
            up = (X > upper) & ~done
            position[idx[up]] = X[up]
            outcome[idx[up]] = _UPPER
            done |= up
        done |= (np.abs(X) > cfg.radius) | (T > cfg.horizon)
        keep = ~done
        X, T, idx = X[keep], T[keep], idx[keep]
    return _Block(position, outcome, occ, draws)


def _simulate(p, x0, cfg, target=None, upper=None, edges=None):
    n_blocks = -(-cfg.n_paths // cfg.block_size)
    sizes = [min(cfg.block_size, cfg.n_paths - k * cfg.block_size) for k in range(n_blocks)]

    def run(k):
        rng = np.random.Generator(np.random.PCG64(block_seed(cfg.seed, k)))
        budget = cfg.draw_budget * sizes[k] / cfg.n_paths
        return _simulate_block(p, x0, sizes[k], rng, cfg, target, upper, edges, budget)

    if cfg.workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            blocks = list(pool.map(run, range(n_blocks)))
    else:
        blocks = [run(k) for k in range(n_blocks)]
    position = np.concatenate([b.position for b in blocks])
    outcome = np.concatenate([b.outcome for b in blocks])
    occ = np.concatenate([b.occupation for b in blocks]) if edges is not None else None
    return position, outcome, occ


def _empirical(position, outcome, code):
    n = position.size
    sel = outcome == code
    samples = np.sort(position[sel])
    return EmpiricalDistribution(samples, (n - samples.size) / n, n)


def first_entry_interval(p: StableParams, x, cfg: MCConfig):
    """Positions of first entry into (-1, 1) from x > 1.

    Paths leaving |X| <= radius or outliving the horizon are censored; for
    alpha < 1 the censored mass estimates the avoidance probability.
    """
    x = float(x)
    if not x > 1.0:
        raise DomainError(f"need x > 1, got x={x}")
    position, outcome, _ = _simulate(p, x, cfg, target=(-1.0, 1.0))
    return _empirical(position, outcome, _TARGET)


def first_passage_above(p: StableParams, x, cfg: MCConfig, level=1.0):
    """Positions of first passage above ``level`` from x < level."""
    x = float(x)
    if not x < level:
        raise DomainError(f"need x < {level}, got x={x}")
    position, outcome, _ = _simulate(p, x, cfg, upper=float(level))
    return _empirical(position, outcome, _UPPER)


def occupation_before_entry(p: StableParams, x, edges, cfg: MCConfig):
    """Mean time spent in each bin [edges[i], edges[i+1]) before first entry
    into (-1, 1), with standard errors across paths.  Start and bins lie on
    the same side, either above 1 or below -1."""
    if p.alpha > 1.0:
        raise DomainError(f"occupation estimate targets alpha <= 1, got alpha={p.alpha}")
    x = float(x)
    if not abs(x) > 1.0:
        raise DomainError(f"need |x| > 1, got x={x}")
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise DomainError("bin edges must be an increasing sequence of at least two values")
    if (x > 1.0 and edges[0] < 1.0) or (x < -1.0 and edges[-1] > -1.0):
        raise DomainError("bins must lie on the same side of (-1, 1) as x")
    _, outcome, occ = _simulate(p, x, cfg, target=(-1.0, 1.0), edges=edges)
    n = occ.shape[0]
    notes = []
    if np.max(np.abs(edges)) > cfg.radius:
        notes.append(
            f"bins beyond radius {cfg.radius:g} are never visited by retained paths"
        )
    return OccupationEstimate(
        edges,
        occ.mean(axis=0),
        occ.std(axis=0, ddof=1) / math.sqrt(n) if n > 1 else np.full(occ.shape[1], np.inf),
        float(np.mean(outcome == _CENSORED)),
        tuple(notes),
    )


def _check_eps(p, x, epsilon):
    if not p.alpha > 1.0:
        raise DomainError(f"point hitting needs alpha in (1,2), got alpha={p.alpha}")
    x, epsilon = float(x), float(epsilon)
    if not x < 1.0 or x == 0.0:
        raise DomainError(f"need x < 1 and x != 0, got x={x}")
    if not 0.0 < epsilon < min(abs(x), 1.0):
        raise DomainError(f"need 0 < epsilon < min(|x|, 1), got epsilon={epsilon}")
    return x, epsilon


def _hit_zero(p, x, epsilon, cfg):
    _, outcome, _ = _simulate(p, x, cfg, target=(-epsilon, epsilon), upper=1.0)
    hits = outcome == _TARGET
    est = float(np.mean(hits))
    se = math.sqrt(max(est * (1.0 - est), 0.0) / hits.size)
    return est, se


def hit_zero_before_up(p: StableParams, x, epsilon, cfg: MCConfig):
    """Estimate of P(enter (-epsilon, epsilon) before passing above 1)."""
    x, epsilon = _check_eps(p, x, epsilon)
    return _hit_zero(p, x, epsilon, cfg)[0]


def hit_zero_ladder(p: StableParams, x, epsilons, cfg: MCConfig) -> List[LadderLevel]:
    """:func:`hit_zero_before_up` over a decreasing ladder of epsilons.

    No extrapolation is attempted; compare the finest level."""
    out = []
    for eps in sorted((float(e) for e in epsilons), reverse=True):
        x, eps = _check_eps(p, x, eps)
        est, se = _hit_zero(p, x, eps, cfg)
        out.append(LadderLevel(eps, est, se))
    return out


def ks_distance(emp: EmpiricalDistribution, cdf, total_mass=1.0):
    """Sup distance between the empirical CDF of the retained samples and
    ``cdf / total_mass``.

    ``cdf`` is called once with the sorted sample array.  Passing the mass
    of the law on the event (e.g. one minus the avoidance probability)
    renormalises the model the same way as the sample.
    """
    n = emp.samples.size
    if n == 0:
        raise EmptySampleError("KS distance needs at least one retained sample")
    F = np.asarray(cdf(emp.samples), dtype=float) / float(total_mass)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


def residual_hit_bound(p: StableParams, radius):
    """Upper bound on the probability that a path censored at |X| = radius
    would still have entered (-1, 1), for alpha < 1.

    Censored paths sit beyond the radius, so this is at most the hitting
    probability from ``radius`` (by scaling, a decreasing function of the
    distance), i.e. one minus the avoidance probability from ``radius`` for
    the process or its dual, whichever is larger.
    """
    if not p.alpha < 1.0:
        raise DomainError("residual hit bound applies to alpha < 1")
    r = float(radius)
    return max(
        1.0 - interval_avoidance_prob(p, r), 1.0 - interval_avoidance_prob(p.dual(), r)
    )
