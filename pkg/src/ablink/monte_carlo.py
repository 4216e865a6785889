"""Simulation oracle for the closed forms: plain Monte Carlo over channel draws.

Trial i always reads RNG stream position i (substream 0 for the first hop,
substream 1 for the second), so an estimate depends only on (params, n, seed).
Workers fill disjoint slices of one preallocated gain array and the reduction
runs once over the assembled array, which makes results bitwise identical for
any worker count; outage counting is integer arithmetic, so it is exact.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import RngStream, sample_gains
from .link_analytics import achievable_rate, energy_threshold, harvested_energy
from .params import ParameterError, SystemParams

_G1_SUBSTREAM = 0
_G2_SUBSTREAM = 1


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    std_error: float
    n_trials: int
    seed: int


def _fill_gains(seed, substream, n, gamma_bar, workers):
    """Gains for trials 0..n-1, split across workers by contiguous chunks."""
    if workers <= 1:
        return sample_gains(RngStream(seed, 0, substream), n, gamma_bar)
    out = np.empty(n)
    bounds = [n * k // workers for k in range(workers + 1)]

    def fill(k):
        start, stop = bounds[k], bounds[k + 1]
        out[start:stop] = sample_gains(
            RngStream(seed, start, substream), stop - start, gamma_bar)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(fill, range(workers)))
    return out


def _check_trials(n):
    if n < 1:
        raise ParameterError("trial count must be at least 1")


def estimate_outage(params: SystemParams, n: int, seed: int, workers: int = 1) -> MonteCarloResult:
    """Fraction of trials where harvest misses psi or the rate misses phi."""
    _check_trials(n)
    psi = energy_threshold(params)
    g1 = _fill_gains(seed, _G1_SUBSTREAM, n, params.gamma1_bar, workers)
    g2 = _fill_gains(seed, _G2_SUBSTREAM, n, params.gamma2_bar, workers)
    in_outage = (harvested_energy(params, g1) < psi) | (achievable_rate(params, g2) < params.phi)
    count = int(np.count_nonzero(in_outage))
    p_hat = count / n
    return MonteCarloResult(
        estimate=p_hat,
        std_error=math.sqrt(p_hat * (1.0 - p_hat) / n),
        n_trials=n,
        seed=seed,
    )


def estimate_mean_rate(params: SystemParams, n: int, seed: int, workers: int = 1) -> MonteCarloResult:
    _check_trials(n)
    g2 = _fill_gains(seed, _G2_SUBSTREAM, n, params.gamma2_bar, workers)
    rates = achievable_rate(params, g2)
    spread = float(rates.std(ddof=1)) if n > 1 else 0.0
    return MonteCarloResult(
        estimate=float(rates.mean()),
        std_error=spread / math.sqrt(n),
        n_trials=n,
        seed=seed,
    )


def estimate_mean_harvest(params: SystemParams, n: int, seed: int, workers: int = 1) -> MonteCarloResult:
    _check_trials(n)
    g1 = _fill_gains(seed, _G1_SUBSTREAM, n, params.gamma1_bar, workers)
    energies = harvested_energy(params, g1)
    spread = float(energies.std(ddof=1)) if n > 1 else 0.0
    return MonteCarloResult(
        estimate=float(energies.mean()),
        std_error=spread / math.sqrt(n),
        n_trials=n,
        seed=seed,
    )
