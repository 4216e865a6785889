"""Rayleigh fading channel gains with counter-based, trial-addressable streams.

The fading amplitude is Rayleigh, so the channel power gain |h|^2 is
exponential with mean gamma_bar. Gains are drawn by inverse CDF,
g = -gamma_bar * ln(u) with u uniform on (0,1], which is exact and needs a
single uniform per draw.

Streams are addressed, not stateful: RngStream(seed, stream, substream)
names one position in a Philox counter sequence, where `stream` is the
trial index and `substream` separates independent channels (the two hops
of a link use substreams 0 and 1). Philox generates 4 words per counter
block and a uniform double consumes one word, so trial i reads word 4*i;
any contiguous run of trials can therefore be generated in one shot from
any starting index, which is what makes Monte Carlo results independent
of how trials are split across workers.
"""

from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from .params import ParameterError

# Philox-4x64 emits 4 words per counter block; one double consumes one word
_WORDS_PER_BLOCK = 4


@dataclass(frozen=True)
class ChannelDraw:
    """One realization of the two hop power gains."""
    g1: float
    g2: float


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream: int
    substream: int = 0


def _generator(seed, substream, counter):
    key = SeedSequence(entropy=seed, spawn_key=(substream,))
    return Generator(Philox(seed=key, counter=counter))


def gain_from_uniform(u, gamma_bar):
    """Inverse-CDF map u -> gain for u in (0,1]; accepts scalars or arrays."""
    if gamma_bar <= 0:
        raise ParameterError("gamma_bar must be positive")
    return -gamma_bar * np.log(u)


def sample_gain(stream: RngStream, gamma_bar: float) -> float:
    """One exponential gain with mean gamma_bar at the given stream position."""
    if gamma_bar <= 0:
        raise ParameterError("gamma_bar must be positive")
    u = _generator(stream.seed, stream.substream, stream.stream).random()
    # u is uniform on [0,1); 1-u is on (0,1] so the log is always finite
    return float(gain_from_uniform(1.0 - u, gamma_bar))


def sample_gains(stream: RngStream, count: int, gamma_bar: float) -> np.ndarray:
    """Gains for the `count` consecutive trials starting at stream.stream.

    sample_gains(s, n)[i] is bitwise identical to
    sample_gain(replace(s, stream=s.stream + i)).
    """
    if gamma_bar <= 0:
        raise ParameterError("gamma_bar must be positive")
    if count < 0:
        raise ParameterError("count must be nonnegative")
    gen = _generator(stream.seed, stream.substream, stream.stream)
    u = gen.random(_WORDS_PER_BLOCK * count)[::_WORDS_PER_BLOCK]
    return gain_from_uniform(1.0 - u, gamma_bar)


def sample_draw(seed: int, trial: int, gamma1_bar: float, gamma2_bar: float) -> ChannelDraw:
    """Both hop gains for one trial (substream 0 feeds g1, substream 1 feeds g2)."""
    g1 = sample_gain(RngStream(seed, trial, substream=0), gamma1_bar)
    g2 = sample_gain(RngStream(seed, trial, substream=1), gamma2_bar)
    return ChannelDraw(g1=g1, g2=g2)


def empirical_cdf_check(stream: RngStream, gamma_bar: float, threshold: float, n: int) -> float:
    """Fraction of n draws below threshold; test support for the CDF forms."""
    if n < 1:
        raise ParameterError("n must be at least 1")
    draws = sample_gains(stream, n, gamma_bar)
    return float(np.count_nonzero(draws < threshold) / n)
