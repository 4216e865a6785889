"""Closed-form link quantities: energies, rate, outage probability, balancing rho.

Outage has two causes in a slot: the harvested energy falls below the
operating threshold psi, or the achievable backscatter rate falls below the
required phi. With both hop gains exponential the two events reduce to
exponential CDF terms, so the outage probability is

    P_out = 1 - exp(-(A + C))

with A the energy exponent and C the rate exponent defined below. The
probability helpers are written with expm1 so that small probabilities keep
full precision and the shortage/surplus pair sums to exactly 1.0 in floats.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelDraw
from .params import ParameterError, SystemParams, path_loss


class DegenerateParameterError(ParameterError):
    """A formula denominator is zero: the quantity has no finite value.

    Raised instead of returning an infinite exponent because a silent
    rho=0, rho=1 or alpha=1 is almost always a configuration mistake.
    """


@dataclass(frozen=True)
class LinkMetrics:
    harvested_energy: float
    sensing_energy: float
    backscatter_energy: float
    psi: float
    rate: float
    in_outage: bool


def harvested_energy(params: SystemParams, g1):
    """Energy captured by the harvester over the (1-alpha) part of the slot.

    rho * eta * (1-alpha) * T * beta * omega1 * g1 / d1**theta, noise
    normalized. Accepts a scalar gain or an array of gains.
    """
    p = params
    return p.rho * p.eta * (1.0 - p.alpha) * p.T * p.beta * p.omega1 * g1 / path_loss(p.d1, p.theta)


def sensing_energy(params: SystemParams) -> float:
    """Cost of the carrier-sensing phase: alpha * f * M * e * T."""
    return params.alpha * params.f * params.M * params.e * params.T


def backscatter_energy(params: SystemParams) -> float:
    """Circuit consumption over the backscatter phase: (1-alpha) * omega2 * T."""
    return (1.0 - params.alpha) * params.omega2 * params.T


def energy_threshold(params: SystemParams) -> float:
    """Minimum harvested energy for the device to operate in a slot."""
    if params.psi_override is not None:
        return params.psi_override
    return backscatter_energy(params) + sensing_energy(params) + params.E_m


def achievable_rate(params: SystemParams, g2):
    """Bits per slot over the backscatter hop; scalar or array g2."""
    p = params
    snr = (1.0 - p.rho) * p.beta * p.omega2 * g2 / path_loss(p.d2, p.theta)
    return (1.0 - p.alpha) * p.B * p.T * np.log2(1.0 + snr)


def sum_rate(params: SystemParams, draws) -> float:
    """Aggregate rate over i.i.d. device draws (the N-device total)."""
    if not draws:
        raise ParameterError("sum_rate needs at least one draw")
    return float(sum(achievable_rate(params, d.g2) for d in draws))


def _energy_exponent(params: SystemParams) -> float:
    p = params
    scale = p.gamma1_bar * p.rho * p.eta * (1.0 - p.alpha) * p.T * p.beta * p.omega1
    if scale == 0.0:
        raise DegenerateParameterError(
            "energy exponent undefined: rho*eta*(1-alpha)*T*beta*omega1 is zero")
    return path_loss(p.d1, p.theta) * energy_threshold(p) / scale


def _rate_exponent(params: SystemParams) -> float:
    p = params
    scale = p.gamma2_bar * (1.0 - p.rho) * p.beta * p.omega2
    if scale == 0.0:
        raise DegenerateParameterError(
            "rate exponent undefined: (1-rho)*beta*omega2 is zero")
    snr_needed = 2.0 ** (p.phi / ((1.0 - p.alpha) * p.B * p.T)) - 1.0
    return path_loss(p.d2, p.theta) * snr_needed / scale


def energy_shortage_prob(params: SystemParams) -> float:
    """Probability that the harvested energy falls below the threshold."""
    return -math.expm1(-_energy_exponent(params))


def energy_surplus_prob(params: SystemParams) -> float:
    """Probability of harvesting at least the threshold; exact complement of
    the shortage probability (their sum is 1.0 in floating point, not just
    approximately)."""
    return 1.0 - energy_shortage_prob(params)


def conditional_rate_outage_prob(params: SystemParams) -> float:
    """Probability that the rate misses phi, given enough harvested energy.

    The two hop gains are independent, so this equals the unconditional CDF
    of the second hop gain at the required SNR point.
    """
    return -math.expm1(-_rate_exponent(params))


def outage_probability(params: SystemParams) -> float:
    """Closed-form slot outage probability 1 - exp(-(A + C))."""
    a = _energy_exponent(params)
    c = _rate_exponent(params)
    return -math.expm1(-(a + c))


def balancing_rho(params: SystemParams, g1: float, g2: float) -> float:
    """Power split at which harvested energy equals the backscatter SNR term.

    Setting rho*eta*(1-alpha)*T*beta*omega1*g1/d1**theta equal to
    (1-rho)*beta*omega2*g2/d2**theta and solving for rho gives

        rho* = omega2*g2*d1**theta / (omega2*g2*d1**theta
                                      + eta*(1-alpha)*T*omega1*g1*d2**theta)

    The reflection coefficient multiplies both sides of the balance, so it
    cancels and does not appear in the solution.
    """
    if g1 < 0 or g2 < 0:
        raise ParameterError("gains must be nonnegative")
    if g1 == 0 and g2 == 0:
        raise DegenerateParameterError("balancing rho undefined when both gains are zero")
    p = params
    rate_side = p.omega2 * g2 * path_loss(p.d1, p.theta)
    harvest_side = p.eta * (1.0 - p.alpha) * p.T * p.omega1 * g1 * path_loss(p.d2, p.theta)
    return rate_side / (rate_side + harvest_side)


def expected_link_metrics(params: SystemParams, draw: ChannelDraw) -> LinkMetrics:
    """All per-slot quantities for one channel realization."""
    e_h = float(harvested_energy(params, draw.g1))
    psi = energy_threshold(params)
    rate = float(achievable_rate(params, draw.g2))
    return LinkMetrics(
        harvested_energy=e_h,
        sensing_energy=sensing_energy(params),
        backscatter_energy=backscatter_energy(params),
        psi=psi,
        rate=rate,
        in_outage=bool(e_h < psi or rate < params.phi),
    )
