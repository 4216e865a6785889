"""Link-level model of a wirelessly powered ambient backscatter device.

Closed-form outage probability, harvested energy and achievable rate under
Rayleigh fading, a Monte Carlo oracle that validates the closed forms, and
a sweep engine with figure-style presets. See the README for the CLI and
the HTTP service.
"""

from .channel import ChannelDraw, RngStream, empirical_cdf_check, gain_from_uniform, sample_gain, sample_gains
from .link_analytics import (DegenerateParameterError, LinkMetrics, achievable_rate,
                             backscatter_energy, balancing_rho,
                             conditional_rate_outage_prob, energy_shortage_prob,
                             energy_surplus_prob, energy_threshold,
                             expected_link_metrics, harvested_energy,
                             outage_probability, sensing_energy, sum_rate)
from .monte_carlo import (MonteCarloResult, estimate_mean_harvest,
                          estimate_mean_rate, estimate_outage)
from .params import (ParameterError, SystemParams, ValidationReport, db_to_linear,
                     linear_to_db, load_params, parse_config, path_loss,
                     save_params, validate)
from .sweep import (KNOWN_METRICS, PRESET_IDS, SweepSpec, SweepTable, emit,
                    figure_preset, run_figure, run_sweep)

__version__ = "0.1.0"

__all__ = [
    "ChannelDraw", "RngStream", "empirical_cdf_check", "gain_from_uniform",
    "sample_gain", "sample_gains",
    "DegenerateParameterError", "LinkMetrics", "achievable_rate",
    "backscatter_energy", "balancing_rho", "conditional_rate_outage_prob",
    "energy_shortage_prob", "energy_surplus_prob", "energy_threshold",
    "expected_link_metrics", "harvested_energy", "outage_probability",
    "sensing_energy", "sum_rate",
    "MonteCarloResult", "estimate_mean_harvest", "estimate_mean_rate",
    "estimate_outage",
    "ParameterError", "SystemParams", "ValidationReport", "db_to_linear",
    "linear_to_db", "load_params", "parse_config", "path_loss", "save_params",
    "validate",
    "KNOWN_METRICS", "PRESET_IDS", "SweepSpec", "SweepTable", "emit",
    "figure_preset", "run_figure", "run_sweep",
    "__version__",
]
