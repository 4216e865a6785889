"""Parameter set, validation and config-file handling for the backscatter link model.

All powers are noise normalized: the carrier source and the backscatter circuit
enter only through the SNRs omega1 = P/N0 and omega2 = P_b/N0, so every energy
in the model (harvested, sensing, circuit, threshold) is expressed in units of
joules per N0. This mirrors the closed forms, which never use P or N0 alone.
"""

import math
from dataclasses import dataclass, fields, replace


class ParameterError(ValueError):
    """Raised for out-of-range, malformed or unknown parameter input."""


def db_to_linear(x_db):
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x):
    if x <= 0:
        raise ParameterError("dB conversion requires a positive linear value")
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemParams:
    """Full parameter set of the link model.

    rho        fraction of received power routed to the harvester
    alpha      fraction of the slot spent sensing for a usable carrier
    eta        harvester conversion efficiency
    beta       reflection coefficient of the device antenna
    theta      path loss exponent
    T          slot duration, seconds
    B          bandwidth, hertz
    omega1     carrier SNR P/N0, linear
    omega2     backscatter circuit SNR P_b/N0, linear
    d1         source to device distance, meters
    d2         device to gateway distance, meters
    phi        required rate threshold, bits per slot
    gamma1_bar mean channel power gain, source to device
    gamma2_bar mean channel power gain, device to gateway
    f          sensing sample rate, samples per second
    M          number of wideband signals sensed
    e          energy per sensing sample, noise normalized
    E_m        microcontroller energy per slot, noise normalized
    N          device count (consumed only by the sum-rate helper)
    psi_override  explicit energy threshold; bypasses the derived one

    Instances are immutable; build variants with dataclasses.replace.
    Construction does not validate (tests probe boundary behavior with
    out-of-range values); call validate() before trusting a set.
    """

    rho: float = 0.3
    alpha: float = 0.1
    eta: float = 0.5
    beta: float = 0.5
    theta: float = 2.0
    T: float = 1.0
    B: float = 1.0e6
    omega1: float = 10.0 ** 0.5
    omega2: float = 1.0
    d1: float = 5.0
    d2: float = 5.0
    phi: float = 2000.0
    gamma1_bar: float = 1.0
    gamma2_bar: float = 1.0
    f: float = 1000.0
    M: int = 5
    e: float = 1.0e-6
    E_m: float = 1.0e-4
    N: int = 1
    psi_override: float | None = None


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


# (field, human-readable bound, predicate)
_BOUNDS = [
    ("rho", "0 < rho <= 1", lambda p: 0.0 < p.rho <= 1.0),
    ("alpha", "0 <= alpha < 1", lambda p: 0.0 <= p.alpha < 1.0),
    ("eta", "0 < eta <= 1", lambda p: 0.0 < p.eta <= 1.0),
    ("beta", "0 < beta <= 1", lambda p: 0.0 < p.beta <= 1.0),
    ("theta", "theta >= 1", lambda p: p.theta >= 1.0),
    ("T", "T > 0", lambda p: p.T > 0.0),
    ("B", "B > 0", lambda p: p.B > 0.0),
    ("omega1", "omega1 > 0", lambda p: p.omega1 > 0.0),
    ("omega2", "omega2 > 0", lambda p: p.omega2 > 0.0),
    ("d1", "d1 > 0", lambda p: p.d1 > 0.0),
    ("d2", "d2 > 0", lambda p: p.d2 > 0.0),
    ("phi", "phi >= 0", lambda p: p.phi >= 0.0),
    ("gamma1_bar", "gamma1_bar > 0", lambda p: p.gamma1_bar > 0.0),
    ("gamma2_bar", "gamma2_bar > 0", lambda p: p.gamma2_bar > 0.0),
    ("f", "f >= 0", lambda p: p.f >= 0.0),
    ("M", "M >= 0", lambda p: p.M >= 0),
    ("e", "e >= 0", lambda p: p.e >= 0.0),
    ("E_m", "E_m >= 0", lambda p: p.E_m >= 0.0),
    ("N", "N >= 1", lambda p: p.N >= 1),
    ("psi_override", "psi_override >= 0 when set",
     lambda p: p.psi_override is None or p.psi_override >= 0.0),
]


def validate(params: SystemParams) -> ValidationReport:
    """Check every range invariant; returns a report, never raises."""
    violations = []
    for name, bound, pred in _BOUNDS:
        value = getattr(params, name)
        if value is not None and isinstance(value, float) and not math.isfinite(value):
            violations.append(f"{name} must be finite")
            continue
        if not pred(params):
            violations.append(f"{name} must satisfy {bound}")
    return ValidationReport(violations)


def require_valid(params: SystemParams) -> SystemParams:
    report = validate(params)
    if not report.ok:
        raise ParameterError("; ".join(report.violations))
    return params


def path_loss(d, theta):
    """Distance attenuation divisor d**theta."""
    if d <= 0:
        raise ParameterError("path loss requires d > 0")
    return d ** theta


# config keys are the lower-cased field names; SNRs also accept *_db variants
_KEY_TO_FIELD = {
    "rho": "rho", "alpha": "alpha", "eta": "eta", "beta": "beta",
    "theta": "theta", "t": "T", "b": "B",
    "omega1": "omega1", "omega2": "omega2",
    "d1": "d1", "d2": "d2", "phi": "phi",
    "gamma1_bar": "gamma1_bar", "gamma2_bar": "gamma2_bar",
    "f": "f", "m": "M", "e": "e", "e_m": "E_m", "n": "N",
    "psi_override": "psi_override",
}
_DB_KEYS = {"omega1_db": "omega1", "omega2_db": "omega2"}
_FIELD_TO_KEY = {v: k for k, v in _KEY_TO_FIELD.items()}
_INT_FIELDS = {"M", "N"}


def coerce_setting(key: str, text: str):
    """Map one config key/value pair to a (field, value) assignment.

    Shared by the config parser and the CLI --set option so both accept
    the same keys and the same numeric syntax.
    """
    key = key.strip().lower()
    if key not in _DB_KEYS and key not in _KEY_TO_FIELD:
        raise ParameterError(f"unknown config key: {key!r}")
    try:
        value = float(text)
    except ValueError:
        raise ParameterError(f"value for {key!r} is not a number: {text!r}") from None
    if key in _DB_KEYS:
        return _DB_KEYS[key], db_to_linear(value)
    field = _KEY_TO_FIELD[key]
    if field in _INT_FIELDS:
        if value != int(value):
            raise ParameterError(f"{key} must be an integer, got {text!r}")
        return field, int(value)
    return field, value


def parse_config(text: str) -> SystemParams:
    """Parse the flat `key = value` config format into a validated SystemParams.

    Blank lines and `#` comments are ignored. Unspecified keys keep their
    defaults. Raises ParameterError on malformed lines, unknown or duplicate
    keys, and out-of-range values.
    """
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, val = line.partition("=")
        field, value = coerce_setting(key, val.strip())
        if field in overrides:
            raise ParameterError(f"line {lineno}: {field!r} assigned twice")
        overrides[field] = value
    return require_valid(replace(SystemParams(), **overrides))


def load_params(path) -> SystemParams:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_text(params: SystemParams) -> str:
    lines = []
    for field in fields(SystemParams):
        value = getattr(params, field.name)
        if field.name == "psi_override" and value is None:
            continue
        lines.append(f"{_FIELD_TO_KEY[field.name]} = {value!r}")
    return "\n".join(lines) + "\n"


def save_params(params: SystemParams, path) -> None:
    """Write params in the config format; load_params(save_params(p)) == p."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(config_text(params))
