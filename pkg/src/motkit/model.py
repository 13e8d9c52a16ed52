"""Parameter model for a three-mode microwave-optical transducer.

An optical cavity mode and a microwave (electrical) resonator mode are
bridged by an acoustic mode: optical and acoustic modes exchange photons
with strength ``g_om``, electrical and acoustic modes with the complex
strength ``g_em_mag * exp(i*theta)``.  Each mode decays both into an
external coupling port (carrying signals) and an intrinsic loss port
(carrying bath noise).

Rates and couplings may be expressed in any mutually consistent
angular-frequency unit: every derived channel quantity depends only on the
dimensionless cooperativities, extraction ratios, coupling phase,
correlation coefficient and bath occupations.  ``TransducerParams.from_dimensionless``
builds a concrete parameter set directly from those dimensionless numbers.

All types are immutable after construction and all operations are pure
functions, so everything here is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import BOLTZMANN_K, PLANCK_H

TWO_PI = 2.0 * math.pi

# Default mode frequencies: ~10 GHz electrical/acoustic resonators bridged
# to a telecom-band optical cavity.
DEFAULT_FREQ_OPTICAL_HZ = 200e12
DEFAULT_FREQ_ELECTRICAL_HZ = 10e9
DEFAULT_FREQ_MECHANICAL_HZ = 10e9


class ParameterSchemaError(Exception):
    """A parameter dictionary does not follow the expected JSON schema."""


def _check_finite_number(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModeRates:
    """Decay rates of the three modes, split into coupling and intrinsic parts.

    ``kappa_o_c``/``kappa_o_i`` belong to the optical mode, ``kappa_e_c``/
    ``kappa_e_i`` to the electrical mode and ``kappa_m`` is the (purely
    intrinsic) acoustic damping.  All rates are nonnegative and each total
    rate must be strictly positive, otherwise the input-output description
    of that mode degenerates.
    """

    kappa_o_c: float
    kappa_o_i: float
    kappa_e_c: float
    kappa_e_i: float
    kappa_m: float

    def __post_init__(self):
        for name in ("kappa_o_c", "kappa_o_i", "kappa_e_c", "kappa_e_i", "kappa_m"):
            value = _check_finite_number(name, getattr(self, name))
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)
        if self.kappa_o <= 0:
            raise ValueError("total optical rate kappa_o_c + kappa_o_i must be > 0")
        if self.kappa_e <= 0:
            raise ValueError("total electrical rate kappa_e_c + kappa_e_i must be > 0")
        if self.kappa_m <= 0:
            raise ValueError("acoustic rate kappa_m must be > 0")

    @property
    def kappa_o(self) -> float:
        """Total optical decay rate."""
        return self.kappa_o_c + self.kappa_o_i

    @property
    def kappa_e(self) -> float:
        """Total electrical decay rate."""
        return self.kappa_e_c + self.kappa_e_i


@dataclass(frozen=True)
class Couplings:
    """Beam-splitter coupling strengths between the modes.

    ``theta`` is the phase of the electro-acoustic coupling; it is stored
    normalized to [0, 2*pi).  The opto-acoustic coupling ``g_om`` is real.
    """

    g_om: float
    g_em_mag: float
    theta: float = 0.0

    def __post_init__(self):
        for name in ("g_om", "g_em_mag"):
            value = _check_finite_number(name, getattr(self, name))
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)
        theta = _check_finite_number("theta", self.theta)
        object.__setattr__(self, "theta", theta % TWO_PI)

    @property
    def g_em(self) -> complex:
        """Complex electro-acoustic coupling ``g_em_mag * exp(i*theta)``."""
        return self.g_em_mag * complex(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True)
class TransducerParams:
    """Complete physical description of the transducer.

    Frequencies are ordinary frequencies in Hz (cycles per second, not
    angular).  They enter only through the thermal occupation of the baths
    and through the validity check of neglecting optical thermal noise;
    the dynamics itself is governed by ``rates`` and ``couplings``.
    """

    rates: ModeRates
    couplings: Couplings
    freq_o_hz: float = DEFAULT_FREQ_OPTICAL_HZ
    freq_e_hz: float = DEFAULT_FREQ_ELECTRICAL_HZ
    freq_m_hz: float = DEFAULT_FREQ_MECHANICAL_HZ

    def __post_init__(self):
        if not isinstance(self.rates, ModeRates):
            raise ValueError("rates must be a ModeRates instance")
        if not isinstance(self.couplings, Couplings):
            raise ValueError("couplings must be a Couplings instance")
        for name in ("freq_o_hz", "freq_e_hz", "freq_m_hz"):
            value = _check_finite_number(name, getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be > 0, got {value}")
            object.__setattr__(self, name, value)
        if self.freq_o_hz < 100.0 * self.freq_e_hz:
            warnings.warn(
                "optical frequency is not far above the electrical frequency; "
                "neglecting optical thermal noise may not be justified",
                stacklevel=2,
            )

    @classmethod
    def from_dimensionless(
        cls,
        c_om: float,
        c_em: float,
        zeta_o: float,
        zeta_e: float,
        theta: float = 0.0,
        *,
        freq_o_hz: float = DEFAULT_FREQ_OPTICAL_HZ,
        freq_e_hz: float = DEFAULT_FREQ_ELECTRICAL_HZ,
        freq_m_hz: float = DEFAULT_FREQ_MECHANICAL_HZ,
    ) -> "TransducerParams":
        """Build a parameter set from dimensionless quantities.

        All three total decay rates are set to 1 (so rates are expressed in
        units of the acoustic linewidth) and the couplings are chosen to
        reproduce the requested cooperativities ``c_om``, ``c_em`` and
        extraction ratios ``zeta_o``, ``zeta_e``.
        """
        for name, value in (("c_om", c_om), ("c_em", c_em)):
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
        for name, value in (("zeta_o", zeta_o), ("zeta_e", zeta_e)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        rates = ModeRates(
            kappa_o_c=zeta_o,
            kappa_o_i=1.0 - zeta_o,
            kappa_e_c=zeta_e,
            kappa_e_i=1.0 - zeta_e,
            kappa_m=1.0,
        )
        couplings = Couplings(
            g_om=math.sqrt(c_om) / 2.0,
            g_em_mag=math.sqrt(c_em) / 2.0,
            theta=theta,
        )
        return cls(rates, couplings, freq_o_hz=freq_o_hz,
                   freq_e_hz=freq_e_hz, freq_m_hz=freq_m_hz)


@dataclass(frozen=True)
class NoiseEnvironment:
    """Thermal bath shared by the electrical and acoustic modes.

    ``chi`` measures the degree of correlation between the electrical
    intrinsic noise input and the acoustic noise input.  It is a real
    number in [-1, 1]; negative values describe anticorrelated baths.
    """

    temperature_k: float
    chi: float = 0.0

    def __post_init__(self):
        temperature = _check_finite_number("temperature_k", self.temperature_k)
        if temperature <= 0:
            raise ValueError(f"temperature_k must be > 0, got {temperature}")
        object.__setattr__(self, "temperature_k", temperature)
        chi = _check_finite_number("chi", self.chi)
        if abs(chi) > 1.0:
            raise ValueError(f"|chi| must be <= 1, got {chi}")
        object.__setattr__(self, "chi", chi)


def cooperativity_om(params: TransducerParams) -> float:
    """Opto-acoustic cooperativity ``4 g_om^2 / (kappa_o kappa_m)``."""
    r, c = params.rates, params.couplings
    return 4.0 * c.g_om**2 / (r.kappa_o * r.kappa_m)


def cooperativity_em(params: TransducerParams) -> float:
    """Electro-acoustic cooperativity ``4 |g_em|^2 / (kappa_e kappa_m)``.

    Depends only on the coupling magnitude, never on its phase.
    """
    r, c = params.rates, params.couplings
    return 4.0 * c.g_em_mag**2 / (r.kappa_e * r.kappa_m)


def extraction_ratios(params: TransducerParams) -> tuple[float, float]:
    """Fractions of each total decay rate that feed the coupling ports.

    Returns ``(zeta_o, zeta_e)``, each in [0, 1].
    """
    r = params.rates
    return r.kappa_o_c / r.kappa_o, r.kappa_e_c / r.kappa_e


def thermal_occupation(freq_hz: float, temperature_k: float) -> float:
    """Bose-Einstein mean photon number of a bath mode.

    The exponent is ``h * f / (k_B * T)`` with ``f`` the ordinary frequency
    in Hz.  Returns 0.0 when the exponent exceeds the range where ``exp``
    is representable (deep quantum regime), rather than overflowing.
    """
    if freq_hz <= 0:
        raise ValueError(f"freq_hz must be > 0, got {freq_hz}")
    if temperature_k <= 0:
        raise ValueError(f"temperature_k must be > 0, got {temperature_k}")
    exponent = PLANCK_H * freq_hz / (BOLTZMANN_K * temperature_k)
    if exponent > 700.0:
        return 0.0
    return 1.0 / math.expm1(exponent)


# --- JSON parameter schema -------------------------------------------------
#
# Raw form:
#   {"rates": {...}, "couplings": {...}, "frequencies_hz": {...},
#    "environment": {...}}
# Dimensionless form:
#   {"dimensionless": {...}, "environment": {...}}           (frequencies_hz
#    optional, defaulting to 200 THz / 10 GHz / 10 GHz)
# The two forms are mutually exclusive within one file.

_RATE_KEYS = ("kappa_o_c", "kappa_o_i", "kappa_e_c", "kappa_e_i", "kappa_m")
_COUPLING_KEYS = ("g_om", "g_em_mag", "theta")
_FREQ_KEYS = ("optical", "electrical", "mechanical")
_ENV_KEYS = ("temperature_k", "chi")
_DIMLESS_KEYS = ("C_om", "C_em", "zeta_o", "zeta_e", "theta")


def _section(data: dict, name: str, keys: tuple[str, ...]) -> dict[str, float]:
    section = data[name]
    if not isinstance(section, dict):
        raise ParameterSchemaError(f"'{name}' must be an object")
    missing = [k for k in keys if k not in section]
    if missing:
        raise ParameterSchemaError(f"'{name}' is missing fields: {', '.join(missing)}")
    unknown = [k for k in section if k not in keys]
    if unknown:
        raise ParameterSchemaError(f"'{name}' has unknown fields: {', '.join(unknown)}")
    out = {}
    for key in keys:
        value = section[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParameterSchemaError(f"'{name}.{key}' must be a number, got {value!r}")
        out[key] = float(value)
    return out


def params_from_dict(data) -> tuple[TransducerParams, NoiseEnvironment]:
    """Parse a parameter dictionary (either schema form) into model objects.

    Raises :class:`ParameterSchemaError` for structural problems and
    ``ValueError`` (from the type invariants) for physically invalid values.
    """
    if not isinstance(data, dict):
        raise ParameterSchemaError("top level must be an object")
    if "environment" not in data:
        raise ParameterSchemaError("missing required section 'environment'")
    raw = "rates" in data or "couplings" in data
    dimensionless = "dimensionless" in data
    if raw and dimensionless:
        raise ParameterSchemaError(
            "sections 'rates'/'couplings' and 'dimensionless' are mutually exclusive")
    if not raw and not dimensionless:
        raise ParameterSchemaError(
            "expected either 'rates'+'couplings'+'frequencies_hz' or 'dimensionless'")

    allowed_top = {"environment", "frequencies_hz"} | (
        {"rates", "couplings"} if raw else {"dimensionless"})
    unknown = [k for k in data if k not in allowed_top]
    if unknown:
        raise ParameterSchemaError(f"unknown top-level sections: {', '.join(unknown)}")

    env_fields = _section(data, "environment", _ENV_KEYS)
    env = NoiseEnvironment(**env_fields)

    if raw:
        for required in ("rates", "couplings", "frequencies_hz"):
            if required not in data:
                raise ParameterSchemaError(f"missing required section '{required}'")
        rates = ModeRates(**_section(data, "rates", _RATE_KEYS))
        couplings = Couplings(**_section(data, "couplings", _COUPLING_KEYS))
        freqs = _section(data, "frequencies_hz", _FREQ_KEYS)
        params = TransducerParams(
            rates, couplings,
            freq_o_hz=freqs["optical"],
            freq_e_hz=freqs["electrical"],
            freq_m_hz=freqs["mechanical"],
        )
    else:
        dim = _section(data, "dimensionless", _DIMLESS_KEYS)
        if "frequencies_hz" in data:
            freqs = _section(data, "frequencies_hz", _FREQ_KEYS)
        else:
            freqs = {"optical": DEFAULT_FREQ_OPTICAL_HZ,
                     "electrical": DEFAULT_FREQ_ELECTRICAL_HZ,
                     "mechanical": DEFAULT_FREQ_MECHANICAL_HZ}
        params = TransducerParams.from_dimensionless(
            c_om=dim["C_om"], c_em=dim["C_em"],
            zeta_o=dim["zeta_o"], zeta_e=dim["zeta_e"], theta=dim["theta"],
            freq_o_hz=freqs["optical"],
            freq_e_hz=freqs["electrical"],
            freq_m_hz=freqs["mechanical"],
        )
    return params, env


def params_to_dict(params: TransducerParams, env: NoiseEnvironment) -> dict:
    """Serialize model objects to the raw-form parameter dictionary."""
    r, c = params.rates, params.couplings
    return {
        "rates": {
            "kappa_o_c": r.kappa_o_c,
            "kappa_o_i": r.kappa_o_i,
            "kappa_e_c": r.kappa_e_c,
            "kappa_e_i": r.kappa_e_i,
            "kappa_m": r.kappa_m,
        },
        "couplings": {
            "g_om": c.g_om,
            "g_em_mag": c.g_em_mag,
            "theta": c.theta,
        },
        "frequencies_hz": {
            "optical": params.freq_o_hz,
            "electrical": params.freq_e_hz,
            "mechanical": params.freq_m_hz,
        },
        "environment": {
            "temperature_k": env.temperature_k,
            "chi": env.chi,
        },
    }
