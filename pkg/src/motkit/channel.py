"""Effective thermal-loss channel of the microwave-to-optical link.

At zero frequency the transducer acts on the microwave input as a beam
splitter of transmissivity ``eta`` that mixes the signal with one
effective environment mode assembled from the four remaining input ports.
The channel is therefore fully described by the pair ``(eta, n_e)`` where
``n_e`` is the mean occupation of that environment mode.  Both the
uncorrelated-bath and correlated-bath noise models are provided, along
with the standard quantum-capacity lower bound and the Gaussian
covariance map of the channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import NoiseEnvironment, TransducerParams, thermal_occupation
from .model import cooperativity_em, cooperativity_om, extraction_ratios
from .scattering import (
    cross_term_value,
    s14_element,
    s15_element,
    scattering_matrix,
    transmissivity,
)

__all__ = [
    "NoiseCoefficients",
    "ThermalLossChannel",
    "GaussianState",
    "channel_independent",
    "channel_correlated",
    "noise_occupation",
    "thermal_entropy",
    "capacity_lower_bound",
    "apply_gaussian",
]

_NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class NoiseCoefficients:
    """Zero-frequency amplitudes feeding the effective environment mode.

    ``s11``/``s12`` (optical coupling and intrinsic ports) are obtained
    numerically, ``s14``/``s15`` (electrical intrinsic and acoustic ports)
    in closed form.  Together they satisfy
    ``|s11|^2 + |s12|^2 + |s14|^2 + |s15|^2 = 1 - eta``.
    """

    s11: complex
    s12: complex
    s14: complex
    s15: complex

    def total_weight(self) -> float:
        return (abs(self.s11) ** 2 + abs(self.s12) ** 2
                + abs(self.s14) ** 2 + abs(self.s15) ** 2)


@dataclass(frozen=True)
class ThermalLossChannel:
    """Bosonic thermal-loss channel with transmissivity ``eta`` and
    environment occupation ``n_e``."""

    eta: float
    n_e: float
    coefficients: NoiseCoefficients | None = None

    def __post_init__(self):
        if not 0.0 <= self.eta < 1.0:
            raise ValueError(f"eta must lie in [0, 1), got {self.eta}")
        if self.n_e < 0.0:
            raise ValueError(f"n_e must be >= 0, got {self.n_e}")
        if self.coefficients is not None:
            weight = self.coefficients.total_weight()
            if abs(weight - (1.0 - self.eta)) > _NORMALIZATION_TOL:
                raise ValueError(
                    "noise coefficients are inconsistent with eta: "
                    f"sum of squared magnitudes {weight!r} != 1 - eta = {1.0 - self.eta!r}")


def noise_occupation(c_om, c_em, zeta_o, zeta_e, theta, chi, n_th):
    """Environment occupation ``n_e`` from dimensionless parameters.

    Broadcasts over numpy arrays; this is the closed-form kernel behind
    :func:`channel_correlated` and is convenient for grid scans.
    """
    eta = transmissivity(c_om, c_em, zeta_o, zeta_e)
    w14 = np.abs(s14_element(c_om, c_em, zeta_o, zeta_e, theta)) ** 2
    w15 = np.abs(s15_element(c_om, c_em, zeta_o)) ** 2
    cross = cross_term_value(c_om, c_em, zeta_o, zeta_e, theta)
    return (w14 + w15 + np.asarray(chi) * cross) * n_th / (1.0 - eta)


def _bath_occupations(params: TransducerParams, env: NoiseEnvironment) -> tuple[float, float]:
    n_e_th = thermal_occupation(params.freq_e_hz, env.temperature_k)
    n_m_th = thermal_occupation(params.freq_m_hz, env.temperature_k)
    return n_e_th, n_m_th


def _extract_channel(params: TransducerParams, env: NoiseEnvironment,
                     chi: float) -> ThermalLossChannel:
    c_om = cooperativity_om(params)
    c_em = cooperativity_em(params)
    zeta_o, zeta_e = extraction_ratios(params)
    theta = params.couplings.theta

    eta = float(transmissivity(c_om, c_em, zeta_o, zeta_e))
    s14 = complex(s14_element(c_om, c_em, zeta_o, zeta_e, theta))
    s15 = complex(s15_element(c_om, c_em, zeta_o))
    cross = float(cross_term_value(c_om, c_em, zeta_o, zeta_e, theta))

    # Optical ports carry vacuum only (their thermal occupation is utterly
    # negligible at the optical frequency), so only the electrical intrinsic
    # and acoustic ports contribute.  With unequal bath frequencies the
    # cross-correlation is normalized by the geometric mean occupation,
    # which reduces to the common n_th when the frequencies coincide.
    n_e_th, n_m_th = _bath_occupations(params, env)
    numerator = (abs(s14) ** 2 * n_e_th + abs(s15) ** 2 * n_m_th
                 + chi * cross * math.sqrt(n_e_th * n_m_th))
    n_e = numerator / (1.0 - eta)

    s_zero = scattering_matrix(params, 0.0)
    coefficients = NoiseCoefficients(
        s11=complex(s_zero[0, 0]),
        s12=complex(s_zero[0, 1]),
        s14=s14,
        s15=s15,
    )
    return ThermalLossChannel(eta=eta, n_e=n_e, coefficients=coefficients)


def channel_independent(params: TransducerParams,
                        env: NoiseEnvironment) -> ThermalLossChannel:
    """Channel under uncorrelated baths; ``env.chi`` is ignored."""
    return _extract_channel(params, env, chi=0.0)


def channel_correlated(params: TransducerParams,
                       env: NoiseEnvironment) -> ThermalLossChannel:
    """Channel when the electrical and acoustic baths are correlated.

    The interference term carries ``chi * sin(theta)``: it suppresses the
    environment occupation for ``chi * sin(theta) < 0`` and enhances it
    otherwise.  With ``chi = 0`` (or ``sin(theta) = 0``) the result is
    identical to :func:`channel_independent`.
    """
    return _extract_channel(params, env, chi=env.chi)


def thermal_entropy(n: float) -> float:
    """Entropy (in bits) of a thermal bosonic state with mean occupation ``n``.

    ``g(n) = (n+1) log2(n+1) - n log2(n)``, continuously extended so that
    ``g(0) = 0``.
    """
    if n < 0:
        raise ValueError(f"occupation must be >= 0, got {n}")
    if n == 0.0:
        return 0.0
    return (n + 1.0) * math.log2(n + 1.0) - n * math.log2(n)


def capacity_lower_bound(eta: float, n_e: float) -> float:
    """Lower bound on the quantum capacity of a thermal-loss channel.

    ``max{0, log2(eta / (1 - eta)) - g(n_e)}`` in qubits per channel use.
    Zero whenever ``eta <= 1/2``, for any occupation.
    """
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must lie in [0, 1), got {eta}")
    if eta <= 0.5:
        return 0.0
    return max(0.0, math.log2(eta / (1.0 - eta)) - thermal_entropy(n_e))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Single-mode Gaussian state: quadrature means and 2x2 covariance.

    Vacuum covariance is the identity, so any physical state satisfies
    ``det(cov) >= 1``.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.shape != (2,):
            raise ValueError(f"mean must have shape (2,), got {mean.shape}")
        if cov.shape != (2, 2):
            raise ValueError(f"cov must have shape (2, 2), got {cov.shape}")
        scale = max(1.0, float(np.abs(cov).max()))
        if abs(cov[0, 1] - cov[1, 0]) > 1e-10 * scale:
            raise ValueError("cov must be symmetric")
        eigenvalues = np.linalg.eigvalsh(cov)
        if eigenvalues[0] <= 0:
            raise ValueError("cov must be positive definite")
        if float(np.linalg.det(cov)) < 1.0 - 1e-10:
            raise ValueError("cov violates the uncertainty relation det(cov) >= 1")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @classmethod
    def vacuum(cls) -> "GaussianState":
        return cls(mean=np.zeros(2), cov=np.eye(2))


def apply_gaussian(channel: ThermalLossChannel, state: GaussianState) -> GaussianState:
    """Propagate a Gaussian state through the channel.

    Means are scaled by ``sqrt(eta)``; the covariance map is
    ``V -> eta V + (1 - eta)(2 n_e + 1) I``.
    """
    eta, n_e = channel.eta, channel.n_e
    mean = math.sqrt(eta) * state.mean
    cov = eta * state.cov + (1.0 - eta) * (2.0 * n_e + 1.0) * np.eye(2)
    return GaussianState(mean=mean, cov=cov)
