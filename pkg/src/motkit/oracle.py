"""Stochastic time-domain verification of the analytic channel noise.

This module solves the same Langevin dynamics as the scattering module,
but by brute force: the c-number equations are integrated with
Euler-Maruyama under correlated white-noise inputs on the electrical
intrinsic and acoustic ports, and the zero-frequency power spectral
density of the optical coupling-port output is estimated from averaged
periodograms.  For a linear system with thermal (normally ordered) inputs
this estimate must converge to ``(1 - eta) * n_e`` from the analytic
channel extraction, which makes it a fully independent cross-check.

Per step, two independent standard complex Gaussians ``z1, z2`` drive

    b_in     = sqrt(n_m / dt) * z1
    c_in_i   = sqrt(n_e / dt) * (chi * z1 + sqrt(1 - chi^2) * z2)

so the discrete covariances reproduce white noise of occupation ``n_m``
and ``n_e`` with cross-correlation ``chi`` exactly.  All other inputs are
vacuum and drop out of normally ordered averages.

Trajectories use independent child streams spawned from the seed, and the
final reduction runs in trajectory order, so results are bit-identical
regardless of how the work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import channel_correlated
from .model import NoiseEnvironment, TransducerParams, thermal_occupation
from .scattering import build_dynamics

__all__ = [
    "SimConfig",
    "OracleResult",
    "NoiseMoments",
    "simulate_output_noise",
    "correlated_noise_pair",
    "zero_frequency_psd",
    "noise_generator_moments",
]

DEFAULT_SEED = 42

# Steps integrated per vectorized chunk; fixed so that draw order (hence
# the result) never depends on memory-size heuristics.
_CHUNK_STEPS = 16384

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class SimConfig:
    """Integration and estimation settings for the stochastic oracle.

    Times share units with the inverse decay rates.  ``psd_window`` is the
    segment length (in samples) for the averaged zero-frequency
    periodogram; segments overlap by half.
    """

    dt: float
    total_time: float
    burn_in: float
    n_trajectories: int = 16
    seed: int = DEFAULT_SEED
    psd_window: int = 16384

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.burn_in < 0:
            raise ValueError(f"burn_in must be >= 0, got {self.burn_in}")
        if self.total_time <= self.burn_in:
            raise ValueError("total_time must exceed burn_in")
        if self.n_trajectories < 1:
            raise ValueError("n_trajectories must be >= 1")
        if self.psd_window < 2:
            raise ValueError("psd_window must be >= 2")
        n_kept = int(round((self.total_time - self.burn_in) / self.dt))
        if n_kept < self.psd_window:
            raise ValueError(
                f"post-burn-in samples ({n_kept}) shorter than one psd_window "
                f"({self.psd_window}); increase total_time or shrink the window")

    @classmethod
    def defaults(cls, params: TransducerParams, seed: int = DEFAULT_SEED) -> "SimConfig":
        """Configuration scaled to the system's fastest and slowest rates."""
        r = params.rates
        kappa_max = max(r.kappa_o, r.kappa_e, r.kappa_m)
        kappa_min = min(r.kappa_o, r.kappa_e, r.kappa_m)
        return cls(
            dt=0.01 / kappa_max,
            total_time=2000.0 / kappa_min,
            burn_in=20.0 / kappa_min,
            n_trajectories=16,
            seed=seed,
            psd_window=16384,
        )


@dataclass(frozen=True)
class OracleResult:
    """Zero-frequency output-noise estimate and its analytic target."""

    noise_flux_estimate: float
    std_error: float
    analytic_target: float

    @property
    def z_score(self) -> float:
        deviation = self.noise_flux_estimate - self.analytic_target
        if self.std_error == 0.0:
            return 0.0 if deviation == 0.0 else math.inf
        return deviation / self.std_error


def correlated_noise_pair(rng: np.random.Generator, n: int,
                          chi: float) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` samples of two unit-occupation complex white noises with
    normalized cross-correlation ``<c* b> = chi`` (chi real, |chi| <= 1)."""
    draws = rng.standard_normal((n, 2, 2))
    z1 = (draws[:, 0, 0] + 1j * draws[:, 0, 1]) * _SQRT_HALF
    z2 = (draws[:, 1, 0] + 1j * draws[:, 1, 1]) * _SQRT_HALF
    return z1, chi * z1 + math.sqrt(1.0 - chi * chi) * z2


def zero_frequency_psd(series: np.ndarray, dt: float,
                       segment_len: int) -> tuple[np.ndarray, int]:
    """Averaged zero-frequency periodogram with half-overlapping segments.

    ``series`` has shape (n_samples, n_series); a separate estimate is
    returned per series, together with the segment count.  Normalization is
    such that white noise of occupation ``n`` (per-sample variance ``n/dt``)
    estimates ``n``; no detrending is applied, since subtracting segment
    means would null exactly the zero-frequency content being measured.
    """
    n_samples = series.shape[0]
    if n_samples < segment_len:
        raise ValueError("series shorter than one segment")
    hop = segment_len // 2
    n_segments = (n_samples - segment_len) // hop + 1
    acc = np.zeros(series.shape[1])
    for s in range(n_segments):
        segment = series[s * hop: s * hop + segment_len]
        acc += np.abs(segment.sum(axis=0)) ** 2
    return acc * (dt / segment_len) / n_segments, n_segments


def simulate_output_noise(params: TransducerParams, env: NoiseEnvironment,
                          cfg: SimConfig) -> OracleResult:
    """Integrate the Langevin dynamics and estimate the output noise flux.

    Returns the averaged zero-frequency PSD of the optical coupling-port
    output, its standard error over trajectories, and the analytic target
    ``(1 - eta) * n_e`` from the correlated-noise channel extraction.
    Raises ``ValueError`` if the Euler-Maruyama stability guard
    ``dt * kappa_max <= 0.05`` or the relaxation guard
    ``burn_in >= 10 / kappa_min`` fails.
    """
    r = params.rates
    kappa_max = max(r.kappa_o, r.kappa_e, r.kappa_m)
    kappa_min = min(r.kappa_o, r.kappa_e, r.kappa_m)
    if cfg.dt * kappa_max > 0.05:
        raise ValueError(
            f"dt * kappa_max = {cfg.dt * kappa_max:.4g} exceeds the stability "
            "guard 0.05; reduce dt")
    if cfg.burn_in < 10.0 / kappa_min:
        raise ValueError(
            f"burn_in = {cfg.burn_in:.4g} is below the relaxation guard "
            f"10 / kappa_min = {10.0 / kappa_min:.4g}")

    chi = env.chi
    n_e_th = thermal_occupation(params.freq_e_hz, env.temperature_k)
    n_m_th = thermal_occupation(params.freq_m_hz, env.temperature_k)

    n_steps = int(round(cfg.total_time / cfg.dt))
    n_burn = int(round(cfg.burn_in / cfg.dt))
    n_traj = cfg.n_trajectories
    dt = cfg.dt

    # Per-step forcing amplitudes: dt * B @ a_in with a_in scaled by
    # sqrt(n/dt), leaving sqrt(n * dt) overall.
    amp_electrical = math.sqrt(r.kappa_e_i) * math.sqrt(n_e_th * dt)
    amp_mechanical = math.sqrt(r.kappa_m) * math.sqrt(n_m_th * dt)
    sqrt_out = math.sqrt(r.kappa_o_c)

    step_matrix = build_dynamics(params) * dt
    streams = [np.random.default_rng(s)
               for s in np.random.SeedSequence(cfg.seed).spawn(n_traj)]

    state = np.zeros((3, n_traj), dtype=complex)
    output = np.empty((n_steps - n_burn, n_traj), dtype=complex)

    done = 0
    while done < n_steps:
        chunk = min(_CHUNK_STEPS, n_steps - done)
        forcing = np.zeros((chunk, 3, n_traj), dtype=complex)
        for t, rng in enumerate(streams):
            z_mech, z_elec = correlated_noise_pair(rng, chunk, chi)
            forcing[:, 1, t] = amp_electrical * z_elec
            forcing[:, 2, t] = amp_mechanical * z_mech
        for i in range(chunk):
            state = state + step_matrix @ state + forcing[i]
            idx = done + i
            if idx >= n_burn:
                output[idx - n_burn] = sqrt_out * state[0]
        done += chunk

    per_traj, _ = zero_frequency_psd(output, dt, cfg.psd_window)
    estimate = float(per_traj.mean())
    if n_traj >= 2:
        std_error = float(per_traj.std(ddof=1) / math.sqrt(n_traj))
    else:
        # Single trajectory: fall back on segment scatter.
        hop = cfg.psd_window // 2
        n_segments = (output.shape[0] - cfg.psd_window) // hop + 1
        segment_values = np.array([
            float(np.abs(output[s * hop: s * hop + cfg.psd_window, 0].sum()) ** 2)
            * dt / cfg.psd_window
            for s in range(n_segments)])
        std_error = (float(segment_values.std(ddof=1) / math.sqrt(n_segments))
                     if n_segments >= 2 else 0.0)

    ch = channel_correlated(params, env)
    target = (1.0 - ch.eta) * ch.n_e
    return OracleResult(noise_flux_estimate=estimate, std_error=std_error,
                        analytic_target=target)


@dataclass(frozen=True)
class NoiseMoments:
    """Sampled second moments of the discrete noise injections, expressed as
    occupations (i.e. already multiplied by dt)."""

    acoustic_occupation: float
    electrical_occupation: float
    cross_correlation: float
    acoustic_std_error: float
    electrical_std_error: float
    cross_std_error: float


def noise_generator_moments(chi: float, n_th: float, dt: float,
                            n_draws: int, seed: int = DEFAULT_SEED) -> NoiseMoments:
    """Self-test helper: measure the noise generator's covariance.

    Draws ``n_draws`` steps of the same correlated pair used by the
    integrator (at occupation ``n_th``) and returns the sampled
    occupations and cross-correlation with their standard errors; the
    expected values are ``n_th``, ``n_th`` and ``chi * n_th``.
    """
    rng = np.random.default_rng(seed)
    b_unit, c_unit = correlated_noise_pair(rng, n_draws, chi)
    scale = n_th / dt
    b_sq = scale * np.abs(b_unit) ** 2 * dt
    c_sq = scale * np.abs(c_unit) ** 2 * dt
    cross = scale * (c_unit.conjugate() * b_unit).real * dt
    root_n = math.sqrt(n_draws)
    return NoiseMoments(
        acoustic_occupation=float(b_sq.mean()),
        electrical_occupation=float(c_sq.mean()),
        cross_correlation=float(cross.mean()),
        acoustic_std_error=float(b_sq.std(ddof=1) / root_n),
        electrical_std_error=float(c_sq.std(ddof=1) / root_n),
        cross_std_error=float(cross.std(ddof=1) / root_n),
    )
