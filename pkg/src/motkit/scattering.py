"""Input-output scattering of the three-mode, five-port transducer network.

The three intracavity modes (optical, electrical, acoustic) see five
traveling ports: the optical and electrical coupling and intrinsic-loss
ports plus the acoustic bath port.  The linear Langevin dynamics

    da/dt = A a + B a_in,        a_out = B^T a - a_in

is solved in the frequency domain, giving the 5x5 scattering matrix

    S[omega] = B^T (-i omega I - A)^{-1} B - I.

Because every loss channel is represented as a port, S[omega] is unitary
for all real omega.  At omega = 0 the elements that feed the optical
coupling port from the noisy ports have simple closed forms in the
dimensionless cooperativities and extraction ratios; both routes (closed
form and numerical solve) are provided so each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .model import TransducerParams, cooperativity_em, cooperativity_om, extraction_ratios

__all__ = [
    "Port",
    "ScatteringMatrix",
    "SingularDynamicsError",
    "build_dynamics",
    "build_input_coupling",
    "scattering_matrix",
    "ClosedFormElements",
    "closed_form_elements",
    "cross_term",
    "transmissivity",
    "s14_element",
    "s15_element",
    "cross_term_value",
]

# Intracavity mode order used in the dynamics matrix.
_OPTICAL, _ELECTRICAL, _MECHANICAL = 0, 1, 2


class Port(IntEnum):
    """Traveling-port order, identical for inputs and outputs."""

    OPTICAL_COUPLING = 0
    OPTICAL_INTRINSIC = 1
    ELECTRICAL_COUPLING = 2
    ELECTRICAL_INTRINSIC = 3
    MECHANICAL = 4


class SingularDynamicsError(ValueError):
    """The frequency-domain system could not be solved."""


def build_dynamics(params: TransducerParams) -> np.ndarray:
    """3x3 complex dynamics matrix over modes (optical, electrical, acoustic).

    Diagonal entries are -kappa/2; the off-diagonal blocks carry the two
    beam-splitter couplings, with the electro-acoustic phase entering as
    ``g_em`` below the diagonal and its conjugate above.
    """
    r, c = params.rates, params.couplings
    g_em = c.g_em
    return np.array([
        [-r.kappa_o / 2.0, 0.0, -1j * c.g_om],
        [0.0, -r.kappa_e / 2.0, -1j * g_em.conjugate()],
        [-1j * c.g_om, -1j * g_em, -r.kappa_m / 2.0],
    ])


def build_input_coupling(params: TransducerParams) -> np.ndarray:
    """3x5 real matrix of square-rooted rates mapping ports onto modes."""
    r = params.rates
    b = np.zeros((3, 5))
    b[_OPTICAL, Port.OPTICAL_COUPLING] = np.sqrt(r.kappa_o_c)
    b[_OPTICAL, Port.OPTICAL_INTRINSIC] = np.sqrt(r.kappa_o_i)
    b[_ELECTRICAL, Port.ELECTRICAL_COUPLING] = np.sqrt(r.kappa_e_c)
    b[_ELECTRICAL, Port.ELECTRICAL_INTRINSIC] = np.sqrt(r.kappa_e_i)
    b[_MECHANICAL, Port.MECHANICAL] = np.sqrt(r.kappa_m)
    return b


@dataclass(frozen=True, eq=False)
class ScatteringMatrix:
    """5x5 complex scattering matrix evaluated at one frequency."""

    omega: float
    entries: np.ndarray

    def __getitem__(self, index):
        return self.entries[index]


def scattering_matrix(params: TransducerParams, omega: float = 0.0) -> ScatteringMatrix:
    """Solve the network response at frequency ``omega`` (same units as rates).

    The linear system ``(-i omega I - A) X = B`` is solved column by column
    (LU under the hood) rather than through an explicit inverse.  The system
    is nonsingular for any valid parameter set, since the dynamics matrix
    has strictly negative real parts on its spectrum.
    """
    a = build_dynamics(params)
    b = build_input_coupling(params)
    m = -1j * omega * np.eye(3) - a
    try:
        x = np.linalg.solve(m, b.astype(complex))
    except np.linalg.LinAlgError as err:
        rates = params.rates
        degenerate = [name for name, total in (
            ("optical", rates.kappa_o),
            ("electrical", rates.kappa_e),
            ("mechanical", rates.kappa_m),
        ) if total == 0.0]
        detail = f" (zero total decay rate on: {', '.join(degenerate)})" if degenerate else ""
        raise SingularDynamicsError(
            f"singular system at omega={omega}{detail}") from err
    entries = b.T @ x - np.eye(5)
    return ScatteringMatrix(omega=float(omega), entries=entries)


# --- Closed forms at omega = 0 ----------------------------------------------
# The dimensionless-argument functions broadcast over numpy arrays.


def transmissivity(c_om, c_em, zeta_o, zeta_e):
    """Microwave-to-optical power transmissivity at zero frequency.

    ``4 C_om C_em zeta_o zeta_e / (1 + C_om + C_em)^2``; always < 1.
    """
    denom = 1.0 + c_om + c_em
    return 4.0 * c_om * c_em * zeta_o * zeta_e / (denom * denom)


def s14_element(c_om, c_em, zeta_o, zeta_e, theta):
    """Zero-frequency amplitude from the electrical intrinsic port to the
    optical coupling port; carries the coupling phase."""
    denom = 1.0 + c_om + c_em
    return -2.0 * np.exp(1j * np.asarray(theta)) * np.sqrt(
        c_em * c_om * (1.0 - zeta_e) * zeta_o) / denom


def s15_element(c_om, c_em, zeta_o):
    """Zero-frequency amplitude from the acoustic bath port to the optical
    coupling port; phase-independent."""
    denom = 1.0 + c_om + c_em
    return -2j * np.sqrt(c_om * zeta_o) / denom


def cross_term_value(c_om, c_em, zeta_o, zeta_e, theta):
    """Interference weight ``2 Re(S14* S15)`` of the two noisy-port routes.

    Equals ``8 sqrt(C_em (1 - zeta_e)) C_om zeta_o sin(theta) /
    (1 + C_om + C_em)^2``; its sign is the sign of ``sin(theta)``.
    """
    denom = 1.0 + c_om + c_em
    return (8.0 * np.sqrt(c_em * (1.0 - zeta_e)) * c_om * zeta_o
            * np.sin(theta) / (denom * denom))


@dataclass(frozen=True)
class ClosedFormElements:
    """Zero-frequency noisy-port scattering amplitudes and transmissivity."""

    s14: complex
    s15: complex
    eta: float


def closed_form_elements(params: TransducerParams) -> ClosedFormElements:
    """Evaluate the closed forms for S14, S15 and eta at omega = 0."""
    c_om = cooperativity_om(params)
    c_em = cooperativity_em(params)
    zeta_o, zeta_e = extraction_ratios(params)
    theta = params.couplings.theta
    return ClosedFormElements(
        s14=complex(s14_element(c_om, c_em, zeta_o, zeta_e, theta)),
        s15=complex(s15_element(c_om, c_em, zeta_o)),
        eta=float(transmissivity(c_om, c_em, zeta_o, zeta_e)),
    )


def cross_term(params: TransducerParams) -> float:
    """Closed-form ``S14* S15 + S15* S14`` at omega = 0 (real)."""
    c_om = cooperativity_om(params)
    c_em = cooperativity_em(params)
    zeta_o, zeta_e = extraction_ratios(params)
    return float(cross_term_value(c_om, c_em, zeta_o, zeta_e, params.couplings.theta))
