"""Grid sweeps and one-dimensional optimization over transducer parameters.

Sweeps are defined on the dimensionless operating point (cooperativities,
extraction ratios, coupling phase, correlation coefficient, bath frequency
and temperature).  Every grid cell is an independent pure evaluation of
the channel pipeline, so results are deterministic and independent of
evaluation order.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .channel import capacity_lower_bound, channel_correlated
from .model import NoiseEnvironment, TransducerParams, cooperativity_em, cooperativity_om, extraction_ratios
from .scattering import cross_term

__all__ = [
    "AXIS_NAMES",
    "QUANTITIES",
    "OperatingPoint",
    "SweepAxis",
    "SweepSpec",
    "GridExtreme",
    "SweepResult",
    "CapacityRegion",
    "ZetaOptimum",
    "evaluate_quantity",
    "run_sweep",
    "positive_capacity_region",
    "optimize_zeta_e",
    "golden_section_max",
]

# Axis name -> OperatingPoint field.
_AXIS_FIELDS = {
    "c_om": "c_om",
    "c_em": "c_em",
    "zeta_o": "zeta_o",
    "zeta_e": "zeta_e",
    "theta": "theta",
    "chi": "chi",
    "t_k": "temperature_k",
}
AXIS_NAMES = tuple(_AXIS_FIELDS)
QUANTITIES = ("n_e", "eta", "q_lb", "cross_term")

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OperatingPoint:
    """One dimensionless operating point of the transducer plus its bath."""

    c_om: float
    c_em: float
    zeta_o: float
    zeta_e: float
    theta: float
    chi: float
    freq_hz: float = 10e9
    temperature_k: float = 1.0

    @classmethod
    def from_params(cls, params: TransducerParams,
                    env: NoiseEnvironment) -> "OperatingPoint":
        """Reduce a concrete parameter set to its dimensionless point.

        The bath frequency is taken from the electrical mode (the
        electrical and acoustic modes share a bath in this model).
        """
        zeta_o, zeta_e = extraction_ratios(params)
        return cls(
            c_om=cooperativity_om(params),
            c_em=cooperativity_em(params),
            zeta_o=zeta_o,
            zeta_e=zeta_e,
            theta=params.couplings.theta,
            chi=env.chi,
            freq_hz=params.freq_e_hz,
            temperature_k=env.temperature_k,
        )

    def to_params(self) -> tuple[TransducerParams, NoiseEnvironment]:
        params = TransducerParams.from_dimensionless(
            self.c_om, self.c_em, self.zeta_o, self.zeta_e, self.theta,
            freq_e_hz=self.freq_hz, freq_m_hz=self.freq_hz)
        return params, NoiseEnvironment(temperature_k=self.temperature_k, chi=self.chi)

    def replace(self, **overrides) -> "OperatingPoint":
        return dataclasses.replace(self, **overrides)


@dataclass(frozen=True)
class SweepAxis:
    """Linearly spaced axis over one operating-point field."""

    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.name not in _AXIS_FIELDS:
            raise ValueError(
                f"unknown axis '{self.name}'; expected one of {', '.join(AXIS_NAMES)}")
        if self.steps < 2:
            raise ValueError(f"axis '{self.name}' needs steps >= 2, got {self.steps}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError(f"axis '{self.name}' bounds must be finite")
        lo, hi = min(self.start, self.stop), max(self.start, self.stop)
        if self.name in ("zeta_o", "zeta_e") and (lo < 0.0 or hi > 1.0):
            raise ValueError(f"axis '{self.name}' must stay within [0, 1]")
        if self.name == "chi" and (lo < -1.0 or hi > 1.0):
            raise ValueError("axis 'chi' must stay within [-1, 1]")
        if self.name in ("c_om", "c_em") and lo < 0.0:
            raise ValueError(f"axis '{self.name}' must be nonnegative")
        if self.name == "t_k" and lo <= 0.0:
            raise ValueError("axis 't_k' must be strictly positive")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Sweep definition: fixed point, one or two axes, and a quantity.

    Fixed-point values of swept fields are ignored.  ``quantity`` is one of
    ``n_e``, ``eta``, ``q_lb``, ``cross_term``.
    """

    fixed: OperatingPoint
    axes: tuple[SweepAxis, ...]
    quantity: str

    def __post_init__(self):
        axes = tuple(self.axes)
        object.__setattr__(self, "axes", axes)
        if len(axes) not in (1, 2):
            raise ValueError(f"expected 1 or 2 axes, got {len(axes)}")
        names = [axis.name for axis in axes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate sweep axis: {names}")
        if self.quantity not in QUANTITIES:
            raise ValueError(
                f"unknown quantity '{self.quantity}'; expected one of {', '.join(QUANTITIES)}")


@dataclass(frozen=True)
class GridExtreme:
    """Value and location of a grid extremum."""

    value: float
    index: tuple[int, ...]
    coords: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Evaluated sweep: axis grids, dense value grid and extrema."""

    spec: SweepSpec
    axis_values: tuple[np.ndarray, ...]
    values: np.ndarray
    minimum: GridExtreme
    maximum: GridExtreme


def evaluate_quantity(point: OperatingPoint, quantity: str) -> float:
    """Evaluate one channel quantity at an operating point."""
    params, env = point.to_params()
    if quantity == "cross_term":
        return cross_term(params)
    ch = channel_correlated(params, env)
    if quantity == "eta":
        return ch.eta
    if quantity == "n_e":
        return ch.n_e
    if quantity == "q_lb":
        return capacity_lower_bound(ch.eta, ch.n_e)
    raise ValueError(f"unknown quantity '{quantity}'")


def _cell_point(fixed: OperatingPoint, axes, coords) -> OperatingPoint:
    overrides = {_AXIS_FIELDS[axis.name]: float(value)
                 for axis, value in zip(axes, coords)}
    return fixed.replace(**overrides)


def _extreme(values: np.ndarray, grids, pick) -> GridExtreme:
    flat_index = int(pick(values))
    index = np.unravel_index(flat_index, values.shape)
    coords = tuple(float(grid[i]) for grid, i in zip(grids, index))
    return GridExtreme(value=float(values[index]), index=tuple(int(i) for i in index),
                       coords=coords)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the channel pipeline on the full grid.

    Cells are visited in row-major order; output is a dense array of shape
    ``(axes[0].steps,)`` or ``(axes[0].steps, axes[1].steps)``.  Parameter
    validation failures are re-raised with the offending grid coordinates.
    """
    grids = [axis.values() for axis in spec.axes]
    shape = tuple(axis.steps for axis in spec.axes)
    values = np.empty(shape)
    for index in np.ndindex(shape):
        coords = [grids[d][i] for d, i in enumerate(index)]
        try:
            point = _cell_point(spec.fixed, spec.axes, coords)
            values[index] = evaluate_quantity(point, spec.quantity)
        except ValueError as err:
            location = ", ".join(f"{axis.name}={coord!r}"
                                 for axis, coord in zip(spec.axes, coords))
            raise ValueError(f"at grid cell ({location}): {err}") from err
    if not np.all(np.isfinite(values)):
        raise ValueError("sweep produced non-finite cells")
    return SweepResult(
        spec=spec,
        axis_values=tuple(grids),
        values=values,
        minimum=_extreme(values, grids, np.argmin),
        maximum=_extreme(values, grids, np.argmax),
    )


@dataclass(frozen=True)
class CapacityRegion:
    """Grid cells with positive capacity bound, and cells above the
    ``eta > 1/2`` threshold that bounds them."""

    positive: frozenset[tuple[int, int]]
    above_threshold: frozenset[tuple[int, int]]


def positive_capacity_region(spec: SweepSpec) -> CapacityRegion:
    """Identify the positive-capacity region of a 2-D cooperativity scan.

    Requires a two-axis spec over ``c_om`` and ``c_em`` with quantity
    ``q_lb``.  The positive set is always contained in the threshold set,
    since a positive bound needs ``eta > 1/2``.
    """
    if len(spec.axes) != 2:
        raise ValueError("positive_capacity_region requires a 2-D sweep")
    names = {axis.name for axis in spec.axes}
    if names != {"c_om", "c_em"}:
        raise ValueError(f"expected axes c_om and c_em, got {sorted(names)}")
    if spec.quantity != "q_lb":
        raise ValueError(f"expected quantity 'q_lb', got '{spec.quantity}'")

    grids = [axis.values() for axis in spec.axes]
    positive = set()
    above = set()
    for i, x in enumerate(grids[0]):
        for j, y in enumerate(grids[1]):
            point = _cell_point(spec.fixed, spec.axes, (x, y))
            params, env = point.to_params()
            ch = channel_correlated(params, env)
            if ch.eta > 0.5:
                above.add((i, j))
                if capacity_lower_bound(ch.eta, ch.n_e) > 0.0:
                    positive.add((i, j))
    return CapacityRegion(positive=frozenset(positive), above_threshold=frozenset(above))


def golden_section_max(f, a: float, b: float, tol: float = 1e-6) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal ``f`` on [a, b].

    Returns ``(x_star, f(x_star))`` with the bracket narrowed to ``tol``.
    """
    if b < a:
        a, b = b, a
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


_COARSE_STEPS = 1001
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class ZetaOptimum:
    """Result of maximizing the capacity bound over the electrical
    extraction ratio.  ``degenerate`` flags a bound that vanishes on the
    whole interval, in which case the transmissivity-maximizing
    ``zeta_e = 1`` is reported."""

    zeta_e: float
    q_lb: float
    degenerate: bool


def optimize_zeta_e(fixed: OperatingPoint) -> ZetaOptimum:
    """Maximize the capacity bound over ``zeta_e`` in [0, 1].

    A 1001-point coarse grid guards against multimodality; the best grid
    cell (ties resolved toward smaller ``zeta_e``) is then refined by
    golden-section search to an uncertainty below 1e-6.
    """
    def objective(zeta_e: float) -> float:
        return evaluate_quantity(fixed.replace(zeta_e=zeta_e), "q_lb")

    grid = np.linspace(0.0, 1.0, _COARSE_STEPS)
    coarse = np.array([objective(z) for z in grid])
    best = float(coarse.max())
    if best <= 0.0:
        return ZetaOptimum(zeta_e=1.0, q_lb=0.0, degenerate=True)
    pivot = int(np.flatnonzero(coarse >= best - _TIE_TOL)[0])
    lo = grid[max(pivot - 1, 0)]
    hi = grid[min(pivot + 1, _COARSE_STEPS - 1)]
    zeta_star, q_star = golden_section_max(objective, float(lo), float(hi))
    if coarse[pivot] > q_star:  # refinement can't do worse than the grid
        zeta_star, q_star = float(grid[pivot]), float(coarse[pivot])
    return ZetaOptimum(zeta_e=zeta_star, q_lb=q_star, degenerate=False)
