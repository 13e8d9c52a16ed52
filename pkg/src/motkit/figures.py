"""Reference figure datasets and their rendered plots.

Four datasets summarize the channel's behavior at the standard operating
point (cooperativities 4, extraction ratios 0.9, 10 GHz modes in a 1 K
bath):

  fig1a  environment occupation vs coupling phase, one series per
         correlation strength chi in {0.7, 0.8, 0.9};
  fig1b  capacity-bound map over the two cooperativities at theta = 5*pi/4;
  fig1c  the same map at the noise-minimizing phase theta = 3*pi/2;
  fig1d  capacity bound vs electrical extraction ratio for cooperativity
         pairs (4,4), (5,5), (6,6), showing the interior optimum.

Each dataset is written as CSV (floats serialized with full round-trip
precision) and, optionally, rendered to PNG next to it.  The whole path is
a pure function of the built-in defaults, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweep import OperatingPoint, SweepAxis, SweepSpec, optimize_zeta_e, run_sweep

__all__ = [
    "BASE_POINT",
    "CHI_SERIES",
    "COOPERATIVITY_PAIRS",
    "phase_sweep_dataset",
    "capacity_map_dataset",
    "extraction_sweep_dataset",
    "write_figure_datasets",
]

BASE_POINT = OperatingPoint(
    c_om=4.0, c_em=4.0, zeta_o=0.9, zeta_e=0.9,
    theta=3.0 * math.pi / 2.0, chi=0.9,
    freq_hz=10e9, temperature_k=1.0,
)
CHI_SERIES = (0.7, 0.8, 0.9)
COOPERATIVITY_PAIRS = ((4.0, 4.0), (5.0, 5.0), (6.0, 6.0))
PHASE_STEPS = 361
MAP_RANGE = (0.0, 8.0)
MAP_STEPS = 81
EXTRACTION_STEPS = 501
_MAP_PHASES = {"fig1b": 5.0 * math.pi / 4.0, "fig1c": 3.0 * math.pi / 2.0}


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def phase_sweep_dataset() -> tuple[np.ndarray, dict[float, np.ndarray]]:
    """theta grid on [0, 2*pi] and one n_e series per chi value."""
    series = {}
    theta_values = None
    for chi in CHI_SERIES:
        spec = SweepSpec(
            fixed=BASE_POINT.replace(chi=chi),
            axes=(SweepAxis("theta", 0.0, 2.0 * math.pi, PHASE_STEPS),),
            quantity="n_e",
        )
        result = run_sweep(spec)
        theta_values = result.axis_values[0]
        series[chi] = result.values
    return theta_values, series


def capacity_map_dataset(theta: float) -> dict:
    """q_lb and eta over the (c_om, c_em) plane at fixed phase."""
    axes = (SweepAxis("c_om", *MAP_RANGE, MAP_STEPS),
            SweepAxis("c_em", *MAP_RANGE, MAP_STEPS))
    fixed = BASE_POINT.replace(theta=theta)
    q_lb = run_sweep(SweepSpec(fixed=fixed, axes=axes, quantity="q_lb"))
    eta = run_sweep(SweepSpec(fixed=fixed, axes=axes, quantity="eta"))
    return {
        "c_om": q_lb.axis_values[0],
        "c_em": q_lb.axis_values[1],
        "q_lb": q_lb.values,
        "eta": eta.values,
        "max": q_lb.maximum,
        "theta": theta,
    }


def extraction_sweep_dataset() -> tuple[np.ndarray, dict, dict]:
    """zeta_e grid, one q_lb series per cooperativity pair, and the optima."""
    zeta_values = np.linspace(0.0, 1.0, EXTRACTION_STEPS)
    series = {}
    optima = {}
    for c_om, c_em in COOPERATIVITY_PAIRS:
        fixed = BASE_POINT.replace(c_om=c_om, c_em=c_em)
        spec = SweepSpec(
            fixed=fixed,
            axes=(SweepAxis("zeta_e", 0.0, 1.0, EXTRACTION_STEPS),),
            quantity="q_lb",
        )
        series[(c_om, c_em)] = run_sweep(spec).values
        optima[(c_om, c_em)] = optimize_zeta_e(fixed)
    return zeta_values, series, optima


def _render_phase_sweep(path: Path, theta_values, series) -> None:
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    for chi, values in series.items():
        ax.plot(theta_values / math.pi, values, label=f"chi = {chi}")
    ax.axhline(0.5, color="0.6", lw=0.8, ls=":")
    ax.set_xlabel(r"coupling phase $\theta/\pi$")
    ax.set_ylabel(r"environment occupation $n_e$")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def _render_capacity_map(path: Path, data: dict) -> None:
    fig, ax = plt.subplots(figsize=(4.4, 3.6))
    mesh = ax.pcolormesh(data["c_om"], data["c_em"], data["q_lb"].T,
                         shading="nearest", cmap="viridis")
    ax.contour(data["c_om"], data["c_em"], data["eta"].T, levels=[0.5],
               colors="k", linestyles="dashed", linewidths=1.0)
    fig.colorbar(mesh, ax=ax, label="capacity lower bound (qubits/use)")
    ax.set_xlabel(r"$C_{om}$")
    ax.set_ylabel(r"$C_{em}$")
    ax.set_title(rf"$\theta = {data['theta'] / math.pi:.2f}\,\pi$", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def _render_extraction_sweep(path: Path, zeta_values, series, optima) -> None:
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    for pair, values in series.items():
        c_om, c_em = pair
        ax.plot(zeta_values, values, label=f"C = ({c_om:g}, {c_em:g})")
        best = optima[pair]
        if not best.degenerate:
            ax.plot(best.zeta_e, best.q_lb, "k.", ms=5)
    ax.set_xlabel(r"electrical extraction ratio $\zeta_e$")
    ax.set_ylabel("capacity lower bound (qubits/use)")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def write_figure_datasets(outdir: Path | str, render: bool = True) -> list[Path]:
    """Write the four datasets (plus map sidecars) and optional PNG renders.

    Returns the list of files written.  Output is deterministic: two runs
    produce byte-identical files.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    theta_values, phase_series = phase_sweep_dataset()
    path = outdir / "fig1a.csv"
    _write_csv(
        path,
        ["theta"] + [f"n_e_chi_{chi:g}" for chi in CHI_SERIES],
        [theta_values] + [phase_series[chi] for chi in CHI_SERIES],
    )
    written.append(path)
    if render:
        png = outdir / "fig1a.png"
        _render_phase_sweep(png, theta_values, phase_series)
        written.append(png)

    for name, theta in _MAP_PHASES.items():
        data = capacity_map_dataset(theta)
        path = outdir / f"{name}.csv"
        xx, yy = np.meshgrid(data["c_om"], data["c_em"], indexing="ij")
        _write_csv(path, ["c_om", "c_em", "q_lb"],
                   [xx.ravel(), yy.ravel(), data["q_lb"].ravel()])
        written.append(path)
        meta = outdir / f"{name}.meta.json"
        _write_json(meta, {
            "theta": data["theta"],
            "chi": BASE_POINT.chi,
            "zeta_o": BASE_POINT.zeta_o,
            "zeta_e": BASE_POINT.zeta_e,
            "freq_hz": BASE_POINT.freq_hz,
            "temperature_k": BASE_POINT.temperature_k,
            "axes": {"c_om": list(MAP_RANGE) + [MAP_STEPS],
                     "c_em": list(MAP_RANGE) + [MAP_STEPS]},
            "quantity": "q_lb",
            "max_q_lb": data["max"].value,
            "max_at": {"c_om": data["max"].coords[0], "c_em": data["max"].coords[1]},
            "positive_cells": int(np.count_nonzero(data["q_lb"] > 0.0)),
        })
        written.append(meta)
        if render:
            png = outdir / f"{name}.png"
            _render_capacity_map(png, data)
            written.append(png)

    zeta_values, extraction_series, optima = extraction_sweep_dataset()
    path = outdir / "fig1d.csv"
    _write_csv(
        path,
        ["zeta_e"] + [f"q_lb_C_{c_om:g}_{c_em:g}" for c_om, c_em in COOPERATIVITY_PAIRS],
        [zeta_values] + [extraction_series[p] for p in COOPERATIVITY_PAIRS],
    )
    written.append(path)
    meta = outdir / "fig1d.meta.json"
    _write_json(meta, {
        "series": [
            {"c_om": c_om, "c_em": c_em,
             "zeta_e_star": optima[(c_om, c_em)].zeta_e,
             "q_lb_star": optima[(c_om, c_em)].q_lb,
             "degenerate": optima[(c_om, c_em)].degenerate}
            for c_om, c_em in COOPERATIVITY_PAIRS
        ],
        "theta": BASE_POINT.theta,
        "chi": BASE_POINT.chi,
        "zeta_o": BASE_POINT.zeta_o,
    })
    written.append(meta)
    if render:
        png = outdir / "fig1d.png"
        _render_extraction_sweep(png, zeta_values, extraction_series, optima)
        written.append(png)

    return written
