"""Figure renderers: one function per figure id, dispatched by render().

All rendering is read-only over the inputs.  Fonts, sizes, and colors are
pinned through the style dict so identical inputs produce identical images.
Fig. 5(b) computes per-N least-squares fits of the witness gap over the
strong-coupling points (gamma > gamma_c) and echoes the coefficients to a
``<out-stem>.fit.json`` sidecar.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from . import io
from .specs import FigureSpec

__all__ = ["render"]


def _figure(style):
    plt.rcParams.update({"font.size": style["font_size"],
                         "svg.hashsalt": "vibronfig"})
    return plt.subplots(figsize=style["figsize"])


def _save(fig, out_path, style) -> Path:
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=style["dpi"], metadata=_strip_metadata(out_path))
    plt.close(fig)
    return out_path


def _strip_metadata(out_path: Path):
    # drop raster/vector timestamps so re-rendering is byte-stable
    if out_path.suffix == ".svg":
        return {"Date": None}
    return {"Software": "vibronfig"}


def _render_fig2(spec, out_path, style):
    data = io.read_spectrum(spec.inputs["spectrum"])
    fig, ax = _figure(style)
    for level in np.unique(data["level_index"]):
        sel = data["level_index"] == level
        order = np.argsort(data["gamma"][sel])
        ax.plot(data["gamma"][sel][order],
                data["energy_normalized"][sel][order],
                color="tab:blue", lw=0.6)
    ax.axvline(style["gamma_c"], color="k", ls=":", lw=1.0)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$(E - E_0)/N$")
    ax.set_title("Excitation spectrum fan")
    return _save(fig, out_path, style)


def _heatmap(spec, out_path, style, title):
    grid = io.read_grid(spec.inputs["grid"])
    fig, ax = _figure(style)
    vmax = float(np.max(np.abs(grid["values"]))) or 1.0
    mesh = ax.pcolormesh(grid["axis1"], grid["axis2"], grid["values"].T,
                         cmap=style["cmap"], vmin=-vmax, vmax=vmax,
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, label=r"$W$")
    if grid["kind"] == "planar":
        ax.set_xlabel(r"$X$")
        ax.set_ylabel(r"$P_X$")
        ax.set_aspect("equal")
    else:
        ax.set_xlabel(r"$\theta$")
        ax.set_ylabel(r"$\phi$")
    if grid["coarse"]:
        title += " (coarse grid)"
    ax.set_title(title)
    return _save(fig, out_path, style)


def _render_fig3(spec, out_path, style):
    return _heatmap(spec, out_path, style, "Wigner distribution (rotation protocol)")


def _render_fig4c(spec, out_path, style):
    return _heatmap(spec, out_path, style, "Wigner distribution (quench)")


def _render_fig7(spec, out_path, style):
    return _heatmap(spec, out_path, style, "Wigner negativity (bent state)")


def _witness_pair(spec):
    return (io.read_timeseries(spec.inputs["timeseries_low"]),
            io.read_timeseries(spec.inputs["timeseries_high"]))


def _render_fig4a(spec, out_path, style):
    low, high = _witness_pair(spec)
    fig, ax = _figure(style)
    for data, tag, color in ((low, "low", "tab:blue"),
                             (high, "high", "tab:red")):
        good = data["sentinel_flag"] < 0.5
        ax.plot(data["t"][good], data["xi2_opt"][good], color=color,
                lw=0.8, label=rf"$\xi^2_{{opt}}$ ({tag} $\gamma$)")
        ax.plot(data["t"], data["zeta2_opt"], color=color, lw=0.8,
                ls="--", label=rf"$\zeta^2_{{opt}}$ ({tag} $\gamma$)")
    ax.axhline(1.0, color="k", lw=0.8)
    ax.set_yscale("log")
    ax.set_xlabel(r"$t/t_0$")
    ax.set_ylabel("witness value")
    ax.legend(fontsize=8)
    ax.set_title("Squeezing and Fisher witnesses")
    return _save(fig, out_path, style)


def _render_fig4b(spec, out_path, style):
    low, high = _witness_pair(spec)
    fig, ax = _figure(style)
    for data, tag, color in ((low, "low", "tab:blue"),
                             (high, "high", "tab:red")):
        good = data["sentinel_flag"] < 0.5
        gap = data["xi2_opt"][good] - data["zeta2_opt"][good]
        ax.plot(data["t"][good], gap, color=color, lw=0.8,
                label=rf"{tag} $\gamma$")
    ax.set_xlabel(r"$t/t_0$")
    ax.set_ylabel(r"$\xi^2_{opt} - \zeta^2_{opt}$")
    ax.legend(fontsize=8)
    ax.set_title("Witness gap")
    return _save(fig, out_path, style)


def _sweep_by_n(data):
    return {int(n): np.flatnonzero(data["N"] == n)
            for n in np.unique(data["N"])}


def _render_fig5a(spec, out_path, style):
    data = io.read_sweep(spec.inputs["sweep"])
    fig, ax = _figure(style)
    for n, sel in _sweep_by_n(data).items():
        order = sel[np.argsort(data["gamma"][sel])]
        ax.plot(data["gamma"][order], data["max_gap"][order],
                marker="o", ms=3, lw=1.0, label=f"N = {n}")
    ax.axvline(style["gamma_c"], color="k", ls=":", lw=1.0)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$\max_t(\xi^2_{opt} - \zeta^2_{opt})$")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    ax.set_title("Witness gap across the transition")
    return _save(fig, out_path, style)


def _render_fig5b(spec, out_path, style):
    data = io.read_sweep(spec.inputs["sweep"])
    gamma_c = float(style["gamma_c"])
    fig, ax = _figure(style)
    fits = {}
    for n, sel in _sweep_by_n(data).items():
        order = sel[np.argsort(data["gamma"][sel])]
        g, gap = data["gamma"][order], data["max_gap"][order]
        line, = ax.plot(g, gap, marker="o", ms=3, lw=1.0, label=f"N = {n}")
        strong = g > gamma_c
        if np.sum(strong) >= 2:
            slope, intercept = np.polyfit(g[strong], gap[strong], 1)
            fits[str(n)] = {"slope": float(slope),
                            "intercept": float(intercept),
                            "points": int(np.sum(strong))}
            gg = np.linspace(gamma_c, float(np.max(g)), 50)
            ax.plot(gg, slope * gg + intercept, ls="--", lw=0.8,
                    color=line.get_color())
    ax.axvline(gamma_c, color="k", ls=":", lw=1.0)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$\max_t(\xi^2_{opt} - \zeta^2_{opt})$")
    ax.legend(fontsize=8, loc="upper left")
    ax.set_title("Strong-coupling linear fits")
    if fits:
        inset = ax.inset_axes([0.62, 0.12, 0.33, 0.3])
        ns = sorted(int(k) for k in fits)
        inset.plot(ns, [fits[str(n)]["slope"] for n in ns], marker="s", ms=3)
        inset.set_xlabel("N", fontsize=7)
        inset.set_ylabel("slope", fontsize=7)
        inset.tick_params(labelsize=7)
    out = _save(fig, out_path, style)
    sidecar = Path(out_path).with_suffix(".fit.json")
    with open(sidecar, "w") as f:
        json.dump({"gamma_c": gamma_c, "fits": fits}, f, indent=2,
                  sort_keys=True)
        f.write("\n")
    return out


_KIND_STYLE = {
    "below_separatrix": ("tab:blue", "-"),
    "above_separatrix": ("tab:green", "-"),
    "separatrix": ("tab:red", "--"),
}


def _render_fig6(spec, out_path, style):
    blocks = io.read_trajectories(spec.inputs["trajectories"])
    fig, ax = _figure(style)
    seen = set()
    for block in blocks:
        color, ls = _KIND_STYLE.get(block["kind"], ("0.5", "-"))
        label = block["kind"] if block["kind"] not in seen else None
        seen.add(block["kind"])
        ax.plot(block["phi"], block["z"], color=color, ls=ls, lw=0.9,
                label=label)
    ax.set_xlim(0.0, 2.0 * np.pi)
    ax.set_ylim(-1.0, 1.0)
    ax.set_xlabel(r"$\phi$")
    ax.set_ylabel(r"$z$")
    ax.legend(fontsize=8, loc="lower right")
    ax.set_title("Mean-field phase portrait")
    return _save(fig, out_path, style)


_RENDERERS = {
    "fig2": _render_fig2,
    "fig3": _render_fig3,
    "fig4a": _render_fig4a,
    "fig4b": _render_fig4b,
    "fig4c": _render_fig4c,
    "fig5a": _render_fig5a,
    "fig5b": _render_fig5b,
    "fig6": _render_fig6,
    "fig7": _render_fig7,
}


def render(spec: FigureSpec, out_path) -> Path:
    """Render one figure spec to ``out_path`` (suffix selects PNG/SVG)."""
    style = spec.resolved_style()
    return _RENDERERS[spec.figure_id](spec, out_path, style)
