"""Figure specifications: identifiers, required inputs, style defaults."""

from __future__ import annotations

from dataclasses import dataclass, field

FIGURE_IDS = ("fig2", "fig3", "fig4a", "fig4b", "fig4c",
              "fig5a", "fig5b", "fig6", "fig7")

#: input roles each figure consumes, keyed by figure id; every role names a
#: CSV conforming to one of the simulator's schemas (see io.py)
REQUIRED_INPUTS: dict[str, tuple[str, ...]] = {
    "fig2": ("spectrum",),
    "fig3": ("grid",),
    "fig4a": ("timeseries_low", "timeseries_high"),
    "fig4b": ("timeseries_low", "timeseries_high"),
    "fig4c": ("grid",),
    "fig5a": ("sweep",),
    "fig5b": ("sweep",),
    "fig6": ("trajectories",),
    "fig7": ("grid",),
}

#: default style knobs; anything not overridden stays fixed so identical
#: inputs render identical images
DEFAULT_STYLE: dict[str, object] = {
    "dpi": 150,
    "figsize": (6.0, 4.5),
    "font_size": 10,
    "cmap": "RdBu_r",
    "gamma_c": 0.2,
}


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    inputs: dict[str, str] = field(default_factory=dict)
    style: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(
                f"unknown figure id {self.figure_id!r}; expected one of {FIGURE_IDS}")
        missing = [r for r in REQUIRED_INPUTS[self.figure_id]
                   if r not in self.inputs]
        if missing:
            raise ValueError(
                f"{self.figure_id} is missing input roles: {missing}")

    def resolved_style(self) -> dict[str, object]:
        merged = dict(DEFAULT_STYLE)
        merged.update(self.style)
        return merged
