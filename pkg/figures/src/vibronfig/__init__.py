"""Figure rendering for the vibron-simulator CSV outputs.

Reads the simulator's CSV schemas (spectrum scans, quench time series,
witness-gap sweeps, mean-field trajectories, Wigner grids) and renders
deterministic publication-style PNG/SVG figures; fit coefficients used in
plots are echoed to sidecar JSON files.
"""

__version__ = "0.1.0"
