"""Forced Burgers laboratory: entropy solver, cell problems, resonance."""

from ._core import (
    CellSolution,
    ConfigError,
    FrameDiagnostics,
    Trajectory,
    TorusField,
    TorusGrid,
    critical_momentum,
    decay_exponent,
    dft_magnitudes,
    effective_hamiltonian,
    evolve,
    make_field,
    resonance_window,
    run_config,
    solve_cell_problem,
)

__all__ = [
    "CellSolution",
    "ConfigError",
    "FrameDiagnostics",
    "Trajectory",
    "TorusField",
    "TorusGrid",
    "critical_momentum",
    "decay_exponent",
    "dft_magnitudes",
    "effective_hamiltonian",
    "evolve",
    "make_field",
    "resonance_window",
    "run_config",
    "solve_cell_problem",
]
