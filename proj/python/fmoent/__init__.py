"""Entanglement and fidelity dynamics of FMO excitonic qubits."""

from ._core import (
    __version__,
    UNIT_CONVERSION,
    amplitude,
    amplitude_ode_oracle,
    damping,
    exciton_table,
    f_ghz_split,
    f_ghz_teleport,
    f_w_split,
    f_w_teleport,
    fidelity,
    global_entanglement,
    hamiltonian,
    meyer_wallach_closed,
    meyer_wallach_direct,
    meyer_wallach_numeric,
    normalized_negativity,
    population_difference,
    run_scan,
    w_state,
    w_state_exciton_rho,
    w_state_reservoir_rho,
    x_state_global,
    x_state_rho,
)

__all__ = [name for name in dir() if not name.startswith("_")]
