"""Python bindings for the radeuler solver."""

from ._core import (
    ConfigError,
    DomainError,
    GasParams,
    InputError,
    IoError,
    RunConfig,
    RunResult,
    equilibrium_constants,
    rho_from_P_s,
    run,
    theta_from_P_s,
    write_outputs,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "GasParams",
    "InputError",
    "IoError",
    "RunConfig",
    "RunResult",
    "equilibrium_constants",
    "rho_from_P_s",
    "run",
    "theta_from_P_s",
    "write_outputs",
]
