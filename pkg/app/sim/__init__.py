from .config import InitialStates, Mode, OutputOptions, SimConfig, initial_state_vector, validate_config
from .integrator import integrate, step_rk4
from .metrics import compute_metrics, convergence_time
from .result import SimResult
from .runner import run
from .vector_field import ClosedLoop, assemble_vector_field

__all__ = [
    "ClosedLoop",
    "InitialStates",
    "Mode",
    "OutputOptions",
    "SimConfig",
    "SimResult",
    "assemble_vector_field",
    "compute_metrics",
    "convergence_time",
    "initial_state_vector",
    "integrate",
    "run",
    "step_rk4",
    "validate_config",
]
