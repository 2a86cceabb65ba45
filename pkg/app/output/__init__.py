from .bundle import run_scenario
from .plots import emit_plots, get_panel_registry
from .storage import BundleStorage, ResultBundle, read_trajectory

__all__ = [
    "BundleStorage",
    "ResultBundle",
    "emit_plots",
    "get_panel_registry",
    "read_trajectory",
    "run_scenario",
]
