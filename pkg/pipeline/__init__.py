# Batch execution of scenario files
from .orchestrator import BatchOrchestrator, ScenarioOutcome, run_scenario_file

__all__ = ["BatchOrchestrator", "ScenarioOutcome", "run_scenario_file"]
