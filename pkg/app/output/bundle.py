from pathlib import Path
from typing import Union
import logging

from app.scenario import scenario_document, scenario_hash
from app.sim.config import SimConfig
from app.sim.metrics import compute_metrics
from app.sim.runner import run
from app.output.plots import emit_plots
from app.output.storage import BundleStorage, ResultBundle
from app.verify.cross_check import cross_check

logger = logging.getLogger(__name__)


def run_scenario(cfg: SimConfig, out_dir: Union[str, Path]) -> ResultBundle:
    """
    Run cfg and write its bundle (scenario copy, CSV, metrics, charts) into
    out_dir. Reruns overwrite byte-identically.

    Raises:
        ConfigInvalid, NonFiniteState, IoError, UnknownChannel
    """
    storage = BundleStorage(out_dir)
    result = run(cfg)
    result.metadata["config_hash"] = scenario_hash(cfg)

    bundle = ResultBundle(directory=storage.directory, scenario_id=cfg.scenario_id, result=result)
    bundle.scenario_path = storage.save_scenario(scenario_document(cfg))

    if cfg.outputs.csv:
        bundle.csv_path = storage.save_trajectory(result)

    bundle.metrics = compute_metrics(result)
    if cfg.outputs.cross_check_horizon is not None:
        report = cross_check(cfg, cfg.outputs.cross_check_horizon)
        bundle.metrics["cross_check"] = report.to_dict()
    if cfg.outputs.metrics:
        bundle.metrics_path = storage.save_metrics(bundle.metrics)

    if cfg.outputs.plots:
        if bundle.csv_path is None:
            logger.warning(f"Scenario '{cfg.scenario_id}' requests charts but writes no CSV; skipping charts")
        else:
            bundle.plot_paths = emit_plots(storage.directory, cfg.outputs.plots)

    logger.info(f"Bundle for '{cfg.scenario_id}' written to {storage.directory}")
    return bundle
