from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import csv
import logging

import numpy as np

from app.errors import IoError
from app.sim.result import SimResult
from app.utils import canonical_json, format_float

logger = logging.getLogger(__name__)

TRAJECTORY_FILE = "trajectory.csv"
METRICS_FILE = "metrics.json"
SCENARIO_FILE = "scenario.json"


@dataclass
class ResultBundle:
    """Files written for one scenario run."""
    directory: Path
    scenario_id: str
    csv_path: Optional[Path] = None
    metrics_path: Optional[Path] = None
    scenario_path: Optional[Path] = None
    plot_paths: List[Path] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)
    result: Optional[SimResult] = field(default=None, repr=False)


class BundleStorage:
    """Writes result bundles into one directory per scenario."""

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise IoError(f"Cannot create bundle directory {self.directory}: {e}") from e

    def _write_text(self, name: str, text: str) -> Path:
        path = self.directory / name
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            raise IoError(f"Cannot write {path}: {e}") from e
        return path

    def save_trajectory(self, result: SimResult) -> Path:
        """CSV of every recorded channel, time first, full round-trip precision."""
        columns = result.columns()
        names = list(columns)
        data = np.column_stack([columns[name] for name in names])
        path = self.directory / TRAJECTORY_FILE
        try:
            with open(path, "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(names)
                for row in data:
                    writer.writerow([format_float(v) for v in row])
        except OSError as e:
            raise IoError(f"Cannot write {path}: {e}") from e
        logger.debug(f"Wrote {len(data)} rows to {path}")
        return path

    def save_metrics(self, metrics: Dict[str, Any]) -> Path:
        return self._write_text(METRICS_FILE, canonical_json(metrics))

    def save_scenario(self, document: Dict[str, Any]) -> Path:
        return self._write_text(SCENARIO_FILE, canonical_json(document))


def read_trajectory(bundle_dir: Union[str, Path]) -> Dict[str, np.ndarray]:
    """
    Load a bundle's CSV as column name -> values.

    Raises:
        IoError
    """
    path = Path(bundle_dir) / TRAJECTORY_FILE
    try:
        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader)
            rows = [[float(v) for v in row] for row in reader]
    except (OSError, StopIteration) as e:
        raise IoError(f"Cannot read trajectory {path}: {e}") from e
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, k] for k, name in enumerate(header)}
