"""
Acceptance suite: runs every registered criterion against a directory of
bundled scenario files and writes a machine-readable verdict.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import asyncio
import logging

from app.acceptance.executor import CriterionExecutor, CriterionOutcome
from app.config import settings
from app.output.bundle import run_scenario
from app.output.storage import ResultBundle
from app.scenario import parse_scenario
from app.sim.config import SimConfig
from app.sim.result import SimResult
from app.utils import canonical_json
from pipeline.orchestrator import BatchOrchestrator

logger = logging.getLogger(__name__)

REPORT_FILE = "acceptance.json"
NEGATIVE_PREFIX = "negative_"


class AcceptanceContext:
    """Lazily parsed scenarios and cached runs shared by all criteria."""

    def __init__(self, suite_dir: Union[str, Path], work_dir: Union[str, Path]):
        self.suite_dir = Path(suite_dir)
        self.work_dir = Path(work_dir)
        self._configs: Dict[str, SimConfig] = {}
        self._bundles: Dict[str, ResultBundle] = {}

    def scenario_ids(self) -> List[str]:
        return sorted(p.stem for p in self.suite_dir.glob("*.json"))

    def positive_ids(self) -> List[str]:
        return [s for s in self.scenario_ids() if not s.startswith(NEGATIVE_PREFIX)]

    def scenario_path(self, scenario_id: str) -> Path:
        return self.suite_dir / f"{scenario_id}.json"

    def config(self, scenario_id: str) -> SimConfig:
        if scenario_id not in self._configs:
            # gain conditions are judged by their own criterion
            self._configs[scenario_id] = parse_scenario(self.scenario_path(scenario_id), strict_gains=False)
        return self._configs[scenario_id]

    def bundle_dir(self, scenario_id: str) -> Path:
        return self.work_dir / scenario_id

    def bundle(self, scenario_id: str) -> ResultBundle:
        if scenario_id not in self._bundles:
            self._bundles[scenario_id] = run_scenario(self.config(scenario_id), self.bundle_dir(scenario_id))
        return self._bundles[scenario_id]

    def result(self, scenario_id: str) -> SimResult:
        return self.bundle(scenario_id).result

    def prefetch(self, max_workers: Optional[int] = None) -> None:
        """Run every scenario up front, in parallel when MAS_SIM_THREADS allows."""
        orchestrator = BatchOrchestrator(max_workers=max_workers, strict_gains=False)
        paths = [self.scenario_path(s) for s in self.scenario_ids()]
        outcomes = asyncio.run(orchestrator.run_batch(paths, self.work_dir))
        for outcome in outcomes:
            if outcome.ok:
                self._bundles[outcome.scenario_id] = outcome.bundle


@dataclass
class AcceptanceReport:
    suite_dir: str
    outcomes: List[CriterionOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.outcomes) and all(o.passed for o in self.outcomes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite_dir": self.suite_dir,
            "passed": self.passed,
            "criteria": [o.to_dict() for o in self.outcomes],
        }


def run_acceptance(
    suite_dir: Union[str, Path],
    work_dir: Optional[Union[str, Path]] = None,
    only: Optional[List[str]] = None,
    executor: Optional[CriterionExecutor] = None,
) -> AcceptanceReport:
    """
    Execute the acceptance criteria over the scenarios in suite_dir.

    Failures never raise; they are entries of the report.
    """
    suite_dir = Path(suite_dir)
    work_dir = Path(work_dir) if work_dir is not None else Path(settings.OUTPUT_DIR) / "acceptance"
    executor = executor or CriterionExecutor()
    ctx = AcceptanceContext(suite_dir, work_dir)

    names = only or executor.registry.list_criteria()
    logger.info(f"Running {len(names)} acceptance criteria over {suite_dir}")
    if not only:
        ctx.prefetch()

    report = AcceptanceReport(suite_dir=str(suite_dir))
    for name in names:
        report.outcomes.append(executor.execute(name, ctx))

    try:
        work_dir.mkdir(parents=True, exist_ok=True)
        (work_dir / REPORT_FILE).write_text(canonical_json(report.to_dict()), encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot write acceptance report: {e}", exc_info=True)

    passed = sum(o.passed for o in report.outcomes)
    logger.info(f"Acceptance: {passed}/{len(report.outcomes)} criteria passed")
    return report
