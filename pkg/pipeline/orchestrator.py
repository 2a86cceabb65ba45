from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union
import asyncio
import logging

from app.config import settings
from app.output.bundle import run_scenario
from app.output.storage import ResultBundle
from app.scenario import parse_scenario

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass
class ScenarioOutcome:
    """Result of one scenario in a batch."""
    scenario_id: str
    path: Path
    bundle: Optional[ResultBundle] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def run_scenario_file(path: PathLike, out_dir: PathLike, strict_gains: Optional[bool] = None) -> ResultBundle:
    """Parse and run one scenario file. Module level so worker processes can unpickle it."""
    cfg = parse_scenario(path, strict_gains=strict_gains)
    return run_scenario(cfg, out_dir)


class BatchOrchestrator:
    """
    Runs several scenarios, each into its own bundle directory under out_root.

    max_workers <= 0 runs them one after another in this process; otherwise
    at most max_workers run at once in a process pool.
    """

    def __init__(self, max_workers: Optional[int] = None, strict_gains: Optional[bool] = None):
        self.max_workers = settings.MAS_SIM_THREADS if max_workers is None else max_workers
        self.strict_gains = strict_gains
        self.semaphore: Optional[asyncio.Semaphore] = None

    async def run_batch(self, paths: Sequence[PathLike], out_root: PathLike) -> List[ScenarioOutcome]:
        paths = [Path(p) for p in paths]
        out_root = Path(out_root)
        logger.info(f"Running batch of {len(paths)} scenario(s), max_workers={self.max_workers}")

        if self.max_workers <= 0:
            outcomes = [await self._run_one(None, path, out_root) for path in paths]
        else:
            self.semaphore = asyncio.Semaphore(self.max_workers)
            with ProcessPoolExecutor(max_workers=self.max_workers) as pool:
                tasks = [self._run_one(pool, path, out_root) for path in paths]
                outcomes = await asyncio.gather(*tasks)

        failed = [o.scenario_id for o in outcomes if not o.ok]
        if failed:
            logger.warning(f"Batch finished with {len(failed)} failure(s): {', '.join(failed)}")
        else:
            logger.info("Batch finished successfully")
        return list(outcomes)

    async def _run_one(
        self,
        pool: Optional[ProcessPoolExecutor],
        path: Path,
        out_root: Path,
    ) -> ScenarioOutcome:
        outcome = ScenarioOutcome(scenario_id=path.stem, path=path)
        out_dir = out_root / path.stem
        try:
            if pool is None:
                outcome.bundle = run_scenario_file(path, out_dir, self.strict_gains)
            else:
                async with self.semaphore:
                    loop = asyncio.get_running_loop()
                    outcome.bundle = await loop.run_in_executor(
                        pool, run_scenario_file, path, out_dir, self.strict_gains
                    )
        except Exception as e:
            logger.error(f"Scenario '{path.stem}' failed: {e}", exc_info=True)
            outcome.error = f"{type(e).__name__}: {e}"
        return outcome
