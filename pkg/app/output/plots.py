"""
SVG line charts of a result bundle.

Charts are computed from the bundle's CSV alone, so re-plotting an old
bundle gives the same files as plotting right after the run.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import math
import re

import numpy as np

from app.config import settings
from app.errors import IoError, UnknownChannel
from app.output.storage import read_trajectory

logger = logging.getLogger(__name__)

PALETTE = ("#000000", "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


class SVG:
    """Accumulates SVG markup."""

    def __init__(self):
        self.svg = ""

    def header(self, width: int, height: int):
        self.svg += (
            '<?xml version="1.0" standalone="no"?>\n'
            f'<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
            'xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>\n'
        )

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str = "#000000", extra: str = ""):
        self.svg += f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{stroke}" {extra}/>\n'

    def polyline(self, points: Sequence[Tuple[float, float]], stroke: str, width: float = 1.2):
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        self.svg += f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{width}"/>\n'

    def text(self, x: float, y: float, string: str, extra: str = ""):
        self.svg += f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="11" {extra}>{string}</text>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


@dataclass
class PanelDefinition:
    """A chart of one leader series against its follower counterparts."""
    name: str
    title: str
    series: Tuple[str, ...]


class PanelRegistry:
    """Named chart panels."""

    def __init__(self):
        self._panels: Dict[str, PanelDefinition] = {}

    def register(self, name: str, title: str, series: Tuple[str, ...]):
        self._panels[name] = PanelDefinition(name=name, title=title, series=series)

    def get_panel(self, name: str) -> Optional[PanelDefinition]:
        return self._panels.get(_normalize(name))

    def list_panels(self) -> List[str]:
        return list(self._panels)


def _normalize(name: str) -> str:
    return name.strip().lower().replace(" ", "_").replace("-", "_")


_registry = PanelRegistry()
_registry.register("position_tracking", "Position tracking", ("x0", "x"))
_registry.register("input_estimation", "Estimates of the leader input", ("u0", "uhat0"))
_registry.register("position_estimation", "Estimates of the leader position", ("x0", "xhat0"))
_registry.register("control_inputs", "Follower inputs against the leader input", ("u0", "u"))
_registry.register("adaptive_gains", "Adaptive gains", ("d",))
_registry.register("velocity_tracking", "Velocity tracking", ("v0", "v"))
_registry.register("leader_velocity_estimation", "Estimates of the leader velocity", ("v0", "vhat0"))
_registry.register("self_velocity_estimation", "Estimates of own velocity", ("v", "vhat"))


def get_panel_registry() -> PanelRegistry:
    return _registry


LEADER_SERIES = ("x0", "v0", "u0")


def series_columns(series: str, available: Sequence[str]) -> List[str]:
    """CSV columns of one series: the column itself for leader series, prefix1..N otherwise."""
    if series in LEADER_SERIES:
        return [series] if series in available else []
    pattern = re.compile(rf"^{re.escape(series)}([1-9]\d*)$")
    matched = [(int(m.group(1)), col) for col in available if (m := pattern.match(col))]
    return [col for _, col in sorted(matched)]


def resolve_panel(name: str, available: Sequence[str]) -> Tuple[str, List[str]]:
    """
    Title and columns of a panel, or of a raw column name.

    Raises:
        UnknownChannel
    """
    panel = _registry.get_panel(name)
    if panel is None:
        if name in available and name != "t":
            return name, [name]
        raise UnknownChannel(f"Unknown panel or channel '{name}'")

    columns = []
    for series in panel.series:
        found = series_columns(series, available)
        if not found:
            raise UnknownChannel(f"Panel '{panel.name}' needs '{series}', which this bundle does not record")
        columns.extend(found)
    return panel.title, columns


def decimate(values: np.ndarray, max_points: int) -> np.ndarray:
    """Indices of a uniform subsample of at most max_points, keeping the last sample."""
    count = len(values)
    if count <= max_points:
        return np.arange(count)
    stride = math.ceil(count / max_points)
    idx = np.arange(0, count, stride)
    if idx[-1] != count - 1:
        idx = np.append(idx[:-1], count - 1)
    return idx


def render_chart(
    title: str,
    times: np.ndarray,
    lines: Dict[str, np.ndarray],
    width: int = 720,
    height: int = 400,
    max_points: int = settings.SVG_MAX_POINTS,
) -> str:
    """One SVG line chart with axes, tick labels and a legend."""
    left, right, top, bottom = 60, 130, 30, 40
    plot_w = width - left - right
    plot_h = height - top - bottom

    t_min, t_max = float(times[0]), float(times[-1])
    stacked = np.concatenate(list(lines.values()))
    y_min, y_max = float(stacked.min()), float(stacked.max())
    if y_max - y_min < 1e-12:
        y_min, y_max = y_min - 1.0, y_max + 1.0
    if t_max - t_min < 1e-12:
        t_max = t_min + 1.0

    def px(t: float) -> float:
        return left + (t - t_min) / (t_max - t_min) * plot_w

    def py(y: float) -> float:
        return top + (y_max - y) / (y_max - y_min) * plot_h

    svg = SVG()
    svg.header(width, height)
    svg.text(left, top - 10, title, 'font-weight="bold"')

    # axes
    svg.line(left, top + plot_h, left + plot_w, top + plot_h)
    svg.line(left, top, left, top + plot_h)
    for k in range(5):
        t = t_min + k * (t_max - t_min) / 4
        y = y_min + k * (y_max - y_min) / 4
        svg.line(px(t), top + plot_h, px(t), top + plot_h + 4)
        svg.text(px(t) - 10, top + plot_h + 16, f"{t:.3g}")
        svg.line(left - 4, py(y), left, py(y))
        svg.text(4, py(y) + 4, f"{y:.3g}")
    svg.text(left + plot_w / 2, height - 6, "t [s]")

    idx = decimate(times, max_points)
    for k, (label, values) in enumerate(lines.items()):
        colour = PALETTE[k % len(PALETTE)]
        svg.polyline([(px(times[i]), py(values[i])) for i in idx], colour)
        legend_y = top + 14 * k + 6
        svg.line(left + plot_w + 10, legend_y, left + plot_w + 30, legend_y, colour, 'stroke-width="2"')
        svg.text(left + plot_w + 35, legend_y + 4, label)

    return svg.get_svg()


def emit_plots(bundle_dir: Union[str, Path], panels: Sequence[str]) -> List[Path]:
    """
    Write one SVG per requested panel into the bundle directory.

    Every name is resolved before anything is written.

    Raises:
        UnknownChannel, IoError
    """
    if not panels:
        return []
    bundle_dir = Path(bundle_dir)
    columns = read_trajectory(bundle_dir)
    available = list(columns)
    resolved = [(name, *resolve_panel(name, available)) for name in panels]

    paths = []
    for name, title, cols in resolved:
        svg = render_chart(title, columns["t"], {col: columns[col] for col in cols})
        path = bundle_dir / f"{_normalize(name)}.svg"
        try:
            path.write_text(svg, encoding="utf-8")
        except OSError as e:
            raise IoError(f"Cannot write {path}: {e}") from e
        paths.append(path)
    logger.info(f"Wrote {len(paths)} chart(s) to {bundle_dir}")
    return paths
