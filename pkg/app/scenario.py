"""
Scenario files: JSON documents that describe one SimConfig.

    parse_scenario(path) -> SimConfig
    emit_scenario(cfg, path) writes the canonical document back out.
"""
from pathlib import Path
from typing import Any, Dict, Optional, Union
import json
import logging

from pydantic import ValidationError

from app.config import settings
from app.control.gains import Gains, check_gains
from app.errors import ConfigInvalid, IoError, ParseError, SchemaError, SimulationError
from app.graph.topology import build_topology
from app.observers.view import SignPolicy
from app.schemas import ScenarioSchema
from app.signals.leader import Constant, DecayingToConstant, LeaderSignal, Polynomial, SampledTable, Sinusoid
from app.sim.config import InitialStates, Mode, OutputOptions, SimConfig, validate_config
from app.utils import as_float_tuple, canonical_json, config_hash

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _leader_signal(doc) -> LeaderSignal:
    if doc.type == "sinusoid":
        return Sinusoid(amplitude=doc.amplitude, angular_frequency=doc.angular_frequency, phase=doc.phase)
    if doc.type == "constant":
        return Constant(level=doc.value)
    if doc.type == "decaying":
        return DecayingToConstant(
            constant=doc.constant,
            transient_amplitude=doc.transient_amplitude,
            decay_rate=doc.decay_rate,
        )
    if doc.type == "polynomial":
        return Polynomial(coefficients=as_float_tuple(doc.coefficients))
    return SampledTable(times=as_float_tuple(doc.times), values=as_float_tuple(doc.values), strict=doc.strict)


def _optional(values) -> Optional[tuple]:
    return None if values is None else as_float_tuple(values)


def _build_config(doc: ScenarioSchema, scenario_id: str, strict_gains: bool) -> SimConfig:
    mode = Mode(doc.mode)
    gains = Gains(
        k1=doc.gains.k1,
        l=doc.gains.l,
        c=doc.gains.c,
        tau=as_float_tuple(doc.gains.tau),
        k2=doc.gains.k2,
        adaptive=doc.gains.adaptive,
    )

    violations = check_gains(gains, mode.second_order)
    for violation in violations:
        logger.warning(f"Scenario '{scenario_id}': {violation}")
    if violations and strict_gains:
        raise ConfigInvalid(f"gain conditions violated: {'; '.join(violations)}")

    init = doc.initial_states
    cfg = SimConfig(
        scenario_id=scenario_id,
        topology=build_topology(doc.topology.adjacency, doc.topology.leader_adjacency),
        gains=gains,
        leader_signal=_leader_signal(doc.leader_signal),
        mode=mode,
        initial=InitialStates(
            follower_x=as_float_tuple(init.follower_x),
            leader_x=init.leader_x,
            leader_v=init.leader_v,
            follower_v=_optional(init.follower_v),
            z=_optional(init.z),
            uhat0=_optional(init.uhat0),
            zv=_optional(init.zv),
            xhat0=_optional(init.xhat0),
            zbar=_optional(init.zbar),
            d=_optional(init.d),
        ),
        dt=doc.integration.dt,
        t_end=doc.integration.t_end,
        record_stride=doc.integration.record_stride,
        sign_policy=SignPolicy(boundary_layer=doc.integration.sign_policy.boundary_layer),
        outputs=OutputOptions(
            csv=doc.outputs.csv,
            metrics=doc.outputs.metrics,
            plots=tuple(doc.outputs.plots),
            cross_check_horizon=doc.outputs.cross_check_horizon,
        ),
    )
    validate_config(cfg)
    return cfg


def load_scenario(data: Dict[str, Any], scenario_id: str, strict_gains: Optional[bool] = None) -> SimConfig:
    """
    Validate an already decoded scenario document.

    Raises:
        SchemaError, ConfigInvalid
    """
    strict = settings.STRICT_GAIN_CHECK if strict_gains is None else strict_gains
    try:
        doc = ScenarioSchema.model_validate(data)
    except ValidationError as e:
        raise SchemaError(f"Scenario '{scenario_id}' does not match the schema: {e}", errors=e.errors()) from e

    try:
        return _build_config(doc, scenario_id, strict)
    except ConfigInvalid:
        raise
    except (SimulationError, ValueError) as e:
        raise ConfigInvalid(f"Scenario '{scenario_id}' is invalid: {e}") from e


def parse_scenario(path: PathLike, strict_gains: Optional[bool] = None) -> SimConfig:
    """
    Read a scenario file. The scenario id is the file stem.

    Raises:
        IoError, ParseError, SchemaError, ConfigInvalid
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(f"Cannot read scenario {path}: {e}") from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed scenario {path}: {e.msg}", line=e.lineno, column=e.colno) from e

    cfg = load_scenario(data, path.stem, strict_gains)
    logger.info(f"Loaded scenario '{cfg.scenario_id}' ({cfg.mode.value}, {cfg.n} followers)")
    return cfg


def _leader_signal_document(s: LeaderSignal) -> Dict[str, Any]:
    if isinstance(s, Sinusoid):
        return {"type": "sinusoid", "amplitude": s.amplitude,
                "angular_frequency": s.angular_frequency, "phase": s.phase}
    if isinstance(s, Constant):
        return {"type": "constant", "value": s.level}
    if isinstance(s, DecayingToConstant):
        return {"type": "decaying", "constant": s.constant,
                "transient_amplitude": s.transient_amplitude, "decay_rate": s.decay_rate}
    if isinstance(s, Polynomial):
        return {"type": "polynomial", "coefficients": list(s.coefficients)}
    if isinstance(s, SampledTable):
        return {"type": "table", "times": list(s.times), "values": list(s.values), "strict": s.strict}
    raise TypeError(f"Unsupported leader signal {type(s).__name__}")


def scenario_document(cfg: SimConfig) -> Dict[str, Any]:
    """The JSON-ready document of cfg; the scenario id is not part of it."""
    initial = {"follower_x": list(cfg.initial.follower_x),
               "leader_x": cfg.initial.leader_x,
               "leader_v": cfg.initial.leader_v}
    for name, values in cfg.initial.vectors().items():
        initial[name] = list(values)

    return {
        "topology": {
            "adjacency": cfg.topology.adjacency.tolist(),
            "leader_adjacency": cfg.topology.leader_adjacency.tolist(),
        },
        "gains": {
            "k1": cfg.gains.k1,
            "l": cfg.gains.l,
            "c": cfg.gains.c,
            "tau": list(cfg.gains.tau),
            "k2": cfg.gains.k2,
            "adaptive": cfg.gains.adaptive,
        },
        "leader_signal": _leader_signal_document(cfg.leader_signal),
        "mode": cfg.mode.value,
        "initial_states": initial,
        "integration": {
            "dt": cfg.dt,
            "t_end": cfg.t_end,
            "record_stride": cfg.record_stride,
            "sign_policy": {"boundary_layer": cfg.sign_policy.boundary_layer},
        },
        "outputs": {
            "csv": cfg.outputs.csv,
            "metrics": cfg.outputs.metrics,
            "plots": list(cfg.outputs.plots),
            "cross_check_horizon": cfg.outputs.cross_check_horizon,
        },
    }


def scenario_hash(cfg: SimConfig) -> str:
    return config_hash(scenario_document(cfg))


def emit_scenario(cfg: SimConfig, path: PathLike) -> Path:
    """
    Write cfg as a canonical scenario file.

    Raises:
        IoError
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(canonical_json(scenario_document(cfg)), encoding="utf-8")
    except OSError as e:
        raise IoError(f"Cannot write scenario {path}: {e}") from e
    return path
