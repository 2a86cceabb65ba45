from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, Field

from app.config import settings


class _Strict(BaseModel):
    class Config:
        extra = "forbid"
        allow_inf_nan = False


# Topology
class TopologySchema(_Strict):
    adjacency: List[List[float]] = Field(..., description="Symmetric follower adjacency, zero diagonal")
    leader_adjacency: List[float] = Field(..., description="b_i > 0 iff follower i hears the leader")


# Gains
class GainsSchema(_Strict):
    k1: float
    l: float
    c: float
    tau: List[float]
    k2: Optional[float] = None
    adaptive: bool = True


# Leader signals
class SinusoidSchema(_Strict):
    type: Literal["sinusoid"]
    amplitude: float
    angular_frequency: float
    phase: float = 0.0


class ConstantSchema(_Strict):
    type: Literal["constant"]
    value: float


class DecayingSchema(_Strict):
    type: Literal["decaying"]
    constant: float
    transient_amplitude: float
    decay_rate: float = Field(..., ge=0)


class PolynomialSchema(_Strict):
    type: Literal["polynomial"]
    coefficients: List[float] = Field(..., min_length=1, max_length=2)


class TableSchema(_Strict):
    type: Literal["table"]
    times: List[float] = Field(..., min_length=2)
    values: List[float] = Field(..., min_length=2)
    strict: bool = False


LeaderSignalSchema = Annotated[
    Union[SinusoidSchema, ConstantSchema, DecayingSchema, PolynomialSchema, TableSchema],
    Field(discriminator="type"),
]


# Initial states
class InitialStatesSchema(_Strict):
    follower_x: List[float]
    leader_x: float = 0.0
    leader_v: float = 0.0
    follower_v: Optional[List[float]] = None
    z: Optional[List[float]] = None
    uhat0: Optional[List[float]] = None
    zv: Optional[List[float]] = None
    xhat0: Optional[List[float]] = None
    zbar: Optional[List[float]] = None
    d: Optional[List[float]] = None


# Integration
class SignPolicySchema(_Strict):
    boundary_layer: float = Field(0.0, ge=0)


class IntegrationSchema(_Strict):
    dt: float = Field(settings.DEFAULT_DT, gt=0)
    t_end: float = Field(..., gt=0)
    record_stride: int = Field(settings.DEFAULT_RECORD_STRIDE, ge=1)
    sign_policy: SignPolicySchema = Field(default_factory=SignPolicySchema)


# Outputs
class OutputsSchema(_Strict):
    csv: bool = True
    metrics: bool = True
    plots: List[str] = Field(default_factory=list)
    cross_check_horizon: Optional[float] = Field(None, gt=0)


# Scenario document
class ScenarioSchema(_Strict):
    topology: TopologySchema
    gains: GainsSchema
    leader_signal: LeaderSignalSchema
    mode: Literal["first_order_adaptive", "first_order_simplified", "first_order_direct", "second_order"]
    initial_states: InitialStatesSchema
    integration: IntegrationSchema
    outputs: OutputsSchema = Field(default_factory=OutputsSchema)
