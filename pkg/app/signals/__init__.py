from .leader import (
    Constant,
    DecayingToConstant,
    LeaderSignal,
    Polynomial,
    SampledTable,
    Sinusoid,
    leader_input,
    leader_input_rate,
)
from .plant import first_order_plant_rate, second_order_plant_rate
from .world import FirstOrderWorld, SecondOrderWorld, StateLayout, split_state

__all__ = [
    "Constant",
    "DecayingToConstant",
    "FirstOrderWorld",
    "LeaderSignal",
    "Polynomial",
    "SampledTable",
    "SecondOrderWorld",
    "Sinusoid",
    "StateLayout",
    "first_order_plant_rate",
    "leader_input",
    "leader_input_rate",
    "second_order_plant_rate",
    "split_state",
]
