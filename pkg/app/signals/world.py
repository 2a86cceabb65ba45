"""
Closed-loop world states and their flattened layout.

Layout of the flattened state vector (stable, relied on by `verify`):

    first order:  [x0, x1..n, z1..n, xhat0_1..n, d1..n]
    second order: [x0, v0, x1..n, v1..n, uhat0_1..n, zv1..n, xhat0_1..n, zbar1..n, d1..n]

In the first-order direct-observer mode the z block holds uhat0 itself.
"""
from dataclasses import dataclass, field
from typing import Dict

import numpy as np


@dataclass(frozen=True)
class StateLayout:
    n: int
    second_order: bool
    slices: Dict[str, slice] = field(default_factory=dict)

    @classmethod
    def for_order(cls, n: int, second_order: bool) -> "StateLayout":
        if second_order:
            names = [("x0", 1), ("v0", 1), ("x", n), ("v", n), ("uhat0", n),
                     ("zv", n), ("xhat0", n), ("zbar", n), ("d", n)]
        else:
            names = [("x0", 1), ("x", n), ("z", n), ("xhat0", n), ("d", n)]
        slices = {}
        start = 0
        for name, size in names:
            slices[name] = slice(start, start + size)
            start += size
        return cls(n=n, second_order=second_order, slices=slices)

    @property
    def dimension(self) -> int:
        return max(s.stop for s in self.slices.values())

    def __getitem__(self, name: str) -> slice:
        return self.slices[name]


@dataclass
class FirstOrderWorld:
    t: float
    x0: float
    x: np.ndarray
    z: np.ndarray
    d: np.ndarray
    xhat0: np.ndarray

    @property
    def n(self) -> int:
        return len(self.x)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([[self.x0], self.x, self.z, self.xhat0, self.d]).astype(float)

    @classmethod
    def from_vector(cls, y: np.ndarray, n: int, t: float = 0.0) -> "FirstOrderWorld":
        layout = StateLayout.for_order(n, second_order=False)
        return cls(
            t=t,
            x0=float(y[0]),
            x=np.array(y[layout["x"]]),
            z=np.array(y[layout["z"]]),
            xhat0=np.array(y[layout["xhat0"]]),
            d=np.array(y[layout["d"]]),
        )


@dataclass
class SecondOrderWorld:
    t: float
    x0: float
    v0: float
    x: np.ndarray
    v: np.ndarray
    uhat0: np.ndarray
    d: np.ndarray
    zv: np.ndarray
    xhat0: np.ndarray
    zbar: np.ndarray

    @property
    def n(self) -> int:
        return len(self.x)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([
            [self.x0, self.v0], self.x, self.v, self.uhat0,
            self.zv, self.xhat0, self.zbar, self.d,
        ]).astype(float)

    @classmethod
    def from_vector(cls, y: np.ndarray, n: int, t: float = 0.0) -> "SecondOrderWorld":
        layout = StateLayout.for_order(n, second_order=True)
        return cls(
            t=t,
            x0=float(y[0]),
            v0=float(y[1]),
            x=np.array(y[layout["x"]]),
            v=np.array(y[layout["v"]]),
            uhat0=np.array(y[layout["uhat0"]]),
            zv=np.array(y[layout["zv"]]),
            xhat0=np.array(y[layout["xhat0"]]),
            zbar=np.array(y[layout["zbar"]]),
            d=np.array(y[layout["d"]]),
        )


def split_state(y: np.ndarray, layout: StateLayout) -> Dict[str, np.ndarray]:
    return {name: y[s] for name, s in layout.slices.items()}
