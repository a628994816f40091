"""Denavit-Hartenberg link transforms and serial-chain forward kinematics.

All lengths are meters, all angles radians. A chain is an ordered list of
links, each described by the four D-H parameters (a, alpha, d, theta); the
joint variable adds to theta for revolute joints and to d for prismatic ones.
Homogeneous transforms are plain 4x4 float64 numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

REVOLUTE = "revolute"
PRISMATIC = "prismatic"

#: Valid joint kinds for DHRow.kind
JOINT_KINDS = (REVOLUTE, PRISMATIC)


class KinematicsError(ValueError):
    """A joint configuration cannot be evaluated against a model."""


class JointArityError(KinematicsError):
    """Configuration length does not match the model's movable joint count."""


class JointLimitError(KinematicsError):
    """A joint value lies outside its row's limits (values are never clamped)."""

    def __init__(self, index: int, value: float, bound: float, which: str):
        self.index = index
        self.value = value
        self.bound = bound
        self.which = which  # "min" or "max"
        super().__init__(
            f"joint {index}: value {value!r} violates {which} limit {bound!r}"
        )


@dataclass(frozen=True)
class DHRow:
    """One link of a D-H chain.

    a and d are meters, alpha and theta_offset radians. limits bound the
    joint variable (radians for revolute rows, meters for prismatic). A row
    with `fixed` set is not a degree of freedom: its joint variable is the
    constant `fixed` value.
    """

    index: int
    kind: str
    a: float
    alpha: float
    d: float
    theta_offset: float = 0.0
    limits: tuple[float, float] = (-math.pi, math.pi)
    fixed: float | None = None

    def __post_init__(self):
        if self.kind not in JOINT_KINDS:
            raise ValueError(f"unknown joint kind {self.kind!r}")
        if self.index < 1:
            raise ValueError(f"link index must be >= 1, got {self.index}")
        for name in ("a", "alpha", "d", "theta_offset"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        lo, hi = self.limits
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("limits must be finite")
        if lo > hi:
            raise ValueError(f"limits inverted: min {lo!r} > max {hi!r}")
        if self.fixed is not None and not lo <= self.fixed <= hi:
            raise ValueError(f"fixed value {self.fixed!r} outside limits ({lo!r}, {hi!r})")

    @property
    def movable(self) -> bool:
        return self.fixed is None


@dataclass(frozen=True)
class RobotModel:
    """An ordered D-H chain, normalized to meters/radians.

    source_units records the unit the description was written in; row values
    are already converted. Chains with zero degrees of freedom are
    constructible (useful for degenerate tests) but rejected by
    robotfile.validate, which demands at least one movable joint.
    """

    name: str
    rows: tuple[DHRow, ...]
    source_units: str = "m"

    def __post_init__(self):
        if not self.rows:
            raise ValueError("model needs at least one row")
        indices = [row.index for row in self.rows]
        if indices != list(range(1, len(self.rows) + 1)):
            raise ValueError(f"row indices must be contiguous 1..n, got {indices}")

    @property
    def movable_rows(self) -> tuple[DHRow, ...]:
        return tuple(row for row in self.rows if row.movable)

    @property
    def movable_count(self) -> int:
        return sum(1 for row in self.rows if row.movable)


def link_transform(row: DHRow, q: float) -> np.ndarray:
    """4x4 transform of one link for joint value q.

    Equals RotZ(theta) @ TransZ(d) @ TransX(a) @ RotX(alpha) with
    theta = theta_offset + q for revolute rows and d = row.d + q for
    prismatic rows. Callers pass the fixed value for fixed rows.
    """
    q = float(q)
    if not math.isfinite(q):
        raise KinematicsError(f"joint value must be finite, got {q!r}")
    if row.kind == REVOLUTE:
        theta = row.theta_offset + q
        d = row.d
    else:
        theta = row.theta_offset
        d = row.d + q
    ct, st = math.cos(theta), math.sin(theta)
    ca, sa = math.cos(row.alpha), math.sin(row.alpha)
    return np.array(
        [
            [ct, -st * ca, st * sa, row.a * ct],
            [st, ct * ca, -ct * sa, row.a * st],
            [0.0, sa, ca, d],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def compose(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Product of two homogeneous transforms (lhs applied first in the chain)."""
    return lhs @ rhs


def _resolve_config(model: RobotModel, config) -> list[float]:
    """Validate a movable-joint configuration, return one value per row."""
    values = [float(v) for v in np.asarray(config, dtype=np.float64).ravel()]
    if len(values) != model.movable_count:
        raise JointArityError(
            f"model {model.name!r} has {model.movable_count} movable joints, "
            f"got {len(values)} values"
        )
    per_row = []
    it = iter(values)
    for row in model.rows:
        if row.fixed is not None:
            per_row.append(row.fixed)
            continue
        q = next(it)
        if not math.isfinite(q):
            raise KinematicsError(f"joint {row.index}: value must be finite, got {q!r}")
        lo, hi = row.limits
        if q < lo:
            raise JointLimitError(row.index, q, lo, "min")
        if q > hi:
            raise JointLimitError(row.index, q, hi, "max")
        per_row.append(q)
    return per_row


def frame_chain(model: RobotModel, config) -> list[np.ndarray]:
    """All accumulated frames: element 0 is identity, element k is A1..Ak."""
    per_row = _resolve_config(model, config)
    frames = [np.eye(4)]
    T = frames[0]
    for row, q in zip(model.rows, per_row):
        T = T @ link_transform(row, q)
        frames.append(T)
    return frames


def forward_kinematics(model: RobotModel, config) -> np.ndarray:
    """Base-to-end-effector transform for one configuration.

    config holds one value per movable row, in row order; fixed rows use
    their stored constant. Values outside a row's limits raise
    JointLimitError rather than being clamped.
    """
    return frame_chain(model, config)[-1]


def ee_position(model: RobotModel, config) -> np.ndarray:
    """End-effector position (x, y, z): fourth column of the full transform."""
    return forward_kinematics(model, config)[:3, 3]


def fk_batch(model: RobotModel, configs: np.ndarray) -> np.ndarray:
    """Forward kinematics for a stack of configurations, shape (n, movable).

    Returns an (n, 4, 4) array. Values are NOT limit-checked: this is the
    hot path for workspace sampling, where configurations are within limits
    by construction. Agrees with forward_kinematics row for row.
    """
    Q = np.asarray(configs, dtype=np.float64)
    if Q.ndim != 2 or Q.shape[1] != model.movable_count:
        raise JointArityError(
            f"expected shape (n, {model.movable_count}), got {Q.shape}"
        )
    n = Q.shape[0]
    T = np.tile(np.eye(4), (n, 1, 1))
    col = 0
    for row in model.rows:
        if row.fixed is None:
            q = Q[:, col]
            col += 1
        else:
            q = np.full(n, row.fixed)
        if row.kind == REVOLUTE:
            theta = row.theta_offset + q
            d = np.full(n, row.d)
        else:
            theta = np.full(n, row.theta_offset)
            d = row.d + q
        ct, st = np.cos(theta), np.sin(theta)
        ca, sa = math.cos(row.alpha), math.sin(row.alpha)
        A = np.zeros((n, 4, 4))
        A[:, 0, 0] = ct
        A[:, 0, 1] = -st * ca
        A[:, 0, 2] = st * sa
        A[:, 0, 3] = row.a * ct
        A[:, 1, 0] = st
        A[:, 1, 1] = ct * ca
        A[:, 1, 2] = -ct * sa
        A[:, 1, 3] = row.a * st
        A[:, 2, 1] = sa
        A[:, 2, 2] = ca
        A[:, 2, 3] = d
        A[:, 3, 3] = 1.0
        T = T @ A
    return T


def reach_bound(model: RobotModel) -> float:
    """Triangle-inequality bound on end-effector distance from the base.

    Sum over rows of |a| plus the largest |d + q| the row can produce
    (|d| for revolute rows, worst-case extension for prismatic ones).
    """
    total = 0.0
    for row in model.rows:
        total += abs(row.a)
        if row.kind == REVOLUTE:
            total += abs(row.d)
        elif row.fixed is not None:
            total += abs(row.d + row.fixed)
        else:
            lo, hi = row.limits
            total += max(abs(row.d + lo), abs(row.d + hi))
    return total
