"""Monte Carlo workspace mapping: point clouds, voxel volumes, projections.

Joint configurations are drawn uniformly within each movable joint's limits
from a single splitmix64 stream, so a cloud is fully determined by
(model, n, seed) and is byte-reproducible across platforms. Sample k
consumes draws (k-1)*m+1 .. k*m of the stream, where m is the movable
joint count; because the generator state advances additively, the state
for any sample index can be reconstructed in O(1), which keeps partitioned
or resumed runs exactly equal to a sequential one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import RobotModel, fk_batch
from .rng import SplitMix64, bulk_unit


@dataclass(frozen=True)
class SampleSpec:
    """Sampling request: how many configurations, from which seed."""

    n: int
    seed: int = 42

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"sample count must be >= 1, got {self.n}")


@dataclass(frozen=True, eq=False)
class PointCloud:
    """End-effector positions in sample order, with their provenance."""

    points: np.ndarray  # (n, 3) float64, meters
    robot: str
    seed: int
    n: int

    def __post_init__(self):
        if self.points.shape != (self.n, 3):
            raise ValueError(f"points shape {self.points.shape} != ({self.n}, 3)")


@dataclass(frozen=True)
class VoxelGrid:
    """Occupancy set on a regular grid anchored at the origin.

    A point p belongs to voxel floor(p / resolution), componentwise, so
    grids from different runs at equal resolution are directly comparable.
    """

    resolution: float
    occupied: frozenset  # of (i, j, k) integer triples

    @property
    def occupied_count(self) -> int:
        return len(self.occupied)

    @property
    def volume_estimate(self) -> float:
        return len(self.occupied) * self.resolution ** 3


@dataclass(frozen=True)
class WorkspaceSummary:
    """Aggregate statistics of one sampled cloud."""

    robot: str
    n: int
    seed: int
    bbox_min: tuple
    bbox_max: tuple
    max_reach: float
    voxel_resolution: float
    occupied_count: int
    volume_estimate: float


def sample_config(model: RobotModel, state: SplitMix64) -> np.ndarray:
    """Draw one configuration, one value per movable row in index order.

    q = min + (max - min) * u with u uniform on [0, 1), so q lands in
    [min, max) except in the degenerate min == max case. Advances state
    by exactly the movable joint count.
    """
    values = []
    for row in model.rows:
        if row.fixed is not None:
            continue
        lo, hi = row.limits
        values.append(lo + (hi - lo) * state.next_unit())
    return np.array(values)


def joint_samples(model: RobotModel, spec: SampleSpec) -> np.ndarray:
    """(n, m) matrix of sampled configurations, row k = sample k.

    Equals n successive sample_config calls on SplitMix64(spec.seed),
    computed vectorized.
    """
    movable = model.movable_rows
    m = len(movable)
    if m == 0:
        raise ValueError(f"model {model.name!r} has no movable joints to sample")
    u = bulk_unit(spec.seed, spec.n * m).reshape(spec.n, m)
    Q = np.empty((spec.n, m))
    for j, row in enumerate(movable):
        lo, hi = row.limits
        Q[:, j] = lo + (hi - lo) * u[:, j]
    return Q


def generate_cloud(model: RobotModel, spec: SampleSpec) -> PointCloud:
    """Sample the joint space and evaluate FK; points in sample order."""
    Q = joint_samples(model, spec)
    T = fk_batch(model, Q)
    points = T[:, :3, 3]
    points.flags.writeable = False
    return PointCloud(points=points, robot=model.name, seed=spec.seed, n=spec.n)


def state_for_sample(seed: int, k: int, movable_count: int) -> SplitMix64:
    """Generator state just before sample k (1-based) is drawn.

    Lets a worker produce samples k, k+1, ... identical to the sequential
    stream without replaying the first k-1 samples.
    """
    rng = SplitMix64(seed)
    rng.advance((k - 1) * movable_count)
    return rng


def voxelize(cloud: PointCloud, resolution: float) -> VoxelGrid:
    """Quantize the cloud onto the origin-anchored grid."""
    if resolution <= 0:
        raise ValueError(f"voxel resolution must be > 0, got {resolution}")
    idx = np.floor(cloud.points / resolution).astype(np.int64)
    occupied = frozenset(map(tuple, idx.tolist()))
    return VoxelGrid(resolution=resolution, occupied=occupied)


def reachable(grid: VoxelGrid, point) -> bool:
    """Whether the point's voxel was hit by the sampled cloud."""
    p = np.asarray(point, dtype=np.float64)
    key = tuple(int(i) for i in np.floor(p / grid.resolution))
    return key in grid.occupied


def project(cloud: PointCloud, plane: str) -> np.ndarray:
    """(n, 2) view of the cloud: xy drops z, xz drops y, yz drops x."""
    columns = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}
    try:
        i, j = columns[plane]
    except KeyError:
        raise ValueError(f"plane must be one of xy, xz, yz; got {plane!r}") from None
    return cloud.points[:, (i, j)]


def summarize(cloud: PointCloud, resolution: float) -> WorkspaceSummary:
    """Bounding box, max reach, and voxel-occupancy volume of a cloud."""
    if cloud.points.shape[0] == 0:
        raise ValueError("cannot summarize an empty cloud")
    grid = voxelize(cloud, resolution)
    reach = float(np.linalg.norm(cloud.points, axis=1).max())
    return WorkspaceSummary(
        robot=cloud.robot,
        n=cloud.n,
        seed=cloud.seed,
        bbox_min=tuple(float(v) for v in cloud.points.min(axis=0)),
        bbox_max=tuple(float(v) for v in cloud.points.max(axis=0)),
        max_reach=reach,
        voxel_resolution=resolution,
        occupied_count=grid.occupied_count,
        volume_estimate=grid.volume_estimate,
    )
