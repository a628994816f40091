"""Forward kinematics and Monte Carlo workspace mapping for serial arms
described by Denavit-Hartenberg parameters."""

from .kinematics import (
    PRISMATIC,
    REVOLUTE,
    DHRow,
    JointArityError,
    JointLimitError,
    KinematicsError,
    RobotModel,
    ee_position,
    fk_batch,
    forward_kinematics,
    frame_chain,
    link_transform,
    reach_bound,
)
from .rng import SplitMix64, bulk_unit
from .robotfile import (
    Diagnostic,
    builtin_fixture,
    fixture_names,
    fixture_source,
    parse_robot,
    serialize_robot,
    validate,
)
from .workspace import (
    PointCloud,
    SampleSpec,
    VoxelGrid,
    WorkspaceSummary,
    generate_cloud,
    joint_samples,
    project,
    reachable,
    sample_config,
    state_for_sample,
    summarize,
    voxelize,
)

__version__ = "0.1.0"

__all__ = [
    "PRISMATIC",
    "REVOLUTE",
    "DHRow",
    "Diagnostic",
    "JointArityError",
    "JointLimitError",
    "KinematicsError",
    "PointCloud",
    "RobotModel",
    "SampleSpec",
    "SplitMix64",
    "VoxelGrid",
    "WorkspaceSummary",
    "builtin_fixture",
    "bulk_unit",
    "ee_position",
    "fixture_names",
    "fixture_source",
    "fk_batch",
    "forward_kinematics",
    "frame_chain",
    "generate_cloud",
    "joint_samples",
    "link_transform",
    "parse_robot",
    "project",
    "reach_bound",
    "reachable",
    "sample_config",
    "serialize_robot",
    "state_for_sample",
    "summarize",
    "validate",
    "voxelize",
]
