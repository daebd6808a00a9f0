"""Bump functions, partitions of unity and smooth extension."""

from .bumps import BumpSpec, bump, smooth_step, transition, transition_down
from .cover import ClosedSet, CoverageError, CoverElement, LocalSmoothData
from .fd import RichardsonReport, central_difference, richardson, seam_points, smoothness_reports
from .partition import Member, PartitionCertificate, PartitionOfUnity, partition_of_unity, sweep_unit
from .tietze import OverlapMismatch, agreement_error, check_overlaps, extend_beyond, tietze_extend

__all__ = [
    "BumpSpec",
    "ClosedSet",
    "CoverElement",
    "CoverageError",
    "LocalSmoothData",
    "Member",
    "OverlapMismatch",
    "PartitionCertificate",
    "PartitionOfUnity",
    "RichardsonReport",
    "agreement_error",
    "bump",
    "central_difference",
    "check_overlaps",
    "extend_beyond",
    "partition_of_unity",
    "richardson",
    "seam_points",
    "smooth_step",
    "smoothness_reports",
    "sweep_unit",
    "tietze_extend",
    "transition",
    "transition_down",
]
