"""Analytical communication accounting for the distributed solve.

Nothing is transmitted; these are exact bit counts over a solve trace: the
per-round source/goal broadcast, candidate-path uploads (segment encoding),
collision-pair reports, and the final reservation-table broadcast, converted
to seconds at a configurable data rate. The default rate reads "10 MBps" as
10 megabytes per second, i.e. 8e7 bits per second.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .codec import BITS_PER_SYMBOL, ceil_log2, path_bits

DEFAULT_DATA_RATE = 8e7  # bits per second


@dataclass(frozen=True)
class CommConfig:
    data_rate: float = DEFAULT_DATA_RATE

    def __post_init__(self):
        if self.data_rate <= 0:
            raise ValueError("data rate must be positive")


@dataclass(frozen=True)
class IterationComm:
    """Bits communicated during one solve round."""

    source_goal_bits: int
    path_bits: int
    ig_bits: int

    @property
    def total_bits(self) -> int:
        return self.source_goal_bits + self.path_bits + self.ig_bits


@dataclass
class CommLedger:
    """Per-round bit entries plus the final reservation-table broadcast.

    The source/goal broadcast is tracked separately because the latency
    formula can be read with or without it; both totals are reportable.
    """

    iterations: list[IterationComm] = field(default_factory=list)
    rt_bits: int = 0

    def total_bits(self, include_source_goal: bool = True) -> int:
        bits = self.rt_bits
        for it in self.iterations:
            bits += it.path_bits + it.ig_bits
            if include_source_goal:
                bits += it.source_goal_bits
        return bits


def source_goal_bits(n_agents: int, map_side: int) -> int:
    """Bits to broadcast source and goal coordinates for ``n_agents``."""
    if n_agents < 0:
        raise ValueError("agent count must be nonnegative")
    if n_agents == 0:
        return 0
    return 2 * n_agents * ceil_log2(map_side)


def iteration_path_bits(segment_lists: Iterable, n_agents: int, map_side: int) -> int:
    """Bits for every pending agent to upload its candidate path, one encoded
    segment per per-partition subpath."""
    return sum(path_bits(segs, n_agents, map_side) for segs in segment_lists)


def intersection_graph_bits(intersections_found: Iterable[int] | Mapping, n_agents: int) -> int:
    """Bits to report collision pairs: two agent ids per observed
    intersection, summed over reporters."""
    counts = (
        intersections_found.values()
        if isinstance(intersections_found, Mapping)
        else intersections_found
    )
    return 2 * ceil_log2(n_agents) * sum(counts)


def reservation_table_bits(path_lengths: Iterable[int], n_agents: int, map_side: int) -> int:
    """Bits to broadcast the final reservation table, encoded as one
    whole-path segment per agent (all final paths start at t=0)."""
    header = ceil_log2(n_agents) + 2 * ceil_log2(map_side)
    return sum(header + BITS_PER_SYMBOL * (length + 1) for length in path_lengths)


def comm_time(
    ledger: CommLedger, cfg: CommConfig | None = None, include_source_goal: bool = True
) -> float:
    """Seconds to move the ledger's bits at the configured data rate."""
    cfg = cfg if cfg is not None else CommConfig()
    return ledger.total_bits(include_source_goal) / cfg.data_rate


def speedup(baseline_seconds: float, variant_seconds: float, comm_seconds: float) -> float:
    """Baseline compute time over variant compute-plus-communication time;
    values below 1.0 mean the parallel variant loses at this data rate."""
    if baseline_seconds <= 0 or variant_seconds <= 0 or comm_seconds < 0:
        raise ValueError("times must be positive (communication may be zero)")
    return baseline_seconds / (variant_seconds + comm_seconds)
