"""Multi-agent path finding on 4-connected grids.

Two planners over one search core: classic prioritized planning against a
reservation table, and an iterated variant that fixes an independent set of
non-colliding candidate paths per round, so per-round work parallelizes and
no priority order is needed. Comes with partition-local conflict detection,
a compact path codec with exact bit accounting, an analytical
communication-cost ledger, a solvable-instance generator, and a benchmark
harness.
"""

from .bench import (
    BenchConfig,
    BenchmarkRecord,
    ColumnStats,
    SummaryStats,
    compare,
    emit_csv,
    emit_plot_data,
    parse_csv,
    run_benchmark,
    summarize,
)
from .codec import (
    CodecError,
    EncodedSegment,
    ceil_log2,
    decode_segment,
    encode_segment,
    pack_segment,
    parse_encoded,
    path_bits,
    segment_bits,
    unpack_segment,
)
from .comm import (
    CommConfig,
    CommLedger,
    IterationComm,
    comm_time,
    intersection_graph_bits,
    iteration_path_bits,
    reservation_table_bits,
    source_goal_bits,
    speedup,
)
from .conflicts import (
    ConflictReport,
    IntersectionGraph,
    SubpathSegment,
    build_intersection_graph,
    connected_components,
    detect_conflicts_in_partition,
    partition_conflict_reports,
    split_path,
    validate_solution,
)
from .grid import (
    Coord,
    GridMap,
    MapFormatError,
    Partitioning,
    balanced_factorization,
    downsample_map,
    generate_random_map,
    parse_movingai_map,
    partition_of,
    serialize_movingai_map,
)
from .indset import (
    EXACT_THRESHOLD_DEFAULT,
    ComponentGraph,
    independent_set,
    mis_exact,
    mis_greedy,
)
from .instances import (
    GenerationError,
    ScenarioFormatError,
    generate_instance,
    read_instance_metadata,
    read_scenario,
    write_instance_metadata,
    write_scenario,
)
from .search import (
    PathConflictError,
    ReservationTable,
    ReverseResumableAStar,
    TimedPath,
    TimedState,
    astar_static,
    manhattan,
    space_time_astar,
)
from .solver import (
    InvalidInstanceError,
    IterationRecord,
    ProblemInstance,
    Solution,
    SolveFailure,
    SolveTimeout,
    SolveTrace,
    VariantConfig,
    solve_hca,
    solve_variant,
)

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "BenchmarkRecord",
    "CodecError",
    "ColumnStats",
    "CommConfig",
    "CommLedger",
    "ComponentGraph",
    "ConflictReport",
    "Coord",
    "EXACT_THRESHOLD_DEFAULT",
    "EncodedSegment",
    "GenerationError",
    "GridMap",
    "IntersectionGraph",
    "InvalidInstanceError",
    "IterationComm",
    "IterationRecord",
    "MapFormatError",
    "Partitioning",
    "PathConflictError",
    "ProblemInstance",
    "ReservationTable",
    "ReverseResumableAStar",
    "ScenarioFormatError",
    "Solution",
    "SolveFailure",
    "SolveTimeout",
    "SolveTrace",
    "SubpathSegment",
    "SummaryStats",
    "TimedPath",
    "TimedState",
    "VariantConfig",
    "astar_static",
    "balanced_factorization",
    "build_intersection_graph",
    "ceil_log2",
    "comm_time",
    "compare",
    "connected_components",
    "decode_segment",
    "detect_conflicts_in_partition",
    "downsample_map",
    "emit_csv",
    "emit_plot_data",
    "encode_segment",
    "generate_instance",
    "generate_random_map",
    "independent_set",
    "intersection_graph_bits",
    "iteration_path_bits",
    "manhattan",
    "mis_exact",
    "mis_greedy",
    "pack_segment",
    "parse_csv",
    "parse_encoded",
    "parse_movingai_map",
    "partition_conflict_reports",
    "partition_of",
    "path_bits",
    "read_instance_metadata",
    "read_scenario",
    "reservation_table_bits",
    "run_benchmark",
    "segment_bits",
    "serialize_movingai_map",
    "solve_hca",
    "solve_variant",
    "source_goal_bits",
    "space_time_astar",
    "speedup",
    "split_path",
    "summarize",
    "unpack_segment",
    "validate_solution",
    "write_instance_metadata",
    "write_scenario",
]
