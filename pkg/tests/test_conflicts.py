import numpy as np
import pytest

from mapfkit import (
    GridMap,
    IntersectionGraph,
    Partitioning,
    TimedPath,
    build_intersection_graph,
    connected_components,
    detect_conflicts_in_partition,
    generate_random_map,
    partition_conflict_reports,
    split_path,
    validate_solution,
)

from oracles import brute_conflict_pairs, random_timed_path, union_find_components


def straight_path(agent, cells, start_t=0):
    return TimedPath(agent, tuple((x, y, start_t + i) for i, (x, y) in enumerate(cells)))


class TestSplitPath:
    def test_single_partition(self):
        grid = GridMap(12, 12)
        part = Partitioning.for_map(grid, 4)
        path = straight_path(0, [(0, 0), (1, 0), (2, 0)])
        segs = split_path(path, part, grid)
        assert len(segs) == 1
        assert segs[0].states == path.states
        assert segs[0].prev_state is None and segs[0].next_state is None

    def test_split_at_block_boundary(self):
        grid = GridMap(12, 12)
        part = Partitioning.for_map(grid, 4)  # x-cut between 5 and 6
        path = straight_path(1, [(5, 0), (6, 0), (7, 0)])
        segs = split_path(path, part, grid)
        assert len(segs) == 2
        assert segs[0].states == ((5, 0, 0),)
        assert segs[1].states == ((6, 0, 1), (7, 0, 2))
        assert segs[0].next_state == (6, 0, 1)
        assert segs[1].prev_state == (5, 0, 0)

    def test_reentry_gives_time_disjoint_segments(self):
        grid = GridMap(12, 12)
        part = Partitioning.for_map(grid, 4)
        path = straight_path(2, [(5, 0), (6, 0), (5, 0), (4, 0)])
        segs = split_path(path, part, grid)
        assert len(segs) == 3
        in_first = [s for s in segs if s.partition == segs[0].partition]
        assert len(in_first) == 2
        times = sorted(t for s in in_first for _, _, t in s.states)
        assert len(set(times)) == len(times)

    def test_state_conservation(self):
        rng = np.random.default_rng(5)
        grid = generate_random_map(16, 16, 0.15, seed=8)
        part = Partitioning.for_map(grid, 9)
        for agent in range(20):
            path = random_timed_path(rng, grid, agent, max_len=30)
            segs = split_path(path, part, grid)
            assert sum(len(s.states) for s in segs) == len(path.states)
            # each boundary crossing drops one move from the segment totals
            assert sum(s.length for s in segs) == len(path.states) - len(segs)
            # every state in the segment of its own partition
            for seg in segs:
                for x, y, _ in seg.states:
                    assert part.locate((x, y)) == seg.partition
            assert len(segs) >= 1


class TestDetectConflicts:
    def test_vertex_conflict(self):
        grid = GridMap(6, 6)
        part = Partitioning.for_map(grid, 1)
        a = straight_path(0, [(1, 2), (2, 2)])
        b = straight_path(1, [(3, 2), (2, 2)])
        segs = split_path(a, part, grid) + split_path(b, part, grid)
        report = detect_conflicts_in_partition(segs, horizon=1)
        assert report.pairs == {(0, 1)}

    def test_swap_conflict(self):
        grid = GridMap(6, 6)
        part = Partitioning.for_map(grid, 1)
        a = straight_path(0, [(0, 0), (1, 0)])
        b = straight_path(1, [(1, 0), (0, 0)])
        segs = split_path(a, part, grid) + split_path(b, part, grid)
        assert detect_conflicts_in_partition(segs, horizon=1).pairs == {(0, 1)}

    def test_goal_stay_extension(self):
        grid = GridMap(10, 10)
        part = Partitioning.for_map(grid, 1)
        a = straight_path(0, [(3, 2), (3, 3)])  # parks on (3, 3) at t=1
        b = straight_path(1, [(0, 3), (1, 3), (2, 3), (3, 3), (4, 3)])  # passes at t=3
        segs = split_path(a, part, grid) + split_path(b, part, grid)
        report = detect_conflicts_in_partition(segs, horizon=4)
        assert report.pairs == {(0, 1)}  # no shared explicit state, only the stay

    def test_goal_stay_respects_horizon(self):
        grid = GridMap(10, 10)
        part = Partitioning.for_map(grid, 1)
        a = straight_path(0, [(3, 2), (3, 3)])
        b = straight_path(1, [(0, 3), (1, 3), (2, 3), (3, 3), (4, 3)])
        report = detect_conflicts_in_partition(
            split_path(a, part, grid) + split_path(b, part, grid), horizon=2
        )
        assert report.pairs == frozenset()  # visit at t=3 lies past the cap

    def test_boundary_swap_is_caught(self):
        grid = GridMap(12, 12)
        part = Partitioning.for_map(grid, 4)  # boundary between x=5 and x=6
        a = straight_path(0, [(5, 3), (6, 3)])
        b = straight_path(1, [(6, 3), (5, 3)])
        reports = partition_conflict_reports([a, b], part, grid)
        seen = set()
        for rep in reports.values():
            seen |= rep.pairs
        assert seen == {(0, 1)}
        # both endpoint partitions spotted it
        assert sum(1 for rep in reports.values() if rep.pairs) == 2


class TestIntersectionGraph:
    def test_two_crossing_pairs(self):
        # four agents on an empty 12x12 grid: two straight-line crossings
        grid = GridMap(12, 12)
        part = Partitioning.for_map(grid, 4)
        paths = [
            straight_path(0, [(5, y) for y in range(2, 9)]),     # vertical line x=5
            straight_path(1, [(x, 5) for x in range(2, 9)]),     # horizontal line y=5
            straight_path(2, [(9, y) for y in range(1, 8)]),     # vertical line x=9
            straight_path(3, [(x, 4) for x in range(6, 12)]),    # horizontal line y=4
        ]
        ig = build_intersection_graph(paths, part, grid)
        assert ig.nodes == (0, 1, 2, 3)
        assert ig.edges == {(0, 1), (2, 3)}

    def test_disjoint_paths_edgeless(self):
        grid = GridMap(8, 8)
        part = Partitioning.for_map(grid, 4)
        paths = [
            straight_path(0, [(0, 0), (1, 0)]),
            straight_path(1, [(0, 7), (1, 7)]),
            straight_path(2, [(7, 0), (7, 1)]),
        ]
        ig = build_intersection_graph(paths, part, grid)
        assert ig.edges == frozenset()

    @pytest.mark.parametrize("n_parts", [1, 4, 7, 10])
    def test_matches_brute_force(self, n_parts):
        rng = np.random.default_rng(101 + n_parts)
        for _ in range(40):
            grid = generate_random_map(10, 10, 0.1, seed=int(rng.integers(1 << 30)))
            part = Partitioning.for_map(grid, n_parts)
            paths = [random_timed_path(rng, grid, a, max_len=14) for a in range(8)]
            ig = build_intersection_graph(paths, part, grid)
            assert set(ig.edges) == brute_conflict_pairs(paths)


class TestConnectedComponents:
    def test_edgeless(self):
        g = IntersectionGraph((0, 1, 2, 3, 4), frozenset())
        assert connected_components(g) == [(0,), (1,), (2,), (3,), (4,)]

    def test_path_graph(self):
        g = IntersectionGraph((1, 2, 3), frozenset({(1, 2), (2, 3)}))
        assert connected_components(g) == [(1, 2, 3)]

    def test_matches_union_find(self):
        rng = np.random.default_rng(55)
        for _ in range(50):
            n = int(rng.integers(2, 15))
            nodes = tuple(range(n))
            edges = set()
            for _ in range(int(rng.integers(0, 2 * n))):
                a, b = int(rng.integers(n)), int(rng.integers(n))
                if a != b:
                    edges.add((min(a, b), max(a, b)))
            g = IntersectionGraph(nodes, frozenset(edges))
            assert connected_components(g) == union_find_components(nodes, edges)


class TestValidateSolution:
    def test_single_valid_path(self):
        grid = GridMap(5, 5)
        p = straight_path(0, [(0, 0), (1, 0), (2, 0)])
        assert validate_solution([p], grid) == []

    def test_swap_is_one_violation(self):
        grid = GridMap(5, 5)
        a = straight_path(0, [(0, 0), (1, 0)])
        b = straight_path(1, [(1, 0), (0, 0)])
        violations = validate_solution([a, b], grid)
        assert len(violations) == 1 and "swap" in violations[0]

    def test_vertex_and_stay_violations(self):
        grid = GridMap(5, 5)
        a = straight_path(0, [(2, 2), (2, 3)])  # parks on (2,3) at t=1
        b = straight_path(1, [(2, 4), (2, 3), (2, 3), (2, 3)])
        violations = validate_solution([a, b], grid)
        assert violations  # b sits on a's goal after a arrived

    def test_endpoint_mismatch(self):
        grid = GridMap(5, 5)
        p = straight_path(0, [(0, 0), (1, 0)])
        violations = validate_solution({0: p}, grid, {0: ((0, 0), (2, 0))})
        assert any("ends at" in v for v in violations)

    def test_obstacle_violation(self):
        grid = GridMap(5, 5, frozenset({(1, 0)}))
        p = straight_path(0, [(0, 0), (1, 0)])
        assert any("blocked" in v for v in validate_solution([p], grid))
