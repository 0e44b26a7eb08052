"""Space-time search against reservations: waits, detours, goal stays, and
the resumable backward heuristic.

Run from the repository root:  python3 demos/02_reservations_and_search.py
"""

from mapfkit import (
    GridMap,
    ReservationTable,
    ReverseResumableAStar,
    TimedPath,
    astar_static,
    space_time_astar,
)

# (1) With nothing reserved, the space-time search is plain A*.
grid = GridMap(7, 3)
path = space_time_astar(grid, (0, 1), (6, 1))
print("empty table:", path.cells(), f"cost={path.cost}")

# (2) Reserve another agent's path straight down the middle row. The search
#     now threads around it; waiting costs one step per wait.
rt = ReservationTable()
blocker = TimedPath(9, tuple((x, 1, x) for x in range(7)))  # left-to-right, parks at (6, 1)
rt.insert_path(blocker)
path = space_time_astar(grid, (6, 1), (0, 1), rt)
print("against oncoming traffic:", path.cells(), f"cost={path.cost}")

# (3) Goal stays matter: the blocker parks on (6, 1) forever, so planning
#     into that cell is infeasible, and arrivals are only accepted when no
#     reservation touches the goal afterwards.
blocked = space_time_astar(grid, (0, 0), (6, 1), rt)
print("into a parked agent's cell:", blocked)

# (4) The heuristic is an exact static distance, computed lazily by a
#     backward search that resumes where previous queries stopped.
h = ReverseResumableAStar(grid, (6, 1))
d1 = h.distance((0, 1))
settled_after_first = len(h.settled)
d2 = h.distance((0, 0))
print(f"distances to (6,1): from (0,1) = {d1}, from (0,0) = {d2}")
print(f"settled cells after first query: {settled_after_first}, after second: {len(h.settled)}")
assert d1 == len(astar_static(grid, (0, 1), (6, 1))) - 1
