from dataclasses import dataclass
from typing import Optional

from ..core.errors import OracleError
from ..core.functions import log
from ..model.cost import demand_map
from ..model.demand import Schedule, ScheduleEntry, id_key
from .placement import route_profile

__all__ = ['OracleResult', 'oracle_optimal', 'ORACLE_LIMIT']

ORACLE_LIMIT = 6


@dataclass(frozen=True)
class OracleResult:
    schedule: Schedule
    sod: int
    explored: int


def _greatest(upper, lower, precedences):
    """Return the largest departure vector with ``d <= upper``, satisfying every ``d[a] <= d[b] + gap``, or ``None`` when it falls below *lower*."""
    d = list(upper)
    n = len(d)
    for _ in range(n + 1):
        changed = False
        for a, b, gap in precedences:
            if d[a] > d[b] + gap:
                d[a] = d[b] + gap
                changed = True
                if d[a] < lower[a]:
                    return None
        if not changed:
            return d
    return None


def _conflict(profiles, d, network):
    """Return ``(node, members)`` for the first node where more than ``C_v`` windows overlap, with the ``C_v + 1`` indices active at that moment, or ``None``."""
    per_node = {}
    for i, p in enumerate(profiles):
        for v, w in p.windows(d[i]).items():
            if w.hi > w.lo:
                per_node.setdefault(v, []).append((w, i))
    for v in sorted(per_node):
        cap = network.capacity(v)
        events = sorted([(w.lo, 1, i) for w, i in per_node[v]] + [(w.hi, -1, i) for w, i in per_node[v]])
        active = []
        for t, delta, i in events:
            if delta < 0:
                active.remove(i)
                continue
            active.append(i)
            if len(active) > cap:
                return v, sorted(active)
    return None


def _colour(profiles, d, network, ids):
    """Assign spots by scanning windows in start order and taking the lowest spot free at that start."""
    spots = [{} for _ in profiles]
    per_node = {}
    for i, p in enumerate(profiles):
        for v, w in p.windows(d[i]).items():
            per_node.setdefault(v, []).append((w.lo, w.hi, id_key(ids[i]), i))
    for v, rows in per_node.items():
        free_at = [None] * network.capacity(v)
        for lo, hi, _, i in sorted(rows):
            c = next(c for c in range(len(free_at)) if free_at[c] is None or free_at[c] <= lo or hi <= lo)
            if hi > lo:
                free_at[c] = hi
            spots[i][v] = c + 1
    return spots


def oracle_optimal(demands, network, now=0, limit=ORACLE_LIMIT) -> Optional[OracleResult]:
    """Return the schedule of all *demands* with the smallest SoD, or ``None`` when no complete schedule exists at time *now*.

    Departures may range from ``max(now, release)`` to the latest departure meeting the deadline. Whenever the blocking windows of the current candidate (the greatest departures allowed) overfill a node, some two of the overlapping windows must be disjoint in any valid schedule, so the search branches on every ordered pair of them, adding the constraint that the first window ends before the second begins. Without conflicts the candidate is optimal for its branch. Raise |OracleError| for more than *limit* demands.
    """
    demands = sorted(demand_map(demands).values(), key=lambda d: (d.deadline, id_key(d.id)))
    if len(demands) > limit:
        raise OracleError('The oracle handles at most {} demands, got {}'.format(limit, len(demands)))
    if not demands:
        return OracleResult(Schedule(), 0, 0)
    profiles = [route_profile(d, network) for d in demands]
    upper = [p.latest for p in profiles]
    lower = [max(now, d.release_time) for d in demands]
    if any(u < l for u, l in zip(upper, lower)):
        return None
    offsets = [{v: (lo, hi) for v, lo, hi in zip(p.nodes, p.lo, p.hi)} for p in profiles]

    best = [None, None]
    seen = set()
    explored = 0

    def branch(precedences):
        nonlocal explored
        if precedences in seen:
            return
        seen.add(precedences)
        explored += 1
        d = _greatest(upper, lower, precedences)
        if d is None:
            return
        total = sum(d)
        if best[0] is not None and total <= best[0]:
            return
        found = _conflict(profiles, d, network)
        if found is None:
            best[0], best[1] = total, d
            return
        v, members = found
        for a in members:
            for b in members:
                if a != b:
                    gap = offsets[b][v][0] - offsets[a][v][1]
                    branch(precedences | {(a, b, gap)})

    branch(frozenset())
    log('Oracle explored {} branches for {} demands'.format(explored, len(demands)), 7)
    if best[1] is None:
        return None
    d = best[1]
    ids = [x.id for x in demands]
    spots = _colour(profiles, d, network, ids)
    schedule = Schedule({ids[i]: ScheduleEntry(d[i], spots[i]) for i in range(len(demands))})
    return OracleResult(schedule, sum(x.deadline for x in demands) - best[0], explored)
