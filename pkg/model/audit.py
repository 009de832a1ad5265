from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

from ..tools.ticks import Ticks
from .cost import demand_map
from .demand import id_key
from .journey import journey_blocks, worst_arrival

__all__ = ['Violation', 'AuditReport', 'Occupancy', 'check_occupancy', 'audit_schedule']


@dataclass(frozen=True)
class Violation:
    """One broken schedule property. *kind* is ``'deadline'``, ``'capacity'``, ``'spot'`` (two windows overlapping on one spot) or ``'spot_range'``."""
    kind: str
    node: Optional[str]
    time: int
    demand_ids: Tuple[Any, ...]
    detail: str = ''

    def __str__(self):
        where = ' at {}'.format(self.node) if self.node is not None else ''
        return '{}{} ({} min), demands {}: {}'.format(self.kind, where, Ticks.format(self.time), list(self.demand_ids), self.detail)


@dataclass(frozen=True)
class Occupancy:
    """A window during which demand *demand_id* holds (or may hold) *spot* at *node*."""
    node: str
    demand_id: Any
    window: Any
    spot: Optional[int] = None


@dataclass
class AuditReport:
    """The outcome of an audit: an empty violation list means the schedule is valid."""
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def of_kind(self, kind):
        return [v for v in self.violations if v.kind == kind]

    def signature(self):
        """Return the violations as a sorted tuple of ``(kind, node, time, demand ids)``, for comparing two audits."""
        return tuple(sorted(((v.kind, str(v.node), v.time, tuple(str(i) for i in v.demand_ids)) for v in self.violations)))

    def as_dict(self):
        return {'ok': self.ok, 'violations': [{'kind': v.kind, 'node': v.node, 'time_min': Ticks.to_minutes(v.time),
                                               'demands': list(v.demand_ids), 'detail': v.detail} for v in self.violations]}

    def __str__(self):
        if self.ok:
            return 'Audit clean'
        return 'Audit found {} violation(s):\n'.format(len(self)) + '\n'.join('  ' + str(v) for v in self.violations)


#===========================================================================


def check_occupancy(occupancies, network):
    """Check a collection of |Occupancy| windows against node capacities and spot exclusivity.

    Capacity is checked by a sweep over window endpoints with half-open semantics (a window ending at *t* and one starting at *t* never coexist). One ``'capacity'`` violation is reported each time the count at a node rises above its capacity. Spots, when present, must lie in ``1..C_v`` and carry pairwise disjoint windows. Returns a list of |Violation|.
    """
    by_node = defaultdict(list)
    for occ in occupancies:
        if occ.window.hi > occ.window.lo:
            by_node[occ.node].append(occ)

    ret = []
    for node in sorted(by_node):
        occs = by_node[node]
        cap = network.capacity(node)

        events = []
        for i, occ in enumerate(occs):
            events.append((occ.window.lo, 1, i))
            events.append((occ.window.hi, -1, i))
        # departures sort before arrivals at equal times
        events.sort(key=lambda x: (x[0], x[1], id_key(occs[x[2]].demand_id)))
        active = set()
        for t, delta, i in events:
            if delta < 0:
                active.discard(i)
                continue
            active.add(i)
            if len(active) > cap:
                ids = tuple(sorted((occs[k].demand_id for k in active), key=id_key))
                ret.append(Violation('capacity', node, t, ids, '{} vehicles, capacity {}'.format(len(active), cap)))

        by_spot = defaultdict(list)
        for occ in occs:
            if occ.spot is None:
                continue
            if not 1 <= occ.spot <= cap:
                ret.append(Violation('spot_range', node, occ.window.lo, (occ.demand_id,), 'spot {} outside 1..{}'.format(occ.spot, cap)))
            by_spot[occ.spot].append(occ)
        for spot in sorted(by_spot):
            seq = sorted(by_spot[spot], key=lambda o: (o.window.lo, o.window.hi, id_key(o.demand_id)))
            for a, b in zip(seq, seq[1:]):
                if a.window.overlaps(b.window):
                    ret.append(Violation('spot', node, b.window.lo, (a.demand_id, b.demand_id), 'spot {}: {} overlaps {}'.format(spot, a.window, b.window)))
    return ret


def audit_schedule(schedule, demands, network, realized_arrivals=None):
    """Check *schedule* for validity and return an |AuditReport|.

    Every scheduled demand is expanded into a |Journey| (with *realized_arrivals*, a map demand id -> node -> tick, when given) and its occupancy windows are computed from the best information available: realized stays where the vehicle already landed, worst-case blocking intervals elsewhere. The audit then checks that

    *   the latest possible arrival at the destination does not exceed the deadline,
    *   no node ever holds more vehicles than its capacity,
    *   assigned spots exist and are never shared by overlapping windows.
    """
    demands = demand_map(demands)
    violations = []
    occupancies = []
    for journey in schedule.journeys(demands, realized_arrivals):
        route = network.route(journey.route_id)
        worst = worst_arrival(journey, network)
        if worst > journey.demand.deadline:
            violations.append(Violation('deadline', route.destination, worst, (journey.demand_id,),
                                        'latest arrival {} min after deadline {} min'.format(Ticks.format(worst), Ticks.format(journey.demand.deadline))))
        for node, window in journey_blocks(journey, network).items():
            occupancies.append(Occupancy(node, journey.demand_id, window, journey.spots.get(node)))
    violations += check_occupancy(occupancies, network)
    return AuditReport(violations)
