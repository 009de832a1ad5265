from dataclasses import dataclass
from typing import Any, FrozenSet, Optional

from ..core.errors import AnalysisError
from ..model.journey import journey_blocks
from ..tools.ticks import Ticks

__all__ = ['CounterQuery', 'cumulative_departures', 'cumulative_arrivals', 'flow_rate']


@dataclass(frozen=True)
class CounterQuery:
    """Select journeys for counting: those passing *node*, restricted to route *route* and to the demand ids in *ids* when given, over the closed window ``[t_a, t_b]`` (ticks)."""
    t_a: int
    t_b: int
    node: str
    route: Optional[str] = None
    ids: Optional[FrozenSet[Any]] = None

    def __post_init__(self):
        if self.t_a > self.t_b:
            raise AnalysisError('Counter window [{}, {}] is reversed'.format(Ticks.format(self.t_a), Ticks.format(self.t_b)))

    def selects(self, journey, network):
        if self.route is not None and journey.route_id != self.route:
            return False
        if self.ids is not None and journey.demand_id not in self.ids:
            return False
        return self.node in network.route(journey.route_id)


def cumulative_departures(journeys, query, network):
    """Return how many selected journeys leave ``query.node`` within the query window.

    The departure from the origin is the assigned one, the departure from any other node is the realized arrival plus service time. Journeys that have not reached the node yet have no known departure and are not counted. Destinations have no departures.
    """
    count = 0
    for j in journeys:
        if not query.selects(j, network):
            continue
        route = network.route(j.route_id)
        p = route.position(query.node)
        if p == route.k:
            continue
        if p == 0:
            dep = j.departure
        elif query.node in j.arrivals:
            dep = j.arrivals[query.node] + network.service(query.node)
        else:
            continue
        if query.t_a <= dep <= query.t_b:
            count += 1
    return count


def cumulative_arrivals(journeys, query, network):
    """Return how many selected journeys must arrive at ``query.node`` within the query window, that is whose current blocking interval at the node lies entirely inside it."""
    count = 0
    for j in journeys:
        if not query.selects(j, network):
            continue
        window = journey_blocks(j, network).get(query.node)
        if window is not None and query.t_a <= window.lo and window.hi <= query.t_b:
            count += 1
    return count


def flow_rate(journeys, query, network):
    """Return the departure rate at ``query.node`` over the query window, in vehicles per minute, as an exact |Fraction|."""
    if query.t_b == query.t_a:
        raise AnalysisError('Flow rate over a zero-length window')
    return Ticks.rate_per_minute(cumulative_departures(journeys, query, network), query.t_b - query.t_a)
