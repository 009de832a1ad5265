"""Per-journey timing formulas.

All positions are route positions: 0 is the origin, ``route.k`` the destination. A window ``(l1, l2)`` covers edges ``l1..l2`` and the service at the intermediate nodes ``l1..l2-1``; the vehicle starts it by departing from position ``l1-1``.
"""
from ..core.errors import JourneyError
from ..core.functions import log
from ..tools.ticks import Ticks
from .interval import Interval

__all__ = ['travel_bounds', 'm_span', 'departure_from', 'latest_arrival', 'blocking_interval',
           'latest_feasible_times', 'journey_blocks', 'worst_arrival', 'screen_demands']


def _check_window(route, l1, l2):
    if not 1 <= l1 <= l2 <= route.k:
        raise JourneyError("Invalid positions ({}, {}) on route '{}' with {} edges".format(l1, l2, route.id, route.k))


def travel_bounds(route, l1, l2, network):
    """Return the shortest and longest time ``(M_lo, M_hi)`` from the departure at position ``l1-1`` to the arrival at position *l2*."""
    _check_window(route, l1, l2)
    lo, hi = network.prefix(route.id)
    # the prefix sums include the service at l1-1, which precedes the departure
    wait = network.service(route.nodes[l1-1]) if l1 >= 2 else 0
    return lo[l2] - lo[l1-1] - wait, hi[l2] - hi[l1-1] - wait


def m_span(route, l1, l2, network):
    """Return the length of the blocking interval at position *l2* for a departure from position ``l1-1``: the travel time uncertainty accumulated over the window plus the service time at *l2*."""
    mlo, mhi = travel_bounds(route, l1, l2, network)
    return mhi - mlo + network.service(route.nodes[l2])


def departure_from(journey, p, network):
    """Return the departure time of *journey* from route position *p*: the assigned departure at the origin, the realized arrival plus service time elsewhere."""
    route = network.route(journey.route_id)
    if p == 0:
        return journey.departure
    if not 0 < p < route.k:
        raise JourneyError('Demand {} cannot depart from position {}'.format(journey.demand_id, p))
    node = route.nodes[p]
    if node not in journey.arrivals:
        raise JourneyError('Demand {} has not arrived at {} yet, its departure is unknown'.format(journey.demand_id, node))
    return journey.arrivals[node] + network.service(node)


def latest_arrival(journey, l1, l2, network):
    """Return the latest possible arrival of *journey* at position *l2*, given its departure from position ``l1-1``."""
    route = network.route(journey.route_id)
    _check_window(route, l1, l2)
    return departure_from(journey, l1-1, network) + travel_bounds(route, l1, l2, network)[1]


def blocking_interval(journey, l1, l2, network):
    """Return the window during which *journey* may occupy a spot at position *l2*: from the earliest possible arrival to the latest arrival plus the service time.

    Its length equals :func:`m_span` of the same window.
    """
    route = network.route(journey.route_id)
    _check_window(route, l1, l2)
    dep = departure_from(journey, l1-1, network)
    mlo, mhi = travel_bounds(route, l1, l2, network)
    return Interval(dep + mlo, dep + mhi + network.service(route.nodes[l2]))


def latest_feasible_times(demand, network):
    """Return the latest arrival at every route node (latest departure at the origin) that still lets *demand* meet its deadline under worst-case travel times."""
    route = network.route(demand.route_id)
    lo, hi = network.prefix(route.id)
    return {node: demand.deadline - (hi[-1] - hi[p]) for p, node in enumerate(route.nodes)}


def journey_blocks(journey, network):
    """Return the occupancy windows of *journey* at all its non-origin nodes, using the best information available.

    Nodes already reached contribute their realized stay ``[A, A + w)``. Nodes further down the route contribute the blocking interval predicted from the departure at the last reached node.
    """
    route = network.route(journey.route_id)
    reached = journey.reached(route, network)
    ret = {}
    for p in range(1, reached + 1):
        node = route.nodes[p]
        a = journey.arrivals[node]
        ret[node] = Interval(a, a + network.service(node))
    for p in range(reached + 1, route.k + 1):
        ret[route.nodes[p]] = blocking_interval(journey, reached + 1, p, network)
    return ret


def worst_arrival(journey, network):
    """Return the latest possible arrival of *journey* at its destination given what is known now."""
    route = network.route(journey.route_id)
    reached = journey.reached(route, network)
    if reached == route.k:
        return journey.arrivals[route.destination]
    return latest_arrival(journey, reached + 1, route.k, network)


def screen_demands(demands, network):
    """Split *demands* into those that can still meet their deadline when released and those that cannot.

    A demand is born infeasible when its release time plus the worst-case route traversal time exceeds its deadline. Such demands are reported with a warning and left out rather than failing the whole batch. Returns the two lists ``(accepted, rejected)``.
    """
    accepted, rejected = [], []
    for d in demands:
        if latest_feasible_times(d, network)[network.route(d.route_id).origin] < d.release_time:
            log('WARNING: demand {} cannot meet its deadline {} min when released at {} min, excluded'.format(
                d.id, Ticks.format(d.deadline), Ticks.format(d.release_time)), 3)
            rejected.append(d)
        else:
            accepted.append(d)
    return accepted, rejected
