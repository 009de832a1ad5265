"""Small networks and demand sets shared by the tests. Times are given in minutes."""
from vertisched import Demand, Ticks, read_network

M = Ticks.from_minutes


def chain(bounds, capacities, service=1, origin_capacity=1):
    """A single route ``R`` through nodes ``v1 .. v(k+1)`` with edge travel time *bounds* and non-origin *capacities*."""
    k = len(bounds)
    nodes = [{'id': 'v1', 'capacity': origin_capacity, 'service_time_min': service}]
    nodes += [{'id': 'v{}'.format(i + 2), 'capacity': c, 'service_time_min': service} for i, c in enumerate(capacities)]
    edges = [{'id': 'e{}'.format(i + 1), 'tail': 'v{}'.format(i + 1), 'head': 'v{}'.format(i + 2), 'tmin_min': lo, 'tmax_min': hi}
             for i, (lo, hi) in enumerate(bounds)]
    return read_network({'nodes': nodes, 'edges': edges, 'routes': [{'id': 'R', 'edges': [e['id'] for e in edges]}]})


def star(branches, capacity, service=1):
    """Routes ``b1, b2 ..`` each of one edge from ``o1, o2 ..`` into the center ``c`` with *capacity* spots."""
    nodes = [{'id': 'c', 'capacity': capacity, 'service_time_min': service}]
    edges, routes = [], []
    for i, (lo, hi) in enumerate(branches, 1):
        nodes.append({'id': 'o{}'.format(i), 'capacity': 0, 'service_time_min': 0})
        edges.append({'id': 'e{}'.format(i), 'tail': 'o{}'.format(i), 'head': 'c', 'tmin_min': lo, 'tmax_min': hi})
        routes.append({'id': 'b{}'.format(i), 'edges': ['e{}'.format(i)]})
    return read_network({'nodes': nodes, 'edges': edges, 'routes': routes})


def two_link():
    """The three-node chain with edges [1, 4] and [2, 3], one spot everywhere and one minute of service."""
    return chain([(1, 4), (2, 3)], [1, 1])


def ex1_demands():
    return [Demand(1, 'R', M(8)), Demand(2, 'R', M(11))]


def demand(did, route, deadline_min, release_min=0):
    return Demand(did, route, M(deadline_min), M(release_min))
