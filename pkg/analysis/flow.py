from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple

from ..core.errors import AnalysisError
from ..core.functions import log
from ..model.journey import m_span
from ..tools.ticks import Ticks
from .simplex import RationalSimplex, enumerate_vertices

__all__ = ['FlowSolution', 'route_caps', 'FlowProgram', 'max_flow']


@dataclass(frozen=True)
class FlowSolution:
    """A maximizing steady-state flow, in vehicles per minute, exact.

    *   ``route_flow``: route id -> flow sent along the route (conservation makes it the same at every node of the route),
    *   ``flow``: ``(route id, node)`` -> flow through that node of that route,
    *   ``caps``: ``(route id, node)`` -> the cap ``C_v / m`` of a non-origin route node, where ``m`` is the span of its blocking interval measured from the origin departure,
    *   ``binding``: the ``(route id, node)`` pairs where the flow equals the cap,
    *   ``objective``: total flow reaching the destinations.
    """
    route_flow: Dict[str, Fraction]
    flow: Dict[Tuple[str, str], Fraction]
    caps: Dict[Tuple[str, str], Fraction]
    binding: FrozenSet[Tuple[str, str]]
    objective: Fraction
    program: 'FlowProgram' = field(default=None, compare=False, repr=False)

    def binding_nodes(self, route_id):
        return sorted(v for r, v in self.binding if r == route_id)

    def as_dict(self):
        return {'objective_per_min': str(self.objective), 'objective': float(self.objective),
                'routes': {r: str(z) for r, z in sorted(self.route_flow.items())},
                'binding': sorted([r, v] for r, v in self.binding)}


def route_caps(network):
    """Return the flow cap of every non-origin route node: ``(route id, node) -> C_v / m`` per minute, where ``m`` is :func:`m_span` from the origin departure to the node. A node with zero span has no cap (it never blocks a spot for any time) and is left out."""
    caps = {}
    for rid, route in sorted(network.routes.items()):
        for p in range(1, route.k + 1):
            node = route.nodes[p]
            span = m_span(route, 1, p, network)
            if network.capacity(node) == 0:
                caps[rid, node] = Fraction(0)
            elif span > 0:
                caps[rid, node] = Ticks.rate_per_minute(network.capacity(node), span)
    return caps


class FlowProgram:
    """The route flow linear program of a |Network|.

    Conservation along a route leaves one variable per route, ``z_R``. The constraints are

    *   ``z_R <= C_v / m`` for every non-origin node ``v`` of ``R`` (one row per route holding the smallest cap),
    *   ``sum over routes R through v of z_R * m_R(v) <= C_v`` for every node used past an origin, with spans in minutes,
    *   ``z_R >= 0``,

    and the objective is ``sum z_R``.
    """

    def __init__(self, network):
        self.network = network
        self.routes: List[str] = sorted(network.routes)
        self.caps = route_caps(network)
        A, b, self.labels = [], [], []
        for i, rid in enumerate(self.routes):
            limits = [c for (r, v), c in self.caps.items() if r == rid]
            if limits:
                row = [Fraction(0)] * len(self.routes)
                row[i] = Fraction(1)
                A.append(row)
                b.append(min(limits))
                self.labels.append(('route', rid))
        spans = {}
        for i, rid in enumerate(self.routes):
            route = network.routes[rid]
            for p in range(1, route.k + 1):
                spans.setdefault(route.nodes[p], {})[i] = Fraction(m_span(route, 1, p, network), Ticks.per_minute)
        for node in sorted(spans):
            row = [spans[node].get(i, Fraction(0)) for i in range(len(self.routes))]
            A.append(row)
            b.append(Fraction(network.capacity(node)))
            self.labels.append(('node', node))
        self.A, self.b = A, b
        self.c = [Fraction(1)] * len(self.routes)


    def solve(self):
        lp = RationalSimplex(self.A, self.b, self.c)
        if lp.solve() != 'optimal':
            raise AnalysisError('Route flow program is unbounded: a route passes only through nodes without spans')
        return lp.objective, lp.solution()


    def optimal_vertices(self, objective, max_routes=8):
        """Return every vertex of the feasible region attaining *objective*, as dictionaries route id -> flow. For more than *max_routes* routes enumeration is skipped and an empty list returned."""
        if len(self.routes) > max_routes:
            log('WARNING: {} routes are too many for vertex enumeration, using the simplex vertex only'.format(len(self.routes)), 3)
            return []
        ret = []
        for x in enumerate_vertices(self.A, self.b):
            if sum(x) == objective:
                ret.append(dict(zip(self.routes, x)))
        return ret


    def solution(self, route_flow, objective):
        flow = {}
        for rid, z in route_flow.items():
            for node in self.network.routes[rid].nodes:
                flow[rid, node] = z
        binding = frozenset(key for key, cap in self.caps.items() if route_flow[key[0]] == cap)
        return FlowSolution(dict(route_flow), flow, dict(self.caps), binding, objective, self)


def max_flow(network):
    """Return the maximizing route flow of *network* as a |FlowSolution|, computed in exact rational arithmetic."""
    program = FlowProgram(network)
    if not program.routes:
        return FlowSolution({}, {}, {}, frozenset(), Fraction(0), program)
    objective, x = program.solve()
    log('Maximum flow {} per minute over {} routes'.format(objective, len(program.routes)), 7)
    return program.solution(dict(zip(program.routes, x)), objective)
