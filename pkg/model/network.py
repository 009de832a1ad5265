from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx

from ..core.errors import NetworkError
from ..tools.ticks import Ticks

__all__ = ['Node', 'Edge', 'Route', 'Network']


@dataclass(frozen=True)
class Node:
    """A vertiport or vertistop with *capacity* parking spots and a ground *service_time* (ticks)."""
    id: str
    capacity: int
    service_time: int = 0

    def __post_init__(self):
        if self.capacity < 0:
            raise NetworkError("Node '{}': negative capacity {}".format(self.id, self.capacity))
        if self.service_time < 0:
            raise NetworkError("Node '{}': negative service time".format(self.id))


@dataclass(frozen=True)
class Edge:
    """A directed link from *tail* to *head* whose travel time lies in ``[x_min, x_max]`` (ticks)."""
    id: str
    tail: str
    head: str
    x_min: int
    x_max: int

    def __post_init__(self):
        if not 0 < self.x_min <= self.x_max:
            raise NetworkError("Edge '{}': travel time bounds must satisfy 0 < x_min <= x_max, got [{}, {}]".format(
                self.id, Ticks.format(self.x_min), Ticks.format(self.x_max)))


@dataclass(frozen=True)
class Route:
    """An ordered sequence of connected edges.

    Route positions follow the usual convention: position 0 is the origin and position ``k`` (``k = len(edge_ids)``) the destination, edge ``l`` leads from position ``l-1`` to position ``l``. The node sequence is filled in by |Network| when the route is registered.
    """
    id: str
    edge_ids: Tuple[str, ...]
    nodes: Tuple[str, ...] = ()

    @property
    def k(self):
        return len(self.edge_ids)

    @property
    def origin(self):
        return self.nodes[0]

    @property
    def destination(self):
        return self.nodes[-1]

    def position(self, node):
        """Return the route position of *node*."""
        try:
            return self.nodes.index(node)
        except ValueError:
            raise NetworkError("Node '{}' is not on route '{}'".format(node, self.id))

    def __contains__(self, node):
        return node in self.nodes


class Network:
    """A capacitated UAM network: a directed acyclic graph of |Node| and |Edge| objects together with the |Route| set flown on it.

    The constructor validates the structural invariants and raises |NetworkError| when one is broken:

    *   every edge connects known nodes and the graph is acyclic,
    *   the source set (nodes without incoming edges) and sink set (nodes without outgoing edges) are disjoint,
    *   every route is nonempty, consists of known edges, is connected (head of edge ``l`` is the tail of edge ``l+1``) and never repeats a node.

    The underlying :class:`networkx.DiGraph` is available as ``graph``. Route constants used by every formula of the package (prefix sums of the travel time bounds and service times) are computed once and cached, so a |Network| should be treated as read-only after construction.
    """

    def __init__(self, nodes, edges, routes):
        self.nodes: Dict[str, Node] = {}
        self.edges: Dict[str, Edge] = {}
        self.routes: Dict[str, Route] = {}
        self._prefix_cache = {}

        for n in nodes:
            if n.id in self.nodes:
                raise NetworkError("Duplicate node id '{}'".format(n.id))
            self.nodes[n.id] = n
        for e in edges:
            if e.id in self.edges:
                raise NetworkError("Duplicate edge id '{}'".format(e.id))
            for end in (e.tail, e.head):
                if end not in self.nodes:
                    raise NetworkError("Edge '{}' references unknown node '{}'".format(e.id, end))
            self.edges[e.id] = e

        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.nodes)
        for e in self.edges.values():
            if self.graph.has_edge(e.tail, e.head):
                raise NetworkError("Parallel edges between '{}' and '{}'".format(e.tail, e.head))
            self.graph.add_edge(e.tail, e.head, id=e.id)

        if not nx.is_directed_acyclic_graph(self.graph):
            raise NetworkError('Network graph contains a cycle: {}'.format(nx.find_cycle(self.graph)))
        common = self.sources & self.sinks
        if common:
            raise NetworkError('Source and sink sets intersect at {}'.format(sorted(common)))

        for r in routes:
            self.add_route(r)


    def add_route(self, route):
        if route.id in self.routes:
            raise NetworkError("Duplicate route id '{}'".format(route.id))
        if not route.edge_ids:
            raise NetworkError("Route '{}' is empty".format(route.id))
        path = []
        for i, eid in enumerate(route.edge_ids):
            if eid not in self.edges:
                raise NetworkError("Route '{}' references unknown edge '{}'".format(route.id, eid))
            e = self.edges[eid]
            if i == 0:
                path.append(e.tail)
            elif e.tail != path[-1]:
                raise NetworkError("Route '{}' is not connected between edges '{}' and '{}'".format(route.id, route.edge_ids[i-1], eid))
            path.append(e.head)
        if len(set(path)) != len(path):
            raise NetworkError("Route '{}' visits a node twice".format(route.id))
        route = Route(route.id, tuple(route.edge_ids), tuple(path))
        self.routes[route.id] = route
        self._prefix_cache = {}
        return route


    @property
    def sources(self):
        return {v for v in self.graph if self.graph.in_degree(v) == 0}

    @property
    def sinks(self):
        return {v for v in self.graph if self.graph.out_degree(v) == 0}


    def route(self, route_id) -> Route:
        try:
            return self.routes[route_id]
        except KeyError:
            raise NetworkError("Unknown route '{}'".format(route_id))


    def service(self, node):
        return self.nodes[node].service_time


    def capacity(self, node):
        return self.nodes[node].capacity


    def prefix(self, route_id) -> Tuple[List[int], List[int]]:
        """Return the cumulative minimum and maximum travel offsets of *route_id*.

        ``lo[p]`` and ``hi[p]`` are the earliest and latest arrival at route position *p* after a departure at time 0 from the origin, service at the intermediate nodes included. ``lo[0] == hi[0] == 0``.
        """
        if route_id not in self._prefix_cache:
            r = self.route(route_id)
            lo, hi = [0], [0]
            for p, eid in enumerate(r.edge_ids, 1):
                e = self.edges[eid]
                wait = self.service(r.nodes[p-1]) if p > 1 else 0
                lo.append(lo[-1] + wait + e.x_min)
                hi.append(hi[-1] + wait + e.x_max)
            self._prefix_cache[route_id] = (lo, hi)
        return self._prefix_cache[route_id]


    def __str__(self):
        ret = 'Network with {} nodes, {} edges, {} routes\n'.format(len(self.nodes), len(self.edges), len(self.routes))
        for r in self.routes.values():
            ret += '  {}: {}\n'.format(r.id, ' -> '.join(r.nodes))
        return ret
