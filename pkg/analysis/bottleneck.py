from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Tuple

import networkx as nx

from ..core.errors import BottleneckError
from ..core.functions import config, log
from .flow import FlowProgram

__all__ = ['BottleneckResult', 'binding_witnesses', 'separates', 'qualifies', 'compute_bottleneck', 'bottleneck_exhaustive']


@dataclass(frozen=True)
class BottleneckResult:
    """A bottleneck node set of a network.

    *   ``nodes``: the set itself,
    *   ``witness``: route id -> ``(node, route flow)``, a node of the set whose cap the given maximizing flow saturates on that route,
    *   ``cut_edges``: ids of the edges entering or leaving the set, whose removal separates every origin from every destination,
    *   ``rate``: sum over set nodes of the caps of all routes through them, vehicles per minute.
    """
    nodes: FrozenSet[str]
    witness: Dict[str, Tuple[str, Dict[str, Fraction]]]
    cut_edges: FrozenSet[str]
    rate: Fraction

    def as_dict(self):
        return {'nodes': sorted(self.nodes), 'cut_edges': sorted(self.cut_edges), 'rate_per_min': str(self.rate),
                'witness': {r: v for r, (v, _) in sorted(self.witness.items())}}


def binding_witnesses(network, solution, program=None):
    """Return route id -> {node: maximizing route flow saturating the node cap}.

    Every optimal vertex of the flow program is inspected (falling back to the vertex of *solution* when enumeration is skipped), since a node only needs *some* maximizing flow that saturates it.
    """
    program = program or solution.program or FlowProgram(network)
    vertices = program.optimal_vertices(solution.objective) or [dict(solution.route_flow)]
    ret = {rid: {} for rid in network.routes}
    for x in vertices:
        for (rid, node), cap in sorted(solution.caps.items()):
            if x[rid] == cap and node not in ret[rid]:
                ret[rid][node] = x
    return ret


def separates(network, nodes):
    """Return ``True`` if removing all edges incident to *nodes* leaves no path from a source to a sink."""
    reduced = network.graph.copy()
    reduced.remove_edges_from([e for e in network.graph.edges if e[0] in nodes or e[1] in nodes])
    sinks = network.sinks
    return all(not (nx.descendants(reduced, s) & sinks) for s in network.sources)


def qualifies(network, nodes, witnesses):
    """Return ``True`` if *nodes* holds a saturated node of every route and separates sources from sinks."""
    return all(any(v in nodes for v in witnesses[rid]) for rid in network.routes) and separates(network, nodes)


def _result(network, nodes, witnesses, solution):
    nodes = frozenset(nodes)
    witness = {}
    for rid in sorted(network.routes):
        v = min(v for v in witnesses[rid] if v in nodes)
        witness[rid] = (v, witnesses[rid][v])
    cut = frozenset(e.id for e in network.edges.values() if e.tail in nodes or e.head in nodes)
    rate = sum((cap for (rid, v), cap in solution.caps.items() if v in nodes), Fraction(0))
    return BottleneckResult(nodes, witness, cut, rate)


def bottleneck_exhaustive(network, solution, witnesses=None):
    """Return the smallest qualifying node set, ties broken lexicographically, by trying all subsets in order of size. Raise |BottleneckError| if none exists."""
    witnesses = witnesses or binding_witnesses(network, solution)
    nodes = sorted(network.nodes)
    for size in range(1, len(nodes) + 1):
        found = [s for s in combinations(nodes, size) if qualifies(network, s, witnesses)]
        if found:
            if len(found) > 1:
                log('WARNING: {} bottleneck sets of size {} qualify, returning {}'.format(len(found), size, list(found[0])), 3)
            return _result(network, found[0], witnesses, solution)
    raise BottleneckError('No node set satisfies both bottleneck conditions')


def compute_bottleneck(network, solution, method='auto'):
    """Return a |BottleneckResult| for *network* given its maximizing flow *solution*.

    The greedy method starts from all saturated nodes of all routes, adds the fewest further nodes needed to separate sources from sinks, then drops nodes one at a time (in sorted order) while both conditions still hold. The exhaustive method (:func:`bottleneck_exhaustive`) returns the smallest, lexicographically first qualifying set. With *method* ``'auto'`` networks up to ``config.analysis.exhaustive_limit`` nodes (12 by default) are searched exhaustively.

    Raise |BottleneckError| when some route has no saturated node in any maximizing flow, or when no set qualifies.
    """
    witnesses = binding_witnesses(network, solution)
    empty = sorted(rid for rid, w in witnesses.items() if not w)
    if empty:
        raise BottleneckError('Routes {} saturate no node cap in any maximizing flow'.format(empty))

    limit = config.analysis.value('exhaustive_limit', 12) if 'analysis' in config else 12
    if method == 'exhaustive' or (method == 'auto' and len(network.nodes) <= limit):
        return bottleneck_exhaustive(network, solution, witnesses)

    chosen = set(v for w in witnesses.values() for v in w)
    if not separates(network, chosen):
        rest = sorted(set(network.nodes) - chosen)
        extra = None
        for size in range(1, min(len(rest), 3) + 1):
            extra = next((c for c in combinations(rest, size) if separates(network, chosen | set(c))), None)
            if extra:
                break
        chosen |= set(extra) if extra else network.sinks
    for v in sorted(chosen):
        if qualifies(network, chosen - {v}, witnesses):
            chosen.discard(v)
    if not qualifies(network, chosen, witnesses):
        raise BottleneckError('Greedy search found no qualifying node set')
    log('Bottleneck {} found greedily'.format(sorted(chosen)), 7)
    return _result(network, chosen, witnesses, solution)
