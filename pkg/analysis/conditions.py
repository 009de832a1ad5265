from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from ..core.functions import log
from ..model.cost import demand_map
from ..model.journey import latest_feasible_times, m_span, travel_bounds
from ..tools.ticks import Ticks
from .bottleneck import compute_bottleneck
from .flow import max_flow

__all__ = ['Verdict', 'NodeVerdict', 'check_node_necessary', 'check_network_necessary', 'STATIC_QUALIFIER']

STATIC_QUALIFIER = 'necessary for a complete schedule at this instant under worst-case travel times only'


@dataclass(frozen=True)
class Verdict:
    """Outcome of a necessary-condition test: the test *passed* when ``lhs >= rhs``. A failure only means no complete schedule exists right now under worst-case travel times; it must never be used to drop demands."""
    passed: bool
    lhs: Any
    rhs: Any
    detail: str = ''
    qualifier: str = STATIC_QUALIFIER

    def __str__(self):
        return '{}: {} ({})'.format('pass' if self.passed else 'FAIL', self.detail, self.qualifier)

    def as_dict(self):
        return {'passed': self.passed, 'lhs': str(self.lhs), 'rhs': str(self.rhs), 'detail': self.detail, 'qualifier': self.qualifier}


@dataclass(frozen=True)
class NodeVerdict:
    """Per-node necessary conditions. ``refined`` compares the spot time available between the earliest possible arrival and the latest possible departure at the node with the total span the demands need there; ``coarse`` uses the demands' destination deadlines as the end of the window."""
    node: str
    refined: Verdict
    coarse: Verdict
    demands: int = 0

    @property
    def passed(self):
        return self.refined.passed and self.coarse.passed

    def as_dict(self):
        return {'node': self.node, 'passed': self.passed, 'demands': self.demands,
                'refined': self.refined.as_dict(), 'coarse': self.coarse.as_dict()}


def check_node_necessary(demands, network, now):
    """Test every node for spot-time sufficiency and return node -> |NodeVerdict|.

    For the demands *J_v* passing node *v* past their origin, all their blocking intervals at *v* lie between ``now + min M_lo`` (earliest arrival after departing no earlier than now) and ``max f_v + w_v`` (latest permitted arrival plus service). At most ``C_v`` of them overlap at any time, so ``C_v * window >= sum m`` must hold. The coarse variant replaces ``f_v`` by the destination deadline. Nodes nobody passes are omitted.
    """
    demands = demand_map(demands)
    per_node = {}
    for d in demands.values():
        route = network.route(d.route_id)
        lft = latest_feasible_times(d, network)
        start = max(now, d.release_time)
        for p in range(1, route.k + 1):
            node = route.nodes[p]
            per_node.setdefault(node, []).append((start + travel_bounds(route, 1, p, network)[0], lft[node], d.deadline, m_span(route, 1, p, network)))

    ret = {}
    for node in sorted(per_node):
        rows = per_node[node]
        cap, w = network.capacity(node), network.service(node)
        need = sum(r[3] for r in rows)
        begin = min(r[0] for r in rows)
        window = max(0, max(r[1] for r in rows) + w - begin)
        coarse_window = max(0, max(r[2] for r in rows) + w - begin)
        refined = Verdict(cap * window >= need, cap * window, need,
                          '{} x {} min of spot time for {} min of spans'.format(cap, Ticks.format(window), Ticks.format(need)))
        coarse = Verdict(cap * coarse_window >= need, cap * coarse_window, need,
                         '{} x {} min up to the last deadline for {} min of spans'.format(cap, Ticks.format(coarse_window), Ticks.format(need)))
        ret[node] = NodeVerdict(node, refined, coarse, len(rows))
        if not ret[node].passed:
            log('WARNING: node {} cannot host {} demands at {} min: {}'.format(node, len(rows), Ticks.format(now), refined), 5)
    return ret


def check_network_necessary(demands, network, now, bottleneck=None):
    """Test whether the bottleneck throughput can carry all *demands* before the latest of their latest departures.

    The number of demands must not exceed ``(max f_0 - now) * rate``, with ``f_0`` the latest feasible departure of each demand and ``rate`` the summed caps of the bottleneck set (computed via :func:`max_flow` and :func:`compute_bottleneck` when *bottleneck* is not given; a |BottleneckError| propagates).
    """
    demands = demand_map(demands)
    if not demands:
        return Verdict(True, Fraction(0), 0, 'no demands')
    if bottleneck is None:
        bottleneck = compute_bottleneck(network, max_flow(network))
    latest = max(latest_feasible_times(d, network)[network.route(d.route_id).origin] for d in demands.values())
    horizon = max(0, latest - now)
    bound = Fraction(horizon, Ticks.per_minute) * bottleneck.rate
    return Verdict(len(demands) <= bound, bound, len(demands),
                   '{} demands, bottleneck {} carries {} in {} min'.format(len(demands), sorted(bottleneck.nodes), bound, Ticks.format(horizon)))
