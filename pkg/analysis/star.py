from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from ..core.errors import AnalysisError
from ..model.cost import demand_map
from ..model.journey import m_span
from ..tools.ticks import Ticks
from .conditions import Verdict

__all__ = ['PeriodicDemandSpec', 'demand_rate', 'star_branches', 'star_feasibility', 'star_backlog_series']


@dataclass(frozen=True)
class PeriodicDemandSpec:
    """Demands repeating every *period* ticks, with ``counts[branch]`` departures per period on each branch (route id)."""
    period: int
    counts: Dict[str, int]
    spans: Optional[Dict[str, int]] = field(default=None)

    def __post_init__(self):
        if self.period <= 0:
            raise AnalysisError('Demand period must be positive')
        if any(h < 0 for h in self.counts.values()):
            raise AnalysisError('Demand counts per period must be nonnegative')


def demand_rate(spec):
    """Return branch -> long-run departure rate ``h / P`` in vehicles per minute, exact."""
    return {b: Ticks.rate_per_minute(h, spec.period) for b, h in spec.counts.items()}


def star_branches(network):
    """Return ``(center, {route id: span at the center})`` if *network* is a star: every route is a single edge and all routes end at one node. Raise |AnalysisError| otherwise."""
    if not network.routes:
        raise AnalysisError('A star network needs at least one route')
    centers = {r.destination for r in network.routes.values()}
    if len(centers) != 1:
        raise AnalysisError('Routes end at several nodes {}, not a star'.format(sorted(centers)))
    center = centers.pop()
    spans = {}
    for rid, r in sorted(network.routes.items()):
        if r.k != 1:
            raise AnalysisError("Route '{}' has {} edges, star branches have one".format(rid, r.k))
        spans[rid] = m_span(r, 1, 1, network)
    return center, spans


def star_feasibility(network, rates):
    """Test whether a star network can serve the long-run *rates* (route id -> vehicles per minute).

    The load ``sum r_i * (x_max_i - x_min_i + w)`` (spans in minutes) must not exceed the center capacity; reaching it exactly is still feasible. Returns a |Verdict| with ``lhs`` the capacity and ``rhs`` the load.
    """
    center, spans = star_branches(network)
    unknown = set(rates) - set(spans)
    if unknown:
        raise AnalysisError('Rates given for unknown branches {}'.format(sorted(unknown)))
    load = sum((Fraction(r) * Fraction(spans[b], Ticks.per_minute) for b, r in rates.items()), Fraction(0))
    cap = network.capacity(center)
    return Verdict(load <= cap, cap, load, 'load {} ({:.4f}) against capacity {} at {}'.format(load, float(load), cap, center),
                   qualifier='necessary and sufficient for periodic demands on a star network')


def star_backlog_series(network, demands, horizon, t0=0):
    """Return the backlog diagnostic of a star network as a list of ``(T, value)`` pairs, one per distinct deadline ``T`` in ``(t0, t0 + horizon]``.

    ``value`` is the spot time needed by all demands due by ``T`` minus the spot time the center can offer since *t0*: ``sum_i count_i(T) * span_i - C * (T - t0)``, in ticks. It stays bounded when the demand rate is within capacity and grows linearly when it is not.
    """
    center, spans = star_branches(network)
    cap = network.capacity(center)
    due = sorted((d.deadline, spans[d.route_id]) for d in demand_map(demands).values() if t0 < d.deadline <= t0 + horizon)
    ret = []
    need = 0
    for i, (t, span) in enumerate(due):
        need += span
        if i + 1 < len(due) and due[i+1][0] == t:
            continue
        ret.append((t, need - cap * (t - t0)))
    return ret
