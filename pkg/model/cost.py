from collections.abc import Mapping

from ..core.errors import DemandError

__all__ = ['sod_cost', 'sod_lower_bound', 'demand_map']


def demand_map(demands):
    """Return *demands* as a dictionary keyed by demand id. Accepts a mapping or any iterable of |Demand|."""
    if isinstance(demands, Mapping):
        return dict(demands)
    ret = {}
    for d in demands:
        if d.id in ret:
            raise DemandError('Duplicate demand id {}'.format(d.id))
        ret[d.id] = d
    return ret


def sod_cost(schedule, demands):
    """Return the sum over scheduled demands of deadline minus departure, in ticks. Partial schedules sum over their entries only."""
    demands = demand_map(demands)
    try:
        return sum(demands[did].deadline - entry.departure for did, entry in schedule.items())
    except KeyError as exc:
        raise DemandError('Scheduled demand {} is unknown'.format(exc.args[0]))


def sod_lower_bound(demands, network):
    """Return the sum over *demands* of the worst-case origin to destination travel time: no valid schedule of the same demands costs less."""
    return sum(network.prefix(d.route_id)[1][-1] for d in demand_map(demands).values())
