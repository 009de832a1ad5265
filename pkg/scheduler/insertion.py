from ..core.functions import log
from ..model.demand import ScheduleEntry, id_key
from ..model.journey import m_span
from .blocktable import BlockTable
from .bnb import prepare_schedule
from .placement import latest_departure, route_profile

__all__ = ['split_demands', 'insert_into_gaps', 'insertion']


def split_demands(demands, network, max_hi):
    """Split *demands* into ``(D1, D2)``: D1 holds the demands whose earliest possible destination window ``f - m + w`` starts no later than *max_hi* (sorted by descending deadline), D2 the rest (ascending). With nothing reserved (*max_hi* ``None``) everything goes to D2."""
    d1, d2 = [], []
    for d in demands:
        route = network.route(d.route_id)
        start = d.deadline - m_span(route, 1, route.k, network) + network.service(route.destination)
        (d1 if max_hi is not None and start <= max_hi else d2).append(d)
    d1.sort(key=lambda d: (-d.deadline, id_key(d.id)))
    d2.sort(key=lambda d: (d.deadline, id_key(d.id)))
    return d1, d2


def insert_into_gaps(demands, table, network, now):
    """Place *demands* one by one, in the given order, at their latest feasible departure between the reservations of *table*, reserving as they go. Return demand id -> |ScheduleEntry|, or ``None`` as soon as one demand does not fit."""
    ret = {}
    for d in demands:
        profile = route_profile(d, network)
        placed = latest_departure(profile, table, profile.latest, max(now, d.release_time))
        if placed is None:
            log('Demand {} finds no gap'.format(d.id), 7)
            return None
        table.reserve(placed.windows, placed.spots, d.id)
        ret[d.id] = ScheduleEntry(placed.departure, placed.spots)
    return ret


def insertion(demands, old_schedule, now, arrivals, network, known, rules=None, budget=None, pool_size=64, history=None):
    """Try to extend *old_schedule* with all of *demands* at time *now*.

    The reservations of the scheduled journeys (*known* maps their ids to |Demand|, *arrivals* holds the realized landings) are collected in a |BlockTable|. Demands that could end before the latest reservation go into existing gaps (latest deadline first); the others are scheduled behind the reservations by :func:`prepare_schedule`. When that search fails, the earliest-deadline demand of the second group moves to the front of the first and everything is tried again. Returns the extended schedule, or *old_schedule* itself (the same object) when no extension exists. Search incumbents go to *history*, see :func:`prepare_schedule`.
    """
    demands = list(demands)
    if not demands:
        return old_schedule
    base = BlockTable.from_schedule(old_schedule, known, network, arrivals)
    d1, d2 = split_demands(demands, network, base.max_hi)
    while True:
        table = base.copy()
        entries = insert_into_gaps(d1, table, network, now)
        if entries is None:
            break
        if not d2:
            return old_schedule.extended(entries)
        later, state = prepare_schedule(d2, network, now, table, rules, budget, pool_size, history)
        if len(later) == len(d2):
            entries.update(later.items())
            return old_schedule.extended(entries)
        log('Search found no schedule for {} later demands after {} nodes, moving demand {} into the gaps'.format(len(d2), state.explored, d2[0].id), 7)
        d1.insert(0, d2.pop(0))
    log('No feasible schedule found for {} demands'.format(len(demands)), 7)
    return old_schedule
