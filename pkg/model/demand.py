from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, Mapping, Optional

from ..core.errors import DemandError, JourneyError
from ..tools.ticks import Ticks

__all__ = ['Demand', 'Journey', 'ScheduleEntry', 'Schedule', 'id_key']


def id_key(demand_id):
    """Sort key ordering integer ids numerically and before any other ids."""
    if isinstance(demand_id, int):
        return (0, demand_id, '')
    return (1, 0, str(demand_id))


@dataclass(frozen=True)
class Demand:
    """A request to fly route *route_id* and arrive at its destination by *deadline*. The demand becomes known to the scheduler at *release_time*. Times in ticks."""
    id: Any
    route_id: str
    deadline: int
    release_time: int = 0

    def __str__(self):
        return 'Demand {} on {} (deadline {} min, released {} min)'.format(
            self.id, self.route_id, Ticks.format(self.deadline), Ticks.format(self.release_time))


@dataclass(frozen=True)
class Journey:
    """The state of one scheduled flight: its |Demand|, the assigned *departure* from the origin, the realized *arrivals* (node -> tick, absent while the vehicle has not landed there) and the parking *spots* (node -> spot index, counted from 1).

    Departure from an intermediate node is not a free variable: it is the realized arrival plus the node service time. |Journey| objects are immutable, :meth:`landed` returns an updated copy.
    """
    demand: Demand
    departure: int
    arrivals: Mapping[str, int] = field(default_factory=dict)
    spots: Mapping[str, int] = field(default_factory=dict)

    @property
    def demand_id(self):
        return self.demand.id

    @property
    def route_id(self):
        return self.demand.route_id

    def landed(self, node, time):
        """Return a copy of this journey with the arrival at *node* recorded."""
        arrivals = dict(self.arrivals)
        arrivals[node] = time
        return replace(self, arrivals=arrivals)

    def reached(self, route, network=None):
        """Return the last route position with a realized arrival (0 if the vehicle has not landed anywhere yet).

        Raise |JourneyError| if some arrival precedes the departure from the node before it, that is the arrival there plus its service time when *network* is given.
        """
        last = 0
        prev = self.departure
        for p in range(1, route.k + 1):
            node = route.nodes[p]
            if node not in self.arrivals:
                break
            if self.arrivals[node] < prev:
                raise JourneyError('Demand {}: arrival at {} precedes the previous departure'.format(self.demand_id, node))
            last = p
            prev = self.arrivals[node] + (network.service(node) if network is not None else 0)
        for p in range(last + 2, route.k + 1):
            if route.nodes[p] in self.arrivals:
                raise JourneyError('Demand {}: arrival at {} recorded before arrival at {}'.format(self.demand_id, route.nodes[p], route.nodes[last+1]))
        return last


@dataclass(frozen=True)
class ScheduleEntry:
    """Departure (ticks) and spot assignment of one scheduled demand."""
    departure: int
    spots: Mapping[str, int] = field(default_factory=dict)


class Schedule:
    """An immutable map from demand id to |ScheduleEntry|.

    Schedules only ever grow: :meth:`extended` returns a new schedule with extra entries and refuses to touch a departure that is already committed.
    """

    def __init__(self, entries: Optional[Mapping[Any, ScheduleEntry]] = None):
        self._entries: Dict[Any, ScheduleEntry] = dict(entries or {})

    @property
    def ids(self):
        return frozenset(self._entries)

    def __contains__(self, demand_id):
        return demand_id in self._entries

    def __getitem__(self, demand_id):
        return self._entries[demand_id]

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def items(self):
        return self._entries.items()

    def __eq__(self, other):
        return isinstance(other, Schedule) and self._entries == other._entries

    def departure(self, demand_id):
        return self._entries[demand_id].departure

    def extended(self, entries: Mapping[Any, ScheduleEntry]):
        """Return a new |Schedule| with *entries* added."""
        clash = set(entries) & set(self._entries)
        if clash:
            raise DemandError('Demands {} are already scheduled'.format(sorted(clash, key=id_key)))
        new = dict(self._entries)
        new.update(entries)
        return Schedule(new)

    def journeys(self, demands: Mapping[Any, Demand], arrivals: Optional[Mapping[Any, Mapping[str, int]]] = None) -> Iterable[Journey]:
        """Yield a |Journey| per entry, attaching realized *arrivals* (demand id -> node -> tick) when given."""
        arrivals = arrivals or {}
        for did in sorted(self._entries, key=id_key):
            e = self._entries[did]
            if did not in demands:
                raise DemandError('Scheduled demand {} is unknown'.format(did))
            yield Journey(demands[did], e.departure, dict(arrivals.get(did, {})), dict(e.spots))

    def __str__(self):
        if not self._entries:
            return '<empty Schedule>'
        return '\n'.join('{}: depart {} min, spots {}'.format(did, Ticks.format(e.departure), dict(e.spots))
                         for did, e in sorted(self._entries.items(), key=lambda x: id_key(x[0])))
