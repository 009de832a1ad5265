from bisect import bisect_left, bisect_right

from ..core.errors import SchedulerError
from ..core.functions import log
from ..model.cost import demand_map
from ..model.interval import Interval
from ..model.journey import journey_blocks

__all__ = ['BlockTable']


class BlockTable:
    """Reserved time on every parking spot of a network.

    For each node and each spot ``c`` in ``1..C_v`` the table keeps a sorted list of pairwise disjoint half-open windows together with the demand holding each of them. Zero-length windows never block anything and are not stored.

    A table is built from a schedule with :meth:`from_schedule`, which uses each journey's best information (realized stays at the nodes already reached, predicted blocking intervals further down the route).
    """

    def __init__(self, network):
        self.network = network
        self._lo = {v: [[] for _ in range(n.capacity)] for v, n in network.nodes.items()}
        self._hi = {v: [[] for _ in range(n.capacity)] for v, n in network.nodes.items()}
        self._ids = {v: [[] for _ in range(n.capacity)] for v, n in network.nodes.items()}


    @classmethod
    def from_schedule(cls, schedule, demands, network, arrivals=None):
        """Build the table of all journeys in *schedule*. Entries without a spot at some node get the first spot that is free (with a warning)."""
        table = cls(network)
        missing = []
        for journey in schedule.journeys(demand_map(demands), arrivals):
            for node, window in journey_blocks(journey, network).items():
                spot = journey.spots.get(node)
                if spot is None:
                    spot = table.first_fit(node, window)
                    missing.append((journey.demand_id, node))
                    if spot is None:
                        raise SchedulerError('No free spot at {} for demand {}'.format(node, journey.demand_id))
                table.add(node, spot, window, journey.demand_id)
        if missing:
            log('WARNING: {} scheduled stops had no spot assignment, first free spots used'.format(len(missing)), 3)
        return table


    def copy(self):
        ret = BlockTable.__new__(BlockTable)
        ret.network = self.network
        ret._lo = {v: [list(s) for s in spots] for v, spots in self._lo.items()}
        ret._hi = {v: [list(s) for s in spots] for v, spots in self._hi.items()}
        ret._ids = {v: [list(s) for s in spots] for v, spots in self._ids.items()}
        return ret


    def spots(self, node):
        return len(self._lo[node])


    def fits(self, node, spot, window):
        """Return ``True`` if *window* overlaps nothing reserved on *spot* (counted from 1) at *node*."""
        if window.hi <= window.lo:
            return True
        los, his = self._lo[node][spot-1], self._hi[node][spot-1]
        i = bisect_left(los, window.hi)
        return i == 0 or his[i-1] <= window.lo


    def first_fit(self, node, window):
        return next((c for c in range(1, self.spots(node) + 1) if self.fits(node, c, window)), None)


    def add(self, node, spot, window, demand_id):
        """Reserve *window* on *spot* at *node* for *demand_id*. Raise |SchedulerError| if the spot is taken."""
        if not 1 <= spot <= self.spots(node):
            raise SchedulerError('Node {} has no spot {}'.format(node, spot))
        if window.hi <= window.lo:
            return
        if not self.fits(node, spot, window):
            raise SchedulerError('Window {} of demand {} overlaps a reservation on spot {} at {}'.format(window, demand_id, spot, node))
        los = self._lo[node][spot-1]
        i = bisect_right(los, window.lo)
        los.insert(i, window.lo)
        self._hi[node][spot-1].insert(i, window.hi)
        self._ids[node][spot-1].insert(i, demand_id)


    def reserve(self, journey_windows, spots, demand_id):
        """Reserve all windows of one journey: *journey_windows* maps node -> |Interval|, *spots* node -> spot."""
        for node, window in journey_windows.items():
            self.add(node, spots[node], window, demand_id)


    def intervals(self, node, spot):
        """Return the reservations of *spot* at *node* as a list of ``(Interval, demand id)``."""
        return [(Interval(lo, hi), did) for lo, hi, did in zip(self._lo[node][spot-1], self._hi[node][spot-1], self._ids[node][spot-1])]


    def starts(self, node):
        """Return the start times of all reservations at *node*, over all spots."""
        return [lo for spot in self._lo[node] for lo in spot]


    @property
    def max_hi(self):
        """The latest end of any reservation, ``None`` for an empty table."""
        ends = [his[-1] for spots in self._hi.values() for his in spots if his]
        return max(ends) if ends else None


    def __len__(self):
        return sum(len(s) for spots in self._lo.values() for s in spots)


    def __str__(self):
        lines = []
        for node in sorted(self._lo):
            for c in range(1, self.spots(node) + 1):
                res = self.intervals(node, c)
                if res:
                    lines.append('{} spot {}: {}'.format(node, c, ', '.join('{} ({})'.format(w, d) for w, d in res)))
        return '\n'.join(lines) if lines else '<empty BlockTable>'
