import time
from dataclasses import dataclass, fields
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import SchedulerError
from ..core.functions import log
from ..model.demand import Journey, Schedule, ScheduleEntry, id_key
from ..model.journey import journey_blocks, latest_feasible_times, m_span
from ..tools.ticks import Ticks
from .blocktable import BlockTable
from .placement import latest_departure, route_profile

__all__ = ['PruningRules', 'SearchBudget', 'StoredBranch', 'Incumbent', 'BnBState', 'bnb_schedule', 'prepare_schedule', 'assign_spots']


@dataclass(frozen=True)
class PruningRules:
    """Switches for the pruning rules of :func:`bnb_schedule`. Apart from ``last_placement``, which can cut off the optimum, turning rules off never changes the outcome, only the amount of search."""
    negative_deadline: bool = True
    capacity: bool = True
    last_placement: bool = True
    route_order: bool = True
    stored_reuse: bool = True
    bound: bool = True

    @classmethod
    def none(cls):
        return cls(**{f.name: False for f in fields(cls)})

    @classmethod
    def from_settings(cls, settings):
        return cls(**{f.name: bool(settings.get(f.name, True)) for f in fields(cls)})


@dataclass(frozen=True)
class SearchBudget:
    """Limit of one search, in explored nodes, in seconds, or both (``None`` means unlimited). Only node budgets give reproducible results.

    The budget is enforced once a first complete branch is stored; before that the search may run up to *grace* times longer.
    """
    nodes: Optional[int] = None
    seconds: Optional[float] = None
    grace: int = 20


@dataclass(frozen=True)
class StoredBranch:
    """A complete assignment found by the search, listed in assignment order (latest arrival first)."""
    order: Tuple[Any, ...]
    departures: Dict[Any, int]
    spots: Dict[Any, Dict[str, int]]
    sod: int

    @property
    def total(self):
        return sum(self.departures.values())


@dataclass(frozen=True)
class Incumbent:
    """A new best branch of one search: search start time *now*, seconds and nodes spent so far, its SoD and how many demands it schedules."""
    now: int
    elapsed: float
    nodes: int
    sod: int
    demands: int


class _Expired(Exception):
    pass


class BnBState:
    """Working data of one :func:`bnb_schedule` run.

    The demand x node matrices follow the order of *demands* (ascending deadline) and the column order ``self.nodes``:

    *   ``DDL``: latest feasible arrival (ticks) under the current partial assignment,
    *   ``PT``: span of the blocking interval,
    *   ``RT``: shortest time from the origin departure to the arrival,
    *   ``onroute``: mask of the nodes each demand passes past its origin.

    ``RID``/``RdpT`` hold the branch being explored, ``pool`` the stored complete branches (at most *pool_size*, the worst evicted first) and ``fnode`` node -> per-spot next-free-before times.
    """

    def __init__(self, demands, network, now, table=None, pool_size=64):
        self.demands = list(demands)
        self.network = network
        self.now = now
        self.table = table if table is not None else BlockTable(network)
        self.pool_size = pool_size
        self.profiles = [route_profile(d, network) for d in self.demands]
        self.lower = [max(now, d.release_time) for d in self.demands]
        self.nodes = sorted({v for p in self.profiles for v in p.nodes})
        col = {v: i for i, v in enumerate(self.nodes)}
        n, m = len(self.demands), len(self.nodes)
        self.DDL = np.zeros((n, m), dtype=np.int64)
        self.PT = np.zeros((n, m), dtype=np.int64)
        self.RT = np.zeros((n, m), dtype=np.int64)
        self.onroute = np.zeros((n, m), dtype=bool)
        for i, d in enumerate(self.demands):
            route = network.route(d.route_id)
            lft = latest_feasible_times(d, network)
            for p in range(1, route.k + 1):
                j = col[route.nodes[p]]
                self.DDL[i, j] = lft[route.nodes[p]]
                self.PT[i, j] = m_span(route, 1, p, network)
                self.RT[i, j] = self.profiles[i].lo[p-1]
                self.onroute[i, j] = True
        self.capacity = np.array([network.capacity(v) for v in self.nodes], dtype=np.int64)
        self.service = np.array([network.service(v) for v in self.nodes], dtype=np.int64)

        ends = [p.latest + p.hi[-1] for p in self.profiles]
        top = max(ends) if ends else 0
        self.fnode = {v: [top] * network.capacity(v) for v in network.nodes}
        self.RID: List[int] = []
        self.RdpT: List[int] = []
        self.pool: List[StoredBranch] = []
        self.best_total: Optional[int] = None
        self.memo = {}
        self.explored = 0
        self.history: List[Incumbent] = []
        self.started = time.perf_counter()
        self.pruned = dict.fromkeys(['negative_deadline', 'capacity', 'route_order', 'bound', 'stored_reuse'], 0)


    @property
    def SID(self):
        return [b.order for b in self.pool]


    @property
    def SdpT(self):
        return [b.departures for b in self.pool]


    def store(self, assignment):
        """Add a complete branch given as a list of ``(index, departure, spots)`` in assignment order."""
        order = tuple(self.demands[i].id for i, _, _ in assignment)
        deps = {self.demands[i].id: d for i, d, _ in assignment}
        spots = {self.demands[i].id: dict(s) for i, _, s in assignment}
        sod = sum(self.demands[i].deadline - d for i, d, _ in assignment)
        branch = StoredBranch(order, deps, spots, sod)
        if len(self.pool) >= self.pool_size:
            worst = min(range(len(self.pool)), key=lambda k: (self.pool[k].total, -k))
            if self.pool[worst].total >= branch.total:
                return
            del self.pool[worst]
        self.pool.append(branch)
        if self.best_total is None or branch.total > self.best_total:
            self.best_total = branch.total
            self.history.append(Incumbent(self.now, time.perf_counter() - self.started, self.explored, sod, len(order)))


    def best(self):
        """Return the stored branch with the largest sum of departures (earliest stored on ties), or ``None``."""
        if not self.pool:
            return None
        return max(enumerate(self.pool), key=lambda x: (x[1].total, -x[0]))[1]


    def caps_key(self):
        return tuple((v, tuple(c)) for v, c in sorted(self.fnode.items()))


#===========================================================================


class _Search:

    def __init__(self, state, rules, budget):
        self.state = state
        self.rules = rules
        self.budget = budget
        self.start = time.perf_counter()

    def expired(self):
        s, b = self.state, self.budget
        factor = 1 if s.pool else b.grace
        if b.nodes is not None and s.explored >= b.nodes * factor:
            return True
        if b.seconds is not None and time.perf_counter() - self.start >= b.seconds * factor:
            return True
        return False

    def place(self, i):
        s = self.state
        p = s.profiles[i]
        return latest_departure(p, s.table, p.latest, s.lower[i], s.fnode)

    def capacity_fails(self, U):
        s = self.state
        idx = np.array(U)
        mask = s.onroute[idx]
        need = np.where(mask, s.PT[idx], 0).sum(axis=0)
        starts = np.array([s.lower[i] for i in U], dtype=np.int64)[:, None] + s.RT[idx]
        big = np.iinfo(np.int64).max // 4
        begin = np.where(mask, starts, big).min(axis=0)
        end = np.where(mask, s.DDL[idx] + s.service[None, :], -big).max(axis=0)
        active = mask.any(axis=0)
        window = np.maximum(end - begin, 0)
        return bool((active & (s.capacity * window < need)).any())

    def route_blocked(self, i, U):
        s = self.state
        d = s.demands[i]
        key = (d.deadline, id_key(d.id))
        return any(s.demands[j].route_id == d.route_id and (s.demands[j].deadline, id_key(s.demands[j].id)) > key for j in U if j != i)

    def lower_caps(self, i, placement):
        s = self.state
        saved = []
        for v, c in placement.spots.items():
            saved.append((v, c, s.fnode[v][c-1]))
            s.fnode[v][c-1] = min(s.fnode[v][c-1], placement.windows[v].lo)
        return saved

    def restore_caps(self, saved):
        for v, c, old in reversed(saved):
            self.state.fnode[v][c-1] = old

    def is_last(self, j0, U, placements):
        """Return ``True`` if placing *j0* at its latest departure leaves the latest departure of every other unassigned demand unchanged."""
        s = self.state
        others = [i for i in U if i != j0]
        saved = self.lower_caps(j0, placements[j0])
        try:
            for v in s.profiles[j0].nodes:
                col = s.nodes.index(v)
                through = [i for i in others if s.onroute[i, col]]
                num = min(s.network.capacity(v), len(through))
                if num == 0:
                    continue
                sups = sorted((self.latest_arrival(i, v, placements) + s.network.service(v) for i in through), reverse=True)[:num]
                caps = sorted(s.fnode[v], reverse=True)
                if any(caps[k] < sups[k] for k in range(num)):
                    return False
            for i in others:
                again = self.place(i)
                if again is None or again.departure != placements[i].departure:
                    return False
            return True
        finally:
            self.restore_caps(saved)

    def latest_arrival(self, i, v, placements):
        s = self.state
        p = s.profiles[i]
        k = p.nodes.index(v)
        return placements[i].departure + p.hi[k] - s.network.service(v)

    def run(self, U, prefix_total, assignment):
        """Explore the subproblem of the unassigned indices *U*. Return ``(complete, best suffix)`` where *complete* tells whether the subtree was searched without bound pruning or budget cut and the suffix is the best list of ``(index, departure, spots)`` found below, with its departure sum."""
        s, rules = self.state, self.rules
        s.explored += 1
        if self.expired():
            raise _Expired()

        placements = {}
        for i in U:
            placements[i] = self.place(i)
            if placements[i] is None and rules.negative_deadline:
                s.pruned['negative_deadline'] += 1
                return True, None
        for i in U:
            if placements[i] is not None:
                p = placements[i]
                for v, hi in zip(s.profiles[i].nodes, s.profiles[i].hi):
                    s.DDL[i, s.nodes.index(v)] = p.departure + hi - s.network.service(v)

        if rules.capacity and self.capacity_fails(U):
            s.pruned['capacity'] += 1
            return True, None

        if rules.bound and s.best_total is not None and all(placements[i] is not None for i in U):
            if prefix_total + sum(placements[i].departure for i in U) <= s.best_total:
                s.pruned['bound'] += 1
                return False, None

        if len(U) == 1:
            i = U[0]
            if placements[i] is None:
                return True, None
            leaf = [(i, placements[i].departure, placements[i].spots)]
            s.store(assignment + leaf)
            return True, (placements[i].departure, leaf)

        key = (frozenset(U), s.caps_key())
        if rules.stored_reuse and key in s.memo:
            s.pruned['stored_reuse'] += 1
            best = s.memo[key]
            if best is not None:
                s.store(assignment + best[1])
            return True, best

        order = sorted(U, key=lambda i: (-s.demands[i].deadline, id_key(s.demands[i].id)))
        candidates = [i for i in order if placements[i] is not None]
        if rules.route_order:
            kept = [i for i in candidates if not self.route_blocked(i, U)]
            s.pruned['route_order'] += len(candidates) - len(kept)
            candidates = kept
        if rules.last_placement and candidates and self.is_last(candidates[0], U, placements):
            candidates = candidates[:1]

        complete, best = True, None
        for i in candidates:
            p = placements[i]
            saved = self.lower_caps(i, p)
            rest = [j for j in U if j != i]
            ddl_saved = s.DDL[rest].copy()
            step = [(i, p.departure, p.spots)]
            s.RID.append(s.demands[i].id)
            s.RdpT.append(p.departure)
            try:
                sub_complete, sub = self.run(rest, prefix_total + p.departure, assignment + step)
            finally:
                s.DDL[rest] = ddl_saved
                s.RID.pop()
                s.RdpT.pop()
                self.restore_caps(saved)
            complete = complete and sub_complete
            if sub is not None:
                total = p.departure + sub[0]
                if best is None or total > best[0]:
                    best = (total, step + sub[1])
        if complete and rules.stored_reuse:
            s.memo[key] = best
        return complete, best


def bnb_schedule(sorted_demands, state, budget=None, rules=None):
    """Search arrival orders of *sorted_demands* (ascending deadline, the order of *state*) and return the stored branches as ``(SID, SdpT)``.

    The search is depth first and fixes the demand arriving last first. Each child places one demand at its latest feasible departure given the reservations in ``state.table`` and the per-spot next-free-before times ``state.fnode`` left by the demands placed before it. Branches are abandoned when

    *   some unassigned demand has no feasible departure left,
    *   the span time the unassigned demands need at a node exceeds what its spots offer between their earliest arrival and latest departure,
    *   the committed departures plus the latest departures of the rest cannot beat the best stored branch.

    The last-deadline demand is placed alone when it leaves every other latest departure unchanged, demands sharing a route are placed in deadline order, and subproblems already solved (same unassigned set and same spot caps) are reused. The search is anytime: when *budget* runs out the branches stored so far are returned. An empty ``SID`` means nothing was found.
    """
    budget = budget or SearchBudget()
    rules = rules or PruningRules()
    if [d.id for d in sorted_demands] != [d.id for d in state.demands]:
        raise SchedulerError('Search state was prepared for other demands')
    if not state.demands:
        return [], []
    search = _Search(state, rules, budget)
    try:
        search.run(list(range(len(state.demands))), 0, [])
    except _Expired:
        if state.pool:
            log('Search budget spent after {} nodes, {} branches stored'.format(state.explored, len(state.pool)), 7)
        else:
            log('WARNING: search budget spent after {} nodes without a complete branch'.format(state.explored), 3)
    log('Search explored {} nodes for {} demands, pruned {}'.format(state.explored, len(state.demands), state.pruned), 7)
    return state.SID, state.SdpT


#===========================================================================


def assign_spots(ordered_journeys, network, block_table=None):
    """Give every journey a spot at each of its non-origin nodes.

    Journeys are processed in the given order (latest sup at the destination first). At each node the spot with the largest next-free-before time that is free in *block_table* and whose next-free-before time is not earlier than the end of the journey's window is taken, ties to the lowest spot index; the spot's next-free-before time then drops to the window start. Returns demand id -> node -> spot. Raise |SchedulerError| when no spot fits.
    """
    table = block_table if block_table is not None else BlockTable(network)
    journeys = list(ordered_journeys)
    blocks = [journey_blocks(j, network) for j in journeys]
    top = max((w.hi for b in blocks for w in b.values()), default=0)
    fnode = {v: [top] * network.capacity(v) for v in network.nodes}
    ret = {}
    for journey, windows in zip(journeys, blocks):
        spots = {}
        for v, window in windows.items():
            best = None
            for c in range(1, network.capacity(v) + 1):
                if window.hi > fnode[v][c-1] or not table.fits(v, c, window):
                    continue
                if best is None or fnode[v][c-1] > fnode[v][best-1]:
                    best = c
            if best is None:
                raise SchedulerError('No spot at {} for demand {} in {}'.format(v, journey.demand_id, window))
            fnode[v][best-1] = min(fnode[v][best-1], window.lo)
            spots[v] = best
        ret[journey.demand_id] = spots
    return ret


def prepare_schedule(demands, network, now, table=None, rules=None, budget=None, pool_size=64, history=None):
    """Schedule *demands* behind the reservations of *table* and return ``(Schedule, BnBState)``.

    The demands are sorted by ascending deadline, searched with :func:`bnb_schedule`, and the stored branch with the largest sum of departures (smallest SoD) is expanded into a |Schedule| whose spots come from :func:`assign_spots` run in the branch order. The schedule is empty when no branch was found. The incumbents of the search are appended to the *history* list when one is given.
    """
    ordered = sorted(demands, key=lambda d: (d.deadline, id_key(d.id)))
    state = BnBState(ordered, network, now, table, pool_size)
    bnb_schedule(ordered, state, budget, rules)
    if history is not None:
        history.extend(state.history)
    best = state.best()
    if best is None:
        return Schedule(), state
    byid = {d.id: d for d in ordered}
    journeys = [Journey(byid[did], best.departures[did]) for did in best.order]
    spots = assign_spots(journeys, network, state.table)
    log('Prepared {} departures, SoD {} min after {} nodes'.format(len(best.order), Ticks.format(best.sod), state.explored), 7)
    return Schedule({did: ScheduleEntry(best.departures[did], spots[did]) for did in best.order}), state
