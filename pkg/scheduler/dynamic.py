import csv
import time
from dataclasses import dataclass, field, replace
from os.path import abspath, isfile
from typing import Any, Dict, List, Optional, Tuple

try:
    import dill as pickle
except ImportError:
    import pickle

from ..core.errors import FileError, SchedulerError
from ..core.functions import log
from ..model.demand import Schedule, id_key
from ..model.journey import latest_feasible_times, screen_demands
from ..tools.ticks import Ticks
from .bnb import Incumbent, PruningRules, SearchBudget
from .insertion import insertion

__all__ = ['SchedulerConfig', 'SchedulingEvent', 'Decision', 'SchedulerState', 'event_scheduler', 'schedule_static', 'load_state', 'HISTORY_COLUMNS']

HISTORY_COLUMNS = ['now_min', 'elapsed_s', 'nodes', 'sod_min', 'demands']


@dataclass(frozen=True)
class SchedulerConfig:
    """Options of the event-triggered scheduler.

    *   ``k0``: at most this many earliest-deadline eligible demands are handed to one insertion attempt,
    *   ``budget_nodes`` / ``budget_ms``: limit of each branch-and-bound search, the node budget wins when both are set,
    *   ``pool_size``: number of complete branches the search keeps,
    *   ``literal_k``: start from ``max(k0, |eligible|)`` instead of ``min``,
    *   ``rules``: the |PruningRules| in effect.
    """
    k0: int = 10
    budget_nodes: Optional[int] = None
    budget_ms: Optional[int] = 2000
    pool_size: int = 64
    literal_k: bool = False
    rules: PruningRules = field(default_factory=PruningRules)

    def __post_init__(self):
        if self.k0 < 1:
            raise SchedulerError('k0 must be at least 1, got {}'.format(self.k0))
        if self.pool_size < 1:
            raise SchedulerError('pool_size must be at least 1, got {}'.format(self.pool_size))

    def budget(self):
        if self.budget_nodes is not None:
            return SearchBudget(nodes=self.budget_nodes)
        if self.budget_ms is not None:
            return SearchBudget(seconds=self.budget_ms / 1000)
        return SearchBudget()

    @classmethod
    def from_settings(cls, settings):
        """Build the options from a |Settings| branch shaped like ``config.scheduler``."""
        return cls(k0=settings.value('k0', 10), budget_nodes=settings.value('budget_nodes', None),
                   budget_ms=settings.value('budget_ms', 2000), pool_size=settings.value('pool_size', 64),
                   literal_k=settings.value('literal_k', False), rules=PruningRules.from_settings(settings.value('rules', {})))


@dataclass(frozen=True)
class SchedulingEvent:
    """Something the scheduler reacts to at *time*: ``'release'`` of new *demands*, ``'landing'`` of *demand_id* at *node* (both left out when the caller stored the arrivals itself), or ``'retry'`` (no news, try again)."""
    time: int
    kind: str
    demands: Tuple[Any, ...] = ()
    demand_id: Any = None
    node: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ('release', 'landing', 'retry'):
            raise SchedulerError('Unknown scheduling event {}'.format(self.kind))
        if self.kind == 'landing' and (self.demand_id is None) != (self.node is None):
            raise SchedulerError('A landing event needs both a demand and a node, or neither')


@dataclass(frozen=True)
class Decision:
    """One call of the scheduler: event time and kind, ids newly scheduled, eligible count, batch size that succeeded (0 for none) and the wall time spent, seconds."""
    time: int
    kind: str
    scheduled: Tuple[Any, ...]
    eligible: int
    batch: int
    wall: float


class SchedulerState:
    """Everything the event-triggered scheduler carries from one event to the next: the current time, all released demands, the committed schedule, the realized arrivals (demand id -> node -> tick), the dropped demands (id -> drop time), the decision log and the |Incumbent| history of every search."""

    def __init__(self, network):
        self.network = network
        self.now = None
        self.demands: Dict[Any, Any] = {}
        self.schedule = Schedule()
        self.arrivals: Dict[Any, Dict[str, int]] = {}
        self.dropped: Dict[Any, int] = {}
        self.decisions: List[Decision] = []
        self.history: List[Incumbent] = []


    def eligible(self):
        """Return the released demands neither scheduled nor dropped, by ascending deadline (ties by id)."""
        ret = [d for did, d in self.demands.items() if did not in self.schedule and did not in self.dropped]
        return sorted(ret, key=lambda d: (d.deadline, id_key(d.id)))


    @property
    def complete(self):
        return not self.eligible()


    def release(self, demands):
        accepted, rejected = screen_demands(demands, self.network)
        for d in accepted + rejected:
            if d.id in self.demands or d.id in self.dropped:
                raise SchedulerError('Demand {} was released twice'.format(d.id))
        for d in accepted:
            self.demands[d.id] = d
        for d in rejected:
            self.demands[d.id] = d
            self.dropped[d.id] = self.now


    def land(self, demand_id, node, time):
        if demand_id not in self.schedule:
            raise SchedulerError('Demand {} landed without being scheduled'.format(demand_id))
        self.arrivals.setdefault(demand_id, {})[node] = time


    def drop_expired(self):
        """Drop every eligible demand that can no longer depart in time."""
        for d in self.eligible():
            origin = self.network.route(d.route_id).origin
            if latest_feasible_times(d, self.network)[origin] < self.now:
                log('WARNING: demand {} dropped at {} min, its deadline {} min is out of reach'.format(d.id, Ticks.format(self.now), Ticks.format(d.deadline)), 3)
                self.dropped[d.id] = self.now


    def write_history(self, filename):
        """Write the incumbent history as CSV, one row per improvement: search instant, seconds and nodes into that search, SoD of the searched demands and their number."""
        with open(filename, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=HISTORY_COLUMNS)
            writer.writeheader()
            for h in self.history:
                writer.writerow({'now_min': Ticks.format(h.now), 'elapsed_s': '{:.6f}'.format(h.elapsed), 'nodes': h.nodes,
                                 'sod_min': Ticks.format(h.sod), 'demands': h.demands})


    def pickle(self, filename):
        """Save this state to *filename* with ``dill``."""
        with open(filename, 'wb') as f:
            try:
                pickle.dump(self, f, -1)
            except Exception as e:
                log('Pickling of scheduler state failed: {}'.format(e), 1)


def load_state(filename):
    """Load a |SchedulerState| saved by :meth:`SchedulerState.pickle`."""
    if not isfile(filename):
        raise FileError('File {} not present'.format(filename))
    with open(abspath(filename), 'rb') as f:
        return pickle.load(f)


#===========================================================================


def event_scheduler(network, event, state, config=None):
    """React to *event* and return ``(schedule, state)``.

    The event is recorded first (released demands are screened, landings stored as realized arrivals), then unscheduled demands whose deadline has become unreachable are dropped. Of the remaining eligible demands the ``K = min(k0, |eligible|)`` earliest deadlines are handed to :func:`insertion`; on failure ``K`` is lowered by one until an attempt succeeds or ``K`` reaches zero. Committed departures are never touched and new departures are never earlier than the event time, so the worst outcome is the previous schedule.
    """
    config = config or SchedulerConfig()
    if state.network is not network:
        state.network = network
    if state.now is not None and event.time < state.now:
        raise SchedulerError('Event at {} min precedes the current time {} min'.format(Ticks.format(event.time), Ticks.format(state.now)))
    state.now = event.time
    if event.kind == 'release':
        state.release(event.demands)
    elif event.kind == 'landing' and event.demand_id is not None:
        state.land(event.demand_id, event.node, event.time)
    state.drop_expired()

    eligible = state.eligible()
    if not eligible:
        return state.schedule, state

    start = time.perf_counter()
    K = max(config.k0, len(eligible)) if config.literal_k else min(config.k0, len(eligible))
    K = min(K, len(eligible))
    before = state.schedule
    while K > 0:
        new = insertion(eligible[:K], state.schedule, state.now, state.arrivals, network, state.demands,
                        config.rules, config.budget(), config.pool_size, state.history)
        if new is not state.schedule:
            state.schedule = new
            break
        K -= 1
    added = tuple(sorted(state.schedule.ids - before.ids, key=id_key))
    wall = time.perf_counter() - start
    state.decisions.append(Decision(state.now, event.kind, added, len(eligible), K, wall))
    if added:
        log('{} min: scheduled {} of {} eligible demands ({:.3f} s)'.format(Ticks.format(state.now), len(added), len(eligible), wall), 5)
    else:
        log('{} min: none of {} eligible demands could be scheduled'.format(Ticks.format(state.now), len(eligible)), 5)
    return state.schedule, state


def schedule_static(network, demands, now=None, config=None, state=None):
    """Schedule *demands* all released at *now* (the earliest release time by default) and return the final |SchedulerState|.

    All demands go to a single search, whatever ``k0`` says, so the whole budget of *config* is spent improving one schedule of the full set. When that search leaves demands out, :func:`event_scheduler` is called again at the same instant until every demand is scheduled or dropped, or an attempt makes no progress.
    """
    demands = list(demands)
    config = config or SchedulerConfig()
    config = replace(config, k0=max(config.k0, len(demands), 1))
    if now is None:
        now = min((d.release_time for d in demands), default=0)
    state = state or SchedulerState(network)
    event_scheduler(network, SchedulingEvent(now, 'release', tuple(demands)), state, config)
    while state.eligible():
        count = len(state.schedule)
        event_scheduler(network, SchedulingEvent(now, 'retry'), state, config)
        if len(state.schedule) == count:
            break
    return state
