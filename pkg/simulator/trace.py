import csv
from dataclasses import dataclass
from os.path import abspath, isfile
from typing import Any, Dict, List, Optional, Tuple

try:
    import dill as pickle
except ImportError:
    import pickle

from ..core.errors import FileError
from ..core.functions import log
from ..model.demand import id_key
from ..model.interval import Interval
from ..tools.ticks import Ticks

__all__ = ['TraceRow', 'Stay', 'WindowMiss', 'SimTrace', 'load_trace', 'TRACE_COLUMNS', 'GANTT_COLUMNS']

TRACE_COLUMNS = ['time_min', 'event', 'demand', 'node', 'spot']
GANTT_COLUMNS = ['node', 'demand', 'spot', 'block_lo_min', 'block_hi_min', 'realized_arrival_min']


@dataclass(frozen=True)
class TraceRow:
    time: int
    event: str
    demand: Any
    node: Optional[str] = None
    spot: Optional[int] = None


@dataclass
class Stay:
    """Realized occupancy of one spot: arrival at *arrival*, leaving at *leave* (``None`` while the simulation ended first)."""
    node: str
    demand: Any
    spot: Optional[int]
    arrival: int
    leave: Optional[int] = None

    def window(self, network):
        return Interval(self.arrival, self.arrival + network.service(self.node))


@dataclass(frozen=True)
class WindowMiss:
    """A realized arrival outside the arrival range predicted at the previous takeoff."""
    demand: Any
    node: str
    arrival: int
    predicted: Interval


class SimTrace:
    """Append-only record of one simulation run.

    *   ``rows``: the event log, one |TraceRow| per processed event,
    *   ``stays``: ``(demand id, node) -> Stay``,
    *   ``predicted``: ``(demand id, node) -> list of blocking windows`` predicted at each takeoff, oldest first,
    *   ``window_misses`` and ``shrink_violations``: realized arrivals outside their predicted range, predictions that grew after a landing,
    *   ``decisions``: the |Decision| records of the scheduler, with wall times,
    *   ``completions``: demand id -> arrival at the destination, ``dropped``: demand id -> drop time, ``drop_reasons``: demand id -> why it was dropped,
    *   ``schedule``, ``demands``, ``arrivals``: the final scheduler state.
    """

    def __init__(self, seed=None, horizon=None):
        self.seed = seed
        self.horizon = horizon
        self.rows: List[TraceRow] = []
        self.stays: Dict[Tuple[Any, str], Stay] = {}
        self.predicted: Dict[Tuple[Any, str], List[Interval]] = {}
        self.window_misses: List[WindowMiss] = []
        self.shrink_violations: List[Tuple[Any, str, Interval, Interval]] = []
        self.decisions = []
        self.completions: Dict[Any, int] = {}
        self.dropped: Dict[Any, int] = {}
        self.drop_reasons: Dict[Any, str] = {}
        self.schedule = None
        self.demands = {}
        self.arrivals = {}


    def record(self, time, event, demand, node=None, spot=None):
        self.rows.append(TraceRow(time, event, demand, node, spot))


    def predict(self, demand, node, window):
        """Store the blocking *window* predicted for *demand* at *node*. A prediction not contained in the previous one is a shrink violation."""
        seq = self.predicted.setdefault((demand, node), [])
        if seq and not seq[-1].contains(window):
            log('WARNING: predicted window {} of demand {} at {} grew from {}'.format(window, demand, node, seq[-1]), 3)
            self.shrink_violations.append((demand, node, seq[-1], window))
        seq.append(window)


    @property
    def scheduled_sod(self):
        """SoD of everything scheduled, in ticks."""
        if self.schedule is None:
            return 0
        return sum(self.demands[did].deadline - e.departure for did, e in self.schedule.items())


    @property
    def realized_sod(self):
        """SoD over the demands that reached their destination, in ticks."""
        return sum(self.demands[did].deadline - self.schedule.departure(did) for did in self.completions)


    def deadline_misses(self):
        return sorted((did for did, t in self.completions.items() if t > self.demands[did].deadline), key=id_key)


    def occupancy(self, node, network):
        """Return the realized occupancy of *node* as a step series ``[(time, count), ...]``, one entry per change."""
        deltas = {}
        for (_, v), stay in self.stays.items():
            if v != node:
                continue
            w = stay.window(network)
            if w.hi > w.lo:
                deltas[w.lo] = deltas.get(w.lo, 0) + 1
                deltas[w.hi] = deltas.get(w.hi, 0) - 1
        ret, count = [], 0
        for t in sorted(deltas):
            count += deltas[t]
            ret.append((t, count))
        return ret


    def summary(self):
        return {'seed': self.seed, 'demands': len(self.demands), 'scheduled': len(self.schedule or {}),
                'completed': len(self.completions), 'dropped': len(self.dropped),
                'deadline_misses': len(self.deadline_misses()), 'window_misses': len(self.window_misses),
                'shrink_violations': len(self.shrink_violations),
                'scheduled_sod_min': float(Ticks.to_minutes(self.scheduled_sod)),
                'realized_sod_min': float(Ticks.to_minutes(self.realized_sod)),
                'decisions': len(self.decisions)}


    def write_csv(self, filename):
        """Write the event log as CSV. Wall times are left out so that equal seeds give identical files."""
        with open(filename, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=TRACE_COLUMNS)
            writer.writeheader()
            for r in self.rows:
                writer.writerow({'time_min': Ticks.format(r.time), 'event': r.event, 'demand': r.demand,
                                 'node': '' if r.node is None else r.node, 'spot': '' if r.spot is None else r.spot})


    def gantt_rows(self):
        """Return one row per scheduled stop: node, demand, spot, the blocking window predicted at the origin takeoff and the realized arrival."""
        ret = []
        for (did, node), seq in sorted(self.predicted.items(), key=lambda x: (x[0][1], id_key(x[0][0]))):
            stay = self.stays.get((did, node))
            spot = self.schedule[did].spots.get(node) if self.schedule is not None and did in self.schedule else None
            ret.append({'node': node, 'demand': did, 'spot': '' if spot is None else spot,
                        'block_lo_min': Ticks.format(seq[0].lo), 'block_hi_min': Ticks.format(seq[0].hi),
                        'realized_arrival_min': '' if stay is None else Ticks.format(stay.arrival)})
        return ret


    def write_gantt(self, filename):
        with open(filename, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=GANTT_COLUMNS)
            writer.writeheader()
            writer.writerows(self.gantt_rows())


    def pickle(self, filename):
        """Save the whole trace to *filename* with ``dill``."""
        with open(filename, 'wb') as f:
            try:
                pickle.dump(self, f, -1)
            except Exception as e:
                log('Pickling of simulation trace failed: {}'.format(e), 1)


def load_trace(filename):
    """Load a |SimTrace| saved by :meth:`SimTrace.pickle`."""
    if not isfile(filename):
        raise FileError('File {} not present'.format(filename))
    with open(abspath(filename), 'rb') as f:
        return pickle.load(f)
