from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.errors import SimulationError
from ..core.functions import log
from ..model.cost import demand_map
from ..model.demand import Journey, id_key
from ..model.journey import journey_blocks, latest_feasible_times
from ..scheduler.dynamic import SchedulerConfig, SchedulerState, SchedulingEvent, event_scheduler
from ..tools.ticks import Ticks
from .events import EventQueue, SimEvent
from .trace import SimTrace, Stay, WindowMiss

__all__ = ['SimConfig', 'TravelSampler', 'run_simulation']

LAWS = ('uniform',)


@dataclass(frozen=True)
class SimConfig:
    """Options of one simulation run: the random *seed*, the *horizon* in ticks (``None`` runs until nothing is left to happen), the travel time *law* and whether every landing calls the scheduler."""
    seed: int = 0
    horizon: Optional[int] = None
    law: str = 'uniform'
    reschedule_on_landing: bool = False

    def __post_init__(self):
        if self.horizon is not None and self.horizon <= 0:
            raise SimulationError('Simulation horizon must be positive')
        if self.law not in LAWS:
            raise SimulationError("Unknown travel time law '{}', available: {}".format(self.law, ', '.join(LAWS)))

    @classmethod
    def from_settings(cls, settings, seed=0, horizon=None):
        return cls(seed, horizon, settings.value('law', 'uniform'), bool(settings.value('reschedule_on_landing', False)))


class TravelSampler:
    """Draws realized edge travel times, in whole ticks, uniformly from ``[x_min, x_max]`` (both ends included)."""

    def __init__(self, seed, law='uniform'):
        if law not in LAWS:
            raise SimulationError("Unknown travel time law '{}'".format(law))
        self.rng = np.random.default_rng(seed)

    def __call__(self, edge):
        return int(self.rng.integers(edge.x_min, edge.x_max + 1))


class _Run:

    def __init__(self, network, demands, scheduler_config, sim_config):
        self.network = network
        self.demands = demand_map(demands)
        self.scheduler_config = scheduler_config
        self.sim_config = sim_config
        self.sample = TravelSampler(sim_config.seed, sim_config.law)
        self.state = SchedulerState(network)
        self.trace = SimTrace(sim_config.seed, sim_config.horizon)
        self.queue = EventQueue()
        self.launched = set()
        self.retries = set()
        self.now = None
        for d in sorted(self.demands.values(), key=lambda d: (d.release_time, id_key(d.id))):
            self.queue.push(SimEvent(d.release_time, 'demand_release', d.id))

    def journey(self, did):
        entry = self.state.schedule[did]
        return Journey(self.demands[did], entry.departure, dict(self.state.arrivals.get(did, {})), dict(entry.spots))

    def takeoff(self, ev):
        route = self.network.route(self.demands[ev.demand_id].route_id)
        node = route.nodes[ev.position]
        self.trace.record(ev.time, 'takeoff', ev.demand_id, node)
        journey = self.journey(ev.demand_id)
        for v, window in journey_blocks(journey, self.network).items():
            if route.position(v) > ev.position:
                self.trace.predict(ev.demand_id, v, window)
        edge = self.network.edges[route.edge_ids[ev.position]]
        self.queue.push(SimEvent(ev.time + self.sample(edge), 'landing', ev.demand_id, ev.position + 1))

    def landing(self, ev):
        did = ev.demand_id
        route = self.network.route(self.demands[did].route_id)
        node = route.nodes[ev.position]
        spot = self.state.schedule[did].spots.get(node)
        self.trace.record(ev.time, 'landing', did, node, spot)
        window = self.trace.predicted[did, node][-1]
        latest = window.hi - self.network.service(node)
        if not window.lo <= ev.time <= latest:
            log('WARNING: demand {} landed at {} at {} min, outside the predicted range {}'.format(did, node, Ticks.format(ev.time), window), 3)
            self.trace.window_misses.append(WindowMiss(did, node, ev.time, window))
        self.trace.stays[did, node] = Stay(node, did, spot, ev.time)
        self.state.land(did, node, ev.time)
        if ev.position == route.k:
            self.trace.completions[did] = ev.time
        self.queue.push(SimEvent(ev.time + self.network.service(node), 'service_complete', did, ev.position))

    def service_complete(self, ev):
        did = ev.demand_id
        route = self.network.route(self.demands[did].route_id)
        node = route.nodes[ev.position]
        self.trace.stays[did, node].leave = ev.time
        self.trace.record(ev.time, 'service_complete', did, node, self.trace.stays[did, node].spot)
        if ev.position < route.k:
            self.queue.push(SimEvent(ev.time, 'takeoff', did, ev.position))

    def schedule(self, t, released, landed, retried):
        if released:
            event = SchedulingEvent(t, 'release', tuple(released))
        elif landed and (self.state.eligible() or self.sim_config.reschedule_on_landing):
            event = SchedulingEvent(t, 'landing')
        elif retried and self.state.eligible():
            event = SchedulingEvent(t, 'retry')
        else:
            return
        dropped = set(self.state.dropped)
        event_scheduler(self.network, event, self.state, self.scheduler_config)
        for did in sorted(set(self.state.dropped) - dropped, key=id_key):
            self.drop(t, did, 'rejected at release' if did in {d.id for d in released} else 'deadline out of reach')
        for did in sorted(self.state.schedule.ids - self.launched, key=id_key):
            self.launched.add(did)
            departure = self.state.schedule.departure(did)
            self.trace.record(t, 'scheduled', did)
            self.queue.push(SimEvent(departure, 'takeoff', did, 0))
        self.plan_retries(t)

    def plan_retries(self, t):
        """Queue a retry for every waiting demand at its latest origin departure, or just after it once that has passed."""
        for d in self.state.eligible():
            latest = latest_feasible_times(d, self.network)[self.network.route(d.route_id).origin]
            at = latest if t < latest else latest + 1
            if (d.id, at) not in self.retries:
                self.retries.add((d.id, at))
                self.queue.push(SimEvent(at, 'retry', d.id))

    def drop(self, t, did, reason):
        self.state.dropped.setdefault(did, t)
        self.trace.drop_reasons[did] = reason
        self.trace.record(t, 'drop', did)

    def run(self):
        horizon = self.sim_config.horizon
        while self.queue:
            t = self.queue.peek_time()
            if horizon is not None and t > horizon:
                break
            self.now = t
            released, landed, retried = [], [], []
            for ev in self.queue.pop_batch():
                if ev.kind == 'landing':
                    self.landing(ev)
                    landed.append(ev.demand_id)
                elif ev.kind == 'service_complete':
                    self.service_complete(ev)
                elif ev.kind == 'demand_release':
                    self.trace.record(t, 'demand_release', ev.demand_id)
                    released.append(self.demands[ev.demand_id])
                elif ev.kind == 'retry':
                    retried.append(ev.demand_id)
                else:
                    self.takeoff(ev)
            self.schedule(t, released, landed, retried)
        return self.finish()

    def finish(self):
        horizon = self.sim_config.horizon
        cut = horizon is not None and bool(self.queue)
        end = horizon if cut else self.now
        for d in self.state.eligible():
            log('WARNING: demand {} still waits at {} min, dropped'.format(d.id, Ticks.format(end)), 3)
            self.drop(end, d.id, 'unresolved at horizon' if cut else 'no scheduling event left')
        tr = self.trace
        tr.schedule = self.state.schedule
        tr.demands = dict(self.state.demands)
        tr.arrivals = {did: dict(a) for did, a in self.state.arrivals.items()}
        tr.dropped = dict(self.state.dropped)
        tr.decisions = list(self.state.decisions)
        misses = tr.deadline_misses()
        if misses:
            log('WARNING: demands {} arrived after their deadline'.format(misses), 3)
        log('Simulation (seed {}) finished: {} of {} demands completed, {} dropped'.format(
            tr.seed, len(tr.completions), len(self.demands), len(tr.dropped)), 5)
        return tr


def run_simulation(network, demands, scheduler_config=None, sim_config=None):
    """Simulate *demands* on *network* and return the |SimTrace|.

    Demands are released at their release times, travel times are drawn per edge with the seeded |TravelSampler|, and every instant with releases (or with landings while demands wait to be scheduled) calls :func:`event_scheduler` once, after all events of that instant were processed. Demands still waiting get a retry at their latest origin departure and are dropped just after it, and whatever waits at the horizon is dropped there; every drop is recorded with its reason in ``drop_reasons``. Events sharing an instant are handled landings first, then service completions, releases, takeoffs and retries. Equal seeds give identical traces.
    """
    scheduler_config = scheduler_config or SchedulerConfig()
    sim_config = sim_config or SimConfig()
    return _Run(network, demands, scheduler_config, sim_config).run()
