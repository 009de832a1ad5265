import csv

import pytest

from vertisched import (SimConfig, SchedulerConfig, TravelSampler, EventQueue, SimEvent, run_simulation, replay_audit, load_trace,
                        load_case, latest_feasible_times, sod_cost, sod_lower_bound, TRACE_COLUMNS, GANTT_COLUMNS, VertiError)

from builders import M, chain, two_link, star, ex1_demands, demand

NET = two_link()
CONFIG = SchedulerConfig(budget_nodes=2000)


def test_event_queue():
    """Test :class:`EventQueue` ordering of events sharing an instant."""
    q = EventQueue()
    q.push(SimEvent(5, 'retry', 4))
    q.push(SimEvent(5, 'takeoff', 1, 0))
    q.push(SimEvent(5, 'demand_release', 2))
    q.push(SimEvent(3, 'takeoff', 9, 0))
    q.push(SimEvent(5, 'service_complete', 1, 1))
    q.push(SimEvent(5, 'landing', 3, 1))
    q.push(SimEvent(5, 'landing', 2, 2))
    assert q.peek_time() == 3
    assert q.pop().demand_id == 9
    batch = q.pop_batch()
    assert [(e.kind, e.demand_id) for e in batch] == [('landing', 2), ('landing', 3), ('service_complete', 1),
                                                      ('demand_release', 2), ('takeoff', 1), ('retry', 4)]
    assert not q and q.peek_time() is None
    try:
        SimEvent(0, 'crash', 1)
    except VertiError:
        pass
    else:
        raise AssertionError('Unknown event kind accepted')


def test_sampler():
    """Equal seeds give equal travel times, all within the edge bounds."""
    edge = NET.edges['e1']
    assert TravelSampler(3)(edge) == TravelSampler(3)(edge)
    draws = TravelSampler(11)
    values = [draws(edge) for _ in range(200)]
    assert all(edge.x_min <= v <= edge.x_max for v in values)
    assert min(values) < max(values)


def test_example_run():
    """The second demand completes exactly when the first one lands at v2 by minute 2."""
    for seed in range(12):
        trace = run_simulation(NET, ex1_demands(), CONFIG, SimConfig(seed=seed))
        assert 1 in trace.completions
        early = trace.stays[1, 'v2'].arrival <= M(2)
        assert (2 in trace.completions) == early
        assert (2 in trace.dropped) == (not early)
        if early:
            assert trace.schedule.departure(2) == M(3)
        assert not trace.deadline_misses()
        assert not trace.window_misses
        assert not trace.shrink_violations
        assert replay_audit(trace, NET).ok


def test_reproducible(tmp_path):
    """Equal seeds give identical event logs, and the trace files carry the documented columns."""
    net = star([(1, 3), (2, 4)], 1)
    demands = [demand(i, 'b{}'.format(1 + i % 2), 6 + 5 * i, release_min=2 * (i // 3)) for i in range(1, 10)]
    first = run_simulation(net, demands, CONFIG, SimConfig(seed=4))
    second = run_simulation(net, demands, CONFIG, SimConfig(seed=4))
    assert first.rows == second.rows
    assert first.summary() == second.summary()

    path = tmp_path / 'trace.csv'
    first.write_csv(str(path))
    with open(path, newline='') as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0]) == TRACE_COLUMNS
    assert len(rows) == len(first.rows)
    assert rows[0]['event'] == 'demand_release'

    gantt = tmp_path / 'gantt.csv'
    first.write_gantt(str(gantt))
    with open(gantt, newline='') as f:
        grows = list(csv.DictReader(f))
    assert list(grows[0]) == GANTT_COLUMNS
    assert all(r['node'] == 'c' for r in grows)

    dump = tmp_path / 'trace.dill'
    first.pickle(str(dump))
    assert load_trace(str(dump)).rows == first.rows

    assert replay_audit(first, net).ok
    for t, count in first.occupancy('c', net):
        assert count <= net.capacity('c')


def test_horizon():
    """Events after the horizon are not processed, and demands still waiting there are dropped."""
    trace = run_simulation(NET, ex1_demands(), CONFIG, SimConfig(seed=0, horizon=M(0.5)))
    assert [r.event for r in trace.rows] == ['demand_release', 'demand_release', 'scheduled', 'takeoff', 'drop']
    assert not trace.completions
    assert trace.summary()['scheduled'] == 1
    assert trace.dropped == {2: M(0.5)}
    assert trace.drop_reasons[2] == 'unresolved at horizon'


def test_unschedulable_dropped():
    """A demand that never fits is retried at its latest departure and dropped just after it."""
    net = chain([(1, 2), (1, 2)], [0, 1])
    d = demand(1, 'R', 100)
    latest = latest_feasible_times(d, net)['v1']
    trace = run_simulation(net, [d], CONFIG, SimConfig(seed=1))
    assert not trace.schedule.ids
    assert trace.dropped == {1: latest + 1}
    assert trace.drop_reasons[1] == 'deadline out of reach'
    assert [r.event for r in trace.rows] == ['demand_release', 'drop']
    assert [dec.kind for dec in trace.decisions] == ['release', 'retry']
    assert trace.summary()['dropped'] == 1


@pytest.mark.slow
def test_fig3_batches():
    """Randomized batch runs on the bundled eight-node network never overfill a node or miss a deadline, and mostly stay within 10 percent of the travel bound."""
    bundle = load_case('fig3')
    close = 0
    for seed in range(100):
        demands = bundle.demands(seed)
        trace = run_simulation(bundle.network, demands, SchedulerConfig(budget_nodes=3000), SimConfig(seed=seed))
        report = replay_audit(trace, bundle.network)
        assert report.ok, str(report)
        assert not trace.deadline_misses()
        assert not trace.window_misses
        assert not trace.shrink_violations
        assert len(trace.completions) + len(trace.dropped) == len(demands)
        scheduled = [d for d in demands if d.id in trace.schedule]
        close += sod_cost(trace.schedule, demands) <= 1.1 * sod_lower_bound(scheduled, bundle.network)
    assert close >= 80


@pytest.mark.slow
def test_fig3_uniform():
    """200 demands released together on the eight-node network: a first schedule within 5 seconds and a clean replay on every seed."""
    bundle = load_case('fig3')
    for seed in range(100):
        demands = bundle.demands(seed, 'uniform')
        trace = run_simulation(bundle.network, demands, SchedulerConfig(budget_nodes=300), SimConfig(seed=seed))
        first = trace.decisions[0]
        assert first.kind == 'release' and first.scheduled
        assert first.wall < 5
        assert replay_audit(trace, bundle.network).ok
        assert not trace.deadline_misses()
        assert len(trace.completions) + len(trace.dropped) == len(demands)
