import pytest

from vertisched import (load_case, case_file, regular_deadlines, generate_demands, check_provenance, sod_lower_bound, schedule_static,
                        audit_schedule, sod_cost, SchedulerConfig, FileError, DemandError)

from builders import M


def test_regular_deadlines():
    """Test :func:`regular_deadlines`."""
    assert regular_deadlines(4, 180) == [M(36), M(72), M(108), M(144)]
    r3 = regular_deadlines(19, 180)
    assert r3[0] == M(9) and r3[-1] == M(171)
    assert regular_deadlines(2, 5) == [M(2), M(3)]


def test_atlanta():
    """Test the bundled Atlanta case: 27 demands and its worst-case travel bound."""
    bundle = load_case('atlanta')
    demands = bundle.demands()
    assert len(demands) == bundle.metric('demands') == 27
    assert sod_lower_bound(demands, bundle.network) == M(bundle.metric('lower_bound')) == M(1065)
    assert bundle.metric('reported_lower_bound') == 1173
    assert all(d.release_time == M(-180) for d in demands)
    assert [d.id for d in demands] == list(range(1, 28))
    assert demands[0].route_id == 'R3' and demands[0].deadline == M(bundle.metric('first_deadline_R3'))
    assert sum(d.route_id == 'R3' for d in demands) == 19
    assert bundle.expected['optimal_sod']['tag'] == 'PAPER'
    assert bundle.demands(seed=5) == demands


def test_fig3_generators():
    """Test the seeded demand generators of the bundled eight-node case."""
    bundle = load_case('fig3')
    batches = bundle.demands(seed=1)
    assert len(batches) == bundle.metric('batch_demands') == 43
    spec = bundle.generators['batches']
    for d in batches:
        assert M(30) <= d.deadline - d.release_time <= M(60)
        assert d.release_time in [M(t) for t in spec['release_min']]
        assert d.route_id in spec['routes']
    assert bundle.demands(seed=1) == batches
    assert bundle.demands(seed=2) != batches

    uniform = bundle.demands(seed=0, generator='uniform')
    assert len(uniform) == bundle.metric('uniform_demands')
    assert all(M(40) <= d.deadline <= M(1540) and d.release_time == 0 for d in uniform)

    try:
        bundle.demands(generator='poisson')
    except DemandError:
        pass
    else:
        raise AssertionError('Unknown generator accepted')
    try:
        generate_demands({'kind': 'bursts'})
    except DemandError:
        pass
    else:
        raise AssertionError('Unknown generator kind accepted')


def test_provenance():
    """Every expected metric carries a value and a provenance tag."""
    check_provenance([{'name': 'x', 'value': 1, 'tag': 'DERIVED'}])
    for bad in ([{'name': 'x', 'value': 1}], [{'name': 'x', 'value': 'many', 'tag': 'PAPER'}]):
        try:
            check_provenance(bad)
        except FileError:
            pass
        else:
            raise AssertionError('Metric {} accepted'.format(bad))
    try:
        case_file('nowhere')
    except FileError as exc:
        assert 'atlanta' in str(exc)
    else:
        raise AssertionError('Missing case file accepted')


def _atlanta_static(budget_ms):
    bundle = load_case('atlanta')
    demands = bundle.demands()
    state = schedule_static(bundle.network, demands, config=SchedulerConfig(budget_nodes=None, budget_ms=budget_ms))
    assert len(state.schedule) == len(demands)
    assert audit_schedule(state.schedule, demands, bundle.network).ok
    sod = sod_cost(state.schedule, demands)
    assert sod >= sod_lower_bound(demands, bundle.network)
    return bundle, sod


@pytest.mark.slow
def test_atlanta_first_second():
    """Within one second of search the static Atlanta schedule is complete, valid and below the first-schedule limit."""
    bundle, sod = _atlanta_static(1000)
    assert sod <= M(bundle.metric('sod_limit_first')) == M(1700)


@pytest.mark.slow
def test_atlanta_improved():
    """A minute of search brings the static Atlanta schedule within 5 percent of the exact optimum."""
    bundle, sod = _atlanta_static(60000)
    assert sod <= M(bundle.metric('sod_limit_final'))
    assert M(bundle.metric('sod_limit_final')) == 1666350


def test_atlanta_uniform():
    """The 200-demand Atlanta generator spreads deadlines over [40, 1540] minutes on the three routes."""
    bundle = load_case('atlanta')
    demands = bundle.demands(seed=3, generator='uniform')
    assert len(demands) == bundle.metric('uniform_demands') == 200
    assert all(M(40) <= d.deadline <= M(1540) and d.release_time == M(-180) for d in demands)
    assert {d.route_id for d in demands} == {'R1', 'R2', 'R3'}
    bound = sod_lower_bound(demands, bundle.network)
    assert M(200 * 29) <= bound <= M(200 * bundle.metric('uniform_bound_per_demand'))
    assert bundle.metric('uniform_first_sod') > bundle.metric('uniform_improved_sod') > bundle.metric('uniform_lower_bound')
    assert bundle.demands(seed=3, generator='uniform') == demands


@pytest.mark.slow
def test_atlanta_uniform_schedule():
    """A static schedule of 200 random Atlanta demands is valid and bounded below by the travel bound."""
    bundle = load_case('atlanta')
    demands = bundle.demands(seed=0, generator='uniform')
    state = schedule_static(bundle.network, demands, config=SchedulerConfig(budget_nodes=None, budget_ms=5000))
    assert len(state.schedule) > 0
    assert audit_schedule(state.schedule, demands, bundle.network).ok
    scheduled = [d for d in demands if d.id in state.schedule]
    assert sod_cost(state.schedule, demands) >= sod_lower_bound(scheduled, bundle.network)


@pytest.mark.slow
def test_lower_bound_dominance():
    """On random instances of both case networks no schedule is cheaper than the worst-case travel bound."""
    for name, routes in (('fig3', ['R1', 'R2', 'R3', 'R4']), ('atlanta', ['R1', 'R2', 'R3'])):
        network = load_case(name).network
        for seed in range(100):
            spec = {'kind': 'uniform_deadlines', 'count': 2 + seed % 11, 'deadline_min': [40, 400], 'routes': routes}
            demands = generate_demands(spec, seed)
            state = schedule_static(network, demands, config=SchedulerConfig(budget_nodes=500))
            scheduled = [d for d in demands if d.id in state.schedule]
            assert sod_cost(state.schedule, demands) >= sod_lower_bound(scheduled, network)
            assert audit_schedule(state.schedule, demands, network).ok
