from fractions import Fraction

from vertisched import (check_node_necessary, check_network_necessary, STATIC_QUALIFIER, PeriodicDemandSpec, demand_rate, star_branches,
                        star_feasibility, star_backlog_series, AnalysisError, Ticks)

from builders import M, two_link, star, ex1_demands, demand

NET = two_link()


def test_node_conditions():
    """Test :func:`check_node_necessary` on the two-link example."""
    d1, d2 = ex1_demands()
    both = check_node_necessary([d1, d2], NET, 0)
    assert sorted(both) == ['v2', 'v3']
    assert not both['v2'].refined.passed
    assert (both['v2'].refined.lhs, both['v2'].refined.rhs) == (M(7), M(8))
    assert both['v2'].coarse.passed
    assert not both['v3'].passed
    assert both['v3'].demands == 2

    alone = check_node_necessary([d1], NET, 0)
    assert all(v.passed for v in alone.values())
    assert check_node_necessary([], NET, 0) == {}


def test_network_condition():
    """Test :func:`check_network_necessary`: a failure is conservative and says so."""
    d1, d2 = ex1_demands()
    verdict = check_network_necessary([d1, d2], NET, 0)
    assert not verdict.passed
    assert verdict.lhs == Fraction(3, 5)
    assert verdict.rhs == 2

    later = check_network_necessary([d2], NET, M(2))
    assert not later.passed
    assert later.lhs == Fraction(1, 5)
    assert later.qualifier == STATIC_QUALIFIER
    assert 'worst-case' in str(later)

    assert check_network_necessary([], NET, 0).passed
    assert check_network_necessary([demand(1, 'R', 60)], NET, 0).passed


def test_star_feasibility():
    """Load exactly at capacity is feasible, one percent more is not."""
    net = star([(1, 2), (2, 4)], 2)
    assert star_branches(net) == ('c', {'b1': M(2), 'b2': M(3)})
    spec = PeriodicDemandSpec(M(6), {'b1': 3, 'b2': 2})
    rates = demand_rate(spec)
    assert rates == {'b1': Fraction(1, 2), 'b2': Fraction(1, 3)}

    exact = star_feasibility(net, rates)
    assert exact.passed
    assert exact.rhs == 2
    over = star_feasibility(net, {b: r * Fraction(101, 100) for b, r in rates.items()})
    assert not over.passed

    for bad in (lambda: star_branches(NET), lambda: star_feasibility(net, {'b9': 1}),
                lambda: PeriodicDemandSpec(0, {'b1': 1}), lambda: PeriodicDemandSpec(M(1), {'b1': -1})):
        try:
            bad()
        except AnalysisError:
            pass
        else:
            raise AssertionError('Invalid star input accepted')


def test_backlog_series():
    """The backlog stays flat within capacity and grows linearly above it."""
    net = star([(1, 2)], 1)
    steady = [demand(i, 'b1', 2 * i) for i in range(1, 31)]
    series = star_backlog_series(net, steady, M(60))
    assert len(series) == 30
    assert all(v == 0 for _, v in series)

    rushed = [demand(i, 'b1', i) for i in range(1, 61)]
    series = star_backlog_series(net, rushed, M(60))
    values = [v for _, v in series]
    assert values == [M(i) for i in range(1, 61)]
    assert series[-1][0] == M(60)
    assert star_backlog_series(net, rushed, M(60), t0=M(60)) == []
