from fractions import Fraction

from vertisched import Journey, CounterQuery, cumulative_departures, cumulative_arrivals, flow_rate, AnalysisError

from builders import M, two_link, demand

NET = two_link()


def _journeys():
    a = Journey(demand(1, 'R', 20), 0).landed('v2', M(2))
    b = Journey(demand(2, 'R', 20), M(3))
    c = Journey(demand(3, 'R', 30), M(6))
    return [a, b, c]


def test_departures():
    """Test :func:`cumulative_departures`."""
    js = _journeys()
    assert cumulative_departures(js, CounterQuery(0, M(5), 'v1'), NET) == 2
    assert cumulative_departures(js, CounterQuery(0, M(10), 'v1'), NET) == 3
    assert cumulative_departures(js, CounterQuery(M(3), M(3), 'v1'), NET) == 1
    assert cumulative_departures(js, CounterQuery(0, M(10), 'v2'), NET) == 1
    assert cumulative_departures(js, CounterQuery(0, M(10), 'v3'), NET) == 0
    assert cumulative_departures(js, CounterQuery(0, M(10), 'v1', ids=frozenset({2, 3})), NET) == 2
    assert cumulative_departures(js, CounterQuery(0, M(10), 'v1', route='S'), NET) == 0


def test_arrivals():
    """Test :func:`cumulative_arrivals`."""
    js = _journeys()
    assert cumulative_arrivals(js, CounterQuery(0, M(7), 'v3'), NET) == 1
    assert cumulative_arrivals(js, CounterQuery(0, M(12), 'v3'), NET) == 2
    assert cumulative_arrivals(js, CounterQuery(0, M(20), 'v3'), NET) == 3
    assert cumulative_arrivals(js, CounterQuery(0, M(20), 'v1'), NET) == 0


def test_flow_rate():
    """Test :func:`flow_rate` and query validation."""
    js = _journeys()
    assert flow_rate(js, CounterQuery(0, M(10), 'v1'), NET) == Fraction(3, 10)
    for bad in (lambda: CounterQuery(M(2), M(1), 'v1'), lambda: flow_rate(js, CounterQuery(M(1), M(1), 'v1'), NET)):
        try:
            bad()
        except AnalysisError:
            pass
        else:
            raise AssertionError('Invalid counter window accepted')
