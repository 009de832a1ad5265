from vertisched import (Journey, Interval, JourneyError, travel_bounds, m_span, departure_from, latest_arrival, blocking_interval,
                        latest_feasible_times, journey_blocks, worst_arrival, screen_demands)

from builders import M, two_link, chain, ex1_demands, demand

NET = two_link()
ROUTE = NET.route('R')
D1, D2 = ex1_demands()


def test_travel_bounds():
    """Test :func:`travel_bounds` and :func:`m_span`."""
    assert travel_bounds(ROUTE, 1, 1, NET) == (M(1), M(4))
    assert travel_bounds(ROUTE, 1, 2, NET) == (M(4), M(8))
    assert travel_bounds(ROUTE, 2, 2, NET) == (M(2), M(3))
    assert m_span(ROUTE, 1, 1, NET) == M(4)
    assert m_span(ROUTE, 1, 2, NET) == M(5)
    assert m_span(ROUTE, 2, 2, NET) == M(2)
    for l1, l2 in ((0, 1), (2, 1), (1, 3)):
        try:
            travel_bounds(ROUTE, l1, l2, NET)
        except JourneyError:
            pass
        else:
            raise AssertionError('Window ({}, {}) accepted'.format(l1, l2))


def test_blocking_interval():
    """Test :func:`blocking_interval` before and after a landing."""
    j = Journey(D1, 0)
    assert blocking_interval(j, 1, 1, NET) == Interval(M(1), M(5))
    assert blocking_interval(j, 1, 2, NET) == Interval(M(4), M(9))
    assert latest_arrival(j, 1, 2, NET) == M(8)

    landed = j.landed('v2', M(2))
    assert departure_from(landed, 1, NET) == M(3)
    assert blocking_interval(landed, 2, 2, NET) == Interval(M(5), M(7))
    assert j.arrivals == {}
    try:
        departure_from(j, 1, NET)
    except JourneyError:
        pass
    else:
        raise AssertionError('Departure from a node not reached yet accepted')

    net = chain([(1, 4), (2, 3), (1, 5)], [1, 2, 1], service=2)
    route = net.route('R')
    j = Journey(demand(1, 'R', 50), M(7))
    for l1 in range(1, route.k + 1):
        for l2 in range(l1, route.k + 1):
            if l1 > 1:
                j = j.landed(route.nodes[l1 - 1], M(7 + 3 * l1))
            assert blocking_interval(j, l1, l2, net).length == m_span(route, l1, l2, net)


def test_journey_blocks():
    """Test :func:`journey_blocks` and :func:`worst_arrival`."""
    j = Journey(D1, 0)
    assert journey_blocks(j, NET) == {'v2': Interval(M(1), M(5)), 'v3': Interval(M(4), M(9))}
    assert worst_arrival(j, NET) == M(8)

    landed = j.landed('v2', M(2))
    blocks = journey_blocks(landed, NET)
    assert blocks == {'v2': Interval(M(2), M(3)), 'v3': Interval(M(5), M(7))}
    assert Interval(M(4), M(9)).contains(blocks['v3'])
    assert worst_arrival(landed, NET) == M(6)

    done = landed.landed('v3', M(5.5))
    assert worst_arrival(done, NET) == M(5.5)
    assert journey_blocks(done, NET)['v3'] == Interval(M(5.5), M(6.5))

    for bad in ({'v2': -1}, {'v3': M(5)}):
        try:
            Journey(D1, 0, bad).reached(ROUTE)
        except JourneyError:
            pass
        else:
            raise AssertionError('Inconsistent arrivals {} accepted'.format(bad))


def test_reached_service():
    """An arrival before the previous node's service has ended is rejected once service times are known."""
    early = Journey(D1, 0, {'v2': M(2), 'v3': M(2.5)})
    assert early.reached(ROUTE) == 2
    for call in (lambda: early.reached(ROUTE, NET), lambda: journey_blocks(early, NET)):
        try:
            call()
        except JourneyError as exc:
            assert 'v3' in str(exc)
        else:
            raise AssertionError('Arrival during the previous service accepted')
    assert Journey(D1, 0, {'v2': M(2), 'v3': M(3)}).reached(ROUTE, NET) == 2


def test_latest_feasible_times():
    """Test :func:`latest_feasible_times` and :func:`screen_demands`."""
    assert latest_feasible_times(D1, NET) == {'v1': 0, 'v2': M(4), 'v3': M(8)}
    assert latest_feasible_times(D2, NET)['v1'] == M(3)

    late = demand(3, 'R', 7)
    released = demand(4, 'R', 12, release_min=5)
    accepted, rejected = screen_demands([D1, late, released, D2], NET)
    assert accepted == [D1, D2]
    assert rejected == [late, released]
