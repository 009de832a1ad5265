from vertisched import Schedule, ScheduleEntry, BlockTable, Interval, split_demands, insert_into_gaps, insertion, audit_schedule

from builders import M, two_link, star, ex1_demands, demand

NET = two_link()


def test_split():
    """Test :func:`split_demands`."""
    d1, d2 = ex1_demands()
    d3 = demand(3, 'R', 20)
    assert split_demands([d2, d1, d3], NET, None) == ([], [d1, d2, d3])
    assert split_demands([d1, d3, d2], NET, M(7)) == ([d2, d1], [d3])
    assert split_demands([d1, d2], NET, M(6)) == ([d1], [d2])


def test_gaps():
    """Test :func:`insert_into_gaps`."""
    d1, d2 = ex1_demands()
    table = BlockTable.from_schedule(Schedule({1: ScheduleEntry(0, {'v2': 1, 'v3': 1})}), [d1], NET, {1: {'v2': M(2)}})
    entries = insert_into_gaps([d2], table, NET, M(2))
    assert entries == {2: ScheduleEntry(M(3), {'v2': 1, 'v3': 1})}
    assert table.intervals('v3', 1)[-1] == (Interval(M(7), M(12)), 2)

    table = BlockTable.from_schedule(Schedule({1: ScheduleEntry(0, {'v2': 1, 'v3': 1})}), [d1], NET)
    assert insert_into_gaps([d2], table, NET, 0) is None


def test_example_events():
    """Replay the two-link example by hand: one demand at time 0, the second after the landing at v2."""
    d1, d2 = ex1_demands()
    known = {1: d1, 2: d2}
    empty = Schedule()
    assert insertion([d1, d2], empty, 0, {}, NET, known) is empty

    first = insertion([d1], empty, 0, {}, NET, known)
    assert first.departure(1) == 0
    assert insertion([d2], first, 0, {}, NET, known) is first

    arrivals = {1: {'v2': M(2)}}
    second = insertion([d2], first, M(2), arrivals, NET, known)
    assert second.departure(2) == M(3)
    assert second[1] == first[1]
    assert audit_schedule(second, known, NET, arrivals).ok

    late = {1: {'v2': M(3)}}
    assert insertion([d2], first, M(3), late, NET, known) is first


def test_behind_reservations():
    """Demands ending after everything reserved are searched behind the reservations."""
    net = star([(1, 2), (2, 4)], 1)
    known = {1: demand(1, 'b1', 10)}
    old = insertion([known[1]], Schedule(), 0, {}, net, known)
    assert old.departure(1) == M(8)

    new = [demand(2, 'b2', 16), demand(3, 'b1', 14), demand(4, 'b1', 7)]
    known.update({d.id: d for d in new})
    schedule = insertion(new, old, 0, {}, net, known)
    assert len(schedule) == 4
    assert schedule[1] == old[1]
    assert audit_schedule(schedule, known, net).ok
    assert all(schedule.departure(d.id) >= 0 for d in new)
