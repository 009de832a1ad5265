from fractions import Fraction

from vertisched import (RationalSimplex, solve_square, enumerate_vertices, max_flow, route_caps, compute_bottleneck,
                        binding_witnesses, separates, qualifies, read_network, case_file, BottleneckError, AnalysisError)

from builders import two_link, chain, star


def test_simplex():
    """Test :class:`RationalSimplex` on small programs."""
    lp = RationalSimplex([[1, 0], [0, 1], [1, 1]], [1, 2, Fraction(5, 2)], [1, 1])
    assert lp.solve() == 'optimal'
    assert lp.objective == Fraction(5, 2)
    assert sum(lp.solution()) == Fraction(5, 2)

    lp = RationalSimplex([[1, -1]], [1], [0, 1])
    assert lp.solve() == 'unbounded'

    assert solve_square([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_square([[1, 2], [2, 4]], [1, 2]) is None
    assert enumerate_vertices([[1, 1]], [1]) == [(0, 0), (0, 1), (1, 0)]

    for args in (([[1, 2]], [1], [1]), ([[1]], [-1], [1])):
        try:
            RationalSimplex(*args)
        except AnalysisError:
            pass
        else:
            raise AssertionError('Invalid program {} accepted'.format(args))


def test_two_link_flow():
    """Test :func:`max_flow` and :func:`compute_bottleneck` on the two-link chain."""
    net = two_link()
    assert route_caps(net) == {('R', 'v2'): Fraction(1, 4), ('R', 'v3'): Fraction(1, 5)}
    flow = max_flow(net)
    assert flow.objective == Fraction(1, 5)
    assert flow.route_flow == {'R': Fraction(1, 5)}
    assert flow.binding_nodes('R') == ['v3']
    assert flow.flow['R', 'v1'] == Fraction(1, 5)

    b = compute_bottleneck(net, flow)
    assert b.nodes == frozenset({'v3'})
    assert b.cut_edges == frozenset({'e2'})
    assert b.rate == Fraction(1, 5)
    assert b.witness['R'][0] == 'v3'
    assert compute_bottleneck(net, flow, 'greedy').nodes == b.nodes


def test_chain_closed_form():
    """The flow of a single route is its smallest cap."""
    net = chain([(2, 5), (1, 3)], [2, 1])
    flow = max_flow(net)
    assert route_caps(net)['R', 'v2'] == Fraction(1, 2)
    assert flow.objective == Fraction(1, 6)
    assert compute_bottleneck(net, flow).nodes == frozenset({'v3'})

    renamed = read_network({'nodes': [{'id': 'x', 'capacity': 1, 'service_time_min': 1},
                                      {'id': 'y', 'capacity': 2, 'service_time_min': 1},
                                      {'id': 'z', 'capacity': 1, 'service_time_min': 1}],
                            'edges': [{'id': 'f', 'tail': 'x', 'head': 'y', 'tmin_min': 2, 'tmax_min': 5},
                                      {'id': 'g', 'tail': 'y', 'head': 'z', 'tmin_min': 1, 'tmax_min': 3}],
                            'routes': [{'id': 'Q', 'edges': ['f', 'g']}]})
    assert max_flow(renamed).objective == flow.objective


def test_star_flow():
    """Test a shared center: routes compete for its spot time."""
    net = star([(1, 2), (1, 2)], 2)
    flow = max_flow(net)
    assert flow.objective == 1
    witnesses = binding_witnesses(net, flow)
    assert set(witnesses['b1']) == set(witnesses['b2']) == {'c'}
    b = compute_bottleneck(net, flow)
    assert b.nodes == frozenset({'c'})
    assert b.rate == 2
    assert qualifies(net, b.nodes, witnesses)
    assert not separates(net, {'o1'})

    # spans 2 and 3 min: the center is best spent on b1 alone, b2 never saturates
    uneven = star([(1, 2), (2, 4)], 3)
    flow = max_flow(uneven)
    assert flow.objective == Fraction(3, 2)
    assert flow.route_flow['b2'] == 0
    try:
        compute_bottleneck(uneven, flow)
    except BottleneckError as exc:
        assert 'b2' in str(exc)
    else:
        raise AssertionError('Route without a saturated node accepted')


def test_fig3_flow():
    """Test the bundled eight-node network: R2 carries no flow in the unique maximizing flow."""
    net = read_network(case_file('fig3'))
    flow = max_flow(net)
    assert flow.objective == Fraction(4, 3)
    assert flow.route_flow == {'R1': Fraction(1, 3), 'R2': 0, 'R3': Fraction(1, 2), 'R4': Fraction(1, 2)}
    assert flow.binding_nodes('R1') == ['v7']
    assert flow.binding_nodes('R4') == ['v6']
    witnesses = binding_witnesses(net, flow)
    assert witnesses['R2'] == {}
    for method in ('greedy', 'exhaustive'):
        try:
            compute_bottleneck(net, flow, method)
        except BottleneckError:
            pass
        else:
            raise AssertionError('Bottleneck reported for a route without a saturated node')
