import json

from vertisched import Network, Node, Edge, Route, NetworkError, FileError, TicksError, DemandError, read_network, read_demands, Ticks

from builders import M, two_link, star


def _raises(nodes, edges, routes, exc=NetworkError):
    try:
        Network(nodes, edges, routes)
    except exc:
        pass
    else:
        raise AssertionError('Network construction failed to raise {}'.format(exc.__name__))


def test_structure():
    """Test the structural checks of :class:`Network`."""
    nodes = [Node('a', 1), Node('b', 1), Node('c', 1)]
    ab, bc = Edge('ab', 'a', 'b', M(1), M(2)), Edge('bc', 'b', 'c', M(1), M(2))

    net = Network(nodes, [ab, bc], [Route('R', ('ab', 'bc'))])
    assert net.route('R').nodes == ('a', 'b', 'c')
    assert net.sources == {'a'} and net.sinks == {'c'}
    assert net.route('R').k == 2
    assert net.route('R').position('b') == 1

    _raises(nodes, [ab, bc, Edge('ca', 'c', 'a', M(1), M(2))], [])
    _raises(nodes, [ab, Edge('ab2', 'a', 'b', M(1), M(2)), bc], [])
    _raises(nodes, [ab, Edge('bx', 'b', 'x', M(1), M(2))], [])
    _raises(nodes + [Node('lonely', 1)], [ab, bc], [])
    _raises(nodes, [ab, bc], [Route('R', ())])
    _raises(nodes, [ab, bc], [Route('R', ('bc', 'ab'))])
    _raises(nodes, [ab, bc], [Route('R', ('ab', 'zz'))])
    _raises(nodes, [ab, bc], [Route('R', ('ab',)), Route('R', ('bc',))])

    for bad in (lambda: Node('n', -1), lambda: Edge('e', 'a', 'b', 0, M(1)), lambda: Edge('e', 'a', 'b', M(2), M(1))):
        try:
            bad()
        except NetworkError:
            pass
        else:
            raise AssertionError('Invalid node or edge accepted')
    try:
        net.route('missing')
    except NetworkError:
        pass
    else:
        raise AssertionError("'Network.route' failed to raise a 'NetworkError'")


def test_prefix():
    """Test :meth:`Network.prefix`."""
    net = two_link()
    assert net.prefix('R') == ([0, M(1), M(4)], [0, M(4), M(8)])
    lo, hi = star([(1, 2), (3, 5)], 1).prefix('b2')
    assert (lo, hi) == ([0, M(3)], [0, M(5)])


def test_read_network(tmp_path):
    """Test :func:`read_network` and :func:`read_demands` on files."""
    data = {'nodes': [{'id': 'a', 'capacity': 0}, {'id': 'b', 'capacity': 2, 'service_time_min': 0.5}],
            'edges': [{'id': 'ab', 'tail': 'a', 'head': 'b', 'tmin_min': 1.25, 'tmax_min': 2}],
            'routes': [{'id': 'R', 'edges': ['ab']}]}
    path = tmp_path / 'net.json'
    path.write_text(json.dumps(data))
    net = read_network(path)
    assert net.capacity('b') == 2
    assert net.service('b') == 500
    assert net.service('a') == 0
    assert net.edges['ab'].x_min == 1250

    bad = tmp_path / 'bad.json'
    bad.write_text('{"nodes": [')
    try:
        read_network(bad)
    except FileError as exc:
        assert 'bad.json' in str(exc)
    else:
        raise AssertionError('Malformed JSON accepted')

    data['edges'][0]['tmin_min'] = 0.0001
    try:
        read_network(data)
    except TicksError as exc:
        assert 'tmin_min' in str(exc)
    else:
        raise AssertionError('Off-grid travel time accepted')

    del data['edges'][0]['tmin_min']
    try:
        read_network(data)
    except FileError as exc:
        assert 'tmin_min' in str(exc)
    else:
        raise AssertionError('Missing field accepted')

    demands = tmp_path / 'd.json'
    demands.write_text(json.dumps({'demands': [{'id': 1, 'route': 'R', 'deadline_min': 10, 'release_min': 2}]}))
    (d,) = read_demands(demands, net)
    assert (d.id, d.route_id, d.deadline, d.release_time) == (1, 'R', Ticks.from_minutes(10), Ticks.from_minutes(2))

    demands.write_text(json.dumps({'demands': [{'id': 1, 'route': 'S', 'deadline_min': 10}]}))
    try:
        read_demands(demands, net)
    except DemandError:
        pass
    else:
        raise AssertionError('Unknown route accepted')

    demands.write_text(json.dumps({'demands': [{'id': 1, 'route': 'R', 'deadline_min': 10}, {'id': 1, 'route': 'R', 'deadline_min': 12}]}))
    try:
        read_demands(demands, net)
    except DemandError:
        pass
    else:
        raise AssertionError('Duplicate demand id accepted')


def test_read_capacity(tmp_path):
    """Capacities must be whole numbers; anything else is reported with the file and the field."""
    data = {'nodes': [{'id': 'a', 'capacity': 0}, {'id': 'b', 'capacity': 2.0}],
            'edges': [{'id': 'ab', 'tail': 'a', 'head': 'b', 'tmin_min': 1, 'tmax_min': 2}],
            'routes': [{'id': 'R', 'edges': ['ab']}]}
    assert read_network(data).capacity('b') == 2
    path = tmp_path / 'net.json'
    for bad in (1.5, 'x', True, None):
        data['nodes'][1]['capacity'] = bad
        path.write_text(json.dumps(data))
        try:
            read_network(path)
        except FileError as exc:
            assert 'net.json:nodes[1].capacity' in str(exc)
        else:
            raise AssertionError('Capacity {!r} accepted'.format(bad))
