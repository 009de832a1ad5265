import json
import os
from collections.abc import Mapping

from ..core.errors import FileError, NetworkError, DemandError, TicksError
from ..model.demand import Demand, Schedule, ScheduleEntry, id_key
from ..model.network import Edge, Network, Node, Route
from .ticks import Ticks

__all__ = ['load_json', 'read_network', 'read_demands', 'demands_to_dict', 'schedule_to_dict', 'read_schedule', 'write_json']


def load_json(source):
    """Return the parsed JSON content of *source*, which may be a path or an already parsed mapping.

    Malformed files raise |FileError| naming the path and the position of the problem.
    """
    if isinstance(source, Mapping):
        return source
    path = os.fspath(source)
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise FileError('{}: malformed JSON at line {}, column {}: {}'.format(path, exc.lineno, exc.colno, exc.msg))
    except OSError as exc:
        raise FileError('{}: {}'.format(path, exc.strerror or exc))


def _get(record, key, where):
    try:
        return record[key]
    except (KeyError, TypeError):
        raise FileError('{}: missing field "{}"'.format(where, key))


def _integer(record, key, where):
    value = _get(record, key, where)
    if isinstance(value, bool) or not (isinstance(value, int) or (isinstance(value, float) and value.is_integer())):
        raise FileError('{}.{}: expected a whole number, got {!r}'.format(where, key, value))
    return int(value)


def _minutes(record, key, where, default=None):
    if key not in record:
        if default is not None:
            return default
        raise FileError('{}: missing field "{}"'.format(where, key))
    try:
        return Ticks.from_minutes(record[key])
    except TicksError as exc:
        raise TicksError('{}.{}: {}'.format(where, key, exc))


def _name(source):
    return os.fspath(source) if not isinstance(source, Mapping) else '<network>'


def read_network(source):
    """Build a |Network| from a JSON file (or parsed mapping) with ``nodes``, ``edges`` and ``routes`` lists. Times are given in minutes and converted to ticks exactly."""
    data = load_json(source)
    where = _name(source)
    try:
        nodes = [Node(str(_get(n, 'id', '{}:nodes[{}]'.format(where, i))),
                      _integer(n, 'capacity', '{}:nodes[{}]'.format(where, i)),
                      _minutes(n, 'service_time_min', '{}:nodes[{}]'.format(where, i), default=0))
                 for i, n in enumerate(_get(data, 'nodes', where))]
        edges = [Edge(str(_get(e, 'id', '{}:edges[{}]'.format(where, i))),
                      str(_get(e, 'tail', '{}:edges[{}]'.format(where, i))),
                      str(_get(e, 'head', '{}:edges[{}]'.format(where, i))),
                      _minutes(e, 'tmin_min', '{}:edges[{}]'.format(where, i)),
                      _minutes(e, 'tmax_min', '{}:edges[{}]'.format(where, i)))
                 for i, e in enumerate(_get(data, 'edges', where))]
        routes = [Route(str(_get(r, 'id', '{}:routes[{}]'.format(where, i))),
                        tuple(str(x) for x in _get(r, 'edges', '{}:routes[{}]'.format(where, i))))
                  for i, r in enumerate(_get(data, 'routes', where))]
    except NetworkError as exc:
        raise NetworkError('{}: {}'.format(where, exc))
    return Network(nodes, edges, routes)


def read_demands(source, network=None):
    """Return the list of |Demand| objects stored under ``demands`` in a JSON file (or parsed mapping). With *network* given, unknown routes raise |DemandError|."""
    data = load_json(source)
    where = _name(source)
    ret = []
    seen = set()
    for i, d in enumerate(_get(data, 'demands', where)):
        w = '{}:demands[{}]'.format(where, i)
        did = _get(d, 'id', w)
        if did in seen:
            raise DemandError('{}: duplicate demand id {}'.format(w, did))
        seen.add(did)
        route = str(_get(d, 'route', w))
        if network is not None and route not in network.routes:
            raise DemandError("{}: unknown route '{}'".format(w, route))
        ret.append(Demand(did, route, _minutes(d, 'deadline_min', w), _minutes(d, 'release_min', w, default=0)))
    return ret


def demands_to_dict(demands):
    return {'demands': [{'id': d.id, 'route': d.route_id, 'deadline_min': Ticks.to_minutes(d.deadline),
                         'release_min': Ticks.to_minutes(d.release_time)} for d in sorted(demands, key=lambda d: id_key(d.id))]}


def schedule_to_dict(schedule, **extra):
    """Return the JSON-ready form of *schedule*. Keyword arguments (``sod_min``, ``complete`` ...) are added at the top level."""
    ret = {'entries': [{'demand': did, 'departure_min': Ticks.to_minutes(e.departure),
                        'spots': {node: spot for node, spot in sorted(e.spots.items())}}
                       for did, e in sorted(schedule.items(), key=lambda x: id_key(x[0]))]}
    ret.update(extra)
    return ret


def read_schedule(source):
    """Return the |Schedule| stored in a JSON file (or parsed mapping) written by :func:`schedule_to_dict`."""
    data = load_json(source)
    where = _name(source)
    entries = {}
    for i, e in enumerate(_get(data, 'entries', where)):
        w = '{}:entries[{}]'.format(where, i)
        spots = {str(k): _integer(e['spots'], k, w + '.spots') for k in (e.get('spots') or {})}
        entries[_get(e, 'demand', w)] = ScheduleEntry(_minutes(e, 'departure_min', w), spots)
    return Schedule(entries)


def write_json(data, path=None):
    """Write *data* as indented JSON to *path*, or return the text when *path* is ``None``."""
    text = json.dumps(data, indent=2)
    if path is None:
        return text
    with open(path, 'w') as f:
        f.write(text + '\n')
    return text
