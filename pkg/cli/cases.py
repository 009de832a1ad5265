import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from os.path import join as opj
from typing import Any, Dict, Optional

import numpy as np

from ..core.errors import DemandError, FileError
from ..model.demand import Demand
from ..tools.jsonio import load_json, read_network
from ..tools.ticks import Ticks

__all__ = ['CaseBundle', 'CASES_DIR', 'case_file', 'load_case', 'generate_demands', 'regular_deadlines', 'check_provenance', 'PROVENANCE_TAGS']

CASES_DIR = opj(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'cases')
PROVENANCE_TAGS = ('PAPER', 'DERIVED', 'TRIVIAL')


def case_file(name):
    """Return the path of a bundled file. *name* may omit the ``.json`` extension."""
    path = opj(CASES_DIR, name if name.endswith('.json') else name + '.json')
    if not os.path.isfile(path):
        available = sorted(f[:-5] for f in os.listdir(CASES_DIR) if f.endswith('.json'))
        raise FileError("No bundled case file '{}', available: {}".format(name, ', '.join(available)))
    return path


@dataclass
class CaseBundle:
    """A bundled case study: its network, its demand generators (name -> spec) and the expected metrics (name -> metric record with ``value`` and ``tag``)."""
    name: str
    network: Any
    generators: Dict[str, Dict[str, Any]]
    expected: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    default: Optional[str] = None

    def demands(self, seed=0, generator=None):
        name = generator or self.default
        if name not in self.generators:
            raise DemandError("Case '{}' has no demand generator '{}'".format(self.name, name))
        return generate_demands(self.generators[name], seed)

    def metric(self, name):
        return self.expected[name]['value']


def check_provenance(metrics, where='<metrics>'):
    """Raise |FileError| unless every metric record carries a numeric ``value`` and one of the provenance tags."""
    for i, m in enumerate(metrics):
        if not isinstance(m.get('value'), (int, float)):
            raise FileError('{}: metric {} has no numeric value'.format(where, m.get('name', i)))
        if m.get('tag') not in PROVENANCE_TAGS:
            raise FileError('{}: metric {} is not tagged with one of {}'.format(where, m.get('name', i), ', '.join(PROVENANCE_TAGS)))


def load_case(name):
    """Load the bundle ``<name>_bundle.json`` together with its network and its expected-metric sidecar."""
    data = load_json(case_file(name + '_bundle'))
    expected = {}
    if data.get('expected'):
        sidecar = case_file(data['expected'])
        metrics = load_json(sidecar).get('metrics', [])
        check_provenance(metrics, sidecar)
        expected = {m['name']: m for m in metrics}
    return CaseBundle(data.get('name', name), read_network(case_file(data['network'])), data['generators'], expected, data.get('default'))


#===========================================================================


def regular_deadlines(count, horizon_min):
    """Return the deadlines ``floor(horizon / (1 + count) * k + 1/2)`` minutes, ``k = 1 .. count``, as ticks, computed exactly."""
    return [Ticks.from_minutes(math.floor(Fraction(horizon_min * k, 1 + count) + Fraction(1, 2))) for k in range(1, count + 1)]


def generate_demands(spec, seed=0):
    """Generate the demand list described by a generator *spec*.

    *   ``'batches'``: *count* demands spread round robin over the release times, each with a uniformly chosen route and a deadline a whole number of minutes, uniform in ``deadline_offset_min``, after its release,
    *   ``'uniform_deadlines'``: *count* demands released together, routes uniform, deadlines whole minutes uniform in ``deadline_min``,
    *   ``'regular_deadlines'``: for every route its ``counts`` demands with evenly spread deadlines over ``horizon_min`` (see :func:`regular_deadlines`), no randomness.

    Demand ids are 1, 2, ... in order of release, then deadline.
    """
    kind = spec.get('kind')
    rng = np.random.default_rng(seed)
    rows = []
    if kind == 'batches':
        releases = spec['release_min']
        lo, hi = spec['deadline_offset_min']
        for i in range(spec['count']):
            release = releases[i % len(releases)]
            route = spec['routes'][int(rng.integers(len(spec['routes'])))]
            rows.append((release, release + int(rng.integers(lo, hi + 1)), route))
    elif kind == 'uniform_deadlines':
        lo, hi = spec['deadline_min']
        release = spec.get('release_min', 0)
        for _ in range(spec['count']):
            route = spec['routes'][int(rng.integers(len(spec['routes'])))]
            rows.append((release, int(rng.integers(lo, hi + 1)), route))
    elif kind == 'regular_deadlines':
        release = spec.get('release_min', 0)
        for route, count in sorted(spec['counts'].items()):
            for deadline in regular_deadlines(count, spec['horizon_min']):
                rows.append((release, Ticks.to_minutes(deadline), route))
    else:
        raise DemandError("Unknown demand generator kind '{}'".format(kind))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return [Demand(i, route, Ticks.from_minutes(deadline), Ticks.from_minutes(release))
            for i, (release, deadline, route) in enumerate(rows, 1)]
