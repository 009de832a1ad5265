from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..model.interval import Interval
from ..model.journey import latest_feasible_times

__all__ = ['RouteProfile', 'Placement', 'route_profile', 'latest_departure']


@dataclass(frozen=True)
class RouteProfile:
    """Timing of one demand relative to its origin departure.

    ``nodes[i]`` is the route node at position ``i+1``; a departure at ``d`` blocks ``[d + lo[i], d + hi[i])`` there, ``hi`` including the service time. ``latest`` is the latest origin departure meeting the deadline, ``earliest`` the release time.
    """
    demand_id: object
    nodes: Tuple[str, ...]
    lo: Tuple[int, ...]
    hi: Tuple[int, ...]
    latest: int
    earliest: int

    def windows(self, departure):
        return {v: Interval(departure + a, departure + b) for v, a, b in zip(self.nodes, self.lo, self.hi)}


@dataclass(frozen=True)
class Placement:
    departure: int
    spots: Dict[str, int]
    windows: Dict[str, Interval]


def route_profile(demand, network):
    route = network.route(demand.route_id)
    lo, hi = network.prefix(route.id)
    nodes = tuple(route.nodes[1:])
    return RouteProfile(demand.id, nodes,
                        tuple(lo[p] for p in range(1, route.k + 1)),
                        tuple(hi[p] + network.service(route.nodes[p]) for p in range(1, route.k + 1)),
                        latest_feasible_times(demand, network)[route.origin],
                        demand.release_time)


def _pick_spot(table, node, window, caps):
    best, best_cap = None, None
    for c in range(1, table.spots(node) + 1):
        cap = caps[node][c-1] if caps is not None else None
        if cap is not None and window.hi > cap:
            continue
        if not table.fits(node, c, window):
            continue
        if best is None or (cap is not None and cap > best_cap):
            best, best_cap = c, cap
    return best


def _try(profile, table, departure, caps):
    spots = {}
    windows = profile.windows(departure)
    for node, window in windows.items():
        spot = _pick_spot(table, node, window, caps)
        if spot is None:
            return None
        spots[node] = spot
    return Placement(departure, spots, windows)


def latest_departure(profile, table, upper, lower, caps=None) -> Optional[Placement]:
    """Return the latest origin departure in ``[lower, upper]`` at which every route node of *profile* has a spot free for the whole blocking window, or ``None``.

    A spot is free when its window overlaps no reservation in *table* and, if *caps* (node -> list of per-spot next-free-before times) is given, the window ends no later than the cap. Among free spots the one with the largest cap is taken, ties going to the lowest index.

    The feasible departures form a finite union of intervals whose right ends are *upper* or a reservation start (or cap) shifted back by the route offset, so only those candidates are tried, latest first.
    """
    if upper < lower:
        return None
    candidates = {upper}
    for node, off in zip(profile.nodes, profile.hi):
        for start in table.starts(node):
            candidates.add(start - off)
        if caps is not None:
            for cap in caps[node]:
                candidates.add(cap - off)
    for d in sorted((c for c in candidates if lower <= c <= upper), reverse=True):
        placed = _try(profile, table, d, caps)
        if placed is not None:
            return placed
    return None
