from typing import NamedTuple

from ..tools.ticks import Ticks

__all__ = ['Interval']


class Interval(NamedTuple):
    """A closed-open time window ``[lo, hi)`` in ticks.

    Blocking intervals are compared with half-open semantics: two intervals that only share an endpoint do not conflict, so a vehicle may land on a spot exactly when the previous one leaves it.
    """
    lo: int
    hi: int

    @property
    def length(self):
        return self.hi - self.lo

    def overlaps(self, other):
        """Return ``True`` if the two windows share a positive-length stretch of time."""
        return self.lo < other.hi and other.lo < self.hi

    def contains(self, other):
        """Return ``True`` if *other* lies inside this window."""
        return self.lo <= other.lo and other.hi <= self.hi

    def covers(self, t):
        return self.lo <= t < self.hi

    def shift(self, dt):
        return Interval(self.lo + dt, self.hi + dt)

    def __str__(self):
        return '[{}, {})'.format(Ticks.format(self.lo), Ticks.format(self.hi))
