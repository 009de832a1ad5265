import collections
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import numpy as np

from ..core.errors import TicksError


__all__ = ['Ticks', 'TimePoint', 'Duration']

#: A point in time, in ticks.
TimePoint = int
#: A length of time, in ticks.
Duration = int


class Ticks:
    """A singleton class converting between minutes and integer ticks.

    Every time quantity inside the package (travel time bounds, service times, deadlines, departures, arrivals) is an integer number of ticks, with 1 tick = 1/1000 minute. Minutes appear only at the boundaries: JSON files, command line flags and reports.

    The following time units are supported:

    *   ``tick``, ``ticks``
    *   ``s``, ``second``
    *   ``min``, ``minute``
    *   ``h``, ``hour``

    Conversion *into* ticks is exact or fails: a value that is not a whole number of ticks raises |TicksError|. Conversion *out of* ticks returns floats (or exact |Fraction| for rates).

    Example::

        >>> Ticks.from_minutes(1.5)
        1500
        >>> Ticks.to_minutes(1500)
        1.5
        >>> Ticks.format(16000)
        '16.000'
        >>> Ticks.convert([30, 90], 's', 'tick')
        [500, 1500]
        >>> Ticks.from_minutes(0.0001)
        TicksError: 0.0001 min is not a whole number of ticks
    """

    per_minute = 1000

    time = {}
    time['tick'] = time['ticks']    = Fraction(1)
    time['s'] = time['second']      = Fraction(per_minute, 60)
    time['min'] = time['minute']    = Fraction(per_minute)
    time['h'] = time['hour']        = Fraction(per_minute * 60)


    def __init__(self):
        raise TicksError('Instances of Ticks cannot be created')


    @classmethod
    def find_unit(cls, unit):
        for k in cls.time:
            if k.lower() == unit.lower():
                return k
        raise TicksError("Unsupported time unit: '{}'. Supported units: {}".format(unit, ', '.join(cls.time)))


    @classmethod
    def conversion_ratio(cls, inp, out):
        """Return the exact conversion ratio from unit *inp* to *out*."""
        return cls.time[cls.find_unit(inp)] / cls.time[cls.find_unit(out)]


    @classmethod
    def _exact(cls, value):
        if isinstance(value, (bool, str)):
            raise TicksError('{!r} is not a time value'.format(value))
        if isinstance(value, (int, np.integer)):
            return Fraction(int(value))
        if isinstance(value, Fraction):
            return value
        try:
            # repr of a float is the shortest decimal that reads back to it
            return Fraction(Decimal(repr(float(value))))
        except (InvalidOperation, ValueError, TypeError, OverflowError):
            raise TicksError('{!r} is not a finite time value'.format(value))


    @classmethod
    def convert(cls, value, inp, out):
        """Convert *value* from unit *inp* to *out*.

        *value* can be a single number or a container (list, tuple, numpy.array etc.). In the latter case a container of the same type is returned. When *out* is ``tick`` the result is an integer and the conversion must be exact.
        """
        if value is None:
            return value
        if isinstance(value, collections.abc.Iterable) and not isinstance(value, str):
            t = type(value)
            if t == np.ndarray:
                t = np.array
            return t([cls.convert(i, inp, out) for i in value])
        ret = cls._exact(value) * cls.conversion_ratio(inp, out)
        if cls.find_unit(out) in ('tick', 'ticks'):
            if ret.denominator != 1:
                raise TicksError('{} {} is not a whole number of ticks'.format(value, inp))
            return int(ret)
        return float(ret)


    @classmethod
    def from_minutes(cls, value):
        """Return *value* minutes as integer ticks. Raise |TicksError| if the value is not on the tick grid."""
        return cls.convert(value, 'min', 'tick')


    @classmethod
    def to_minutes(cls, ticks):
        """Return *ticks* as float minutes. The result reads back to the same tick count through :meth:`from_minutes`."""
        if ticks is None:
            return None
        return int(ticks) / cls.per_minute


    @classmethod
    def format(cls, ticks):
        """Return *ticks* as a string of minutes with exactly 3 decimals."""
        sign = '-' if ticks < 0 else ''
        whole, frac = divmod(abs(int(ticks)), cls.per_minute)
        return '{}{}.{:03d}'.format(sign, whole, frac)


    @classmethod
    def rate_per_minute(cls, count, ticks):
        """Return the exact rate of *count* events over *ticks* ticks, per minute."""
        return Fraction(count) * cls.per_minute / ticks
