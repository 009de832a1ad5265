from fractions import Fraction

import numpy as np

from vertisched import Ticks, TicksError, Interval


def test_from_minutes():
    """Test :meth:`Ticks.from_minutes`."""
    assert Ticks.from_minutes(1) == 1000
    assert Ticks.from_minutes(1.5) == 1500
    assert Ticks.from_minutes(0.001) == 1
    assert Ticks.from_minutes(Fraction(1, 8)) == 125
    assert Ticks.from_minutes(-180) == -180000
    assert Ticks.from_minutes([1, 2.5]) == [1000, 2500]
    assert isinstance(Ticks.from_minutes(np.int64(3)), int)

    for bad in (0.0001, 1/3, 'ten', float('nan')):
        try:
            Ticks.from_minutes(bad)
        except TicksError:
            pass
        else:
            raise AssertionError("'Ticks.from_minutes({!r})' failed to raise a 'TicksError'".format(bad))


def test_to_minutes():
    """Test :meth:`Ticks.to_minutes` and :meth:`Ticks.format`."""
    for t in (0, 1, 999, 1500, 16000, -2500, 123456789):
        assert Ticks.from_minutes(Ticks.to_minutes(t)) == t
    assert Ticks.to_minutes(None) is None
    assert Ticks.format(16000) == '16.000'
    assert Ticks.format(1) == '0.001'
    assert Ticks.format(-2500) == '-2.500'


def test_convert():
    """Test :meth:`Ticks.convert`."""
    assert Ticks.convert([30, 90], 's', 'tick') == [500, 1500]
    assert Ticks.convert(1, 'h', 'min') == 60.0
    assert Ticks.convert(1, 'HOUR', 'Ticks') == 60000
    np.testing.assert_array_equal(Ticks.convert(np.array([1, 2]), 'min', 'tick'), [1000, 2000])
    try:
        Ticks.convert(1, 'furlong', 'tick')
    except TicksError:
        pass
    else:
        raise AssertionError("'Ticks.convert' accepted an unknown unit")
    try:
        Ticks()
    except TicksError:
        pass
    else:
        raise AssertionError("'Ticks()' failed to raise a 'TicksError'")


def test_rate_per_minute():
    """Test :meth:`Ticks.rate_per_minute`."""
    assert Ticks.rate_per_minute(1, 5000) == Fraction(1, 5)
    assert Ticks.rate_per_minute(3, 1500) == 2


def test_interval():
    """Test the half-open semantics of :class:`Interval`."""
    a, b, c = Interval(0, 5), Interval(5, 7), Interval(4, 6)
    assert not a.overlaps(b) and not b.overlaps(a)
    assert a.overlaps(c) and c.overlaps(b)
    assert not a.overlaps(Interval(2, 2))
    assert a.covers(0) and not a.covers(5)
    assert a.contains(Interval(1, 5)) and not a.contains(c)
    assert a.shift(2) == Interval(2, 7)
    assert a.length == 5
    assert str(b) == '[0.005, 0.007)'
