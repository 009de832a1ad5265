__all__ = ['VertiError', 'FileError', 'TicksError', 'NetworkError', 'DemandError', 'JourneyError',
           'AnalysisError', 'BottleneckError', 'SchedulerError', 'OracleError', 'SimulationError']

class VertiError(Exception):
    """General vertisched error."""
    pass

class FileError(VertiError):
    """File or filesystem related error."""
    pass

class TicksError(VertiError):
    """:class:`Tick converter<vertisched.tools.ticks.Ticks>` error."""
    pass

class NetworkError(VertiError):
    """|Network| related error."""
    pass

class DemandError(VertiError):
    """|Demand| related error."""
    pass

class JourneyError(VertiError):
    """|Journey| related error."""
    pass

class AnalysisError(VertiError):
    """Throughput or feasibility analysis error."""
    pass

class BottleneckError(AnalysisError):
    """No node set satisfies the bottleneck definition."""
    pass

class SchedulerError(VertiError):
    """Scheduler internal consistency error."""
    pass

class OracleError(VertiError):
    """Brute-force oracle error."""
    pass

class SimulationError(VertiError):
    """Simulation setup error."""
    pass
