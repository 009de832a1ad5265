import heapq
from dataclasses import dataclass
from typing import Any, Optional

from ..core.errors import VertiError
from ..model.demand import id_key

__all__ = ['SimEvent', 'EventQueue', 'PRIORITY']

# order of events sharing one instant
PRIORITY = {'landing': 0, 'service_complete': 1, 'demand_release': 2, 'takeoff': 3, 'retry': 4}


@dataclass(frozen=True)
class SimEvent:
    """A simulation event. *position* is the route position of the node landed at, left or taken off from; it is ``None`` for releases and retries."""
    time: int
    kind: str
    demand_id: Any
    position: Optional[int] = None

    def __post_init__(self):
        if self.kind not in PRIORITY:
            raise VertiError('Unknown simulation event {}'.format(self.kind))

    def key(self):
        return (self.time, PRIORITY[self.kind], id_key(self.demand_id), -1 if self.position is None else self.position)


class EventQueue:
    """Future event list on a heap, ordered by time, then kind priority, then demand id. Events with equal keys come out in insertion order."""

    def __init__(self):
        self._queue = []
        self._seq = 0

    def push(self, event):
        heapq.heappush(self._queue, (event.key(), self._seq, event))
        self._seq += 1

    def pop(self):
        return heapq.heappop(self._queue)[2]

    def pop_batch(self):
        """Pop and return all events of the earliest instant, in processing order."""
        first = self.pop()
        ret = [first]
        while self._queue and self._queue[0][2].time == first.time:
            ret.append(self.pop())
        return ret

    def peek_time(self):
        return self._queue[0][2].time if self._queue else None

    def __len__(self):
        return len(self._queue)

    def __bool__(self):
        return bool(self._queue)
