import logging
from dataclasses import dataclass
from functools import wraps
from typing import Dict, FrozenSet, List, Optional, Tuple

from kempe_recon.exceptions import GraphInputError
from kempe_recon.graphs import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Event:
    id: int
    label: str


@dataclass(frozen=True)
class UtpInstance:
    """A university timetabling instance reduced to what certification needs.

    Timeslots are 1-based. ``availability_given`` is False for formats that
    carry no availability data, in which case every event may use every slot.
    """

    name: str
    events: Tuple[Event, ...]
    timeslot_count: int
    room_count: int
    conflict_graph: Graph
    availability: Tuple[FrozenSet[int], ...]
    availability_given: bool = True

    def __post_init__(self):
        if self.timeslot_count < 1:
            raise GraphInputError(f"{self.name}: timeslot count must be positive")
        if self.conflict_graph.vertex_count != len(self.events):
            raise GraphInputError(
                f"{self.name}: conflict graph has {self.conflict_graph.vertex_count} vertices "
                f"for {len(self.events)} events"
            )
        if len(self.availability) != len(self.events):
            raise GraphInputError(f"{self.name}: availability must list one slot set per event")
        for event, slots in zip(self.events, self.availability):
            if not slots:
                raise GraphInputError(f"{self.name}: event {event.id} ({event.label}) has no available timeslot")
            if min(slots) < 1 or max(slots) > self.timeslot_count:
                raise GraphInputError(
                    f"{self.name}: event {event.id} ({event.label}) uses a timeslot outside 1..{self.timeslot_count}"
                )

    @property
    def event_count(self) -> int:
        return len(self.events)

    def course_blocks(self) -> Dict[str, List[int]]:
        """Event ids grouped by label, in order of first appearance."""
        blocks: Dict[str, List[int]] = {}
        for event in self.events:
            blocks.setdefault(event.label, []).append(event.id)
        return blocks


@dataclass(frozen=True)
class CertRecord:
    instance_name: str
    p: int
    deg: int
    subdeg_ub: Optional[int]
    connected_basic: bool
    connected_with_availability: Optional[bool]

    @classmethod
    def from_values(cls, instance_name: str, p: int, deg: int, subdeg_ub: Optional[int]) -> "CertRecord":
        # Both verdicts are derived independently; neither implies the other.
        return cls(
            instance_name=instance_name,
            p=p,
            deg=deg,
            subdeg_ub=subdeg_ub,
            connected_basic=p > deg,
            connected_with_availability=None if subdeg_ub is None else p > subdeg_ub,
        )


def log_parsed_instance(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        result = func(*args, **kwargs)
        if isinstance(result, UtpInstance):
            logger.info(
                f"Parsed {result.name}: {result.event_count} events, "
                f"{result.conflict_graph.edge_count} conflicts, {result.timeslot_count} timeslots"
            )
        return result

    return wrapper
