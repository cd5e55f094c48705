"""Line-oriented normalized dump of a UtpInstance.

Format (ids are 1-based, events by id, edges ascending; the instance name and
event labels run to the end of their line and may contain spaces)::

    instance <name>
    timeslots <p>
    rooms <r>
    availability given|default
    events <n>
    v <id> <label>
    e <u> <v>
    a <id> <slot> <slot> ...
"""

import logging
from typing import Dict, FrozenSet, List, Tuple, Union

from kempe_recon.data_sources.model import Event, UtpInstance, log_parsed_instance
from kempe_recon.exceptions import InstanceParseError
from kempe_recon.graphs import build_graph

logger = logging.getLogger(__name__)

MAGIC = "instance"


def dump_normalized(instance: UtpInstance) -> str:
    lines = [
        f"{MAGIC} {instance.name}",
        f"timeslots {instance.timeslot_count}",
        f"rooms {instance.room_count}",
        f"availability {'given' if instance.availability_given else 'default'}",
        f"events {instance.event_count}",
    ]
    lines.extend(f"v {event.id + 1} {event.label}" for event in instance.events)
    lines.extend(f"e {u + 1} {v + 1}" for u, v in instance.conflict_graph.edges())
    for event, slots in zip(instance.events, instance.availability):
        lines.append(" ".join(["a", str(event.id + 1)] + [str(s) for s in sorted(slots)]))
    return "\n".join(lines) + "\n"


@log_parsed_instance
def parse_normalized(text: Union[str, bytes]) -> UtpInstance:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    scalars: Dict[str, str] = {}
    labels: Dict[int, str] = {}
    edges: List[Tuple[int, int]] = []
    availability: Dict[int, FrozenSet[int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        entries = raw.split()
        if not entries:
            continue
        tag, rest = entries[0], entries[1:]
        try:
            if tag == MAGIC:
                scalars[tag] = raw.strip().split(None, 1)[1]
            elif tag in ("timeslots", "rooms", "availability", "events"):
                if len(rest) != 1:
                    raise InstanceParseError(f"expected '{tag} <value>'", line=line_no)
                scalars[tag] = rest[0]
            elif tag == "v":
                _, event_id, label = raw.strip().split(None, 2)
                labels[int(event_id) - 1] = label
            elif tag == "e":
                edges.append((int(rest[0]) - 1, int(rest[1]) - 1))
            elif tag == "a":
                availability[int(rest[0]) - 1] = frozenset(int(s) for s in rest[1:])
            else:
                raise InstanceParseError(f"unknown record {tag!r}", line=line_no)
        except (ValueError, IndexError) as e:
            if isinstance(e, InstanceParseError):
                raise
            raise InstanceParseError(f"malformed {tag!r} record", line=line_no) from e

    for tag in (MAGIC, "timeslots", "rooms", "availability", "events"):
        if tag not in scalars:
            raise InstanceParseError(f"missing '{tag}' record")
    count = int(scalars["events"])
    if sorted(labels) != list(range(count)) or sorted(availability) != list(range(count)):
        raise InstanceParseError(f"expected 'v' and 'a' records for events 1..{count}")
    return UtpInstance(
        name=scalars[MAGIC],
        events=tuple(Event(i, labels[i]) for i in range(count)),
        timeslot_count=int(scalars["timeslots"]),
        room_count=int(scalars["rooms"]),
        conflict_graph=build_graph(count, edges),
        availability=tuple(availability[i] for i in range(count)),
        availability_given=scalars["availability"] == "given",
    )
