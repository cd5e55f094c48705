"""
Readers for post-enrolment .tim instances.

Both variants share the sections ``E R F S`` header, R room sizes, an S x E
student attendance matrix, an R x F room feature matrix and an E x F event
feature matrix. The ITC2007 variant appends an E x 45 availability matrix
and an E x E precedence matrix with entries in {-1, 0, 1}.
"""

import logging
from typing import Annotated, List, Optional, Tuple, Union

import numpy as np

from kempe_recon.data_sources.model import Event, UtpInstance, log_parsed_instance
from kempe_recon.exceptions import InstanceParseError
from kempe_recon.graphs import build_graph
from kempe_recon.utils import decorate_all_methods

logger = logging.getLogger(__name__)

TIMESLOTS = 45
VARIANT_ITC = "itc2007-pe"
VARIANT_MN = "metaheuristics-network"
VARIANTS = (VARIANT_ITC, VARIANT_MN)


def _tokens(text: Union[str, bytes]) -> np.ndarray:
    entries = (text.decode("utf-8") if isinstance(text, bytes) else text).split()
    try:
        return np.array(entries, dtype=np.int64)
    except ValueError:
        for offset, token in enumerate(entries):
            try:
                int(token)
            except ValueError:
                raise InstanceParseError(f"non-integer token {token!r}", offset=offset) from None
        raise


def _section_lengths(header: np.ndarray) -> Tuple[int, int]:
    events, rooms, features, students = (int(x) for x in header)
    base = 4 + rooms + students * events + rooms * features + events * features
    return base, base + events * TIMESLOTS + events * events


def detect_variant(text: Union[str, bytes]) -> str:
    """Tell the two .tim variants apart by their total token count."""
    tokens = _tokens(text)
    if len(tokens) < 4:
        raise InstanceParseError("truncated header", offset=len(tokens))
    base, itc = _section_lengths(tokens[:4])
    if len(tokens) == itc:
        return VARIANT_ITC
    if len(tokens) == base:
        return VARIANT_MN
    raise InstanceParseError(
        f"{len(tokens)} tokens match neither variant ({base} or {itc} expected)", offset=len(tokens)
    )


class _Cursor:
    """Sequential matrix reader over the token array that remembers its offset."""

    def __init__(self, tokens: np.ndarray):
        self.tokens = tokens
        self.offset = 0

    def take(self, rows: int, cols: int, what: str, allowed: Tuple[int, ...] = (0, 1)) -> np.ndarray:
        size = rows * cols
        if self.offset + size > len(self.tokens):
            raise InstanceParseError(f"truncated {what} matrix", offset=len(self.tokens))
        block = self.tokens[self.offset:self.offset + size]
        invalid = np.flatnonzero(~np.isin(block, allowed))
        if invalid.size:
            bad = int(invalid[0])
            raise InstanceParseError(
                f"{what} entry {int(block[bad])} not in {set(allowed)}", offset=self.offset + bad
            )
        self.offset += size
        return block.reshape(rows, cols)


@decorate_all_methods(log_parsed_instance)
class TimUtils:

    def parse_tim(
        text: Annotated[Union[str, bytes], "contents of a .tim file"],
        variant: Annotated[Optional[str], "'itc2007-pe', 'metaheuristics-network' or None to detect"] = None,
        name: Annotated[str, "instance name"] = "unnamed",
    ) -> UtpInstance:
        """Parse a post-enrolment instance. Two events conflict iff some student attends both."""
        if variant is None:
            variant = detect_variant(text)
        if variant not in VARIANTS:
            raise ValueError(f"unknown .tim variant {variant!r}; expected one of {VARIANTS}")
        cursor = _Cursor(_tokens(text))
        if len(cursor.tokens) < 4:
            raise InstanceParseError("truncated header", offset=len(cursor.tokens))
        header = cursor.tokens[:4]
        if np.any(header < 0) or header[0] < 1:
            raise InstanceParseError(f"invalid header {header.tolist()}", offset=0)
        event_count, room_count, feature_count, student_count = (int(x) for x in header)
        cursor.offset = 4

        if cursor.offset + room_count > len(cursor.tokens):
            raise InstanceParseError("truncated room sizes", offset=len(cursor.tokens))
        cursor.offset += room_count

        attendance = cursor.take(student_count, event_count, "attendance")
        cursor.take(room_count, feature_count, "room feature")
        cursor.take(event_count, feature_count, "event feature")

        if variant == VARIANT_ITC:
            availability_start = cursor.offset
            allowed = cursor.take(event_count, TIMESLOTS, "availability")
            cursor.take(event_count, event_count, "precedence", allowed=(-1, 0, 1))
            empty = np.flatnonzero(allowed.sum(axis=1) == 0)
            if empty.size:
                event = int(empty[0])
                raise InstanceParseError(
                    f"event {event + 1} has no available timeslot",
                    offset=availability_start + event * TIMESLOTS,
                )
            availability = tuple(frozenset(int(j) + 1 for j in np.flatnonzero(row)) for row in allowed)
        else:
            availability = (frozenset(range(1, TIMESLOTS + 1)),) * event_count

        if cursor.offset < len(cursor.tokens):
            logger.warning(f"{name}: ignoring {len(cursor.tokens) - cursor.offset} trailing tokens")

        shared = attendance.T.astype(np.int64) @ attendance.astype(np.int64)
        rows, cols = np.nonzero(np.triu(shared > 0, k=1))
        edges: List[Tuple[int, int]] = list(zip(rows.tolist(), cols.tolist()))

        return UtpInstance(
            name=name,
            events=tuple(Event(i, f"e{i + 1}") for i in range(event_count)),
            timeslot_count=TIMESLOTS,
            room_count=room_count,
            conflict_graph=build_graph(event_count, edges),
            availability=availability,
            availability_given=variant == VARIANT_ITC,
        )


parse_tim = TimUtils.parse_tim
