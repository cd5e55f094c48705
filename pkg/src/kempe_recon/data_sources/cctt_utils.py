import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Annotated, Dict, List, Optional, Set, Tuple, Union

from kempe_recon.data_sources.model import Event, UtpInstance, log_parsed_instance
from kempe_recon.exceptions import InstanceParseError
from kempe_recon.graphs import build_graph
from kempe_recon.utils import decorate_all_methods

logger = logging.getLogger(__name__)

HEADER_KEYS = ("Name", "Courses", "Rooms", "Days", "Periods_per_day", "Curricula", "Constraints")
REQUIRED_SECTIONS = ("COURSES", "ROOMS", "CURRICULA", "UNAVAILABILITY_CONSTRAINTS")


@dataclass
class _Course:
    name: str
    teacher: str
    lectures: int
    line: int
    unavailable: Set[int] = field(default_factory=set)


def _as_text(text: Union[str, bytes]) -> str:
    return text.decode("utf-8") if isinstance(text, bytes) else text


def _to_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceParseError(f"{what} must be an integer, got {token!r}", line=line) from None


@decorate_all_methods(log_parsed_instance)
class CCTTUtils:

    def parse_cctt(
        text: Annotated[Union[str, bytes], "contents of a curriculum-based .ctt file"],
        name: Annotated[Optional[str], "instance name; defaults to the file's Name header"] = None,
    ) -> UtpInstance:
        """Parse a curriculum-based timetabling instance.

        Each course contributes one event per lecture. Two events conflict when
        they belong to the same course, to courses taught by the same teacher,
        or to courses sharing a curriculum. Timeslot (day, period) maps to
        ``day * periods_per_day + period + 1``.
        """
        header: Dict[str, Tuple[int, str]] = {}
        sections: Dict[str, List[Tuple[int, List[str]]]] = {}
        section_lines: Dict[str, int] = {}
        current: Optional[str] = None
        last_line = 0

        for line_no, raw in enumerate(_as_text(text).splitlines(), start=1):
            last_line = line_no
            entries = raw.split()
            if not entries:
                continue
            if entries[0] == "END.":
                current = None
                break
            if len(entries) == 1 and entries[0].endswith(":") and entries[0][:-1].isupper():
                current = entries[0][:-1]
                section_lines[current] = line_no
                if current not in REQUIRED_SECTIONS:
                    logger.warning(f"line {line_no}: skipping unsupported section {current}")
                sections.setdefault(current, [])
                continue
            if current is None:
                key, sep, value = raw.partition(":")
                if not sep:
                    raise InstanceParseError(f"expected 'Key: value' header, got {raw.strip()!r}", line=line_no)
                header[key.strip()] = (line_no, value.strip())
            else:
                sections[current].append((line_no, entries))

        for key in HEADER_KEYS[1:]:
            if key not in header:
                raise InstanceParseError(f"missing header field {key}", line=last_line)
        for section in REQUIRED_SECTIONS:
            if section not in sections:
                raise InstanceParseError(f"missing section {section}:", line=last_line)

        def header_int(key: str) -> int:
            line_no, value = header[key]
            return _to_int(value, line_no, key)

        days = header_int("Days")
        periods = header_int("Periods_per_day")
        if days < 1 or periods < 1:
            raise InstanceParseError("Days and Periods_per_day must be positive", line=header["Days"][0])
        slot_count = days * periods

        courses: Dict[str, _Course] = {}
        for line_no, entries in sections["COURSES"]:
            if len(entries) != 5:
                raise InstanceParseError("expected '<course> <teacher> <lectures> <min_days> <students>'", line=line_no)
            lectures = _to_int(entries[2], line_no, "lecture count")
            if lectures < 1:
                raise InstanceParseError(f"course {entries[0]} has {lectures} lectures", line=line_no)
            if entries[0] in courses:
                raise InstanceParseError(f"duplicate course {entries[0]}", line=line_no)
            courses[entries[0]] = _Course(entries[0], entries[1], lectures, line_no)
        declared = header_int("Courses")
        if declared != len(courses):
            raise InstanceParseError(
                f"header declares {declared} courses, COURSES lists {len(courses)}",
                line=section_lines["COURSES"],
            )

        room_count = len(sections["ROOMS"])
        if room_count != header_int("Rooms"):
            logger.warning(f"header declares {header['Rooms'][1]} rooms, ROOMS lists {room_count}")

        conflicting: Set[Tuple[str, str]] = set()
        for line_no, entries in sections["CURRICULA"]:
            if len(entries) < 2:
                raise InstanceParseError("expected '<curriculum> <n> <courses...>'", line=line_no)
            members = entries[2:]
            if _to_int(entries[1], line_no, "curriculum size") != len(members):
                raise InstanceParseError(f"curriculum {entries[0]} size does not match its course list", line=line_no)
            for member in members:
                if member not in courses:
                    raise InstanceParseError(f"curriculum {entries[0]} references unknown course {member}", line=line_no)
            conflicting.update(combinations(sorted(set(members)), 2))
        declared = header_int("Curricula")
        if declared != len(sections["CURRICULA"]):
            raise InstanceParseError(
                f"header declares {declared} curricula, CURRICULA lists {len(sections['CURRICULA'])}",
                line=section_lines["CURRICULA"],
            )

        by_teacher: Dict[str, List[str]] = {}
        for course in courses.values():
            by_teacher.setdefault(course.teacher, []).append(course.name)
        for names in by_teacher.values():
            conflicting.update(combinations(sorted(names), 2))

        for line_no, entries in sections["UNAVAILABILITY_CONSTRAINTS"]:
            if len(entries) != 3:
                raise InstanceParseError("expected '<course> <day> <period>'", line=line_no)
            course = courses.get(entries[0])
            if course is None:
                raise InstanceParseError(f"unavailability references unknown course {entries[0]}", line=line_no)
            day = _to_int(entries[1], line_no, "day")
            period = _to_int(entries[2], line_no, "period")
            if not (0 <= day < days and 0 <= period < periods):
                raise InstanceParseError(f"slot ({day},{period}) outside {days} days x {periods} periods", line=line_no)
            course.unavailable.add(day * periods + period + 1)
            if len(course.unavailable) == slot_count:
                raise InstanceParseError(f"course {course.name} has no available timeslot", line=line_no)

        events: List[Event] = []
        lectures_of: Dict[str, List[int]] = {}
        availability = []
        all_slots = frozenset(range(1, slot_count + 1))
        for course in courses.values():
            ids = list(range(len(events), len(events) + course.lectures))
            lectures_of[course.name] = ids
            events.extend(Event(i, course.name) for i in ids)
            availability.extend([all_slots - course.unavailable] * course.lectures)

        edges = []
        for ids in lectures_of.values():
            edges.extend(combinations(ids, 2))
        for first, second in conflicting:
            edges.extend((u, v) for u in lectures_of[first] for v in lectures_of[second])

        return UtpInstance(
            name=name or header.get("Name", (0, "unnamed"))[1],
            events=tuple(events),
            timeslot_count=slot_count,
            room_count=room_count,
            conflict_graph=build_graph(len(events), edges),
            availability=tuple(availability),
            availability_given=True,
        )


parse_cctt = CCTTUtils.parse_cctt
