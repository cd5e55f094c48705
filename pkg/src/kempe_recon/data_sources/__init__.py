from .cctt_utils import CCTTUtils, parse_cctt
from .loader import FORMAT_HINTS, load_instance
from .model import CertRecord, Event, UtpInstance
from .normalized_utils import dump_normalized, parse_normalized
from .tim_utils import TimUtils, detect_variant, parse_tim
from .toy_fixture import TOY_BLOCK_ALIASES, TOY_CTT, load_toy_instance

__all__ = [
    "CCTTUtils",
    "CertRecord",
    "Event",
    "FORMAT_HINTS",
    "TOY_BLOCK_ALIASES",
    "TOY_CTT",
    "TimUtils",
    "UtpInstance",
    "detect_variant",
    "dump_normalized",
    "load_instance",
    "load_toy_instance",
    "parse_cctt",
    "parse_normalized",
    "parse_tim",
]
