import logging
from pathlib import Path
from typing import Annotated, Union

from kempe_recon.data_sources.cctt_utils import parse_cctt
from kempe_recon.data_sources.model import UtpInstance
from kempe_recon.data_sources.normalized_utils import MAGIC, parse_normalized
from kempe_recon.data_sources.tim_utils import VARIANT_ITC, VARIANT_MN, parse_tim

logger = logging.getLogger(__name__)

FORMAT_HINTS = ("cctt", "tim-itc", "tim-mn", "auto")


def detect_format(path: Path, text: str) -> str:
    head = text.lstrip()
    if path.suffix.lower() == ".ctt" or "COURSES:" in text:
        return "cctt"
    if head.startswith(f"{MAGIC} "):
        return "normalized"
    return "tim"


def load_instance(
    path: Annotated[Union[str, Path], "instance file"],
    format_hint: Annotated[str, "one of cctt, tim-itc, tim-mn, auto"] = "auto",
) -> UtpInstance:
    """Read an instance file; the instance is named after the file stem."""
    if format_hint not in FORMAT_HINTS:
        raise ValueError(f"unknown format {format_hint!r}; expected one of {FORMAT_HINTS}")
    path = Path(path)
    text = path.read_text()
    name = path.stem

    kind = format_hint if format_hint != "auto" else detect_format(path, text)
    logger.debug(f"Loading {path} as {kind}")
    if kind == "cctt":
        return parse_cctt(text, name=name)
    if kind == "normalized":
        return parse_normalized(text)
    if kind == "tim-itc":
        return parse_tim(text, variant=VARIANT_ITC, name=name)
    if kind == "tim-mn":
        return parse_tim(text, variant=VARIANT_MN, name=name)
    return parse_tim(text, variant=None, name=name)
