import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Annotated, Optional, Union

logger = logging.getLogger(__name__)

SavePathType = Annotated[Optional[str], "File path to write to. If None, nothing is written."]


def save_output(text: str, tag: str, save_path: SavePathType = None) -> None:
    if not save_path:
        return
    Path(save_path).parent.mkdir(parents=True, exist_ok=True)
    Path(save_path).write_text(text)
    logger.info(f"{tag} saved to {save_path}")


def read_text(path: Union[str, Path]) -> str:
    with open(path, "r") as f:
        return f.read()


def get_current_timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def decorate_all_methods(decorator):
    def class_decorator(cls):
        for attr_name, attr_value in cls.__dict__.items():
            if callable(attr_value) and not attr_name.startswith("_"):
                setattr(cls, attr_name, decorator(attr_value))
        return cls

    return class_decorator
