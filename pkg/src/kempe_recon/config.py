"""
Settings for kempe-recon.

Values come from the process environment, with a ``.env`` file in the working
directory loaded first. Only the oracle caps need parsing beyond plain strings.
"""

import logging
import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

CAPS_ENV_VARIABLE = "KEMPE_RECON_CAPS"


@dataclass(frozen=True)
class OracleCaps:
    """Hard limits on the brute-force oracle's search spaces."""

    max_vertices: int = 8
    max_colors: int = 6
    max_subdeg_vertices: int = 10


class Config:
    """Environment-backed settings for the CLI, the certification agent and the oracle."""

    def __init__(self):
        self.environment = self.get_env_variable('ENVIRONMENT', 'development')
        self.debug = self.get_bool_env_variable('DEBUG', False)
        self.log_level = self.get_env_variable('LOG_LEVEL', 'DEBUG' if self.debug else 'INFO')

    @staticmethod
    def get_env_variable(key: str, default: Optional[str] = None) -> Optional[str]:
        return os.getenv(key, default)

    @staticmethod
    def get_bool_env_variable(key: str, default: bool = False) -> bool:
        """Read ``key`` as a flag; ``true``, ``1``, ``yes`` and ``on`` count as set."""
        value = os.getenv(key, str(default)).lower()
        return value in ('true', '1', 'yes', 'on')

    @staticmethod
    def get_int_env_variable(key: str, default: int = 0) -> int:
        """Read ``key`` as an integer, falling back to ``default`` when it does not parse."""
        raw = os.getenv(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            logger.warning(f"Ignoring non-integer {key} value: {raw!r}")
            return default

    @staticmethod
    def get_log_file() -> Optional[str]:
        """Get the optional log file path."""
        return Config.get_env_variable('KEMPE_RECON_LOG_FILE')

    @staticmethod
    def get_default_jobs() -> int:
        """Get the default number of certification workers."""
        return max(1, Config.get_int_env_variable('KEMPE_RECON_JOBS', 1))

    @staticmethod
    def get_oracle_caps() -> OracleCaps:
        """
        Get the oracle enumeration caps.

        ``KEMPE_RECON_CAPS`` holds comma-separated ``key=value`` overrides, e.g.
        ``max_vertices=10,max_colors=5``. Malformed entries are skipped with a warning.

        Returns:
            OracleCaps with the overrides applied
        """
        raw = Config.get_env_variable(CAPS_ENV_VARIABLE, '') or ''
        known = {f.name for f in fields(OracleCaps)}
        overrides: Dict[str, int] = {}
        for item in raw.split(','):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition('=')
            key = key.strip()
            if not sep or key not in known:
                logger.warning(f"Ignoring unknown {CAPS_ENV_VARIABLE} entry: {item!r}")
                continue
            try:
                overrides[key] = int(value)
            except ValueError:
                logger.warning(f"Ignoring non-integer {CAPS_ENV_VARIABLE} value: {item!r}")
        return OracleCaps(**overrides)

    def get_all_config(self) -> Dict[str, Any]:
        """Snapshot of the effective settings, logged at DEBUG by the CLI."""
        return {
            'environment': self.environment,
            'debug': self.debug,
            'log_level': self.log_level,
            'log_file': self.get_log_file(),
            'default_jobs': self.get_default_jobs(),
            'oracle_caps': asdict(self.get_oracle_caps()),
        }
