import io
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import pandas as pd

from kempe_recon.data_sources.model import CertRecord

logger = logging.getLogger(__name__)

COLUMNS = ["instance", "p", "deg", "subdeg_ub", "connected_basic", "connected_availability"]
MARKDOWN_COLUMNS = ["instance", "p", "deg(G)", "subdeg_ub"]
REPORT_FORMATS = ("csv", "md")
NOT_AVAILABLE = "n/a"


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return NOT_AVAILABLE
    return "true" if value else "false"


@dataclass
class Report:
    """Certification results in input order, plus the files that failed to parse."""

    records: List[CertRecord]
    failures: List[Tuple[str, str]] = field(default_factory=list)
    tool_version: str = ""
    timestamp: Optional[str] = None

    @property
    def all_parsed(self) -> bool:
        return not self.failures

    def to_dataframe(self) -> pd.DataFrame:
        rows = [
            {
                "instance": r.instance_name,
                "p": r.p,
                "deg": r.deg,
                "subdeg_ub": NOT_AVAILABLE if r.subdeg_ub is None else r.subdeg_ub,
                "connected_basic": _flag(r.connected_basic),
                "connected_availability": _flag(r.connected_with_availability),
            }
            for r in self.records
        ]
        return pd.DataFrame(rows, columns=COLUMNS)

    def _banner(self) -> str:
        banner = f"# kempe-recon {self.tool_version}"
        return f"{banner} generated {self.timestamp}" if self.timestamp else banner

    def _failure_lines(self) -> List[str]:
        return [f"# failed {path}: {message}" for path, message in self.failures]

    def to_csv(self) -> str:
        """CSV table preceded by the banner; banner and failure lines start with ``#``."""
        body = self.to_dataframe().to_csv(index=False, lineterminator="\n")
        return "\n".join([self._banner(), body.rstrip("\n")] + self._failure_lines()) + "\n"

    def to_markdown(self) -> str:
        """Table with connectedness certificates in bold."""
        rows = []
        for r in self.records:
            if r.subdeg_ub is None:
                subdeg = NOT_AVAILABLE
            else:
                subdeg = f"**{r.subdeg_ub}**" if r.connected_with_availability else str(r.subdeg_ub)
            rows.append({
                "instance": r.instance_name,
                "p": str(r.p),
                "deg(G)": f"**{r.deg}**" if r.connected_basic else str(r.deg),
                "subdeg_ub": subdeg,
            })
        table = pd.DataFrame(rows, columns=MARKDOWN_COLUMNS).to_markdown(index=False, disable_numparse=True)
        lines = [self._banner(), "", table]
        failures = self._failure_lines()
        if failures:
            lines.append("")
            lines.extend(failures)
        return "\n".join(lines) + "\n"

    def render(self, report_format: str = "csv") -> str:
        if report_format == "csv":
            return self.to_csv()
        if report_format == "md":
            return self.to_markdown()
        raise ValueError(f"unknown report format {report_format!r}; expected one of {REPORT_FORMATS}")


def read_csv_report(text: str) -> pd.DataFrame:
    """Load a CSV report back into a table, skipping the ``#`` banner and failure lines."""
    return pd.read_csv(io.StringIO(text), comment="#", dtype=str, keep_default_na=False)
