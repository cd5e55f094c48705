import logging
import multiprocessing as mp
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from tqdm import tqdm

from kempe_recon import __version__
from kempe_recon.config import Config
from kempe_recon.data_sources import FORMAT_HINTS, CertRecord, UtpInstance, load_instance
from kempe_recon.exceptions import KempeReconError
from kempe_recon.graphs import degeneracy
from kempe_recon.reduction import fixed_set, reduce_instance
from kempe_recon.report import Report
from kempe_recon.subdegeneracy import subdeg_ub
from kempe_recon.utils import get_current_timestamp

logger = logging.getLogger(__name__)

CertOutcome = Tuple[str, Optional[CertRecord], Optional[str]]


def certify_instance(instance: UtpInstance) -> CertRecord:
    """deg(G) of the conflict graph and, when availability is known, subdeg_ub of the reduced graph."""
    deg, _ = degeneracy(instance.conflict_graph)
    bound = None
    if instance.availability_given:
        reduced = reduce_instance(instance)
        result = subdeg_ub(reduced.graph, fixed_set(reduced))
        bound = result.value
        logger.debug(f"{instance.name}: lambda {result.lambda_value}, prefix {result.prefix_count}")
    record = CertRecord.from_values(instance.name, instance.timeslot_count, deg, bound)
    logger.info(f"Certified {instance.name}: p={record.p} deg={record.deg} subdeg_ub={record.subdeg_ub}")
    return record


def certify_path(task: Tuple[str, str]) -> CertOutcome:
    path, format_hint = task
    try:
        return path, certify_instance(load_instance(path, format_hint)), None
    except (KempeReconError, ValueError, OSError) as e:
        logger.error(f"Could not certify {path}: {e}")
        return path, None, str(e)


class CertificationAgent:
    def __init__(self, format_hint: str = "auto", jobs: Optional[int] = None):
        if format_hint not in FORMAT_HINTS:
            raise ValueError(f"Unsupported format: {format_hint}. Supported formats are: {', '.join(FORMAT_HINTS)}")
        self.format_hint = format_hint
        self.jobs = max(1, jobs or Config.get_default_jobs())
        self.supported_formats = FORMAT_HINTS

    def certify_file(self, path: Union[str, Path]) -> CertOutcome:
        return certify_path((str(path), self.format_hint))

    def execute_task(self, paths: Iterable[Union[str, Path]], timestamp: bool = True) -> Report:
        """Certify every file; results keep input order and failures never stop the batch."""
        tasks = [(str(path), self.format_hint) for path in paths]
        if self.jobs > 1 and len(tasks) > 1:
            with mp.Pool(processes=min(self.jobs, len(tasks))) as pool:
                outcomes: List[CertOutcome] = list(
                    tqdm(pool.imap(certify_path, tasks), total=len(tasks), desc="Certifying", unit="instance")
                )
        else:
            outcomes = [
                certify_path(task)
                for task in tqdm(tasks, desc="Certifying", unit="instance", disable=len(tasks) < 2)
            ]

        records = [record for _, record, _ in outcomes if record is not None]
        failures = [(path, error) for path, record, error in outcomes if record is None]
        return Report(
            records=records,
            failures=failures,
            tool_version=__version__,
            timestamp=get_current_timestamp() if timestamp else None,
        )
