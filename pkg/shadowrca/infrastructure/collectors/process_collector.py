# shadowrca/infrastructure/collectors/process_collector.py
"""
Live process table collector built on psutil
"""
import time
from typing import List

import psutil

from shadowrca.domain.constants.metrics import CPU_FRACTION, RSS_BYTES
from shadowrca.domain.entities.process import ProcessRecord
from shadowrca.monitoring.logging_config import get_logger

logger = get_logger(__name__)


class ProcessCollector:
    """Samples the local process table into process records"""

    def __init__(self, interval_s: float = 0.5):
        self.interval_s = interval_s

    def collect(self) -> List[ProcessRecord]:
        """
        One snapshot of every accessible process

        cpu_fraction is the share of total machine capacity used during the
        sampling interval; processes that vanish or deny access are skipped.
        """
        processes = []
        for process in psutil.process_iter(["pid", "ppid", "name"]):
            try:
                process.cpu_percent(None)
                processes.append(process)
            except (psutil.NoSuchProcess, psutil.AccessDenied, psutil.ZombieProcess):
                continue

        time.sleep(self.interval_s)
        cores = psutil.cpu_count() or 1

        records = []
        for process in processes:
            try:
                pid = process.info["pid"]
                ppid = process.info["ppid"] or 0
                if pid <= 0 or ppid == pid:
                    continue
                cpu = process.cpu_percent(None) / (100.0 * cores)
                rss = process.memory_info().rss
            except (psutil.NoSuchProcess, psutil.AccessDenied, psutil.ZombieProcess):
                continue
            records.append(
                ProcessRecord(
                    pid=pid,
                    ppid=ppid,
                    name=process.info["name"] or "",
                    metrics={CPU_FRACTION: min(1.0, max(0.0, cpu)), RSS_BYTES: float(rss)},
                )
            )

        logger.info("processes_collected", count=len(records), interval_s=self.interval_s)
        return sorted(records, key=lambda r: r.pid)
