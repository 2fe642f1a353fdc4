# shadowrca/domain/repositories/alert_store.py
"""
Append-only alert database with per-member and per-label indexes
"""
import bisect
import threading
from typing import Dict, Iterable, List, Optional, Tuple

from shadowrca.domain.entities.alert import Alert
from shadowrca.monitoring.logging_config import get_logger

logger = get_logger(__name__)

Window = Tuple[float, float]


class AlertStore:
    """
    Alerts are only ever appended. Readers take the same lock as the
    writer and therefore see a prefix of the append sequence.
    """

    def __init__(self, alerts: Optional[Iterable[Alert]] = None):
        self._log: List[Alert] = []
        # member -> sorted timestamps; (member, label) -> sorted timestamps
        self._by_member: Dict[str, List[float]] = {}
        self._by_member_label: Dict[Tuple[str, str], List[float]] = {}
        self._lock = threading.Lock()
        for alert in alerts or ():
            self.record(alert)

    def record(self, alert: Alert) -> "AlertStore":
        """Append an alert and update the indexes"""
        with self._lock:
            self._log.append(alert)
            bisect.insort(self._by_member.setdefault(alert.origin, []), alert.timestamp)
            bisect.insort(
                self._by_member_label.setdefault((alert.origin, alert.label), []),
                alert.timestamp,
            )
        logger.debug("alert_recorded", origin=alert.origin, label=alert.label, timestamp=alert.timestamp)
        return self

    def series(
        self,
        member: str,
        label: Optional[str] = None,
        window: Optional[Window] = None,
    ) -> List[float]:
        """Sorted alert timestamps of a member, optionally filtered by label and [t0, t1]"""
        with self._lock:
            if label is None:
                timestamps = self._by_member.get(member, [])
            else:
                timestamps = self._by_member_label.get((member, label), [])
            if window is None:
                return list(timestamps)
            t0, t1 = window
            lo = bisect.bisect_left(timestamps, t0)
            hi = bisect.bisect_right(timestamps, t1)
            return timestamps[lo:hi]

    def alerts(self) -> Tuple[Alert, ...]:
        """The raw log in append order"""
        with self._lock:
            return tuple(self._log)

    def members(self) -> List[str]:
        """Members with at least one alert, sorted"""
        with self._lock:
            return sorted(self._by_member)

    def labels(self, member: str) -> List[str]:
        with self._lock:
            return sorted(label for (m, label) in self._by_member_label if m == member)

    def count(self, member: Optional[str] = None) -> int:
        with self._lock:
            if member is None:
                return len(self._log)
            return len(self._by_member.get(member, ()))

    def earliest(self, window: Optional[Window] = None) -> Optional[Alert]:
        """Earliest alert (ties broken by origin, then label) within an optional window"""
        with self._lock:
            candidates = self._log
            if window is not None:
                candidates = [a for a in candidates if window[0] <= a.timestamp <= window[1]]
            return min(candidates, default=None)

    def first_alert_times(self, window: Optional[Window] = None) -> Dict[str, float]:
        """First alert timestamp per member within an optional window"""
        result = {}
        for member in self.members():
            timestamps = self.series(member, window=window)
            if timestamps:
                result[member] = timestamps[0]
        return result

    def __len__(self) -> int:
        return self.count()
