# shadowrca/application/services/correlation_service.py
"""
Alert time-series correlation: 1D iterative closest points and time lag
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from shadowrca.application.services.base_service import BaseService
from shadowrca.core.error_handling.errors import InsufficientDataError
from shadowrca.domain.entities.trajectory import AlertSeries, CorrelationMethod, DependencyVerdict, LagModel
from shadowrca.domain.repositories.alert_store import AlertStore, Window
from shadowrca.monitoring.metrics import correlations_total

# Lag models need at least this many samples
MIN_LAG_SAMPLES = 3
MATCHED_FRACTION_THRESHOLD = 0.5
HISTOGRAM_BIN_S = 0.1


@dataclass(frozen=True)
class IcpParameters:
    max_iters: int = 50
    match_window_s: float = 1.0
    converge_eps_s: float = 1e-3
    max_offset_s: float = 10.0


@dataclass(frozen=True)
class LagParameters:
    max_lag_s: float = 10.0
    epsilon_s: float = 0.01
    z_max: float = 3.0
    episode_gap_s: Optional[float] = None


@dataclass(frozen=True)
class _Alignment:
    offset: float
    matched_fraction: float
    rms: float


class CorrelationService(BaseService):
    """Pairwise dependency verdicts between alert series"""

    def co_occurrence(
        self,
        a: AlertSeries,
        b: AlertSeries,
        params: Optional[IcpParameters] = None,
    ) -> DependencyVerdict:
        """
        Align series `a` (upstream) onto `b` (downstream) with 1D ICP

        Each iteration pairs the points of a + offset and b that are each
        other's nearest neighbour, a one-to-one matching, and moves the offset
        by the median signed residual of those pairs, until the step drops
        below converge_eps_s or max_iters is reached. Three starting offsets
        are tried (zero, median difference, first-sample difference)
        and the best alignment wins; alignments drifting beyond max_offset_s
        are abandoned. The pair is dependent iff the pairs within
        match_window_s cover at least half of the longer series (distinct
        timestamps), and then
        strength = matched_fraction / (1 + rms residual).
        """
        params = params or self._icp_defaults()
        method = CorrelationMethod.CO_OCCURRENCE
        if not len(a) or not len(b):
            return self._count(DependencyVerdict.independent(a.member, b.member, method))

        src = np.unique(np.asarray(a.timestamps, dtype=float))
        dst = np.unique(np.asarray(b.timestamps, dtype=float))
        candidates = (0.0, float(np.median(dst) - np.median(src)), float(dst[0] - src[0]))

        best: Optional[_Alignment] = None
        for start in dict.fromkeys(candidates):
            alignment = self._icp(src, dst, start, params)
            if alignment is None:
                continue
            if best is None or (alignment.matched_fraction, -alignment.rms) > (best.matched_fraction, -best.rms):
                best = alignment

        if best is None or best.matched_fraction < MATCHED_FRACTION_THRESHOLD:
            offset = best.offset if best is not None else 0.0
            return self._count(DependencyVerdict.independent(a.member, b.member, method, offset))

        strength = min(1.0, max(0.0, best.matched_fraction / (1.0 + best.rms)))
        return self._count(DependencyVerdict(a.member, b.member, method, True, strength, best.offset))

    def estimate_lag_model(
        self,
        store: AlertStore,
        pairs: Iterable[Tuple[str, str]],
        params: Optional[LagParameters] = None,
        window: Optional[Window] = None,
    ) -> LagModel:
        """
        Fit the lag distribution over upstream/downstream member pairs

        For every upstream alert at t the lag is (first downstream alert at or
        after t) - t, kept only within the max_lag_s horizon.

        Raises:
            InsufficientDataError: fewer than three lags were collected
        """
        params = params or self._lag_defaults()
        lags: List[float] = []
        for upstream, downstream in pairs:
            lags.extend(
                self.lags(
                    self._series(store, upstream, window, params),
                    self._series(store, downstream, window, params),
                    params.max_lag_s,
                )
            )

        if len(lags) < MIN_LAG_SAMPLES:
            raise InsufficientDataError(f"Only {len(lags)} lag samples; need {MIN_LAG_SAMPLES}", len(lags))

        values = np.asarray(lags, dtype=float)
        bins, counts = np.unique(np.floor(values / HISTOGRAM_BIN_S).astype(int), return_counts=True)
        model = LagModel(
            mean_s=float(values.mean()),
            std_s=float(values.std()),
            count=int(values.size),
            usable=True,
            histogram={f"{b * HISTOGRAM_BIN_S:.1f}": int(c) for b, c in zip(bins, counts)},
        )
        self.logger.info("lag_model_estimated", mean_s=model.mean_s, std_s=model.std_s, count=model.count)
        return model

    def time_lag(
        self,
        u: AlertSeries,
        v: AlertSeries,
        model: LagModel,
        params: Optional[LagParameters] = None,
    ) -> DependencyVerdict:
        """
        Compare the pair's median lag against the lag model

        dependent iff |median - mean| <= z_max * max(std, ε), and then
        strength = exp(-|median - mean| / max(std, ε)).

        Raises:
            InsufficientDataError: the model is unusable or the pair has no lag
        """
        params = params or self._lag_defaults()
        if not model.usable:
            raise InsufficientDataError("Lag model is not usable", model.count)

        upstream = self._collapse(u.timestamps, params.episode_gap_s)
        downstream = self._collapse(v.timestamps, params.episode_gap_s)
        lags = self.lags(upstream, downstream, params.max_lag_s)
        if not lags:
            raise InsufficientDataError(f"No lag between '{u.member}' and '{v.member}' within the horizon")

        median = float(np.median(lags))
        deviation = abs(median - model.mean_s)
        scale = max(model.std_s, params.epsilon_s)
        method = CorrelationMethod.TIME_LAG
        if deviation > params.z_max * scale:
            return self._count(DependencyVerdict.independent(u.member, v.member, method, median))
        strength = min(1.0, max(0.0, math.exp(-deviation / scale)))
        return self._count(DependencyVerdict(u.member, v.member, method, True, strength, median))

    @staticmethod
    def lags(upstream: Sequence[float], downstream: Sequence[float], max_lag_s: float) -> List[float]:
        """Lag from each upstream timestamp to the first downstream timestamp at or after it"""
        if not len(upstream) or not len(downstream):
            return []
        src = np.asarray(upstream, dtype=float)
        dst = np.asarray(downstream, dtype=float)
        idx = np.searchsorted(dst, src, side="left")
        found = idx < dst.size
        lags = dst[idx[found]] - src[found]
        return lags[lags <= max_lag_s].tolist()

    # -- internals ---------------------------------------------------------

    @staticmethod
    def _nearest_index(sorted_values: np.ndarray, queries: np.ndarray) -> np.ndarray:
        """Index of the nearest element of a sorted array for every query (ties go to the lower one)"""
        if sorted_values.size == 1:
            return np.zeros(queries.shape, dtype=int)
        upper = np.clip(np.searchsorted(sorted_values, queries), 1, sorted_values.size - 1)
        lower = upper - 1
        return np.where(queries - sorted_values[lower] <= sorted_values[upper] - queries, lower, upper)

    def _mutual_pairs(self, src: np.ndarray, dst: np.ndarray, offset: float) -> np.ndarray:
        """Signed residuals dst - (src + offset) of the pairs that are each other's nearest point"""
        shifted = src + offset
        forward = self._nearest_index(dst, shifted)
        backward = self._nearest_index(shifted, dst)
        mutual = backward[forward] == np.arange(src.size)
        return dst[forward[mutual]] - shifted[mutual]

    def _icp(self, src: np.ndarray, dst: np.ndarray, offset: float, params: IcpParameters) -> Optional[_Alignment]:
        if abs(offset) > params.max_offset_s:
            return None
        for _ in range(params.max_iters):
            step = float(np.median(self._mutual_pairs(src, dst, offset)))
            offset += step
            if abs(offset) > params.max_offset_s:
                return None
            if abs(step) < params.converge_eps_s:
                break

        residual = self._mutual_pairs(src, dst, offset)
        matched = residual[np.abs(residual) <= params.match_window_s]
        fraction = matched.size / max(src.size, dst.size)
        rms = float(np.sqrt(np.mean(matched**2))) if matched.size else math.inf
        return _Alignment(offset=offset, matched_fraction=fraction, rms=rms)

    @staticmethod
    def _collapse(timestamps: Sequence[float], gap_s: Optional[float]) -> List[float]:
        """Collapse runs separated by at most gap_s into their first timestamp"""
        if gap_s is None:
            return list(timestamps)
        episodes: List[float] = []
        previous = None
        for t in timestamps:
            if previous is None or t - previous > gap_s:
                episodes.append(t)
            previous = t
        return episodes

    def _series(self, store: AlertStore, member: str, window: Optional[Window], params: LagParameters) -> List[float]:
        return self._collapse(store.series(member, window=window), params.episode_gap_s)

    def _icp_defaults(self) -> IcpParameters:
        s = self.settings
        return IcpParameters(s.icp_max_iters, s.icp_match_window_s, s.icp_converge_eps_s, s.icp_max_offset_s)

    def _lag_defaults(self) -> LagParameters:
        s = self.settings
        return LagParameters(max_lag_s=s.max_lag_s, epsilon_s=s.lag_epsilon_s, z_max=s.z_max)

    @staticmethod
    def _count(verdict: DependencyVerdict) -> DependencyVerdict:
        correlations_total.labels(method=verdict.method.value, dependent=str(verdict.dependent).lower()).inc()
        return verdict
