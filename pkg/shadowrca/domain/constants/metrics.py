# shadowrca/domain/constants/metrics.py
"""
Metric field names used by the simulator, process collector and reference configs
"""

CPU_FRACTION = "cpu_fraction"
RSS_BYTES = "rss_bytes"
QUEUE_DEPTH = "queue_depth"

ACTIVE_FIELDS = (CPU_FRACTION, RSS_BYTES)
PASSIVE_FIELDS = (QUEUE_DEPTH,)

# Default baseline and noise per field
DEFAULT_METRIC_MODELS = {
    CPU_FRACTION: {"baseline": 0.2, "noise_std": 0.02},
    RSS_BYTES: {"baseline": 5.0e7, "noise_std": 1.0e6},
    QUEUE_DEPTH: {"baseline": 1.0, "noise_std": 0.2},
}

# Fields that are fractions and get clipped to [0, 1]
FRACTION_FIELDS = frozenset({CPU_FRACTION})
