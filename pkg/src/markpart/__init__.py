"""Marked partition identities: truncated q-series, partition statistics and their checks."""

from .partitions import Partition
from .qseries import ParameterError, TruncatedSeries

__all__ = ["Partition", "ParameterError", "TruncatedSeries"]
__version__ = "0.1.0"
