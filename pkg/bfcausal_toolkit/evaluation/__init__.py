"""Estimated-versus-true graph metrics."""

from .metrics import METRIC_NAMES, MetricsReport, compare_graphs, format_table, shd

__all__ = ['METRIC_NAMES', 'MetricsReport', 'compare_graphs', 'format_table', 'shd']
