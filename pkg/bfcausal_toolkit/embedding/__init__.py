"""Data tables, Legendre bases and the embedded covariance."""

from .table import DataTable
from .legendre import legendre_basis, legendre_eval
from .embedder import BasisSpec, EmbeddedData, embed_dataset, scale_columns

__all__ = [
    'DataTable', 'legendre_basis', 'legendre_eval',
    'BasisSpec', 'EmbeddedData', 'embed_dataset', 'scale_columns',
]
