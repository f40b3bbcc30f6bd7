"""Basis-function BIC score."""

from .bic import (
    BasisFunctionBic,
    ScoreCache,
    ScoreConfig,
    component_bic,
    local_bf_bic,
    residual_variance,
    score_dag,
)

__all__ = [
    'BasisFunctionBic', 'ScoreCache', 'ScoreConfig',
    'component_bic', 'local_bf_bic', 'residual_variance', 'score_dag',
]
