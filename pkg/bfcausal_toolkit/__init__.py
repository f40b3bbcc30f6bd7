"""
BF Causal Toolkit - causal discovery on mixed continuous/categorical data.

This package provides tools for:
1. Embedding variables with truncated Legendre bases and indicator columns
2. Scoring DAGs with the basis-function BIC (BF-BIC)
3. Testing conditional independence with the basis-function LRT (BF-LRT)
4. Searching with BOSS (score-based) and PC-Max (constraint-based)
5. Simulating ground-truthed data and benchmarking against it

Main components:
- API: Unified interface for all functionality
- graph: Graph types, CPDAGs, Meek rules, knowledge, text format
- embedding / scoring / citest: Data embedding, score and test
- search: BOSS and PC-Max
- simulation / evaluation: Data generators and graph metrics
"""

from .api import CausalDiscoveryAPI

__version__ = "1.0.0"
