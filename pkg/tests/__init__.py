"""
Test package for the BF causal discovery toolkit.
"""
