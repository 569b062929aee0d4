"""
Test package for haarboost.
"""
