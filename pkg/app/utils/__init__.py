"""
Helper functions for haarboost.
"""
