"""
haarboost - boosted haar-feature classifiers with genetic and exhaustive weak learners.
"""

__version__ = "0.1.0"
