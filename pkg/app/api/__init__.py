"""
HTTP endpoints for haarboost.
"""
