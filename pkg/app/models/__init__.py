"""
Pydantic data models for haarboost.
"""
