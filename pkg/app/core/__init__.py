"""
Learning algorithms: haar features, stumps, weak learners, boosting and benchmarks.
"""
