"""
File-backed persistence for images, manifests and model files.
"""
