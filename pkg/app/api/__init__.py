"""
API package - HTTP routes for the counting engine.
"""
