"""
Routes package - API endpoint handlers.
"""

from . import invariants
from . import curves
from . import verification

__all__ = ["invariants", "curves", "verification"]
