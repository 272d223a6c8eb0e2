"""Sums of squares in the rings of integers of Q(sqrt 3) and Q(sqrt 17)."""
from .quadfield import K3, K17, QuadInt, make_context

__all__ = ["K3", "K17", "QuadInt", "make_context"]
__version__ = "0.1.0"
