"""Johnson filtration invariants for mapping classes of a one-boundary surface."""

__version__ = "0.1.0"
