"""Railway circuits, finite-function parity and aTAM layer analysis."""

__version__ = "0.1.0"
