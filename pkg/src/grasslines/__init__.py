"""Linear sections of line Grassmannians, computed in exact arithmetic."""

__version__ = "0.1.0"
