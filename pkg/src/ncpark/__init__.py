"""Fuss noncrossing parking spaces and their companion objects, exactly."""

__version__ = "0.1.0"
