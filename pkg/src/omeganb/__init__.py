"""Supervisory control synthesis for omega-nonblocking discrete-event systems."""

__version__ = "0.1.0"
