"""Initialization for configuration and logging utilities."""
__all__ = ["helper", "logger"]
