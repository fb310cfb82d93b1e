"""Initialization for Tests."""
