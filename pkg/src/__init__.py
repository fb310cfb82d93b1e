"""Initialization for Main Functionality."""
