"""Catalogue of partition weights."""
