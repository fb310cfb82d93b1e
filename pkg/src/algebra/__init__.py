"""Exact scalar rings and their JSON encodings."""
