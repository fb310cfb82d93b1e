"""Moment functionals, weighted cumulants, independence products and limit theorems."""
