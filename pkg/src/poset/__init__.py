"""Family sub-posets of the refinement order."""
