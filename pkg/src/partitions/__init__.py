"""Set partitions and partition families."""
