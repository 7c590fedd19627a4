"""Synthetic and file-based workloads."""
