"""Schedulers and shared list-scheduling machinery."""
