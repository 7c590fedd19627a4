"""Makespan and minsum lower bounds."""
