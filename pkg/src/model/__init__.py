"""Core domain model: tasks, instances, schedules."""
