"""Bicriteria scheduling of moldable tasks."""
