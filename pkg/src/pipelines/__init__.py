"""Dagster job regenerating the figure tables."""
