"""Utility modules."""


