"""Integration tests."""


