"""Unit tests."""


