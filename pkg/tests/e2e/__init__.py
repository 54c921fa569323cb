"""End-to-end tests."""


