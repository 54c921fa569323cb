"""Test suite for SearchOp."""


