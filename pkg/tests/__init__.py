"""Tests for complex-splitting."""
