"""Tests for forestpack command modules."""
