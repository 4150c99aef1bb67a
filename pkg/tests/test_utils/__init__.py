"""Tests for forestpack utility modules."""
