"""Tests for forestpack data models."""
