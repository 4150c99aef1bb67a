"""Algorithms and file utilities for forestpack."""
