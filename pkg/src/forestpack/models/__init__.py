"""Data models for forestpack."""
