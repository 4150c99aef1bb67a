"""Command implementations for forestpack."""
