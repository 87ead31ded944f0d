"""Shipped data files: figure transcription, label dictionary, JSON schemas."""
