"""Core configuration, errors and shared models for gfgq."""
