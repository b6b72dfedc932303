"""Core configuration and utilities."""

from .config import AppConfig, Settings

__all__ = ["Settings", "AppConfig"]
