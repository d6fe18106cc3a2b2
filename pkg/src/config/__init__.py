"""Configuration loading for verification runs."""

from .loader import ConfigError, HarnessConfig, get_config, load_config, reset_config

__all__ = [
    "ConfigError",
    "HarnessConfig",
    "get_config",
    "load_config",
    "reset_config",
]
