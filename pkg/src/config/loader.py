"""
Configuration management using TOML files.

Loads harness configuration from config/weil.toml or pyproject.toml.
Values are validated by ``HarnessSettings``; CLI flags override them.
"""

import sys
from pathlib import Path
from typing import Any, Dict, Optional

import structlog
from pydantic import ValidationError

from src.errors import KernelError
from src.models.config import HarnessSettings

# Python 3.11+ has tomllib built-in, otherwise use tomli
if sys.version_info >= (3, 11):
    import tomllib
else:
    try:
        import tomli as tomllib
    except ImportError:
        raise ImportError("Please install 'tomli' for Python < 3.11: pip install tomli")

logger = structlog.get_logger(__name__)


class ConfigError(KernelError):
    """Configuration file unreadable or invalid."""

    error_type = "config"


class HarnessConfig:
    """Configuration container for verification runs."""

    def __init__(self, config_dict: Dict[str, Any], source: Optional[str] = None):
        self._config = dict(config_dict)
        self.source = source

        unknown = sorted(set(self._config) - set(HarnessSettings.model_fields))
        if unknown:
            logger.warning("Ignoring unknown configuration keys", keys=unknown, source=source)
        try:
            self.settings = HarnessSettings.model_validate(self._config)
        except ValidationError as e:
            raise ConfigError(
                f"Invalid configuration in {source or 'defaults'}: {e.error_count()} error(s)",
                details={"errors": e.errors(include_url=False), "source": source},
            ) from e

    def with_overrides(self, **overrides: Any) -> "HarnessConfig":
        """Copy with CLI overrides applied; ``None`` values are skipped."""
        merged = dict(self._config)
        merged.update({k: v for k, v in overrides.items() if v is not None})
        return HarnessConfig(merged, self.source)

    def __getattr__(self, name: str) -> Any:
        # delegate plain settings access: config.seed, config.parallel, ...
        if name.startswith("_") or name == "settings":
            raise AttributeError(name)
        return getattr(self.settings, name)


def _read_toml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except (OSError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"Cannot read configuration {path}: {e}", details={"path": str(path)}) from e


def load_config(config_path: Optional[str] = None) -> HarnessConfig:
    """
    Load harness configuration from TOML.

    Searches in order:
    1. Explicit config_path if provided (must exist)
    2. config/weil.toml ([weil] table)
    3. pyproject.toml [tool.weil] section

    Falls back to defaults when nothing is found.

    Raises:
        ConfigError: If a file is unreadable or a value is invalid
    """
    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise ConfigError(f"Configuration file not found: {config_path}", details={"path": config_path})
        data = _read_toml(path)
        if path.name == "pyproject.toml":
            section = data.get("tool", {}).get("weil", {})
        else:
            section = data.get("weil", {})
        logger.debug("Configuration loaded", path=str(path))
        return HarnessConfig(section, str(path))

    for path, pick in (
        (Path("config/weil.toml"), lambda d: d.get("weil", {})),
        (Path("pyproject.toml"), lambda d: d.get("tool", {}).get("weil", {})),
    ):
        if not path.exists():
            continue
        section = pick(_read_toml(path))
        if section:
            logger.debug("Configuration loaded", path=str(path))
            return HarnessConfig(section, str(path))
        logger.debug("No weil section", path=str(path))

    logger.debug("No configuration found, using defaults")
    return HarnessConfig({})


# Global config instance (lazy loaded)
_config: Optional[HarnessConfig] = None


def get_config() -> HarnessConfig:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reset_config() -> None:
    """Forget the cached configuration (tests)."""
    global _config
    _config = None
