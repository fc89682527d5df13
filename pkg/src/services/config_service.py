"""Service for displaying and editing the configuration."""

from pathlib import Path

from pydantic import ValidationError

from config import CAP_ENV_KEYS, DATA_DIR_KEY, CapsConfig, Config, update_config


class ConfigService:
    """Shows the effective configuration and writes ``config.env`` entries."""

    def __init__(self, config: Config, config_file: Path):
        """Initialize the config service.

        Args:
            config: The effective configuration
            config_file: Path to the configuration file
        """
        self.config = config
        self.config_file = config_file

    def file_exists(self) -> bool:
        return self.config_file.exists()

    def get_config_lines(self) -> list[str]:
        """Effective settings as ``KEY=value`` lines, caps first."""
        caps = self.config.caps.model_dump()
        lines = [f"{key}={caps[field]}" for field, key in CAP_ENV_KEYS.items()]
        lines.append(f"{DATA_DIR_KEY}={self.config.data_dir}")
        return lines

    def set_value(self, key: str, value: str) -> str | None:
        """Validate and store one setting.

        Returns:
            None on success, otherwise the reason the setting was rejected
        """
        key = key.upper()
        fields = {env: field for field, env in CAP_ENV_KEYS.items()}
        if key == DATA_DIR_KEY:
            update_config(key, value)
            return None
        if key not in fields:
            known = ", ".join([*CAP_ENV_KEYS.values(), DATA_DIR_KEY])
            return f"Unknown setting {key}; known settings: {known}"
        try:
            CapsConfig(**{fields[key]: value})
        except ValidationError as e:
            return f"Invalid value for {key}: {e.errors()[0]['msg']}"
        update_config(key, value)
        return None
