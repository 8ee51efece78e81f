import enum
from pathlib import Path
from tempfile import gettempdir

from pydantic_settings import BaseSettings, SettingsConfigDict

TEMP_DIR = Path(gettempdir())


class LogLevel(str, enum.Enum):
    """Possible log levels."""

    NOTSET = "NOTSET"
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    FATAL = "FATAL"


class Settings(BaseSettings):
    """
    Process-wide settings.

    These parameters can be configured
    with environment variables.
    """

    # Enable debug mode (adds a DEBUG file sink)
    debug: bool = False

    # Log directory
    log_dir: Path = TEMP_DIR / "clusternet" / "logs"

    # Log level
    log_level: LogLevel = LogLevel.INFO

    # Default directory for run outputs
    output_dir: Path = Path("runs")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="CLUSTERNET_",
        env_file_encoding="utf-8",
    )


settings = Settings()
