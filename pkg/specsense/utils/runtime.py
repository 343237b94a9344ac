import logging
import sys
from typing import Final

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from specsense.core.constants import TXT_ENCODING

LOG_FORMAT: Final[str] = '%(asctime)s %(levelname)s %(name)s: %(message)s'


class RuntimeConfig(BaseSettings):
    """Runtime settings read from SPECSENSE_* environment variables."""

    model_config = SettingsConfigDict(env_prefix='SPECSENSE_', env_file_encoding=TXT_ENCODING)
    log: str = Field(default='WARNING', description="Log level name, e.g. DEBUG or INFO.")
    workers: int = Field(default=1, ge=1, description="Threads used for subproblems and Monte Carlo trials.")

    @field_validator('log')
    @classmethod
    def check_level(cls, value: str) -> str:
        """Accepts the standard level names only (case-insensitive)."""
        level = value.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level '{value}'.")
        return level


def configure_logging(config: RuntimeConfig) -> None:
    """
    Configures the root logger once for command-line use; library modules never call this.
    :param config: Runtime settings.
    :return: None
    """
    logging.basicConfig(level=config.log, format=LOG_FORMAT, stream=sys.stderr, force=True)
