"""
Runtime configuration

Numerical defaults (tolerances, grid sizes, working precision) are read from
SUPEROSC_* environment variables. A .env file next to the code is loaded
first, so local overrides do not need to be exported by hand.

Setup:
1. Copy .env.example to .env
2. Change only the values you need; everything has a default

Example:
    from config import get_settings

    settings = get_settings()
    print(settings.precision_bits)
"""

import logging
import os
import sys
from dataclasses import dataclass, fields
from typing import Optional

from dotenv import load_dotenv

from errors import ConfigError

# Load environment variables from .env file
load_dotenv()

ENV_PREFIX = 'SUPEROSC_'
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


@dataclass(frozen=True)
class Settings:
    """Numerical defaults shared by the library, the CLI and the scripts."""

    zero_tol: float = 1e-12
    scan_dt: float = 1e-3
    window: float = 200.0
    taper_fraction: float = 0.1
    spectrum_samples: int = 16384
    dynrange_samples: int = 65536
    grid: int = 2048
    precision_bits: int = 128
    lift_margin: float = 1e-3
    workers: int = 1
    log_level: str = 'WARNING'
    output_dir: str = 'output'

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> 'Settings':
        """
        Build settings from SUPEROSC_* variables.

        Args:
            environ: Mapping to read instead of os.environ (used by tests)

        Returns:
            Settings instance

        Raises:
            ConfigError: If any variable cannot be parsed; every bad
                variable is listed in the message
        """
        environ = os.environ if environ is None else environ
        values = {}
        invalid = []

        for field in fields(cls):
            var = ENV_PREFIX + field.name.upper()
            raw = environ.get(var)
            if raw is None or raw == '':
                continue
            try:
                values[field.name] = field.type(raw) if field.type is not str else raw
            except ValueError:
                invalid.append(f"{var}={raw!r}")

        if invalid:
            raise ConfigError(
                f"Invalid configuration values: {', '.join(invalid)}\n"
                f"See .env.example for the expected types."
            )

        settings = cls(**values)
        settings._validate()
        return settings

    def _validate(self):
        problems = []
        for name in ('zero_tol', 'scan_dt', 'window', 'lift_margin'):
            if getattr(self, name) <= 0:
                problems.append(f"{ENV_PREFIX}{name.upper()} must be positive")
        if not 0.0 <= self.taper_fraction <= 1.0:
            problems.append(f"{ENV_PREFIX}TAPER_FRACTION must lie in [0, 1]")
        if self.grid < 128:
            problems.append(f"{ENV_PREFIX}GRID must be at least 128")
        if self.precision_bits < 53:
            problems.append(f"{ENV_PREFIX}PRECISION_BITS must be at least 53")
        if self.workers < 1:
            problems.append(f"{ENV_PREFIX}WORKERS must be at least 1")
        if self.log_level.upper() not in LOG_LEVELS:
            problems.append(f"{ENV_PREFIX}LOG_LEVEL {self.log_level!r} is not a logging level")
        if problems:
            raise ConfigError("Invalid configuration:\n  " + "\n  ".join(problems))


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def configure_logging(level: Optional[str] = None):
    """Send library log records to stderr; stdout stays free for JSON output."""
    level = (level or get_settings().log_level).upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level) if level in LOG_LEVELS else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
