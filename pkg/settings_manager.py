"""
Settings management for the orbifold fusion toolkit.

Handles loading of user settings and fallback to example settings.
"""

import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Optional

from constants import AXIOM_NAMES, DEGENERATE_POLICIES, ENV_PREFIX, ENV_VARIANT, OUTPUT_FORMATS, VARIANTS

logger = logging.getLogger(__name__)

LIST_SETTINGS = ("ENABLED_AXIOMS",)
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class SettingsManager:
    """Manages loading and validation of toolkit settings."""

    def __init__(self, config_dir: Optional[Path] = None, app_source_dir: Optional[Path] = None, environ: Optional[Dict[str, str]] = None):
        # Directory holding the user-editable config.py
        self._config_dir = Path(config_dir or os.getenv("CONFIG_DIR", Path.cwd()))

        # Directory holding config.example.py
        self._app_source_dir = Path(app_source_dir or os.getenv("APP_SOURCE_DIR", Path(__file__).parent))

        self._environ = environ
        self.settings: Dict[str, Any] = {}
        self.load_settings()

    def load_settings(self):
        """Load settings with proper fallback logic."""
        # Priority order: environment variables -> config.py (user) -> config.example.py
        example_config_file = self._app_source_dir / 'config.example.py'
        user_config_file = self._config_dir / 'config.py'

        if not example_config_file.exists():
            raise FileNotFoundError(f"{example_config_file} not found. This template file is required for default settings.")

        # Defaults first, so a partial config.py only overrides what it names
        self._load_config_file(example_config_file, is_example=True)

        if user_config_file.exists():
            try:
                self._load_config_file(user_config_file)
                logger.info(f"Loaded configuration from: {user_config_file}")
            except Exception as e:
                logger.error(f"Error loading user config file '{user_config_file}': {e}. Falling back to example defaults.")
                self._load_config_file(example_config_file, is_example=True)
        else:
            logger.debug(f"Configuration file '{user_config_file}' not found. Using defaults from '{example_config_file.name}'.")

        self._load_environment_variables()
        self._validate_settings()

    def _load_config_file(self, config_file: Path, is_example: bool = False):
        """Load uppercase settings from a Python config file."""
        if is_example:
            self.settings = {}

        with open(config_file, 'r', encoding='utf-8') as f:
            content = f.read()

        namespace: Dict[str, Any] = {}
        try:
            exec(content, namespace)
        except Exception as e:
            logger.error(f"Error loading settings from {config_file}: {e}")
            raise

        for key, value in namespace.items():
            if key.isupper():
                self.settings[key] = value

    @staticmethod
    def _coerce(key: str, value: str) -> Any:
        if key in LIST_SETTINGS:
            return [item.strip() for item in value.split(',') if item.strip()]
        if value.lower() == 'true':
            return True
        if value.lower() == 'false':
            return False
        if value.lower() in ('none', ''):
            return None
        if value.isdigit():
            return int(value)
        if re.match(r'^\d+\.\d+$', value):
            return float(value)
        return value

    def _load_environment_variables(self):
        """Apply ORBIFOLD_FUSION_* environment variables over file settings.

        ORBIFOLD_FUSION_VARIANT is applied last, so it beats
        ORBIFOLD_FUSION_DEFAULT_VARIANT whatever the environment order.
        """
        environ = self._environ if self._environ is not None else os.environ
        overrides = [
            (env_key[len(ENV_PREFIX):], value)
            for env_key, value in environ.items()
            if env_key.startswith(ENV_PREFIX) and env_key != ENV_VARIANT
        ]
        if ENV_VARIANT in environ:
            overrides.append(('DEFAULT_VARIANT', environ[ENV_VARIANT]))
        for key, value in overrides:
            if not key.isupper():
                continue
            self.settings[key] = self._coerce(key, value)
            logger.debug(f"Overridden setting from environment: {key}={self.settings[key]!r}")

    def _validate_settings(self):
        """Validate every setting; report all problems at once."""
        invalid: List[str] = []

        def check(key: str, ok: bool, expected: str):
            if not ok:
                invalid.append(f"{key}={self.settings.get(key)!r} (expected {expected})")

        check('DEFAULT_VARIANT', self.settings.get('DEFAULT_VARIANT') in VARIANTS, " or ".join(VARIANTS))
        check('DEGENERATE_POLICY', self.settings.get('DEGENERATE_POLICY') in DEGENERATE_POLICIES, " or ".join(DEGENERATE_POLICIES))
        check('DEFAULT_FORMAT', self.settings.get('DEFAULT_FORMAT') in OUTPUT_FORMATS, " or ".join(OUTPUT_FORMATS))
        for key in ('MAX_ASSIGNMENTS', 'MAX_COUNTEREXAMPLES', 'ASSOCIATIVITY_WORKERS'):
            value = self.settings.get(key)
            check(key, isinstance(value, int) and not isinstance(value, bool) and value >= 1, "a positive integer")
        axioms = self.settings.get('ENABLED_AXIOMS')
        check('ENABLED_AXIOMS', isinstance(axioms, list) and all(a in AXIOM_NAMES for a in axioms), f"a list drawn from {', '.join(AXIOM_NAMES)}")
        level = self.settings.get('LOG_LEVEL')
        check('LOG_LEVEL', isinstance(level, str) and level.upper() in LOG_LEVELS, " or ".join(LOG_LEVELS))
        url = self.settings.get('TABLE_CACHE_URL')
        check('TABLE_CACHE_URL', url is None or isinstance(url, str), "a database URL or None")

        if invalid:
            raise ValueError(
                f"Invalid settings: {'; '.join(invalid)}. "
                f"Please check your config.py file and ORBIFOLD_FUSION_* environment variables."
            )

    def get(self, key: str, default=None):
        """Get a setting value."""
        return self.settings.get(key, default)

    def __getitem__(self, key: str):
        return self.settings[key]

    def __contains__(self, key: str):
        return key in self.settings

    def __getattr__(self, name: str):
        """Allow attribute-style access."""
        if name.startswith('_') or name == 'settings':
            raise AttributeError(name)
        try:
            return self.settings[name]
        except KeyError:
            raise AttributeError(f"'{self.__class__.__name__}' has no setting '{name}'")

