"""
Settings Manager
Manages user overrides of the computation limits
"""

import json
import logging
import os
import tempfile
from typing import Dict

from .limits import Limits, DEFAULT_LIMITS
from .resource_manager import ResourceManager


logger = logging.getLogger(__name__)


class SettingsManager:
    """Manages persisted settings (currently: the size guards)"""

    def __init__(self, settings_path: str = None):
        """
        Initialize the settings manager

        Args:
            settings_path: Optional explicit settings file (tests use a temp dir)
                           If None, uses ResourceManager to locate settings.json
        """
        if settings_path is None:
            self.settings_file = str(ResourceManager().get_settings_path())
        else:
            self.settings_file = settings_path
        self.settings = self._load_settings()

    def _load_settings(self) -> dict:
        """Load settings from file"""
        if os.path.exists(self.settings_file):
            try:
                with open(self.settings_file, 'r', encoding='utf-8') as f:
                    data = json.load(f)
                if not isinstance(data, dict):
                    raise ValueError("settings root must be an object")
                return data
            except (json.JSONDecodeError, IOError, ValueError) as e:
                logger.warning(f"Could not load settings from {self.settings_file}: {e}")
                return self._get_default_settings()
        return self._get_default_settings()

    def _get_default_settings(self) -> dict:
        """Get default settings"""
        return {"limits": DEFAULT_LIMITS.to_dict()}

    def _save_settings(self) -> bool:
        """Save settings to file using atomic write"""
        settings_dir = os.path.dirname(self.settings_file) or "."
        try:
            os.makedirs(settings_dir, exist_ok=True)
            fd, temp_path = tempfile.mkstemp(dir=settings_dir, suffix='.json.tmp')
        except OSError as e:
            logger.error(f"Error saving settings: {e}")
            return False

        try:
            with os.fdopen(fd, 'w', encoding='utf-8') as f:
                json.dump(self.settings, f, indent=2, sort_keys=True)
            os.replace(temp_path, self.settings_file)
            return True
        except OSError as e:
            logger.error(f"Error saving settings: {e}")
            if os.path.exists(temp_path):
                try:
                    os.remove(temp_path)
                except OSError:
                    pass
            return False

    def get_limits(self, overrides: Dict[str, int] = None) -> Limits:
        """
        Build the effective limits

        Args:
            overrides: Per-run overrides (CLI flags); None entries are ignored

        Returns:
            Limits with stored settings applied, then the overrides
        """
        stored = self.settings.get("limits", {})
        try:
            limits = DEFAULT_LIMITS.with_overrides(stored)
        except (KeyError, ValueError, TypeError) as e:
            logger.warning(f"Ignoring invalid stored limits: {e}")
            limits = DEFAULT_LIMITS
        if overrides:
            limits = limits.with_overrides(overrides)
        return limits

    def set_limit(self, name: str, value: int) -> bool:
        """
        Persist a single guard value

        Args:
            name: Limit field name
            value: New positive value

        Returns:
            True if saved, False otherwise
        """
        if value <= 0:
            return False
        self.get_limits({name: value})  # validates the name
        self.settings.setdefault("limits", {})[name] = int(value)
        return self._save_settings()

    def reset_to_defaults(self) -> bool:
        """Reset all settings to defaults"""
        self.settings = self._get_default_settings()
        return self._save_settings()
