"""
Resource Manager Module
Handles paths for bundled sample files and the user data directory
"""

import os
from pathlib import Path
from typing import List

import config


class ResourceManager:
    """Manages resource and data paths"""

    _instance = None

    def __new__(cls):
        """Singleton pattern to ensure only one instance exists"""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        """Initialize resource manager"""
        if self._initialized:
            return

        self._initialized = True
        self._base_path = Path(__file__).parent.parent
        self._user_data_dir = self._get_user_data_dir()

    @classmethod
    def reset(cls):
        """Forget the singleton (used when ERPOINTLIKES_HOME changes)"""
        cls._instance = None

    def _get_user_data_dir(self) -> Path:
        """
        Get the user data directory

        Returns:
            Path from ERPOINTLIKES_HOME if set, else ~/.ERPointlikes
        """
        override = os.environ.get(config.USER_DATA_ENV)
        if override:
            return Path(override)
        return Path.home() / config.USER_DATA_DIRNAME

    @property
    def base_path(self) -> Path:
        """Get the repository base path"""
        return self._base_path

    @property
    def user_data_dir(self) -> Path:
        """Get the user data directory (created lazily)"""
        return self._user_data_dir

    def get_settings_path(self) -> Path:
        """Get the path to settings.json"""
        return self._user_data_dir / config.SETTINGS_FILE

    def get_log_dir(self) -> Path:
        """Get the logs directory for application logs"""
        log_dir = self._user_data_dir / "logs"
        log_dir.mkdir(parents=True, exist_ok=True)
        return log_dir

    def get_samples_dir(self) -> Path:
        """Get the directory of bundled sample Cayley files"""
        return self._base_path / config.SAMPLES_DIRNAME

    def list_samples(self) -> List[Path]:
        """
        List bundled sample Cayley files

        Returns:
            Sorted list of sample paths
        """
        samples_dir = self.get_samples_dir()
        if not samples_dir.exists():
            return []
        return sorted(samples_dir.glob(f"*{config.SAMPLE_EXTENSION}"))
