import json
import logging

import pytest

import config
from core.errors import GuardExceededError
from core.limits import DEFAULT_LIMITS, Limits
from core.logging_config import setup_logging
from core.resource_manager import ResourceManager
from core.settings_manager import SettingsManager


def test_limits_check():
    limits = Limits(max_states=10)
    limits.check("max_states", 10)
    with pytest.raises(GuardExceededError) as info:
        limits.check("max_states", 11)
    assert (info.value.guard, info.value.limit, info.value.observed) == ("max_states", 10, 11)


def test_limits_overrides():
    limits = DEFAULT_LIMITS.with_overrides({"max_order": 5, "max_states": None})
    assert limits.max_order == 5
    assert limits.max_states == config.DEFAULT_MAX_STATES
    with pytest.raises(KeyError):
        DEFAULT_LIMITS.with_overrides({"max_bananas": 1})
    assert set(limits.to_dict()) == {
        "max_order", "max_complex_size", "max_group_size", "max_states",
        "max_transition_size", "max_catalog_order",
    }


def test_settings_defaults_when_missing(tmp_path):
    settings = SettingsManager(str(tmp_path / "settings.json"))
    assert settings.get_limits() == DEFAULT_LIMITS


def test_settings_corrupt_file_falls_back(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text("{not json", encoding="utf-8")
    assert SettingsManager(str(path)).get_limits() == DEFAULT_LIMITS
    path.write_text("[1, 2]", encoding="utf-8")
    assert SettingsManager(str(path)).get_limits() == DEFAULT_LIMITS


def test_settings_invalid_stored_limit_is_ignored(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"limits": {"max_bananas": 3}}), encoding="utf-8")
    assert SettingsManager(str(path)).get_limits() == DEFAULT_LIMITS


def test_set_limit_persists(tmp_path):
    path = tmp_path / "nested" / "settings.json"
    settings = SettingsManager(str(path))
    assert settings.set_limit("max_order", 6)
    assert not settings.set_limit("max_order", 0)
    with pytest.raises(KeyError):
        settings.set_limit("max_bananas", 3)
    reloaded = SettingsManager(str(path))
    assert reloaded.get_limits().max_order == 6
    assert reloaded.get_limits({"max_order": 7}).max_order == 7
    assert reloaded.reset_to_defaults()
    assert SettingsManager(str(path)).get_limits() == DEFAULT_LIMITS


def test_resource_manager_honours_home(isolated_home):
    resources = ResourceManager()
    assert resources is ResourceManager()
    assert resources.user_data_dir == isolated_home
    assert resources.get_settings_path() == isolated_home / config.SETTINGS_FILE
    assert resources.get_log_dir().is_dir()
    assert resources.get_samples_dir().name == config.SAMPLES_DIRNAME


def test_setup_logging_writes_daily_file(isolated_home):
    root = logging.getLogger()
    saved = list(root.handlers), root.level
    try:
        setup_logging(log_to_file=True)
        logging.getLogger("core.test").info("hello from the test")
        logs = list((isolated_home / "logs").glob("erpointlikes_*.log"))
        assert len(logs) == 1
        for handler in root.handlers:
            handler.flush()
        assert "hello from the test" in logs[0].read_text(encoding="utf-8")
    finally:
        for handler in root.handlers:
            if handler not in saved[0]:
                handler.close()
        root.handlers[:] = saved[0]
        root.setLevel(saved[1])
