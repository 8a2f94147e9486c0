"""
Default configuration for the domination conjecture checker.

CLI flags override these values for a single run; config/user_config.json
overrides them persistently.
"""

import json
import logging
import sys
from pathlib import Path

logger = logging.getLogger(__name__)


# ========== Default Configuration ==========

DEFAULT_CONFIG = {
    # Exact solvers refuse graphs above this many vertices
    "solver": {
        "cap": 64,
    },

    # Pairing-model generator
    "generator": {
        "retry_limit": 10_000,
    },

    # `check` defaults
    "check": {
        "methods": ["t1", "t1d", "t2", "t3"],
        "trials": 10_000,
        "seed": 0,
        "jobs": 1,
        "format": "jsonl",
        "fail_fast": False,
    },

    # Gradio dashboard
    "ui": {
        "host": "127.0.0.1",
        "port": 7860,
        "max_graphs": 200,
    },
}


# ========== Config Management ==========

def get_base_dir() -> Path:
    """Get base directory (works for both dev and frozen exe)"""
    if getattr(sys, 'frozen', False):
        return Path(sys.executable).parent
    return Path(__file__).parent


def get_config_path() -> Path:
    """Get user config file path"""
    return get_base_dir() / "user_config.json"


def _merge(base: dict, overrides: dict) -> dict:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def load_config(path: Path = None) -> dict:
    """Load configuration (user config merged with defaults)"""
    config = {k: dict(v) for k, v in DEFAULT_CONFIG.items()}

    user_config_path = path or get_config_path()
    if user_config_path.exists():
        try:
            with open(user_config_path, "r", encoding="utf-8") as f:
                config = _merge(config, json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"Could not load user config: {e}")

    return config


def save_config(updates: dict, path: Path = None) -> bool:
    """Save user configuration overrides"""
    user_config_path = path or get_config_path()
    try:
        existing = {}
        if user_config_path.exists():
            with open(user_config_path, "r", encoding="utf-8") as f:
                existing = json.load(f)

        existing = _merge(existing, updates)

        with open(user_config_path, "w", encoding="utf-8") as f:
            json.dump(existing, f, ensure_ascii=False, indent=2)
        return True
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Error saving config: {e}")
        return False
