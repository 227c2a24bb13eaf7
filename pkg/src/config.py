"""
Configuration settings for overlap-pack.
"""
import logging
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

# Load environment variables from .env file
load_dotenv()


def _optional_int(name: str) -> Optional[int]:
    raw = os.getenv(name, "").strip()
    return int(raw) if raw else None


class Settings(BaseSettings):
    """Application settings."""
    # Solver settings; unset budget means "use the theoretical tree-size bound"
    OVERLAP_PACK_NODE_BUDGET: Optional[int] = _optional_int("OVERLAP_PACK_NODE_BUDGET")
    PARALLEL_WORKERS: int = int(os.getenv("PARALLEL_WORKERS", "4"))

    # Oracle and validator caps
    ORACLE_MAX_FAMILY_SIZE: int = int(os.getenv("ORACLE_MAX_FAMILY_SIZE", "24"))
    VALIDATOR_MAX_N: int = int(os.getenv("VALIDATOR_MAX_N", "8"))

    # Generator settings
    GENERATOR_MAX_N: int = int(os.getenv("GENERATOR_MAX_N", "64"))

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    model_config = {
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "ignore"
    }


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get application settings."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


# Export settings for import convenience
settings = get_settings()
DEFAULT_NODE_BUDGET = settings.OVERLAP_PACK_NODE_BUDGET
PARALLEL_WORKERS = settings.PARALLEL_WORKERS
ORACLE_MAX_FAMILY_SIZE = settings.ORACLE_MAX_FAMILY_SIZE
VALIDATOR_MAX_N = settings.VALIDATOR_MAX_N
GENERATOR_MAX_N = settings.GENERATOR_MAX_N
LOG_LEVEL = settings.LOG_LEVEL


def validate_config(current: Optional[Settings] = None) -> Dict[str, Any]:
    """Validate that configuration values are within their allowed ranges."""
    current = current or get_settings()
    problems = []

    if current.OVERLAP_PACK_NODE_BUDGET is not None and current.OVERLAP_PACK_NODE_BUDGET < 1:
        problems.append("OVERLAP_PACK_NODE_BUDGET must be at least 1")
    if current.PARALLEL_WORKERS < 1:
        problems.append("PARALLEL_WORKERS must be at least 1")
    if current.ORACLE_MAX_FAMILY_SIZE < 1:
        problems.append("ORACLE_MAX_FAMILY_SIZE must be at least 1")
    if not 1 <= current.VALIDATOR_MAX_N <= 8:
        problems.append("VALIDATOR_MAX_N must be between 1 and 8")
    if current.GENERATOR_MAX_N < 1:
        problems.append("GENERATOR_MAX_N must be at least 1")
    if not isinstance(logging.getLevelName(current.LOG_LEVEL.upper()), int):
        problems.append(f"LOG_LEVEL '{current.LOG_LEVEL}' is not a logging level")

    if problems:
        return {
            "valid": False,
            "problems": problems,
            "message": f"Invalid configuration: {'; '.join(problems)}"
        }

    return {"valid": True}


def get_solver_settings() -> Dict[str, Any]:
    """Return settings related to the search tree."""
    return {
        "node_budget": DEFAULT_NODE_BUDGET,
        "parallel_workers": PARALLEL_WORKERS,
    }


def get_oracle_settings() -> Dict[str, Any]:
    """Return settings related to the brute-force oracle."""
    return {
        "max_family_size": ORACLE_MAX_FAMILY_SIZE,
    }
