import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 10000
DEFAULT_SEED = 20100701
WITNESS_BOUND = 5000
SCAN_BOUND = 1000

MUTATIONS = frozenset({"d-no-gap", "beta-cocycle"})
"""Deliberate defects the property suite must catch."""


@dataclass(frozen=True)
class Settings:
    default_bound: int
    default_seed: int
    witness_bound: int
    scan_bound: int
    log_level: str
    mutations: frozenset


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring {name}={value!r}: not an integer, using {default}")
        return default


def get_settings() -> Settings:
    # read on every call so tests and the CLI can flip variables at runtime
    mutations = frozenset(
        part.strip() for part in os.getenv("NCP_MUTATIONS", "").split(",") if part.strip()
    )
    unknown = mutations - MUTATIONS
    if unknown:
        logger.warning(f"Unknown mutations ignored: {sorted(unknown)}")
    return Settings(
        default_bound=_int_env("NCP_DEFAULT_BOUND", DEFAULT_BOUND),
        default_seed=_int_env("NCP_DEFAULT_SEED", DEFAULT_SEED),
        witness_bound=_int_env("NCP_WITNESS_BOUND", WITNESS_BOUND),
        scan_bound=_int_env("NCP_SCAN_BOUND", SCAN_BOUND),
        log_level=os.getenv("NCP_LOG_LEVEL", "WARNING").upper(),
        mutations=mutations & MUTATIONS,
    )


def mutation_enabled(name: str) -> bool:
    return name in get_settings().mutations
