# library/common_utils.py

import os
import logging
from typing import Optional

import dotenv

dotenv.load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_MAX_ENUM = 2 ** 26
DEFAULT_FIBER_LIMIT = 2 ** 20
DEFAULT_FIELD_LIMIT = 2 ** 20
DEFAULT_MAX_ITERS = 3
DEFAULT_WORKERS = 1

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _resolve_int(value: Optional[int], env_name: str, default: int, minimum: int = 1) -> int:
    """
    Pick an explicit value, then the environment variable, then the default.

    Raises:
        ValueError: when the chosen value is not an integer >= minimum.
    """
    if value is None:
        raw = os.getenv(env_name)
        if raw is None or raw.strip() == "":
            return default
        try:
            value = int(raw.strip())
        except ValueError:
            raise ValueError(f"{env_name} must be an integer, got: {raw!r}")
    if value < minimum:
        raise ValueError(f"{env_name} must be >= {minimum}, got: {value}")
    return value


class CertifierContext:
    """
    Central configuration carrier for enumeration bounds and engine limits.

    Values can be passed explicitly (CLI flags, tool arguments) or come from
    the environment / a local .env file:

        MVSP_MAX_ENUM      bound on q^(2n) for the direct point count
        MVSP_FIBER_LIMIT   bound on q^n for per-element oracles
        MVSP_FIELD_LIMIT   bound on p^(en) for field construction
        MVSP_MAX_ITERS     rewriting passes allowed in the valuation engine
        MVSP_WORKERS       worker processes used by sweeps
    """

    def __init__(
        self,
        max_enum: Optional[int] = None,
        fiber_limit: Optional[int] = None,
        field_limit: Optional[int] = None,
        max_iters: Optional[int] = None,
        workers: Optional[int] = None,
    ):
        self.max_enum = _resolve_int(max_enum, "MVSP_MAX_ENUM", DEFAULT_MAX_ENUM)
        self.fiber_limit = _resolve_int(fiber_limit, "MVSP_FIBER_LIMIT", DEFAULT_FIBER_LIMIT)
        self.field_limit = _resolve_int(field_limit, "MVSP_FIELD_LIMIT", DEFAULT_FIELD_LIMIT)
        self.max_iters = _resolve_int(max_iters, "MVSP_MAX_ITERS", DEFAULT_MAX_ITERS, minimum=0)
        self.workers = _resolve_int(workers, "MVSP_WORKERS", DEFAULT_WORKERS)

    def as_dict(self) -> dict:
        return {
            "max_enum": self.max_enum,
            "fiber_limit": self.fiber_limit,
            "field_limit": self.field_limit,
            "max_iters": self.max_iters,
            "workers": self.workers,
        }

    def __repr__(self) -> str:
        return f"CertifierContext({self.as_dict()})"


# Shared default context; build your own to override limits for one call.
_default_context: Optional[CertifierContext] = None


def get_certifier_context() -> CertifierContext:
    """
    Get or create the default context instance.
    """
    global _default_context
    if _default_context is None:
        _default_context = CertifierContext()
        logger.debug(f"Created default context: {_default_context}")
    return _default_context


def reset_certifier_context() -> None:
    """Forget the cached default so the next lookup re-reads the environment."""
    global _default_context
    _default_context = None


def configure_logging(level: Optional[str] = None, default: str = "WARNING") -> None:
    """
    Configure root logging once for an entry point.

    The level comes from the argument, else MVSP_LOG_LEVEL, else `default`.
    """
    name = (level or os.getenv("MVSP_LOG_LEVEL") or default).upper()
    numeric = getattr(logging, name, None)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {name}")
    logging.basicConfig(level=numeric, format=LOG_FORMAT)
