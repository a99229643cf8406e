from .logger import get_logger, set_log_level
from .settings import NeumannSettings, get_settings, settings

__all__ = [
    "get_logger",
    "set_log_level",
    "settings",
    "get_settings",
    "NeumannSettings",
]
