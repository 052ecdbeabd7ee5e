import logging

from app.core.config import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_configured = False


def configure_logging(level: str = None) -> None:
    """
    Configure le logger racine du projet (une seule fois)

    Args:
        level: Niveau de log ("DEBUG", "INFO", ...), par défaut celui des settings
    """
    global _configured
    root = logging.getLogger("app")
    root.setLevel((level or settings.LOG_LEVEL).upper())
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        _configured = True


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
