import logging
import sys
from logging.handlers import RotatingFileHandler
import os
from operadkit.utils.config import settings

def setup_logger(name='operadkit'):
    """Configurar el logger con formato personalizado y nivel según configuración"""

    # Crear directorio de logs si no existe
    os.makedirs('logs', exist_ok=True)

    logger = logging.getLogger(name)

    log_level = getattr(logging, settings.LOG_LEVEL.upper())
    logger.setLevel(log_level)

    # Evitar duplicación de handlers
    if not logger.handlers:
        log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        formatter = logging.Formatter(log_format)

        # Handler para consola
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

        # Handler para archivo con rotación
        file_handler = RotatingFileHandler(
            'logs/operadkit.log',
            maxBytes=10485760,  # 10MB
            backupCount=5
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def redirect_console(stream, level=None):
    """Redirige los handlers de consola de los loggers ya creados (usado por la CLI)."""
    for obj in list(logging.Logger.manager.loggerDict.values()):
        if not isinstance(obj, logging.Logger):
            continue
        for handler in obj.handlers:
            # RotatingFileHandler también hereda de StreamHandler
            if type(handler) is logging.StreamHandler:
                handler.setStream(stream)
                if level is not None:
                    handler.setLevel(level)
