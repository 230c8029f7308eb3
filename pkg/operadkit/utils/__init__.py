# Este archivo permite que Python trate el directorio como un paquete

from operadkit.utils.logger import setup_logger
from operadkit.utils.config import settings

__all__ = ['setup_logger', 'settings']
