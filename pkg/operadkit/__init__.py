"""
Computer algebra for weight-graded operads given by generators and relations.
"""
from operadkit.utils.logger import setup_logger
from operadkit.utils.config import settings

__version__ = settings.APP_VERSION

__all__ = [
    'setup_logger',
    'settings',
    '__version__',
]
