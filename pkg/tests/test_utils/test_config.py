"""
Tests para el módulo de configuración.
"""
import os
import pytest
from unittest.mock import patch
from operadkit.utils.config import Settings

pytestmark = pytest.mark.config


def test_settings_default_values():
    """Prueba que los valores por defecto de la configuración son correctos."""
    # Crear una instancia de Settings sin variables de entorno
    with patch.dict(os.environ, {}, clear=True):
        settings = Settings(_env_file=None)

    # Verificar valores por defecto
    assert settings.APP_NAME == "operadkit"
    assert settings.DEFAULT_ORDER == "rpdl"
    assert settings.MAX_MATRIX_ENTRIES == 100000000
    assert settings.MAX_ENUMERATION == 2000000
    assert settings.ORDER_KEY_CACHE_SIZE == 262144
    assert settings.POSITIVITY_ORDER == 401
    assert settings.WITNESS_ATTEMPTS == 8
    assert settings.SEED == 0
    assert settings.OUTPUT_FORMAT == "json"
    assert settings.DEBUG is False


def test_settings_from_env_variables():
    """Prueba que las variables de entorno sobreescriben los valores por defecto."""
    test_env = {
        "LOG_LEVEL": "DEBUG",
        "DEFAULT_ORDER": "pdl",
        "MAX_MATRIX_ENTRIES": "1000",
        "POSITIVITY_ORDER": "51",
        "SEED": "7",
        "OUTPUT_FORMAT": "tsv",
        "DEBUG": "true",
    }

    with patch.dict(os.environ, test_env):
        settings = Settings(_env_file=None)

    assert settings.LOG_LEVEL == "DEBUG"
    assert settings.DEFAULT_ORDER == "pdl"
    assert settings.MAX_MATRIX_ENTRIES == 1000
    assert settings.POSITIVITY_ORDER == 51
    assert settings.SEED == 7
    assert settings.OUTPUT_FORMAT == "tsv"
    assert settings.DEBUG is True


def test_settings_reject_non_integer_limits():
    """Prueba que un límite no numérico es un error de validación."""
    with patch.dict(os.environ, {"MAX_ENUMERATION": "muchos"}):
        with pytest.raises(Exception):
            Settings(_env_file=None)
