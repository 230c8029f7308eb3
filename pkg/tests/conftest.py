"""
Archivo de configuración para pytest.
Definición de fixtures y marcadores compartidos por todos los tests.
"""
import sys
import os
import tempfile
import shutil
from pathlib import Path
import pytest
from unittest.mock import patch

# Añadir la raíz del proyecto al path de Python
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from operadkit.presets import create_preset
from operadkit.services.rewrite import Bound, buchberger


def pytest_configure(config):
    """Registra los marcadores usados en la batería de tests."""
    for marker, description in [
        ("exact", "aritmética racional y combinatoria"),
        ("tree", "monomios de árbol y composición"),
        ("rewrite", "bases de Gröbner y formas normales"),
        ("veronese", "potencias de Veronese"),
        ("dual", "duales de Koszul"),
        ("cobar", "complejo cobar"),
        ("series", "series de potencias"),
        ("presets", "catálogo de presentaciones"),
        ("cli", "línea de comandos y formato de archivo"),
        ("config", "configuración"),
        ("logging", "logging"),
        ("slow", "tests lentos; excluir con -m 'not slow'"),
    ]:
        config.addinivalue_line("markers", f"{marker}: {description}")


# Fixture para entorno configurado con variables de entorno específicas
@pytest.fixture
def env_setup():
    """Configura variables de entorno para pruebas y las restaura después."""
    original_environ = os.environ.copy()
    yield os.environ
    os.environ.clear()
    os.environ.update(original_environ)


# Fixture para probar funciones de logging
@pytest.fixture
def temp_log_dir():
    """Crea un directorio temporal para logs durante las pruebas."""
    temp_dir = tempfile.mkdtemp()
    log_dir = os.path.join(temp_dir, 'logs')
    os.makedirs(log_dir, exist_ok=True)

    with patch('operadkit.utils.logger.os.makedirs') as mock_makedirs:
        yield log_dir, mock_makedirs

    # Limpiar después de la prueba
    shutil.rmtree(temp_dir)


@pytest.fixture
def tmp_workdir(tmp_path, monkeypatch):
    """Ejecuta el test dentro de un directorio temporal (los logs caen ahí)."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


# Presentaciones y bases compartidas: construirlas es lo más caro de la batería
@pytest.fixture(scope="session")
def lie():
    return create_preset("lie")


@pytest.fixture(scope="session")
def com():
    return create_preset("com")


@pytest.fixture(scope="session")
def ass():
    return create_preset("ass")


@pytest.fixture(scope="session")
def lie_gb(lie):
    """Base de Gröbner de Lie hasta aridad 5."""
    return buchberger(lie, Bound(5))


@pytest.fixture(scope="session")
def com_gb(com):
    """Base de Gröbner de Com hasta aridad 5."""
    return buchberger(com, Bound(5))
