import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Cargar variables de entorno desde archivo .env
load_dotenv()

class Settings(BaseSettings):
    # Información de la aplicación
    APP_NAME: str = "operadkit"
    APP_VERSION: str = "1.0.0"

    # Configuración de logs
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Orden de monomios por defecto (rpdl | pdl)
    DEFAULT_ORDER: str = os.getenv("DEFAULT_ORDER", "rpdl")

    # Límites de recursos
    MAX_MATRIX_ENTRIES: int = int(os.getenv("MAX_MATRIX_ENTRIES", "100000000"))
    MAX_ENUMERATION: int = int(os.getenv("MAX_ENUMERATION", "2000000"))
    ORDER_KEY_CACHE_SIZE: int = int(os.getenv("ORDER_KEY_CACHE_SIZE", "262144"))

    # Series
    POSITIVITY_ORDER: int = int(os.getenv("POSITIVITY_ORDER", "401"))

    # Búsqueda aleatoria de testigos en el complejo cobar
    WITNESS_ATTEMPTS: int = int(os.getenv("WITNESS_ATTEMPTS", "8"))
    SEED: int = int(os.getenv("SEED", "0"))

    # Salida de la CLI (json | tsv)
    OUTPUT_FORMAT: str = os.getenv("OUTPUT_FORMAT", "json")

    DEBUG: bool = False

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"

settings = Settings()
