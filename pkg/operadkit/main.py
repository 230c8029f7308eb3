# operadkit/main.py
import sys

from operadkit.cli.commands import run


def main() -> None:
    """Punto de entrada de la línea de comandos"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
