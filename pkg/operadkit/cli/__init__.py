"""
Command line: presentation files, command dispatch and the reproduction battery.
"""
from operadkit.cli.fileformat import load_presentation, parse_presentation, serialize_presentation
from operadkit.cli.commands import run

__all__ = [
    'load_presentation',
    'parse_presentation',
    'serialize_presentation',
    'run',
]
