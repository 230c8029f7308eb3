"""
Service modules: rewriting, Veronese powers, identities, Koszul duals,
cobar complexes and generating series.
"""
from operadkit.services import cobar, dual, identities, rewrite, series, veronese

__all__ = [
    'cobar',
    'dual',
    'identities',
    'rewrite',
    'series',
    'veronese',
]
