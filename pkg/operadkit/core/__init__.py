"""
Exact arithmetic, tree monomials, monomial orders and operadic polynomials.
"""
from operadkit.core.tree import GeneratorSymbol, Kind, TreeMonomial, Unshuffle, compose, parse_monomial
from operadkit.core.orders import OrderSpec
from operadkit.core.opoly import OperadPolynomial, Presentation, SymmetricAction, as_shuffle

__all__ = [
    'GeneratorSymbol',
    'Kind',
    'TreeMonomial',
    'Unshuffle',
    'compose',
    'parse_monomial',
    'OrderSpec',
    'OperadPolynomial',
    'Presentation',
    'SymmetricAction',
    'as_shuffle',
]
