"""
Preset presentations and known dimension tables.
"""
from dataclasses import dataclass
from math import factorial
from pathlib import Path
from typing import Dict, List, Optional

from operadkit.core.exact import double_factorial
from operadkit.core.opoly import Presentation
from operadkit.errors import UnknownPresetError
from operadkit.presets.catalog import FAMILY_PRESETS, FIXED_PRESETS, logger, parse_token

DATA_DIR = Path(__file__).parent / "data"

DEFAULT_TABLE_ARITY = 10


def create_preset(token: str) -> Presentation:
    """
    Creates the presentation named by a preset token.

    Args:
        token: a fixed name ('lie', 'com', ...) or a family with parameters
            ('tcom:3:1', 'nlie:2:0', 'ttcom:2:1', 'tlie:3:0')

    Returns:
        The validated presentation

    Raises:
        UnknownPresetError: If the name is not recognized or the parameters are invalid
    """
    name, params = parse_token(token)
    if name in FIXED_PRESETS:
        P = FIXED_PRESETS[name]()
    else:
        P = FAMILY_PRESETS[name](*params)
    logger.debug(f"Preset {token}: {len(P.generators)} generators, {len(P.relations)} relations")
    return P


def list_presets() -> List[str]:
    return sorted(FIXED_PRESETS) + [f"{f}:n:d" for f in sorted(FAMILY_PRESETS)]


def preset_file(name: str) -> Path:
    """Shipped presentation file of a preset, ``tcom:3:1`` -> ``tcom_3_1.oprd``."""
    return DATA_DIR / f"{name.replace(':', '_')}.oprd"


@dataclass(frozen=True)
class KnownDims:
    """
    Args:
        name: preset or operad name
        values: arity -> dimension, only where known
        provenance: where the values come from
    """
    name: str
    values: Dict[int, int]
    provenance: str

    def get(self, arity: int) -> Optional[int]:
        return self.values.get(arity)

    def upto(self, max_arity: int) -> Dict[int, int]:
        return {n: d for n, d in self.values.items() if n <= max_arity}


def _table(name: str, formula, provenance: str, top: int = DEFAULT_TABLE_ARITY) -> KnownDims:
    return KnownDims(name, {n: formula(n) for n in range(1, top + 1)}, provenance)


def _tcom_dims(n: int, d: int, top: int) -> Dict[int, int]:
    if d % 2:
        return {k: 1 if k in (1, n, 2 * n - 1) else 0 for k in range(1, top + 1)}
    return {k: 1 if (k - 1) % (n - 1) == 0 else 0 for k in range(1, top + 1)}


_FIXED_TABLES: Dict[str, KnownDims] = {
    "com": _table("com", lambda n: 1, "classical: one commutative associative monomial per arity"),
    "lie": _table("lie", lambda n: factorial(n - 1), "classical: (n-1)!"),
    "ass": _table("ass", factorial, "classical: n!"),
    "leib": _table("leib", factorial, "classical: n!, the di-construction of lie"),
    "perm": _table("perm", lambda n: n, "span reduction oracle: n"),
    "prelie": _table("prelie", lambda n: n ** (n - 1), "classical: rooted trees n^(n-1)", 8),
    "free": _table("free", lambda n: double_factorial(2 * n - 3) if n > 1 else 1, "free commutative binary: (2n-3)!!", 8),
    "freens": _table("freens", lambda n: factorial(2 * n - 2) // (factorial(n) * factorial(n - 1)),
                     "free nonsymmetric binary: Catalan numbers"),
    "jordan": KnownDims("jordan", {1: 1, 2: 1, 3: 3}, "free commutative below the quartic Jordan relation"),
    "lts": KnownDims("lts", {1: 1, 2: 0, 3: 2, 4: 0, 5: 24, 6: 0, 7: 720}, "quadratic Veronese square of lie: (2n-2)!"),
    "cominf3": KnownDims("cominf3", {1: 1, 2: 0, 3: 2, 4: 0, 5: 16, 6: 0, 7: 272},
                         "tangent numbers 2^(2n)(2^(2n)-1)|B_2n|/(2n) at arity 2n-1"),
    "lieinf3": KnownDims("lieinf3", {1: 1, 2: 0, 3: 1, 4: 0, 5: 9, 6: 0, 7: 225}, "((2n-3)!!)^2 at arity 2n-1"),
    "example1": KnownDims("example1", {1: 1, 2: 1, 3: 2, 4: 4, 5: 9},
                          "planar binary trees without a right chain of three vertices"),
    "example2": KnownDims("example2", {1: 1, 2: 3, 3: 4}, "weight-two normal monomials A, B, C, D"),
}


def known_dims(token: str, top: int = DEFAULT_TABLE_ARITY) -> KnownDims:
    """
    Known dimension table of a preset or named operad.

    Raises:
        UnknownPresetError: when no table is recorded for the name
    """
    key = token.strip().lower()
    if key in _FIXED_TABLES:
        return _FIXED_TABLES[key]
    name, params = parse_token(key)
    if name in ("tcom", "ttcom"):
        n, d = params
        # suspension keeps the underlying collection
        shift = 0 if name == "tcom" else n - 1
        return KnownDims(key, _tcom_dims(n, d + shift, top),
                         "one-dimensional at 1, n, 2n-1 for odd degree; at k = 1 mod (n-1) for even degree")
    if name in ("nlie", "tlie"):
        n, _ = params
        return KnownDims(key, {1: 1, n: 1}, "generator only")
    raise UnknownPresetError(f"No known dimensions recorded for '{token}'")


__all__ = [
    "DATA_DIR",
    "KnownDims",
    "create_preset",
    "known_dims",
    "list_presets",
    "preset_file",
]
