"""
Built-in presentations.

Symmetric-input presets write relations with arbitrary leaf orders; the
symmetric group acts on generators by sign characters or, for operads with a
regular two-element basis (x(a,b) = ab, y(a,b) = ba), by swapping the pair.
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from operadkit.core.exact import permutation_sign
from operadkit.core.opoly import OperadPolynomial, Presentation, SymmetricAction, parse_polynomial
from operadkit.core.tree import GeneratorSymbol, Kind
from operadkit.errors import UnknownPresetError
from operadkit.utils.logger import setup_logger

logger = setup_logger("presets")


def _build(name: str, kind: Kind, gens: List[GeneratorSymbol], relations: Sequence[str],
           actions: Optional[Dict[str, SymmetricAction]] = None, order: Optional[str] = None,
           metadata: Optional[Dict[str, str]] = None) -> Presentation:
    generator_map = {g.id: g for g in gens}
    polys: List[OperadPolynomial] = [parse_polynomial(text, generator_map, kind) for text in relations]
    return Presentation(name, kind, gens, polys, actions or {}, order, "declared", metadata or {}).validate()


def _signed(gen: GeneratorSymbol, sign: int) -> Dict[str, SymmetricAction]:
    return {gen.id: SymmetricAction.sign_character(gen, sign)}


def _regular_pair() -> tuple:
    x, y = GeneratorSymbol("x", 2), GeneratorSymbol("y", 2)
    actions = {
        "x": SymmetricAction.table(x, {1: ("y", 1)}),
        "y": SymmetricAction.table(y, {1: ("x", 1)}),
    }
    return [x, y], actions


# ---------------------------------------------------------------------------
# Binary operads
# ---------------------------------------------------------------------------

def com() -> Presentation:
    b = GeneratorSymbol("b", 2)
    return _build("com", Kind.SYMMETRIC, [b], ["b(b(1,2),3) - b(1,b(2,3))"], _signed(b, 1))


def lie() -> Presentation:
    b = GeneratorSymbol("b", 2)
    return _build("lie", Kind.SYMMETRIC, [b], ["b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)"], _signed(b, -1))


def ass() -> Presentation:
    gens, actions = _regular_pair()
    return _build("ass", Kind.SYMMETRIC, gens, ["x(x(1,2),3) - x(1,x(2,3))"], actions)


def leib() -> Presentation:
    gens, actions = _regular_pair()
    return _build("leib", Kind.SYMMETRIC, gens, ["x(x(1,2),3) - x(1,x(2,3)) - x(x(1,3),2)"], actions)


def perm() -> Presentation:
    gens, actions = _regular_pair()
    return _build("perm", Kind.SYMMETRIC, gens, ["x(x(1,2),3) - x(1,x(2,3))", "x(1,x(2,3)) - x(1,x(3,2))"], actions)


def prelie() -> Presentation:
    gens, actions = _regular_pair()
    return _build("prelie", Kind.SYMMETRIC, gens,
                  ["x(x(1,2),3) - x(1,x(2,3)) - x(x(1,3),2) + x(1,x(3,2))"], actions)


def jordan() -> Presentation:
    b = GeneratorSymbol("b", 2)
    relation = (
        "b(b(b(1,2),3),4) + b(b(b(1,4),3),2) + b(b(b(2,4),3),1)"
        " - b(b(1,2),b(3,4)) - b(b(1,3),b(2,4)) - b(b(1,4),b(2,3))"
    )
    return _build("jordan", Kind.SYMMETRIC, [b], [relation], _signed(b, 1))


def free() -> Presentation:
    b = GeneratorSymbol("b", 2)
    return _build("free", Kind.SYMMETRIC, [b], [], _signed(b, 1))


def freens() -> Presentation:
    return _build("freens", Kind.NONSYMMETRIC, [GeneratorSymbol("b", 2)], [])


# ---------------------------------------------------------------------------
# n-ary families
# ---------------------------------------------------------------------------

def _labels(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values)


def _slot_composite(gid: str, n: int, i: int) -> str:
    """gid o_i gid with the identity unshuffle."""
    inner = f"{gid}({_labels(range(i, i + n))})"
    outer = [str(k) for k in range(1, i)] + [inner] + [str(k) for k in range(i + n, 2 * n)]
    return f"{gid}({','.join(outer)})"


def tcom(n: int, d: int) -> Presentation:
    """Totally associative commutative n-ary operation of degree d."""
    mu = GeneratorSymbol("mu", n, d % 2)
    relations = [f"{_slot_composite('mu', n, 1)} - {_slot_composite('mu', n, j)}" for j in range(2, n + 1)]
    return _build(f"tcom:{n}:{d}", Kind.SYMMETRIC, [mu], relations, _signed(mu, 1), "pdl",
                  {"family": "tcom", "n": str(n), "d": str(d)})


def _unshuffle_sum(gid: str, n: int, signed: bool) -> str:
    """Sum over (n, n-1)-unshuffles delta of (gid o_1 gid).delta, optionally weighted by sgn(delta)."""
    terms = []
    for inner in combinations(range(1, 2 * n), n):
        rest = [k for k in range(1, 2 * n) if k not in inner]
        sign = permutation_sign(tuple(inner) + tuple(rest)) if signed else 1
        mono = f"{gid}({gid}({_labels(inner)}),{_labels(rest)})"
        terms.append(("- " if sign < 0 else "+ ") + mono)
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text


def nlie(n: int, d: int) -> Presentation:
    """n-Lie operation of degree d: fully antisymmetric with the generalized Jacobi identity."""
    ell = GeneratorSymbol("l", n, d % 2)
    return _build(f"nlie:{n}:{d}", Kind.SYMMETRIC, [ell], [_unshuffle_sum("l", n, True)], _signed(ell, -1),
                  None, {"family": "nlie", "n": str(n), "d": str(d)})


def ttcom(n: int, d: int) -> Presentation:
    """Suspension of tcom:n:(d+n-1): antisymmetric, relations twisted by (-1)^((i-1)d)."""
    from operadkit.services.dual import suspend_parity

    P = suspend_parity(tcom(n, d + n - 1))
    P.name = f"ttcom:{n}:{d}"
    P.metadata = {"family": "ttcom", "n": str(n), "d": str(d)}
    return P.validate()


def tlie(n: int, d: int) -> Presentation:
    """Suspension of nlie:n:(d+n-1): fully symmetric with the unsigned unshuffle sum."""
    from operadkit.services.dual import suspend_parity

    P = suspend_parity(nlie(n, d + n - 1))
    P.name = f"tlie:{n}:{d}"
    P.metadata = {"family": "tlie", "n": str(n), "d": str(d)}
    return P.validate()


# ---------------------------------------------------------------------------
# Counterexamples to the Veronese properties
# ---------------------------------------------------------------------------

def example1() -> Presentation:
    """One binary generator with the single weight-3 monomial relation."""
    return _build("example1", Kind.NONSYMMETRIC, [GeneratorSymbol("nu", 2)], ["nu(1,nu(2,nu(3,4)))"])


def example2() -> Presentation:
    """Three binary generators, mu > rho > nu, with two binomial-or-monomial and twelve monomial relations."""
    gens = [GeneratorSymbol("mu", 2), GeneratorSymbol("rho", 2), GeneratorSymbol("nu", 2)]
    relations = ["mu(nu(1,2),3) - rho(1,nu(2,3))", "rho(nu(1,2),3)"]
    for outer, inner in [("mu", "mu"), ("mu", "rho"), ("rho", "rho"), ("rho", "mu"), ("nu", "mu"), ("nu", "rho")]:
        relations.append(f"{outer}({inner}(1,2),3)")
        relations.append(f"{outer}(1,{inner}(2,3))")
    return _build("example2", Kind.NONSYMMETRIC, gens, relations, None, "pdl")


FIXED_PRESETS = {
    "com": com,
    "lie": lie,
    "ass": ass,
    "leib": leib,
    "perm": perm,
    "prelie": prelie,
    "jordan": jordan,
    "free": free,
    "freens": freens,
    "example1": example1,
    "example2": example2,
}

FAMILY_PRESETS = {
    "tcom": tcom,
    "nlie": nlie,
    "ttcom": ttcom,
    "tlie": tlie,
}


def parse_token(token: str) -> tuple:
    """
    Split ``name`` or ``family:n:d``.

    Raises:
        UnknownPresetError: for unknown names or invalid parameters
    """
    parts = token.strip().lower().split(":")
    name = parts[0]
    if name in FIXED_PRESETS:
        if len(parts) != 1:
            raise UnknownPresetError(f"Preset '{name}' takes no parameters")
        return name, ()
    if name in FAMILY_PRESETS:
        if len(parts) != 3 or not all(p.isdigit() for p in parts[1:]):
            raise UnknownPresetError(f"Preset '{name}' needs parameters, e.g. {name}:3:1")
        n, d = int(parts[1]), int(parts[2])
        if n < 2:
            raise UnknownPresetError(f"Preset '{name}' needs arity n >= 2, got {n}")
        return name, (n, d)
    available = sorted(FIXED_PRESETS) + [f"{f}:n:d" for f in sorted(FAMILY_PRESETS)]
    raise UnknownPresetError(f"Unknown preset '{token}'. Available: {', '.join(available)}")
