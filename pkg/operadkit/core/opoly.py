"""
Operadic polynomials, symmetric group actions on generators, presentations,
and the rewriting of symmetric relations into shuffle relations.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from operadkit.core.exact import RationalLike, format_rational, parse_rational, to_rational
from operadkit.core.linalg import Echelon
from operadkit.core.orders import OrderSpec
from operadkit.core.tree import (
    GeneratorSymbol,
    Kind,
    Node,
    Tree,
    TreeMonomial,
    Unshuffle,
    compose,
    parse_monomial,
    _min_leaf,
    _relabel,
)
from operadkit.errors import (
    ActionError,
    InhomogeneousRelationError,
    ParseError,
    PresentationError,
)
from operadkit.utils.config import settings
from operadkit.utils.logger import setup_logger

logger = setup_logger("opoly")


class OperadPolynomial:
    """
    Exact linear combination of tree monomials of one arity, weight and parity.

    Zero coefficients are never stored.  Term order is not stored either:
    ``sorted_terms(order)`` lists terms leading term first.

    Raises:
        InhomogeneousRelationError: when terms differ in arity, weight, parity or kind
    """

    __slots__ = ("terms", "arity", "weight", "parity", "kind")

    def __init__(self, terms: Optional[Mapping[TreeMonomial, RationalLike]] = None, check: bool = True):
        clean: Dict[TreeMonomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            q = coeff if isinstance(coeff, Fraction) else to_rational(coeff)
            if q:
                clean[mono] = q
        self.terms = clean
        self.arity = self.weight = self.parity = self.kind = None
        if clean:
            first = next(iter(clean))
            self.arity, self.weight, self.parity, self.kind = first.arity, first.weight, first.parity, first.kind
            if check:
                for mono in clean:
                    if (mono.arity, mono.weight, mono.parity, mono.kind) != (
                        self.arity, self.weight, self.parity, self.kind
                    ):
                        raise InhomogeneousRelationError(
                            f"inhomogeneous relation: {first} and {mono} differ in arity, weight, parity or kind"
                        )

    @classmethod
    def monomial(cls, mono: TreeMonomial, coeff: RationalLike = 1) -> "OperadPolynomial":
        return cls({mono: coeff}, check=False)

    @classmethod
    def zero(cls) -> "OperadPolynomial":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono: TreeMonomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def __add__(self, other: "OperadPolynomial") -> "OperadPolynomial":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return OperadPolynomial(out)

    def __sub__(self, other: "OperadPolynomial") -> "OperadPolynomial":
        return self + (-other)

    def __neg__(self) -> "OperadPolynomial":
        return OperadPolynomial({m: -c for m, c in self.terms.items()}, check=False)

    def scale(self, factor: RationalLike) -> "OperadPolynomial":
        q = to_rational(factor)
        return OperadPolynomial({m: c * q for m, c in self.terms.items()}, check=False)

    def __eq__(self, other):
        if not isinstance(other, OperadPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self, order: OrderSpec) -> List[Tuple[TreeMonomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading(self, order: OrderSpec) -> Tuple[TreeMonomial, Fraction]:
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def monic(self, order: OrderSpec) -> "OperadPolynomial":
        _, lc = self.leading(order)
        return self.scale(1 / lc)

    def to_text(self, order: OrderSpec) -> str:
        """Relation text form, e.g. ``1 * b(b(1,2),3) - 1 * b(1,b(2,3))``."""
        if not self.terms:
            return "0"
        parts = []
        for idx, (mono, coeff) in enumerate(self.sorted_terms(order)):
            sign = "-" if coeff < 0 else "+"
            text = f"{format_rational(abs(coeff))} * {mono.text()}"
            if idx == 0:
                parts.append(text if sign == "+" else f"-{text}")
            else:
                parts.append(f"{sign} {text}")
        return " ".join(parts)

    def __repr__(self):
        return " + ".join(f"{format_rational(c)}*{m}" for m, c in self.terms.items()) or "0"


def substitute(outer: OperadPolynomial, i: int, sigma: Unshuffle, inner: OperadPolynomial) -> OperadPolynomial:
    """Bilinear extension of signed monomial composition."""
    out: Dict[TreeMonomial, Fraction] = {}
    for m1, c1 in outer.terms.items():
        for m2, c2 in inner.terms.items():
            mono, sign = compose(m1, i, sigma, m2)
            out[mono] = out.get(mono, 0) + sign * c1 * c2
    return OperadPolynomial(out, check=False)


def relabel_polynomial(p: OperadPolynomial, mapping: Dict[int, int]) -> OperadPolynomial:
    """Relabel leaves of a symmetric-kind polynomial."""
    out: Dict[TreeMonomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        new = TreeMonomial(_relabel(mono.root, mapping.__getitem__), mono.arity, Kind.SYMMETRIC)
        out[new] = out.get(new, 0) + coeff
    return OperadPolynomial(out, check=False)


# ---------------------------------------------------------------------------
# Symmetric group actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricAction:
    """
    Monomial action of the adjacent transpositions s_j = (j, j+1) on a generator.

    ``images[j]`` is (image generator id, sign).
    """
    generator: str
    arity: int
    images: Tuple[Tuple[int, str, int], ...]

    def apply(self, j: int) -> Tuple[str, int]:
        for jj, target, sign in self.images:
            if jj == j:
                return target, sign
        raise ActionError(f"No action of s{j} on {self.generator}")

    @classmethod
    def sign_character(cls, gen: GeneratorSymbol, sign: int) -> "SymmetricAction":
        if sign not in (1, -1):
            raise ActionError("A sign character must be +1 or -1")
        return cls(gen.id, gen.arity, tuple((j, gen.id, sign) for j in range(1, gen.arity)))

    @classmethod
    def table(cls, gen: GeneratorSymbol, entries: Mapping[int, Tuple[str, int]]) -> "SymmetricAction":
        missing = [j for j in range(1, gen.arity) if j not in entries]
        if missing:
            raise ActionError(f"Action table of {gen.id} misses s{missing[0]}")
        for j, (_, sign) in entries.items():
            if sign not in (1, -1):
                raise ActionError(f"Non-monomial action requested for {gen.id}: sign {sign}")
        return cls(gen.id, gen.arity, tuple((j, *entries[j]) for j in sorted(entries)))

    def describe(self) -> str:
        if all(t == self.generator for _, t, _ in self.images):
            signs = {s for _, _, s in self.images}
            if len(signs) <= 1:
                return f"sign({'+1' if signs != {-1} else '-1'})"
        return "table " + " ".join(f"s{j}:{t}:{'+1' if s > 0 else '-1'}" for j, t, s in self.images)


def validate_actions(generators: Iterable[GeneratorSymbol], actions: Mapping[str, SymmetricAction]) -> None:
    """
    Check that the actions define representations of the symmetric groups.

    Raises:
        ActionError: when an image is unknown or a Coxeter relation fails
    """
    by_id = {g.id: g for g in generators}
    for gid, action in actions.items():
        gen = by_id.get(gid)
        if gen is None:
            raise ActionError(f"Action declared for unknown generator {gid}")
        for j, target, _ in action.images:
            if target not in by_id or by_id[target].arity != gen.arity:
                raise ActionError(f"s{j} maps {gid} to an incompatible generator {target}")
            if by_id[target].parity != gen.parity:
                raise ActionError(f"s{j} maps {gid} to a generator of different parity")

    def act(gid: str, word: Iterable[int]) -> Tuple[str, int]:
        sign = 1
        for j in word:
            if gid not in actions:
                raise ActionError(f"Generator {gid} is in an action orbit but has no action")
            gid, s = actions[gid].apply(j)
            sign *= s
        return gid, sign

    for gid, action in actions.items():
        n = action.arity
        for j in range(1, n):
            if act(gid, [j, j]) != (gid, 1):
                raise ActionError(f"Action on {gid}: s{j} is not an involution")
            if j + 1 < n and act(gid, [j, j + 1, j]) != act(gid, [j + 1, j, j + 1]):
                raise ActionError(f"Action on {gid}: braid relation fails for s{j}, s{j + 1}")
            for k in range(j + 2, n):
                if act(gid, [j, k]) != act(gid, [k, j]):
                    raise ActionError(f"Action on {gid}: s{j} and s{k} do not commute")


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass
class Presentation:
    """
    Generators and relations.

    ``kind`` is shuffle, nonsymmetric or symmetric (symmetric-input: relations
    are written with arbitrary leaf orders and every generator carries an
    action).  ``order`` names the monomial order variant; ``generator_order``
    says whether the first declared generator is the largest.
    """
    name: str
    kind: Kind
    generators: List[GeneratorSymbol]
    relations: List[OperadPolynomial] = field(default_factory=list)
    actions: Dict[str, SymmetricAction] = field(default_factory=dict)
    order: Optional[str] = None
    generator_order: str = "declared"
    metadata: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.kind = Kind(self.kind)
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            raise PresentationError(f"Duplicate generator ids in {self.name}")
        self._order_spec = None

    def generator(self, gid: str) -> GeneratorSymbol:
        for g in self.generators:
            if g.id == gid:
                return g
        raise PresentationError(f"Unknown generator {gid}")

    @property
    def generator_map(self) -> Dict[str, GeneratorSymbol]:
        return {g.id: g for g in self.generators}

    def order_spec(self) -> OrderSpec:
        if self._order_spec is None:
            self._order_spec = OrderSpec(self.generators, self.order or settings.DEFAULT_ORDER, self.generator_order)
        return self._order_spec

    def with_order(self, variant: str, generator_order: Optional[str] = None) -> "Presentation":
        return Presentation(self.name, self.kind, list(self.generators), list(self.relations),
                            dict(self.actions), variant, generator_order or self.generator_order,
                            dict(self.metadata))

    def validate(self) -> "Presentation":
        """
        Raises:
            InhomogeneousRelationError: for inhomogeneous relations
            ActionError: for missing or invalid actions
            PresentationError: for unknown generators or kind mismatches
        """
        known = self.generator_map
        for rel in self.relations:
            if rel.is_zero():
                continue
            OperadPolynomial(rel.terms, check=True)
            if rel.kind != self.kind:
                raise PresentationError(f"Relation of kind {rel.kind.value} in a {self.kind.value} presentation")
            for mono in rel.terms:
                for gen in mono.generators():
                    if known.get(gen.id) != gen:
                        raise PresentationError(f"Unknown generator '{gen.id}' in relation")
        if self.kind == Kind.SYMMETRIC:
            missing = [g.id for g in self.generators if g.id not in self.actions and g.arity > 1]
            if missing:
                raise ActionError(f"Symmetric-input generator {missing[0]} has no action")
        validate_actions(self.generators, self.actions)
        return self

    def relation_arities(self) -> List[int]:
        return sorted({r.arity for r in self.relations if r})

    def max_generator_arity(self) -> int:
        return max((g.arity for g in self.generators), default=1)

    def is_standard_graded(self) -> bool:
        return all(g.weight == 1 for g in self.generators)


# ---------------------------------------------------------------------------
# Symmetric-input to shuffle
# ---------------------------------------------------------------------------

def _tree_parity(t: Tree) -> int:
    if isinstance(t, int):
        return 0
    parity = t.gen.parity
    for c in t.children:
        parity ^= _tree_parity(c)
    return parity


def canonicalize_tree(t: Tree, generators: Mapping[str, GeneratorSymbol],
                      actions: Mapping[str, SymmetricAction]) -> Tuple[Tree, int]:
    """
    Sort the children of every vertex by minimal leaf.

    Swapping adjacent children B, C of a vertex g applies s_j to g and the
    Koszul sign (-1)^{|B||C|}.

    Raises:
        ActionError: when a swap is needed on a generator without an action
    """
    if isinstance(t, int):
        return t, 1
    sign = 1
    children = []
    for c in t.children:
        cc, s = canonicalize_tree(c, generators, actions)
        children.append(cc)
        sign *= s
    gen = t.gen
    n = len(children)
    for end in range(n - 1, 0, -1):
        for j in range(end):
            if _min_leaf(children[j]) > _min_leaf(children[j + 1]):
                action = actions.get(gen.id)
                if action is None:
                    raise ActionError(f"Generator {gen.id} has no symmetric action")
                target, eps = action.apply(j + 1)
                gen = generators[target]
                sign *= eps
                if _tree_parity(children[j]) and _tree_parity(children[j + 1]):
                    sign = -sign
                children[j], children[j + 1] = children[j + 1], children[j]
    return Node(gen, children), sign


def canonicalize(p: OperadPolynomial, presentation: Presentation) -> OperadPolynomial:
    """Rewrite a symmetric-kind polynomial as a shuffle polynomial."""
    generators = presentation.generator_map
    out: Dict[TreeMonomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        root, sign = canonicalize_tree(mono.root, generators, presentation.actions)
        shuffle_mono = TreeMonomial(root, mono.arity, Kind.SHUFFLE, check=False)
        out[shuffle_mono] = out.get(shuffle_mono, 0) + sign * coeff
    return OperadPolynomial(out, check=False)


def orbit(p: OperadPolynomial) -> List[OperadPolynomial]:
    """All leaf relabelings of a symmetric-kind polynomial (n! of them)."""
    n = p.arity
    out = []
    for perm in permutations(range(1, n + 1)):
        mapping = {k + 1: perm[k] for k in range(n)}
        out.append(relabel_polynomial(p, mapping))
    return out


def reduce_relations(relations: Iterable[OperadPolynomial], order: OrderSpec) -> List[OperadPolynomial]:
    """Row-reduce relations per arity; returns the reduced echelon basis sorted by leading term."""
    by_slice: Dict[tuple, Echelon] = {}
    for rel in relations:
        if rel.is_zero():
            continue
        key = (rel.arity, rel.weight)
        echelon = by_slice.setdefault(key, Echelon(order.key))
        echelon.add(rel.terms)
    out = []
    for key in sorted(by_slice):
        for row in by_slice[key].rows_sorted():
            out.append(OperadPolynomial(row, check=False))
    return out


def symmetric_to_shuffle(P: Presentation) -> Presentation:
    """
    Rewrite a symmetric-input presentation as a shuffle presentation on the
    same generator basis.

    Every relation is expanded over its leaf relabelings, each copy is
    canonicalized with the generator actions, and the result is row reduced.

    Raises:
        PresentationError: if P is not symmetric-input
    """
    if P.kind != Kind.SYMMETRIC:
        raise PresentationError(f"{P.name} is not a symmetric-input presentation")
    P.validate()
    shuffle_gens = list(P.generators)
    target = Presentation(P.name, Kind.SHUFFLE, shuffle_gens, [], {}, P.order, P.generator_order,
                          dict(P.metadata))
    order = target.order_spec()
    expanded = []
    for rel in P.relations:
        if rel.is_zero():
            continue
        for copy in orbit(rel):
            shuffled = canonicalize(copy, P)
            if shuffled:
                expanded.append(shuffled)
    target.relations = reduce_relations(expanded, order)
    logger.info(f"{P.name}: {len(P.relations)} symmetric relations -> {len(target.relations)} shuffle relations")
    return target


def as_shuffle(P: Presentation) -> Presentation:
    """Shuffle or nonsymmetric form of any presentation."""
    if P.kind == Kind.SYMMETRIC:
        return symmetric_to_shuffle(P)
    return P


# ---------------------------------------------------------------------------
# Relation text form
# ---------------------------------------------------------------------------

def parse_polynomial(text: str, generators: Mapping[str, GeneratorSymbol], kind: Kind,
                     line: Optional[int] = None, column: int = 1) -> OperadPolynomial:
    """
    Parse ``[-]c * m (+|-) c * m ...``; a term without ``c *`` has coefficient 1.

    Raises:
        ParseError: with the line and column of the offending token
        InhomogeneousRelationError: when the terms differ in arity, weight or parity
    """
    terms: Dict[TreeMonomial, Fraction] = {}
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    skip()
    if pos >= n:
        raise ParseError("Empty relation", line, column)
    first = True
    while pos < n:
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip()
        elif not first:
            raise ParseError(f"Expected '+' or '-', got '{text[pos]}'", line, column + pos)
        first = False
        start = pos
        coeff = Fraction(1)
        if pos < n and text[pos].isdigit():
            while pos < n and (text[pos].isdigit() or text[pos] == "/"):
                pos += 1
            literal = text[start:pos]
            skip()
            if pos < n and text[pos] == "*":
                coeff = parse_rational(literal)
                pos += 1
                skip()
                start = pos
            else:
                pos = start
        mono_start = pos
        depth = 0
        while pos < n:
            ch = text[pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    pos += 1
                    break
            elif depth == 0 and (ch in "+-" or ch.isspace()):
                break
            pos += 1
        if pos == mono_start:
            raise ParseError("Expected a monomial", line, column + pos)
        mono = parse_monomial(text[mono_start:pos], dict(generators), kind, line, column + mono_start)
        value = terms.get(mono, 0) + sign * coeff
        if value:
            terms[mono] = value
        else:
            terms.pop(mono, None)
        skip()
    return OperadPolynomial(terms)
