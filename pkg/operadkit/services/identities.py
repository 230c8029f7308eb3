"""
Triple-system identity corpora.

A corpus names ternary symbols by their defining expressions in a binary
operad and lists identities between iterated symbols.  Identities are
checked two ways: by expanding into the binary operad and reducing to normal
form, or by mapping them into the free operad on the Veronese generators and
comparing spans with the computed quadratic relations.  Only even operations
are supported.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Optional

from operadkit.core.linalg import Echelon
from operadkit.core.opoly import OperadPolynomial, Presentation, canonicalize, parse_polynomial
from operadkit.core.tree import GeneratorSymbol, Kind, Node, Tree, TreeMonomial, _min_leaf, _relabel
from operadkit.errors import PresentationError
from operadkit.services.rewrite import GroebnerData
from operadkit.services.veronese import VeroneseBasisY, ensure_groebner, generators, quadratic_veronese
from operadkit.utils.logger import setup_logger

logger = setup_logger("identities")


@dataclass(frozen=True)
class IdentityCorpus:
    """
    Args:
        name: corpus name
        operad: preset the symbols live in
        symbols: ternary symbol id -> defining expression in the operad's generators
        identities: relation texts over the symbols (symmetric kind, any leaf order)
    """
    name: str
    operad: str
    symbols: Dict[str, str]
    identities: List[str] = field(default_factory=list)


CORPORA: Dict[str, IdentityCorpus] = {
    "lts": IdentityCorpus(
        "lts", "lie",
        {"T": "b(b(1,2),3)"},
        [
            "T(1,2,3) + T(2,1,3)",
            "T(1,2,3) + T(2,3,1) + T(3,1,2)",
            "T(1,2,T(3,4,5)) - T(T(1,2,3),4,5) - T(3,T(1,2,4),5) - T(3,4,T(1,2,5))",
        ],
    ),
    "tass": IdentityCorpus(
        "tass", "ass",
        {"T": "x(x(1,2),3)"},
        [
            "T(T(1,2,3),4,5) - T(1,T(2,3,4),5)",
            "T(1,T(2,3,4),5) - T(1,2,T(3,4,5))",
        ],
    ),
    "tcom": IdentityCorpus(
        "tcom", "com",
        {"T": "b(b(1,2),3)"},
        [
            "T(1,2,3) - T(2,1,3)",
            "T(1,2,3) - T(1,3,2)",
            "T(T(1,2,3),4,5) - T(1,T(2,3,4),5)",
            "T(1,T(2,3,4),5) - T(1,2,T(3,4,5))",
        ],
    ),
    "jts": IdentityCorpus(
        "jts", "jordan",
        {"J": "b(b(1,2),3) + b(1,b(2,3)) - b(2,b(1,3))"},
        [
            "J(1,2,3) - J(3,2,1)",
            "J(1,2,J(3,4,5)) - J(J(1,2,3),4,5) + J(3,J(2,1,4),5) - J(3,4,J(1,2,5))",
        ],
    ),
    "prelie_triple": IdentityCorpus(
        "prelie_triple", "prelie",
        {"P1": "x(x(1,2),3)", "P2": "x(1,x(2,3))"},
        [
            "P1(1,2,3) - P2(1,2,3) - P1(1,3,2) + P2(1,3,2)",
            "P2(P1(1,2,3),4,5) - P1(P2(1,4,5),2,3) + P1(1,P1(4,5,2),3) - P1(1,P2(2,4,5),3)"
            " + P1(1,2,P1(4,5,3)) - P1(1,2,P2(3,4,5))",
            "P1(P1(1,2,3),4,5) - P1(P1(1,4,2),3,5) + P1(P1(1,4,3),2,5) - P1(P1(1,3,2),4,5)"
            " - P1(1,P1(2,3,4),5) + P1(1,P1(4,2,3),5) - P1(1,P1(4,3,2),5) + P1(1,P1(3,2,4),5)",
            "P2(P1(1,2,3),4,5) - P1(P2(1,4,5),2,3) + P2(P2(1,4,5),2,3) - P2(P2(1,2,3),4,5)"
            " + P1(1,P1(4,5,2),3) + P1(1,P1(4,5,3),2) - P1(1,P1(2,3,5),4) - P2(1,P1(4,5,3),2)"
            " + P2(1,P1(2,3,5),4) - P1(1,P2(2,4,5),3) - P1(1,P2(3,4,5),2) - P2(1,P2(4,2,3),5)"
            " + P2(1,P2(2,4,5),3) + P2(1,P2(3,4,5),2) + P1(1,4,P1(2,3,5)) - P2(1,4,P2(5,2,3))",
        ],
    ),
}


def get_corpus(name: str) -> IdentityCorpus:
    try:
        return CORPORA[name]
    except KeyError:
        raise PresentationError(f"Unknown identity corpus '{name}'. Available: {', '.join(sorted(CORPORA))}")


class _Corpus:
    """A corpus bound to a symmetric-input presentation."""

    def __init__(self, corpus: IdentityCorpus, P: Presentation):
        if P.kind != Kind.SYMMETRIC:
            raise PresentationError("Identity corpora are evaluated in symmetric-input presentations")
        if any(g.parity for g in P.generators):
            raise PresentationError("Identity corpora support even generators only")
        self.corpus = corpus
        self.P = P
        self.symbols = {sid: GeneratorSymbol(sid, 3) for sid in corpus.symbols}
        self.definitions = {
            sid: parse_polynomial(text, P.generator_map, Kind.SYMMETRIC)
            for sid, text in corpus.symbols.items()
        }
        self.identities = [parse_polynomial(text, self.symbols, Kind.SYMMETRIC) for text in corpus.identities]

    def expand(self, t: Tree) -> Dict[Tree, Fraction]:
        """Multilinear expansion of a tree of symbols into trees of the operad's generators."""
        if isinstance(t, int):
            return {t: Fraction(1)}
        children = [self.expand(c) for c in t.children]
        out: Dict[Tree, Fraction] = {}
        for mono, coeff in self.definitions[t.gen.id].terms.items():
            for choice in product(*[list(c.items()) for c in children]):
                grafted = _graft(mono.root, [tree for tree, _ in choice])
                value = coeff
                for _, c in choice:
                    value *= c
                total = out.get(grafted, 0) + value
                if total:
                    out[grafted] = total
                else:
                    out.pop(grafted, None)
        return out

    def to_shuffle(self, p: OperadPolynomial) -> OperadPolynomial:
        """Expand a polynomial in the symbols and rewrite it in shuffle form."""
        expanded: Dict[TreeMonomial, Fraction] = {}
        for mono, coeff in p.terms.items():
            for tree, c in self.expand(mono.root).items():
                key = TreeMonomial(tree, mono.arity, Kind.SYMMETRIC, check=False)
                expanded[key] = expanded.get(key, 0) + coeff * c
        return canonicalize(OperadPolynomial(expanded, check=False), self.P)


def _graft(t: Tree, children: List[Tree]) -> Tree:
    if isinstance(t, int):
        return children[t - 1]
    return Node(t.gen, [_graft(c, children) for c in t.children])


@dataclass
class IdentityResidue:
    identity: str
    residue: OperadPolynomial

    @property
    def holds(self) -> bool:
        return self.residue.is_zero()


def evaluate_identities(P: Presentation, corpus: IdentityCorpus, G: Optional[GroebnerData] = None) -> List[IdentityResidue]:
    """Normal form of every identity of the corpus after expansion into P."""
    bound = _Corpus(corpus, P)
    top = max((p.arity for p in bound.identities), default=3)
    G = ensure_groebner(P, G, top)
    out = []
    for text, identity in zip(corpus.identities, bound.identities):
        residue = G.normal_form(bound.to_shuffle(identity))
        out.append(IdentityResidue(text, residue))
        logger.info(f"{corpus.name}: identity {'holds' if residue.is_zero() else 'fails'}: {text}")
    return out


# ---------------------------------------------------------------------------
# Comparison with quadratic Veronese relations
# ---------------------------------------------------------------------------

class _YAction:
    """Induced linear action of S_3 on the symbols, written in the Y basis."""

    def __init__(self, bound: _Corpus, basis: VeroneseBasisY, G: GroebnerData):
        self.bound = bound
        self.by_monomial = {m: g for g, m in zip(basis.generators, basis.monomials)}
        self.table: Dict[tuple, Dict[GeneratorSymbol, Fraction]] = {}
        for sid in bound.symbols:
            for ranks in permutations((1, 2, 3)):
                tree = Node(bound.symbols[sid], ranks)
                mono = TreeMonomial(tree, 3, Kind.SYMMETRIC, check=False)
                image = G.normal_form(bound.to_shuffle(OperadPolynomial.monomial(mono)))
                coords = {}
                for m, c in image.terms.items():
                    if m not in self.by_monomial:
                        raise PresentationError(f"{m} is not a weight-2 normal monomial of arity 3")
                    coords[self.by_monomial[m]] = c
                self.table[(sid, ranks)] = coords

    def expand(self, t: Tree) -> Dict[Tree, Fraction]:
        if isinstance(t, int):
            return {t: Fraction(1)}
        order = sorted(range(3), key=lambda k: _min_leaf(t.children[k]))
        ranks = [0, 0, 0]
        for position, k in enumerate(order):
            ranks[k] = position + 1
        coords = self.table[(t.gen.id, tuple(ranks))]
        children = [self.expand(t.children[k]) for k in order]
        out: Dict[Tree, Fraction] = {}
        for y, coeff in coords.items():
            for choice in product(*[list(c.items()) for c in children]):
                node = Node(y, [tree for tree, _ in choice])
                value = coeff
                for _, c in choice:
                    value *= c
                total = out.get(node, 0) + value
                if total:
                    out[node] = total
                else:
                    out.pop(node, None)
        return out


@dataclass
class SpanComparison:
    arity: int
    identity_rank: int
    veronese_rank: int
    common_rank: int

    @property
    def equal(self) -> bool:
        return self.identity_rank == self.veronese_rank == self.common_rank


def _orbit(p: OperadPolynomial) -> List[OperadPolynomial]:
    out = []
    for perm in permutations(range(1, p.arity + 1)):
        terms = {}
        for mono, coeff in p.terms.items():
            relabelled = TreeMonomial(_relabel(mono.root, lambda k, q=perm: q[k - 1]), mono.arity,
                                      Kind.SYMMETRIC, check=False)
            terms[relabelled] = terms.get(relabelled, 0) + coeff
        out.append(OperadPolynomial(terms, check=False))
    return out


def compare_with_veronese(P: Presentation, corpus: IdentityCorpus, arity: int = 5,
                          G: Optional[GroebnerData] = None) -> SpanComparison:
    """
    Compare the span of the corpus' identity orbits with the quadratic
    Veronese relations of degree 2, inside the free operad on Y at one arity.
    """
    bound = _Corpus(corpus, P)
    G = ensure_groebner(P, G, 5, 4)
    qv = quadratic_veronese(P, 2, G)
    basis = generators(P, 2, G)
    action = _YAction(bound, basis, G)
    key = qv.order_spec().key

    identity_span = Echelon(key)
    for identity in bound.identities:
        if identity.arity != arity:
            continue
        for copy in _orbit(identity):
            terms: Dict[TreeMonomial, Fraction] = {}
            for mono, coeff in copy.terms.items():
                for tree, c in action.expand(mono.root).items():
                    y_mono = TreeMonomial(tree, arity, qv.kind, check=False)
                    terms[y_mono] = terms.get(y_mono, 0) + coeff * c
            identity_span.add(terms)
    veronese_rows = [r.terms for r in qv.relations if r.arity == arity]
    veronese_span = Echelon(key)
    for row in veronese_rows:
        veronese_span.add(row)
    common = Echelon(key)
    for row in identity_span.rows_sorted():
        common.add(row)
    for row in veronese_rows:
        common.add(row)
    result = SpanComparison(arity, identity_span.rank, veronese_span.rank, common.rank)
    logger.info(
        f"{corpus.name}: identity span {result.identity_rank}, Veronese span {result.veronese_rank}, "
        f"joint {result.common_rank} at arity {arity}"
    )
    return result
