"""
Veronese powers: naive and generated powers, free-operad membership,
quadratic Veronese presentations and the left-comb and PBW criteria.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Optional, Tuple

from operadkit.core.linalg import Echelon, kernel
from operadkit.core.opoly import OperadPolynomial, Presentation, as_shuffle, canonicalize, substitute
from operadkit.core.tree import (
    GeneratorSymbol,
    Kind,
    Node,
    Tree,
    TreeEnumerator,
    TreeMonomial,
    _min_leaf,
    _relabel,
    corolla,
    enumerate_unshuffles,
    left_comb,
    left_combs,
    right_divisors_weight,
    standardize,
    substitute_vertices,
)
from operadkit.errors import NotCompletedError, PresentationError
from operadkit.services.rewrite import Bound, GroebnerData, buchberger, is_quadratic_up_to
from operadkit.utils.logger import setup_logger

logger = setup_logger("veronese")


def arity_for_weight(P: Presentation, weight: int) -> int:
    """Largest arity of a monomial of the given weight (standard grading)."""
    return 1 + weight * (P.max_generator_arity() - 1)


def ensure_groebner(P: Presentation, G: Optional[GroebnerData], max_arity: int,
                    max_weight: Optional[int] = None) -> GroebnerData:
    """
    Reuse G when it covers the region, otherwise complete a new basis.

    Raises:
        NotCompletedError: when a given G does not cover the region
    """
    if G is None:
        shuffle = as_shuffle(P)
        if max_weight is None and any(g.arity == 1 for g in shuffle.generators):
            raise PresentationError("Presentations with unary generators need a weight bound")
        needs_weight = max_weight if any(g.arity == 1 for g in shuffle.generators) else None
        return buchberger(shuffle, Bound(max_arity, needs_weight))
    if G.bound.max_arity < max_arity or (
        max_weight is not None and G.bound.max_weight is not None and G.bound.max_weight < max_weight
    ):
        raise NotCompletedError(f"Groebner data bounded by {G.bound.describe()} does not reach arity {max_arity}")
    return G


# ---------------------------------------------------------------------------
# Generators of the Veronese power
# ---------------------------------------------------------------------------

@dataclass
class VeroneseBasisY:
    """Weight-d normal monomials of the source, named y1, y2, ..."""
    source: Presentation
    d: int
    monomials: List[TreeMonomial]
    generators: List[GeneratorSymbol]

    @property
    def images(self) -> Dict[str, TreeMonomial]:
        return {g.id: m for g, m in zip(self.generators, self.monomials)}

    def definitions(self) -> Dict[str, str]:
        return {g.id: m.text() for g, m in zip(self.generators, self.monomials)}


def generators(P: Presentation, d: int, G: Optional[GroebnerData] = None) -> VeroneseBasisY:
    """
    The generators Y of the d-th Veronese power.

    Raises:
        NotCompletedError: when G does not reach weight d
    """
    if d < 1:
        raise PresentationError("Veronese degree must be >= 1")
    G = ensure_groebner(P, G, arity_for_weight(P, d), d)
    monomials: List[TreeMonomial] = []
    for n in range(1, arity_for_weight(G.presentation, d) + 1):
        monomials.extend(G.normal_monomials(n, d))
    gens = [GeneratorSymbol(f"y{k + 1}", m.arity, m.parity, d) for k, m in enumerate(monomials)]
    logger.info(f"{P.name}: {len(gens)} weight-{d} generators")
    return VeroneseBasisY(G.presentation, d, monomials, gens)


def evaluate(p: OperadPolynomial, basis: VeroneseBasisY, G: GroebnerData) -> OperadPolynomial:
    """Image of a polynomial in the Y generators under Y -> P, in normal form."""
    images = basis.images
    out: Dict[TreeMonomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        tree, sign = substitute_vertices(mono, lambda g: images[g.id], G.presentation.kind)
        for m, c in G.normal_form(OperadPolynomial.monomial(tree)).terms.items():
            value = out.get(m, 0) + sign * coeff * c
            if value:
                out[m] = value
            else:
                out.pop(m, None)
    return OperadPolynomial(out, check=False)


def _y_presentation(basis: VeroneseBasisY, name: str, relations: List[OperadPolynomial]) -> Presentation:
    source = basis.source
    metadata = {"source": source.name, "veronese_degree": str(basis.d)}
    metadata.update({f"definition.{k}": v for k, v in basis.definitions().items()})
    return Presentation(name, source.kind, list(basis.generators), relations, {}, source.order,
                        source.generator_order, metadata)


def _kernel_slice(basis: VeroneseBasisY, G: GroebnerData, enumerator: TreeEnumerator,
                  presentation: Presentation, arity: int, y_weight: int) -> Tuple[List[TreeMonomial], List[OperadPolynomial]]:
    order = presentation.order_spec()
    trees = [TreeMonomial(t, arity, presentation.kind, check=False)
             for t in enumerator.trees(arity, y_weight * basis.d)]
    trees.sort(key=order.key)
    images = [evaluate(OperadPolynomial.monomial(t), basis, G).terms for t in trees]
    vectors = kernel(images, G.order.key)
    relations = [OperadPolynomial({trees[j]: c for j, c in v.items()}, check=False) for v in vectors]
    return trees, relations


def quadratic_veronese(P: Presentation, d: int, G: Optional[GroebnerData] = None) -> Presentation:
    """
    Presentation on Y by all quadratic relations that hold in P.

    Per arity, the kernel of 2-vertex trees in Y evaluated into P.
    """
    G = ensure_groebner(P, G, arity_for_weight(P, 2 * d), 2 * d)
    basis = generators(P, d, G)
    top_y = max((g.arity for g in basis.generators), default=1)
    max_arity = 2 * top_y - 1
    target = _y_presentation(basis, f"{P.name}^[{d}]", [])
    enumerator = TreeEnumerator(basis.generators, target.kind)
    relations: List[OperadPolynomial] = []
    for n in range(2, max_arity + 1):
        _, rels = _kernel_slice(basis, G, enumerator, target, n, 2)
        relations.extend(rels)
    target.relations = relations
    logger.info(f"{P.name}: quadratic Veronese power of degree {d} has {len(relations)} relations")
    return target


# ---------------------------------------------------------------------------
# Minimal relations
# ---------------------------------------------------------------------------

@dataclass
class RelationLayer:
    weight: int
    arity: int
    kernel_dim: int
    generated_dim: int
    new_relations: List[OperadPolynomial] = field(default_factory=list)


def _ideal_closure(relations: List[OperadPolynomial], gens: List[GeneratorSymbol], kind: Kind,
                   arity: int, weight: int, key) -> Echelon:
    """Span of all compositions of the relations with generators landing in (arity, weight)."""
    by_slice: Dict[Tuple[int, int], List[OperadPolynomial]] = {}
    for r in relations:
        by_slice.setdefault((r.arity, r.weight), []).append(r)
    cache: Dict[Tuple[int, int], Echelon] = {}

    def slice_(n: int, w: int) -> Echelon:
        if (n, w) in cache:
            return cache[(n, w)]
        echelon = Echelon(key)
        for r in by_slice.get((n, w), []):
            echelon.add(r.terms)
        for g in gens:
            b, wb = n - g.arity + 1, w - g.weight
            if b < 1 or wb < 1 or (g.arity == 1):
                continue
            lower = slice_(b, wb)
            x = OperadPolynomial.monomial(corolla(g, kind))
            for row in lower.rows_sorted():
                f = OperadPolynomial(row, check=False)
                for i in range(1, g.arity + 1):
                    for sigma in enumerate_unshuffles(i, b, g.arity):
                        if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                            continue
                        echelon.add(substitute(x, i, sigma, f).terms)
                for i in range(1, b + 1):
                    for sigma in enumerate_unshuffles(i, g.arity, b):
                        if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                            continue
                        echelon.add(substitute(f, i, sigma, x).terms)
        cache[(n, w)] = echelon
        return echelon

    return slice_(arity, weight)


def minimal_relations(P: Presentation, d: int, max_weight: int,
                      G: Optional[GroebnerData] = None) -> List[RelationLayer]:
    """
    Minimal relations of the Veronese power, layer by layer in Y-weight.

    For each Y-weight w in 2..max_weight and each arity, the kernel of the
    evaluation of w-vertex trees, the part generated by lower kernels, and
    representatives of the new relations.
    """
    G = ensure_groebner(P, G, arity_for_weight(P, max_weight * d), max_weight * d)
    basis = generators(P, d, G)
    top_y = max((g.arity for g in basis.generators), default=1)
    target = _y_presentation(basis, f"{P.name}^[{d}]", [])
    order = target.order_spec()
    enumerator = TreeEnumerator(basis.generators, target.kind)
    layers: List[RelationLayer] = []
    found: List[OperadPolynomial] = []
    for w in range(2, max_weight + 1):
        for n in range(2, 1 + w * (top_y - 1) + 1):
            trees, rels = _kernel_slice(basis, G, enumerator, target, n, w)
            if not trees:
                continue
            generated = _ideal_closure(found, basis.generators, target.kind, n, w * d, order.key)
            generated_dim = generated.rank
            new = []
            for rel in rels:
                if generated.add(rel.terms) is not None:
                    new.append(rel)
            layers.append(RelationLayer(w, n, len(rels), generated_dim, new))
            if new:
                logger.info(f"{P.name}^[{d}]: {len(new)} new relations in Y-weight {w}, arity {n}")
        found.extend(r for layer in layers if layer.weight == w for r in layer.new_relations)
    return layers


def full_veronese_presentation(P: Presentation, d: int, max_weight: int,
                               G: Optional[GroebnerData] = None) -> Presentation:
    """Presentation on Y with every minimal relation up to the Y-weight bound."""
    G = ensure_groebner(P, G, arity_for_weight(P, max_weight * d), max_weight * d)
    basis = generators(P, d, G)
    layers = minimal_relations(P, d, max_weight, G)
    relations = [r for layer in layers for r in layer.new_relations]
    return _y_presentation(basis, f"{P.name}^[{d}]", relations)


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------

def naive_dims(P: Presentation, d: int, max_arity: int, G: Optional[GroebnerData] = None) -> List[int]:
    """Dimensions of the weight-multiple-of-d part, arities 1..max_arity."""
    G = ensure_groebner(P, G, max_arity)
    out = []
    for n in range(1, max_arity + 1):
        out.append(sum(len(G.normal_monomials(n, w)) for w in G.weights(n) if w % d == 0))
    return out


def suboperad_dims(P: Presentation, d: int, max_arity: int, G: Optional[GroebnerData] = None) -> List[int]:
    """
    Dimensions of the suboperad generated by the weight-d component.

    Closes the span of Y under composition with Y on every slot and
    unshuffle, arity by arity, reducing every composite to normal form.
    """
    G = ensure_groebner(P, G, max_arity)
    basis = generators(P, d, G)
    if any(g.arity == 1 for g in basis.generators):
        raise PresentationError("Generated Veronese powers with unary generators are not supported")
    kind = G.presentation.kind
    ys = [OperadPolynomial.monomial(m) for m in basis.monomials]
    slices: Dict[int, Echelon] = {}
    out = []
    for n in range(1, max_arity + 1):
        echelon = Echelon(G.order.key)
        if n == 1:
            echelon.add({TreeMonomial(1, 1, kind, check=False): 1})
        for y in ys:
            if y.arity == n:
                echelon.add(y.terms)
        for y in ys:
            k = y.arity
            b = n - k + 1
            if b < 2:
                continue
            for row in slices[b].rows_sorted():
                f = OperadPolynomial(row, check=False)
                for i in range(1, k + 1):
                    for sigma in enumerate_unshuffles(i, b, k):
                        if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                            continue
                        echelon.add(G.normal_form(substitute(y, i, sigma, f)).terms)
                for i in range(1, b + 1):
                    for sigma in enumerate_unshuffles(i, k, b):
                        if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                            continue
                        echelon.add(G.normal_form(substitute(f, i, sigma, y)).terms)
        slices[n] = echelon
        out.append(echelon.rank)
    logger.info(f"{P.name}: generated Veronese power of degree {d} has dims {out}")
    return out


def di_dims(P: Presentation, max_arity: int, G: Optional[GroebnerData] = None) -> List[int]:
    """Dimension-level Hadamard product with Perm: n * dim P(n)."""
    G = ensure_groebner(P, G, max_arity)
    return di_from_dims(G.dims(max_arity))


def di_from_dims(dims: List[int]) -> List[int]:
    return [(n + 1) * v for n, v in enumerate(dims)]


# ---------------------------------------------------------------------------
# Membership in the free Veronese power
# ---------------------------------------------------------------------------

def _strip(t: Tree, path: tuple, anchors: set) -> Tree:
    if path in anchors:
        return _min_leaf(t)
    if isinstance(t, int):
        return t
    return Node(t.gen, [_strip(c, path + (k,), anchors) for k, c in enumerate(t.children)])


def free_membership(T: TreeMonomial, d: int) -> bool:
    """
    True iff T lies in the suboperad of the free operad generated by weight d.

    Repeatedly removes the pairwise disjoint right divisors of weight d; T is
    a member iff this peels it down to the unit.
    """
    if d < 1 or T.weight % d:
        return False
    current = T
    while not current.is_unit:
        found = right_divisors_weight(current, d)
        if not found:
            return False
        stripped = _strip(current.root, (), {occ.anchor for occ in found})
        root, arity = standardize(stripped)
        current = TreeMonomial(root, arity, current.kind, check=False)
    return True


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------

@dataclass
class PbwResult:
    quadratic_gb: bool
    monomials_checked: int
    failures: List[TreeMonomial] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.quadratic_gb and not self.failures


def pbw_check(P: Presentation, d: int, G: Optional[GroebnerData] = None) -> PbwResult:
    """
    Quadratic Groebner basis plus free-Veronese membership of every weight-2d
    normal monomial.
    """
    max_arity = arity_for_weight(as_shuffle(P), 2 * d)
    G = ensure_groebner(P, G, max_arity, 2 * d)
    quadratic = is_quadratic_up_to(G, max_arity).quadratic
    checked = 0
    failures = []
    for n in range(1, max_arity + 1):
        for mono in G.normal_monomials(n, 2 * d):
            checked += 1
            if not free_membership(mono, d):
                failures.append(mono)
    logger.info(f"{P.name}: PBW check for d={d}: quadratic={quadratic}, {len(failures)} of {checked} fail")
    return PbwResult(quadratic, checked, failures)


@dataclass
class LeftCombSpan:
    ranks: List[int]
    dims: List[int]

    @property
    def spans(self) -> bool:
        return self.ranks == self.dims


def _generator_sequences(gens: List[GeneratorSymbol], arity: int):
    def rec(current: List[GeneratorSymbol], ar: int):
        if ar == arity:
            yield list(current)
            return
        for g in gens:
            if g.arity == 1:
                continue
            nxt = ar + g.arity - 1 if current else g.arity
            if nxt <= arity:
                current.append(g)
                yield from rec(current, nxt)
                current.pop()

    yield from rec([], 1)


def leftcomb_spanning(P: Presentation, max_arity: int, G: Optional[GroebnerData] = None) -> LeftCombSpan:
    """
    Rank of the orbit-expanded left combs against dim P(n), per arity.

    For symmetric-input presentations every leaf relabelling of every left
    comb is canonicalized with the generator actions; for shuffle and
    nonsymmetric presentations the shuffle left combs are used directly.
    """
    G = ensure_groebner(P, G, max_arity)
    kind = G.presentation.kind
    ranks, dims = [], []
    for n in range(1, max_arity + 1):
        dims.append(len(G.normal_monomials(n)))
        if n == 1:
            ranks.append(1)
            continue
        candidates = set()
        for seq in _generator_sequences(G.presentation.generators, n):
            if P.kind == Kind.SYMMETRIC:
                base = left_comb(seq, Kind.SHUFFLE)
                for perm in permutations(range(1, n + 1)):
                    relabelled = TreeMonomial(_relabel(base.root, lambda k, p=perm: p[k - 1]), n,
                                              Kind.SYMMETRIC, check=False)
                    for mono in canonicalize(OperadPolynomial.monomial(relabelled), P).terms:
                        candidates.add(mono)
            else:
                candidates.update(left_combs(seq, kind))
        echelon = Echelon(G.order.key)
        for mono in sorted(candidates, key=G.order.key):
            reduced = G.normal_form(OperadPolynomial.monomial(mono))
            if reduced:
                echelon.add(reduced.terms)
        ranks.append(echelon.rank)
    logger.info(f"{P.name}: left comb ranks {ranks} against dims {dims}")
    return LeftCombSpan(ranks, dims)
