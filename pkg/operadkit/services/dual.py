"""
Quadratic duals, parity-level operadic suspension and pure homotopy duals.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from operadkit.core.exact import permutation_sign
from operadkit.core.linalg import Echelon, kernel
from operadkit.core.opoly import OperadPolynomial, Presentation, SymmetricAction, as_shuffle
from operadkit.core.tree import (
    GeneratorSymbol,
    Kind,
    Node,
    TreeMonomial,
    compose,
    corolla,
    enumerate_unshuffles,
    substitute_vertices,
)
from operadkit.errors import NonQuadraticError, PresentationError
from operadkit.services.rewrite import GroebnerData
from operadkit.services.veronese import arity_for_weight, ensure_groebner, evaluate, generators, quadratic_veronese
from operadkit.utils.logger import setup_logger

logger = setup_logger("dual")

PAIRING = "eps(T) = (-1)^((i-1)(m-1)) * sgn(planar leaves of T) * (-1)^(p_outer * p_inner)"


@dataclass
class DualPresentation:
    """A quadratic dual together with the pairing convention that produced it."""
    presentation: Presentation
    source: str
    pairing: str = PAIRING


@dataclass(frozen=True)
class QuadraticMonomial:
    """A two-vertex tree with its decomposition outer o_{i,sigma} inner."""
    monomial: TreeMonomial
    outer: GeneratorSymbol
    inner: GeneratorSymbol
    slot: int

    @property
    def pairing_sign(self) -> int:
        sign = permutation_sign(tuple(self.monomial.planar_leaves()))
        if (self.slot - 1) * (self.inner.arity - 1) % 2:
            sign = -sign
        if self.outer.parity and self.inner.parity:
            sign = -sign
        return sign


def quadratic_monomials(gens: List[GeneratorSymbol], arity: int, kind: Kind) -> List[QuadraticMonomial]:
    """Every two-vertex monomial of the given arity, with its unique decomposition."""
    out = []
    for outer in gens:
        for inner in gens:
            if outer.arity + inner.arity - 1 != arity:
                continue
            top, bottom = corolla(outer, kind), corolla(inner, kind)
            for i in range(1, outer.arity + 1):
                for sigma in enumerate_unshuffles(i, inner.arity, outer.arity):
                    if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                        continue
                    mono, _ = compose(top, i, sigma, bottom)
                    out.append(QuadraticMonomial(mono, outer, inner, i))
    return out


def quadratic_arities(gens: List[GeneratorSymbol]) -> List[int]:
    return sorted({a.arity + b.arity - 1 for a in gens for b in gens})


def dual_generator(gen: GeneratorSymbol) -> GeneratorSymbol:
    """``<id>_dual`` with parity shifted by the arity."""
    return GeneratorSymbol(f"{gen.id}_dual", gen.arity, (gen.arity + gen.parity) % 2, gen.weight)


def _dual_map(gens: List[GeneratorSymbol]) -> Dict[GeneratorSymbol, GeneratorSymbol]:
    return {g: dual_generator(g) for g in gens}


def _dual_monomial(q: QuadraticMonomial, duals: Dict[GeneratorSymbol, GeneratorSymbol]) -> TreeMonomial:
    mono, _ = substitute_vertices(q.monomial, lambda g: corolla(duals[g], q.monomial.kind))
    return mono


def _require_quadratic(P: Presentation) -> None:
    for rel in P.relations:
        for mono in rel.terms:
            if mono.size != 2:
                raise NonQuadraticError(f"{P.name}: relation term {mono} has {mono.size} vertices")


def quadratic_dual(P: Presentation) -> DualPresentation:
    """
    Annihilator of the relation space under the signed monomial pairing.

    Raises:
        NonQuadraticError: when a relation has a term with other than two vertices
    """
    Q = as_shuffle(P)
    _require_quadratic(Q)
    duals = _dual_map(Q.generators)
    relations: List[OperadPolynomial] = []
    for n in quadratic_arities(Q.generators):
        basis = quadratic_monomials(Q.generators, n, Q.kind)
        rels = [r for r in Q.relations if r and r.arity == n]
        images = []
        for q in basis:
            images.append({r_idx: r.coefficient(q.monomial) * q.pairing_sign
                           for r_idx, r in enumerate(rels) if r.coefficient(q.monomial)})
        for vector in kernel(images, lambda idx: idx):
            relations.append(OperadPolynomial(
                {_dual_monomial(basis[j], duals): c for j, c in vector.items()}, check=False
            ))
    target = Presentation(f"{P.name}^!", Q.kind, [duals[g] for g in Q.generators], relations, {},
                          Q.order, Q.generator_order, {"dual_of": P.name, "pairing": PAIRING})
    logger.info(f"{P.name}: quadratic dual with {len(relations)} relations")
    return DualPresentation(target, P.name)


# ---------------------------------------------------------------------------
# Suspension
# ---------------------------------------------------------------------------

def _is_sign_character(action: Optional[SymmetricAction]) -> bool:
    return action is not None and all(t == action.generator and s == -1 for _, t, s in action.images)


def suspend_parity(P: Presentation) -> Presentation:
    """
    Operadic suspension at the level of parities.

    Parity p of an arity-n generator becomes p + n - 1, every action sign
    is multiplied by the sign of the transposition, and a relation term
    (g o_i h).pi is multiplied by sgn(pi) (-1)^{(i-1) d}, where d is the
    parity of the side whose generators carry the sign character.

    Raises:
        PresentationError: for non-symmetric-input, mixed-arity or non-quadratic input
    """
    if P.kind != Kind.SYMMETRIC:
        raise PresentationError("Suspension works on symmetric-input presentations")
    arities = {g.arity for g in P.generators}
    if len(arities) != 1:
        raise PresentationError("Suspension needs generators of a single arity")
    n = arities.pop()
    new_gens = {g.id: GeneratorSymbol(g.id, g.arity, (g.parity + n - 1) % 2, g.weight) for g in P.generators}
    actions = {
        gid: SymmetricAction(gid, a.arity, tuple((j, t, -s) for j, t, s in a.images))
        for gid, a in P.actions.items()
    }
    source_anti = all(_is_sign_character(P.actions.get(g.id)) for g in P.generators)
    relations = []
    for rel in P.relations:
        terms: Dict[TreeMonomial, Fraction] = {}
        for mono, coeff in rel.terms.items():
            if mono.size != 2:
                raise PresentationError(f"Suspension supports two-vertex relation terms, got {mono}")
            root = mono.root
            slot = next(k for k, c in enumerate(root.children) if not isinstance(c, int)) + 1
            inner = root.children[slot - 1]
            outer_gen, inner_gen = new_gens[root.gen.id], new_gens[inner.gen.id]
            anti_parity = (root.gen.parity if source_anti else outer_gen.parity)
            sign = permutation_sign(tuple(mono.planar_leaves()))
            if (slot - 1) * anti_parity % 2:
                sign = -sign
            new_root = Node(outer_gen, [
                Node(inner_gen, inner.children) if k == slot - 1 else c for k, c in enumerate(root.children)
            ])
            terms[TreeMonomial(new_root, mono.arity, Kind.SYMMETRIC, check=False)] = sign * coeff
        relations.append(OperadPolynomial(terms))
    name = P.name[:-len("~")] if P.name.endswith("~") else f"{P.name}~"
    return Presentation(name, Kind.SYMMETRIC, [new_gens[g.id] for g in P.generators], relations, actions,
                        P.order, P.generator_order, dict(P.metadata))


# ---------------------------------------------------------------------------
# Pure homotopy duals
# ---------------------------------------------------------------------------

def pure_homotopy(P: Presentation, k: int, G: Optional[GroebnerData] = None) -> Presentation:
    """
    Dual of the weight-k quadratic Veronese power, computed directly.

    The dual relations are the row space of the evaluation of two-vertex
    trees in Y into P, twisted by the pairing sign; they coincide with
    quadratic_dual(quadratic_veronese(P, k)).
    """
    G = ensure_groebner(P, G, arity_for_weight(P, 2 * k), 2 * k)
    basis = generators(P, k, G)
    duals = _dual_map(basis.generators)
    kind = G.presentation.kind
    relations: List[OperadPolynomial] = []
    for n in quadratic_arities(basis.generators):
        monomials = quadratic_monomials(basis.generators, n, kind)
        columns: Dict[TreeMonomial, Dict[int, Fraction]] = {}
        for j, q in enumerate(monomials):
            for m, c in evaluate(OperadPolynomial.monomial(q.monomial), basis, G).terms.items():
                columns.setdefault(m, {})[j] = c * q.pairing_sign
        echelon = Echelon(lambda j: j)
        for m in sorted(columns, key=G.order.key, reverse=True):
            echelon.add(columns[m])
        for row in echelon.rows_sorted():
            relations.append(OperadPolynomial(
                {_dual_monomial(monomials[j], duals): c for j, c in row.items()}, check=False
            ))
    metadata = {"dual_of": f"{P.name}^[{k}]", "pairing": PAIRING}
    metadata.update({f"definition.{g}": t for g, t in basis.definitions().items()})
    logger.info(f"{P.name}: pure homotopy dual of weight {k} with {len(relations)} relations")
    return Presentation(f"{P.name}_pure{k}", kind, [duals[g] for g in basis.generators], relations, {},
                        G.presentation.order, G.presentation.generator_order, metadata)


def veronese_dual(P: Presentation, k: int, G: Optional[GroebnerData] = None) -> DualPresentation:
    """quadratic_dual(quadratic_veronese(P, k))."""
    return quadratic_dual(quadratic_veronese(P, k, G))


def same_relation_space(A: Presentation, B: Presentation) -> bool:
    """Equal relation spans, arity by arity, over the same generators."""
    if [g.id for g in A.generators] != [g.id for g in B.generators]:
        return False
    order = A.order_spec()
    for n in sorted(set(A.relation_arities()) | set(B.relation_arities())):
        ea, eb = Echelon(order.key), Echelon(order.key)
        for r in A.relations:
            if r and r.arity == n:
                ea.add(r.terms)
        for r in B.relations:
            if r and r.arity == n:
                eb.add(r.terms)
        if ea.rows != eb.rows:
            return False
    return True
