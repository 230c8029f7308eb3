"""
Rewriting service: truncated Groebner bases, normal forms and dimensions.
"""
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Dict, Iterator, List, Optional, Set, Tuple

from operadkit.core.linalg import Echelon, check_size
from operadkit.core.opoly import OperadPolynomial, Presentation, as_shuffle, reduce_relations, substitute
from operadkit.core.orders import OrderSpec
from operadkit.core.tree import (
    Kind,
    Node,
    Occurrence,
    Path,
    Tree,
    TreeEnumerator,
    TreeMonomial,
    _preorder_paths,
    corolla,
    enumerate_unshuffles,
    occurrence_at,
    occurrence_in,
    replace_occurrence,
)
from operadkit.errors import NotCompletedError, PresentationError, ResourceLimitError
from operadkit.utils.logger import setup_logger

logger = setup_logger("rewrite")


@dataclass(frozen=True)
class Bound:
    """Completion bound: every arity up to ``max_arity``, weights up to ``max_weight`` (None = all)."""
    max_arity: int
    max_weight: Optional[int] = None

    def contains(self, arity: int, weight: int) -> bool:
        if arity > self.max_arity:
            return False
        return self.max_weight is None or weight <= self.max_weight

    def describe(self) -> Dict[str, Optional[int]]:
        return {"max_arity": self.max_arity, "max_weight": self.max_weight}


def apply_context(T: TreeMonomial, occ: Occurrence, g: OperadPolynomial) -> Dict[TreeMonomial, Fraction]:
    """Replace the divisor at ``occ`` by the polynomial g, term by term with signs."""
    out: Dict[TreeMonomial, Fraction] = {}
    for mono, coeff in g.terms.items():
        new, sign = replace_occurrence(T, occ, mono)
        value = out.get(new, 0) + sign * coeff
        if value:
            out[new] = value
        else:
            out.pop(new, None)
    return out


class _NormalEnumerator(TreeEnumerator):
    """Tree enumeration that keeps only trees with no leading-term divisor."""

    def __init__(self, data: "GroebnerData"):
        super().__init__(data.presentation.generators, data.presentation.kind)
        self.data = data

    def accept(self, node: Node) -> bool:
        return not self.data.divisible_at_root(node)


class GroebnerData:
    """
    A reduced Groebner basis complete inside a bound.

    Queries about monomials outside the bound raise NotCompletedError.
    ``vanishes_from_weight`` is set when a whole weight layer of a standard
    graded presentation has no normal monomial inside the bound.
    """

    def __init__(self, presentation: Presentation, order: OrderSpec, bound: Bound):
        self.presentation = presentation
        self.order = order
        self.bound = bound
        self.basis: List[OperadPolynomial] = []
        self.leading: List[TreeMonomial] = []
        self._by_root: Dict[str, List[int]] = {}
        self._nf_cache: Dict[TreeMonomial, Dict[TreeMonomial, Fraction]] = {}
        self._normal: Optional[_NormalEnumerator] = None
        self.vanishes_from_weight: Optional[int] = None
        self.completed = False

    # -- construction --------------------------------------------------------

    def _add(self, g: OperadPolynomial) -> int:
        lead, _ = g.leading(self.order)
        idx = len(self.basis)
        self.basis.append(g)
        self.leading.append(lead)
        self._by_root.setdefault(lead.root.gen.id, []).append(idx)
        self._nf_cache.clear()
        self._normal = None
        return idx

    def _replace(self, idx: int, g: OperadPolynomial) -> None:
        self.basis[idx] = g
        self._nf_cache.clear()

    # -- region --------------------------------------------------------------

    def covers(self, arity: int, weight: int) -> bool:
        return self.bound.contains(arity, weight)

    def _require(self, arity: int, weight: int) -> None:
        if not self.covers(arity, weight):
            raise NotCompletedError(
                f"arity {arity}, weight {weight} is outside the completed region "
                f"(max arity {self.bound.max_arity}, max weight {self.bound.max_weight})"
            )

    def weights(self, arity: int) -> List[int]:
        """Weights of the arity slice that lie inside the bound."""
        gens = self.presentation.generators
        if any(g.arity == 1 for g in gens):
            if self.bound.max_weight is None:
                raise NotCompletedError("Unary generators need a weight bound")
            return list(range(0, self.bound.max_weight + 1))
        top = (arity - 1) * max((g.weight for g in gens), default=1)
        if self.bound.max_weight is not None:
            top = min(top, self.bound.max_weight)
        return list(range(0, top + 1))

    # -- reduction -----------------------------------------------------------

    def find_reducer(self, mono: TreeMonomial) -> Optional[Tuple[int, Occurrence]]:
        """The first leading-term occurrence in ``mono``, scanning vertices in preorder."""
        for path, node in _preorder_paths(mono.root):
            for idx in self._by_root.get(node.gen.id, ()):
                occ = occurrence_at(self.leading[idx], mono, path)
                if occ is not None:
                    return idx, occ
        return None

    def divisible_at_root(self, node: Node) -> bool:
        for idx in self._by_root.get(node.gen.id, ()):
            if occurrence_in(self.leading[idx], node) is not None:
                return True
        return False

    def is_normal(self, mono: TreeMonomial) -> bool:
        return self.find_reducer(mono) is None

    def _rewrite(self, mono: TreeMonomial, reducer: Tuple[int, Occurrence]) -> Dict[TreeMonomial, Fraction]:
        idx, occ = reducer
        image = apply_context(mono, occ, self.basis[idx])
        # mono = C[lead] and C[g] = 0
        coeff = image.pop(mono)
        return {m: -c / coeff for m, c in image.items()}

    def _reduce_terms(self, terms: Dict[TreeMonomial, Fraction], memo: bool) -> Dict[TreeMonomial, Fraction]:
        work = dict(terms)
        result: Dict[TreeMonomial, Fraction] = {}
        key = self.order.key

        def add(target, mono, value):
            nv = target.get(mono, 0) + value
            if nv:
                target[mono] = nv
            else:
                target.pop(mono, None)

        while work:
            mono = max(work, key=key)
            coeff = work.pop(mono)
            cached = self._nf_cache.get(mono) if memo else None
            if cached is not None:
                for m, c in cached.items():
                    add(result, m, coeff * c)
                continue
            reducer = self.find_reducer(mono)
            if reducer is None:
                add(result, mono, coeff)
                continue
            for m, c in self._rewrite(mono, reducer).items():
                add(work, m, coeff * c)
        return result

    def normal_form(self, p: OperadPolynomial) -> OperadPolynomial:
        """
        Reduce p modulo the basis.

        Raises:
            NotCompletedError: when p lies outside the completed region
        """
        if p.is_zero():
            return p
        self._require(p.arity, p.weight)
        memo = self.completed
        if memo and len(p.terms) == 1:
            (mono, coeff), = p.terms.items()
            nf = self._nf_cache.get(mono)
            if nf is None:
                nf = self._reduce_terms({mono: Fraction(1)}, memo)
                self._nf_cache[mono] = nf
            return OperadPolynomial({m: coeff * c for m, c in nf.items()}, check=False)
        return OperadPolynomial(self._reduce_terms(p.terms, memo), check=False)

    # -- normal monomials ----------------------------------------------------

    def normal_monomials(self, arity: int, weight: Optional[int] = None) -> List[TreeMonomial]:
        """Normal monomials of the slice, ascending in the order."""
        weights = [weight] if weight is not None else self.weights(arity)
        for w in weights:
            self._require(arity, w)
        if self._normal is None:
            self._normal = _NormalEnumerator(self)
        out = []
        for w in weights:
            out.extend(TreeMonomial(t, arity, self.presentation.kind, check=False)
                       for t in self._normal.trees(arity, w))
        out.sort(key=self.order.key)
        return out

    def dims(self, max_arity: Optional[int] = None) -> List[int]:
        top = max_arity or self.bound.max_arity
        return [len(self.normal_monomials(n)) for n in range(1, top + 1)]

    def completeness(self) -> List[Dict[str, int]]:
        """Completed (arity, weight) slices, for report provenance."""
        out = []
        for n in range(1, self.bound.max_arity + 1):
            for w in self.weights(n):
                out.append({"arity": n, "weight": w})
        return out

    def export(self) -> List[str]:
        """Basis elements in relation text form, sorted."""
        return sorted(g.to_text(self.order) for g in self.basis)

    def _detect_vanishing(self) -> None:
        P = self.presentation
        if not P.is_standard_graded() or self.bound.max_weight is not None:
            return
        if any(g.arity == 1 for g in P.generators):
            return
        top = P.max_generator_arity()
        w = 1
        while 1 + w * (top - 1) <= self.bound.max_arity:
            if all(not self._normal.trees(n, w) for n in range(1, 2 + w * (top - 1))):
                self.vanishes_from_weight = w
                logger.info(f"{P.name}: every weight {w} monomial reduces to zero")
                return
            w += 1


def normal_form(p: OperadPolynomial, G: GroebnerData) -> OperadPolynomial:
    """Unique reduction of p modulo G (see GroebnerData.normal_form)."""
    return G.normal_form(p)


# ---------------------------------------------------------------------------
# Overlaps
# ---------------------------------------------------------------------------

class _NoOverlap(Exception):
    pass


class _Shape:
    """Unlabelled common multiple of two divisors, with leaf placeholders."""

    def __init__(self):
        self.next_leaf = 0
        self.a_leaves: Dict[int, Set[int]] = {}
        self.b_leaves: Dict[int, Set[int]] = {}

    def leaf(self):
        self.next_leaf += 1
        return ("leaf", self.next_leaf - 1)

    def copy(self, t: Tree, owner: Dict[int, Set[int]]):
        if isinstance(t, int):
            shape = self.leaf()
            owner[t] = {shape[1]}
            return shape
        return ("node", t.gen, [self.copy(c, owner) for c in t.children])

    def merge(self, a: Tree, b: Tree):
        if isinstance(b, int):
            shape = self.copy(a, self.a_leaves)
            self.b_leaves[b] = _leaf_set(shape)
            return shape
        if isinstance(a, int):
            shape = self.copy(b, self.b_leaves)
            self.a_leaves[a] = _leaf_set(shape)
            return shape
        if a.gen != b.gen:
            raise _NoOverlap()
        return ("node", a.gen, [self.merge(ac, bc) for ac, bc in zip(a.children, b.children)])

    def overlay(self, a: Tree, path: Path, b: Tree):
        if not path:
            return self.merge(a, b)
        if isinstance(a, int):
            raise _NoOverlap()
        children = []
        for idx, child in enumerate(a.children):
            if idx == path[0]:
                children.append(self.overlay(child, path[1:], b))
            else:
                children.append(self.copy(child, self.a_leaves))
        return ("node", a.gen, children)


def _leaf_set(shape) -> Set[int]:
    if shape[0] == "leaf":
        return {shape[1]}
    out: Set[int] = set()
    for c in shape[2]:
        out |= _leaf_set(c)
    return out


def _planar_order(shape) -> List[int]:
    if shape[0] == "leaf":
        return [shape[1]]
    out: List[int] = []
    for c in shape[2]:
        out.extend(_planar_order(c))
    return out


def _shape_constraints(shape, out: List[Tuple[Set[int], Set[int]]]) -> None:
    if shape[0] == "leaf":
        return
    sets = [_leaf_set(c) for c in shape[2]]
    for k in range(len(sets) - 1):
        out.append((sets[k], sets[k + 1]))
    for c in shape[2]:
        _shape_constraints(c, out)


def _labelings(size: int, constraints: List[Tuple[Set[int], Set[int]]]) -> Iterator[Dict[int, int]]:
    """
    Labelings of placeholders by 1..size with min(X) < min(Y) for every (X, Y).

    Placeholder p may take the next label only when every X constraining a Y
    containing p already has a labelled member.
    """
    blockers: Dict[int, List[Set[int]]] = {p: [] for p in range(size)}
    for X, Y in constraints:
        for p in Y:
            blockers[p].append(X)
    labels: Dict[int, int] = {}

    def rec(next_label: int):
        if next_label > size:
            yield dict(labels)
            return
        for p in range(size):
            if p in labels:
                continue
            if all(any(q in labels for q in X) for X in blockers[p]):
                labels[p] = next_label
                yield from rec(next_label + 1)
                del labels[p]

    yield from rec(1)


def _build(shape, labels: Dict[int, int]) -> Tree:
    if shape[0] == "leaf":
        return labels[shape[1]]
    return Node(shape[1], [_build(c, labels) for c in shape[2]])


def _anchor_paths(t: Tree) -> List[Path]:
    return [p for p, _ in _preorder_paths(t)]


def overlaps(A: TreeMonomial, B: TreeMonomial, same: bool = False) -> Iterator[Tuple[TreeMonomial, Path, Path]]:
    """
    Small common multiples of A and B sharing at least one vertex.

    Yields (T, anchor of A, anchor of B).  With ``same`` the trivial overlap
    of a divisor with itself is skipped.
    """
    kind = A.kind
    for first, second, swap in ((A, B, False), (B, A, True)):
        for path in _anchor_paths(first.root):
            if not path and (swap or same):
                continue
            if swap and same:
                continue
            shape_builder = _Shape()
            try:
                shape = shape_builder.overlay(first.root, path, second.root)
            except _NoOverlap:
                continue
            size = shape_builder.next_leaf
            if kind == Kind.NONSYMMETRIC:
                planar = _planar_order(shape)
                candidates = [{p: k + 1 for k, p in enumerate(planar)}]
            else:
                constraints: List[Tuple[Set[int], Set[int]]] = []
                _shape_constraints(shape, constraints)
                for owner, mono in ((shape_builder.a_leaves, first), (shape_builder.b_leaves, second)):
                    for k in range(1, mono.arity):
                        constraints.append((owner[k], owner[k + 1]))
                candidates = _labelings(size, constraints)
            for labels in candidates:
                T = TreeMonomial(_build(shape, labels), size, kind, check=False)
                if swap:
                    yield T, path, ()
                else:
                    yield T, (), path


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

def buchberger(P: Presentation, bound: Bound) -> GroebnerData:
    """
    Complete the relations of P to a reduced Groebner basis inside the bound.

    Args:
        P: any presentation (symmetric-input is rewritten in shuffle form)
        bound: completion bound

    Returns:
        GroebnerData complete inside the bound

    Raises:
        PresentationError: when unary generators are used without a weight bound
        ResourceLimitError: when enumeration caps are exceeded
    """
    P = as_shuffle(P).validate()
    if any(g.arity == 1 for g in P.generators) and bound.max_weight is None:
        raise PresentationError("Presentations with unary generators need a weight bound")
    order = P.order_spec()
    data = GroebnerData(P, order, bound)

    heap: list = []
    ticket = count()

    def push(poly: OperadPolynomial):
        if poly.is_zero() or not bound.contains(poly.arity, poly.weight):
            return
        lead, _ = poly.leading(order)
        heapq.heappush(heap, (poly.weight, poly.arity, order.key(lead), next(ticket), poly))

    for rel in reduce_relations(P.relations, order):
        push(rel)

    seen: Set[tuple] = set()
    batch = None
    processed = 0
    while heap:
        weight, arity, _, _, poly = heapq.heappop(heap)
        if batch != (weight, arity):
            if batch is not None:
                logger.info(f"{P.name}: slice weight={batch[0]} arity={batch[1]} done, basis size {len(data.basis)}")
            batch = (weight, arity)
        processed += 1
        reduced = OperadPolynomial(data._reduce_terms(poly.terms, memo=False), check=False)
        if reduced.is_zero():
            continue
        g = reduced.monic(order)
        new_idx = data._add(g)
        for j in range(new_idx + 1):
            pairs = overlaps(data.leading[new_idx], data.leading[j], same=(j == new_idx))
            for T, anchor_new, anchor_j in pairs:
                if not bound.contains(T.arity, T.weight):
                    continue
                signature = (T, new_idx, anchor_new, j, anchor_j)
                if signature in seen:
                    continue
                seen.add(signature)
                occ_new = occurrence_at(data.leading[new_idx], T, anchor_new)
                occ_j = occurrence_at(data.leading[j], T, anchor_j)
                if occ_new is None or occ_j is None:
                    continue
                s_terms = apply_context(T, occ_new, data.basis[new_idx])
                for m, c in apply_context(T, occ_j, data.basis[j]).items():
                    v = s_terms.get(m, 0) - c
                    if v:
                        s_terms[m] = v
                    else:
                        s_terms.pop(m, None)
                push(OperadPolynomial(s_terms, check=False))

    # tails
    for idx, g in enumerate(data.basis):
        lead = data.leading[idx]
        tail = {m: c for m, c in g.terms.items() if m != lead}
        reduced = data._reduce_terms(tail, memo=False)
        reduced[lead] = Fraction(1)
        data._replace(idx, OperadPolynomial(reduced, check=False))

    data.completed = True
    data._normal = _NormalEnumerator(data)
    data._detect_vanishing()
    logger.info(
        f"{P.name}: Groebner basis of {len(data.basis)} elements complete up to "
        f"arity {bound.max_arity}, weight {bound.max_weight} ({processed} candidates)"
    )
    return data


# ---------------------------------------------------------------------------
# Linear-algebra route
# ---------------------------------------------------------------------------

@dataclass
class SpanReduction:
    arity: int
    leading: List[TreeMonomial] = field(default_factory=list)
    normal: List[TreeMonomial] = field(default_factory=list)
    relations: List[OperadPolynomial] = field(default_factory=list)


def _generator_compositions(gen, f: OperadPolynomial, kind: Kind) -> Iterator[OperadPolynomial]:
    x = OperadPolynomial.monomial(corolla(gen, kind))
    k, b = gen.arity, f.arity
    for i in range(1, k + 1):
        for sigma in enumerate_unshuffles(i, b, k):
            if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                continue
            yield substitute(x, i, sigma, f)
    for i in range(1, b + 1):
        for sigma in enumerate_unshuffles(i, k, b):
            if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                continue
            yield substitute(f, i, sigma, x)


def span_reduce(P: Presentation, arity: int, max_weight: Optional[int] = None) -> SpanReduction:
    """
    Row-reduce the full arity slice of the relation ideal.

    The ideal is closed under composing with a generator on either side,
    arity by arity.

    Args:
        P: presentation
        arity: target arity
        max_weight: weight cap (required with unary generators)

    Returns:
        SpanReduction with leading monomials, normal monomials and the reduced relation basis

    Raises:
        ResourceLimitError: when a slice exceeds MAX_MATRIX_ENTRIES
    """
    P = as_shuffle(P).validate()
    order = P.order_spec()
    kind = P.kind
    enumerator = TreeEnumerator(P.generators, kind)
    if enumerator.has_unary and max_weight is None:
        raise PresentationError("span_reduce with unary generators needs a weight bound")

    def weight_ok(w: int) -> bool:
        return max_weight is None or w <= max_weight

    def weights(n: int) -> List[int]:
        if enumerator.has_unary:
            return list(range(0, max_weight + 1))
        return [w for w in enumerator.weight_range(n) if weight_ok(w)]

    slices: Dict[int, Echelon] = {}
    for n in range(1, arity + 1):
        echelon = Echelon(order.key)
        pending = [r for r in P.relations if r and r.arity == n and weight_ok(r.weight)]
        for gen in P.generators:
            b = n - gen.arity + 1
            if gen.arity == 1 or b < 1:
                continue
            for row in slices[b].rows_sorted():
                f = OperadPolynomial(row, check=False)
                if weight_ok(f.weight + gen.weight):
                    pending.extend(_generator_compositions(gen, f, kind))
        columns = sum(len(enumerator.trees(n, w)) for w in weights(n))
        check_size(len(pending), max(columns, 1), f"{P.name} ideal slice at arity {n}")
        queue = []
        for p in pending:
            if echelon.add(p.terms) is not None and enumerator.has_unary:
                queue.append(p)
        while queue:
            f = queue.pop()
            for gen in P.generators:
                if gen.arity != 1 or not weight_ok(f.weight + gen.weight):
                    continue
                for c in _generator_compositions(gen, f, kind):
                    if echelon.add(c.terms) is not None:
                        queue.append(c)
        slices[n] = echelon
        logger.info(f"{P.name}: ideal slice arity {n} has rank {echelon.rank} in {columns} monomials")

    top = slices[arity]
    pivots = set(top.rows)
    monomials = []
    for w in weights(arity):
        monomials.extend(TreeMonomial(t, arity, kind, check=False) for t in enumerator.trees(arity, w))
    monomials.sort(key=order.key)
    return SpanReduction(
        arity=arity,
        leading=sorted(pivots, key=order.key),
        normal=[m for m in monomials if m not in pivots],
        relations=[OperadPolynomial(row, check=False) for row in top.rows_sorted()],
    )


def dims(P: Presentation, max_arity: int, method: str = "auto", max_weight: Optional[int] = None) -> List[int]:
    """
    dim P(n) for 1 <= n <= max_arity.

    Args:
        method: "groebner", "span", or "auto" (Groebner basis, span_reduce on resource errors)
    """
    if method not in ("auto", "groebner", "span"):
        raise ValueError(f"Unknown method {method}")
    if method in ("auto", "groebner"):
        try:
            return buchberger(P, Bound(max_arity, max_weight)).dims(max_arity)
        except ResourceLimitError as e:
            if method == "groebner":
                raise
            logger.warning(f"Groebner route failed ({e}); falling back to span_reduce")
    return [len(span_reduce(P, n, max_weight).normal) for n in range(1, max_arity + 1)]


@dataclass
class QuadraticityCheck:
    quadratic: bool
    offending: List[OperadPolynomial] = field(default_factory=list)

    def offending_weights(self) -> List[int]:
        return sorted({max(m.size for m in g.terms) for g in self.offending})


def is_quadratic_up_to(G: GroebnerData, max_arity: Optional[int] = None) -> QuadraticityCheck:
    """True iff every basis element within the arity bound has two vertices."""
    top = max_arity or G.bound.max_arity
    offending = []
    for g, lead in zip(G.basis, G.leading):
        if g.arity <= top and lead.size != 2:
            offending.append(g)
    return QuadraticityCheck(not offending, offending)
