"""
Truncated cobar complexes built from the composition tables of a finite or
truncated operad.

Chain trees are shuffle trees whose vertices carry basis elements of the
augmentation ideal.  A vertex labelled by an element of weight w sits in
syzygy degree w - 1; its Koszul sign parity is the element's parity plus one
(the desuspension).  The differential expands one vertex into every
two-vertex composition whose product contains its label.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from operadkit.core.linalg import Echelon, check_size, kernel, solve
from operadkit.core.opoly import OperadPolynomial, Presentation, as_shuffle
from operadkit.core.orders import OrderSpec
from operadkit.core.tree import (
    GeneratorSymbol,
    Kind,
    Node,
    Path,
    TreeEnumerator,
    TreeMonomial,
    Unshuffle,
    _preorder_paths,
    compose,
    corolla,
    enumerate_unshuffles,
    inversion_parity,
    left_combs,
    substitute_vertices,
)
from operadkit.errors import NotCompletedError, PresentationError, ResourceLimitError
from operadkit.services.rewrite import GroebnerData
from operadkit.services.veronese import ensure_groebner
from operadkit.utils.config import settings
from operadkit.utils.logger import setup_logger

logger = setup_logger("cobar")

Chain = Dict[TreeMonomial, Fraction]


def _unshuffles(i: int, m: int, n: int, kind: Kind) -> List[Unshuffle]:
    if kind == Kind.NONSYMMETRIC:
        return [Unshuffle.identity(i, m, n)]
    return enumerate_unshuffles(i, m, n)


def _accumulate(out: Chain, mono: TreeMonomial, value: Fraction) -> None:
    total = out.get(mono, 0) + value
    if total:
        out[mono] = total
    else:
        out.pop(mono, None)


# ---------------------------------------------------------------------------
# Composition tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """One term of the coproduct of a label: coeff * (outer o_{i,sigma} inner)."""
    outer: GeneratorSymbol
    inner: GeneratorSymbol
    slot: int
    sigma: Unshuffle
    coeff: Fraction
    outer_parity: int
    tree: TreeMonomial


@dataclass
class TruncatedOperadTables:
    """
    Basis of the operad per arity within the bound and the products of
    augmentation-ideal basis elements.

    ``labels`` name the ideal basis elements c1, c2, ... in arity order;
    ``products[(a, i, sigma values, b)]`` expands a o_{i,sigma} b in labels.
    """
    presentation: Presentation
    bound: int
    groebner: GroebnerData
    basis: Dict[int, List[TreeMonomial]]
    labels: List[GeneratorSymbol]
    label_monomials: Dict[str, TreeMonomial]
    products: Dict[tuple, Dict[str, Fraction]]
    decompositions: Dict[str, List[Decomposition]]
    nilpotent: bool
    _enumerator: Optional[TreeEnumerator] = field(default=None, repr=False)
    _counts: Dict[tuple, int] = field(default_factory=dict, repr=False)
    _bases: Dict[tuple, "ChainBasis"] = field(default_factory=dict, repr=False)
    _order: Optional[OrderSpec] = field(default=None, repr=False)

    @property
    def kind(self) -> Kind:
        return self.presentation.kind

    @property
    def order(self) -> OrderSpec:
        if self._order is None:
            self._order = OrderSpec(self.labels, "pdl")
        return self._order

    def sizes(self) -> List[int]:
        return [len(self.basis.get(n, [])) for n in range(1, self.bound + 1)]

    def label(self, gid: str) -> GeneratorSymbol:
        for g in self.labels:
            if g.id == gid:
                return g
        raise PresentationError(f"Unknown label {gid}")

    def labels_of(self, arity: int, weight: int) -> List[GeneratorSymbol]:
        return [g for g in self.labels if g.arity == arity and g.weight == weight]

    def require(self, arity: int) -> None:
        """
        Raises:
            NotCompletedError: when labels of the arity may lie outside the bound
        """
        if arity > self.bound and not self.nilpotent:
            raise NotCompletedError(
                f"Cobar slice at arity {arity} needs tables beyond the bound {self.bound}"
            )

    def describe(self) -> Dict[str, str]:
        return {g.id: self.label_monomials[g.id].text() for g in self.labels}


def composition_tables(P: Presentation, arity_bound: int, G: Optional[GroebnerData] = None) -> TruncatedOperadTables:
    """
    Materialize the operad presented by P up to ``arity_bound``.

    Raises:
        NotCompletedError: when G does not reach the bound
        PresentationError: when the augmentation ideal has arity-one elements
    """
    G = ensure_groebner(P, G, arity_bound)
    Q = G.presentation
    basis: Dict[int, List[TreeMonomial]] = {}
    labels: List[GeneratorSymbol] = []
    monomials: Dict[str, TreeMonomial] = {}
    by_monomial: Dict[TreeMonomial, str] = {}
    for n in range(1, arity_bound + 1):
        basis[n] = G.normal_monomials(n)
        for mono in basis[n]:
            if mono.weight == 0:
                continue
            if n == 1:
                raise PresentationError(f"{P.name}: cobar tables need an operad without unary operations")
            label = GeneratorSymbol(f"c{len(labels) + 1}", n, (mono.parity + 1) % 2, mono.weight)
            labels.append(label)
            monomials[label.id] = mono
            by_monomial[mono] = label.id

    products: Dict[tuple, Dict[str, Fraction]] = {}
    decompositions: Dict[str, List[Decomposition]] = {g.id: [] for g in labels}
    for a in labels:
        for b in labels:
            n = a.arity + b.arity - 1
            if n > arity_bound:
                continue
            for i in range(1, a.arity + 1):
                for sigma in _unshuffles(i, b.arity, a.arity, Q.kind):
                    mono, sign = compose(monomials[a.id], i, sigma, monomials[b.id])
                    nf = G.normal_form(OperadPolynomial.monomial(mono, sign))
                    expansion = {by_monomial[m]: c for m, c in nf.terms.items()}
                    products[(a.id, i, sigma.values, b.id)] = expansion
                    if not expansion:
                        continue
                    tree, _ = compose(corolla(a, Q.kind), i, sigma, corolla(b, Q.kind))
                    for e, c in expansion.items():
                        decompositions[e].append(
                            Decomposition(a, b, i, sigma, c, monomials[a.id].parity, tree)
                        )

    top_weight = max((g.weight for g in labels), default=0)
    nilpotent = G.vanishes_from_weight is not None and G.vanishes_from_weight <= top_weight + 1
    tables = TruncatedOperadTables(Q, arity_bound, G, basis, labels, monomials, products, decompositions, nilpotent)
    logger.info(
        f"{P.name}: tables to arity {arity_bound} with {len(labels)} labels and "
        f"{len(products)} products{' (nilpotent)' if nilpotent else ''}"
    )
    return tables


def associativity_defects(tables: TruncatedOperadTables) -> int:
    """
    Compare table lookups of (a o b) o c with the direct normal form of the
    three-vertex composite, over every composite within the bound.
    """
    kind = tables.kind
    G = tables.groebner
    op_symbols = {g.id: GeneratorSymbol(g.id, g.arity, tables.label_monomials[g.id].parity, g.weight)
                  for g in tables.labels}
    defects = 0
    for (a, i, values, b), ab in tables.products.items():
        sa, sb = op_symbols[a], op_symbols[b]
        inner = Unshuffle(i, sb.arity, sa.arity, values)
        X, s_ab = compose(corolla(sa, kind), i, inner, corolla(sb, kind))
        for c in tables.labels:
            n = X.arity + c.arity - 1
            if n > tables.bound:
                continue
            sc = op_symbols[c.id]
            for j in range(1, X.arity + 1):
                for tau in _unshuffles(j, c.arity, X.arity, kind):
                    T, s_c = compose(X, j, tau, corolla(sc, kind))
                    tree, s_sub = substitute_vertices(T, lambda g: tables.label_monomials[g.id], kind)
                    direct = G.normal_form(OperadPolynomial.monomial(tree, s_ab * s_c * s_sub))
                    looked: Chain = {}
                    for e, coeff in ab.items():
                        for f, c2 in tables.products[(e, j, tau.values, c.id)].items():
                            _accumulate(looked, tables.label_monomials[f], coeff * c2)
                    if looked != direct.terms:
                        defects += 1
    if defects:
        logger.warning(f"{tables.presentation.name}: {defects} associativity defects in the tables")
    return defects


# ---------------------------------------------------------------------------
# Chain bases
# ---------------------------------------------------------------------------

@dataclass
class ChainBasis:
    arity: int
    degree: int
    monomials: List[TreeMonomial]
    index: Dict[TreeMonomial, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {m: k for k, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)


def degree_of(T: TreeMonomial) -> int:
    """Syzygy degree of a chain tree: sum of (label weight - 1)."""
    return T.weight - T.size


def max_degree(tables: TruncatedOperadTables, arity: int) -> int:
    best = 0
    for g in tables.labels:
        best = max(best, (g.weight - 1) * (arity - 1) // (g.arity - 1))
    return best


def _count_trees(tables: TruncatedOperadTables, arity: int, degree: int) -> int:
    key = ("tree", arity, degree)
    if key not in tables._counts:
        total = 0
        for g in tables.labels:
            if degree >= g.weight - 1 and g.arity <= arity:
                total += _count_forest(tables, g.arity, arity, degree - g.weight + 1)
        tables._counts[key] = total
    return tables._counts[key]


def _count_forest(tables: TruncatedOperadTables, blocks: int, arity: int, degree: int) -> int:
    if blocks == 0:
        return 1 if arity == 0 and degree == 0 else 0
    key = ("forest", blocks, arity, degree)
    if key not in tables._counts:
        total = 0
        for k in range(1, arity - blocks + 2):
            ways = comb(arity - 1, k - 1) if tables.kind == Kind.SHUFFLE else 1
            for d in range(degree + 1):
                first = (1 if k == 1 and d == 0 else 0) + _count_trees(tables, k, d)
                if first:
                    total += ways * first * _count_forest(tables, blocks - 1, arity - k, degree - d)
        tables._counts[key] = total
    return tables._counts[key]


def slice_size(tables: TruncatedOperadTables, arity: int, degree: int) -> int:
    """Number of chain trees of the slice, counted without enumerating them."""
    tables.require(arity)
    return _count_trees(tables, arity, degree)


def chain_basis(tables: TruncatedOperadTables, arity: int, degree: int) -> ChainBasis:
    """
    Chain trees of one arity and syzygy degree, ascending in the label order.

    Raises:
        NotCompletedError: outside the tables' bound
        ResourceLimitError: when the slice exceeds MAX_ENUMERATION
    """
    tables.require(arity)
    key = (arity, degree)
    if key in tables._bases:
        return tables._bases[key]
    expected = _count_trees(tables, arity, degree)
    if expected > settings.MAX_ENUMERATION:
        raise ResourceLimitError(
            f"Chain slice arity {arity}, degree {degree} has {expected} trees, "
            f"exceeding MAX_ENUMERATION={settings.MAX_ENUMERATION}"
        )
    if tables._enumerator is None:
        tables._enumerator = TreeEnumerator(tables.labels, tables.kind)
    monomials = []
    if degree >= 0 and expected:
        for w in range(degree + 1, degree + arity):
            for t in tables._enumerator.trees(arity, w):
                mono = TreeMonomial(t, arity, tables.kind, check=False)
                if degree_of(mono) == degree:
                    monomials.append(mono)
    monomials.sort(key=tables.order.key)
    basis = ChainBasis(arity, degree, monomials)
    tables._bases[key] = basis
    logger.info(f"Chain slice arity {arity}, degree {degree}: {len(basis)} trees")
    return basis


# ---------------------------------------------------------------------------
# Differential
# ---------------------------------------------------------------------------

def _expand_vertex(T: TreeMonomial, target: Path, X: TreeMonomial) -> Tuple[TreeMonomial, int]:
    """Replace the vertex at ``target`` by the two-vertex tree X."""
    index = {p: k for k, (p, _) in enumerate(_preorder_paths(T.root))}
    keys: List[Tuple[int, int]] = []

    def build(t, path):
        if isinstance(t, int):
            return t
        if path != target:
            if t.gen.parity:
                keys.append((index[path], 0))
            return Node(t.gen, [build(c, path + (idx,)) for idx, c in enumerate(t.children)])
        counter = [0]

        def graft(m):
            if isinstance(m, int):
                return build(t.children[m - 1], path + (m - 1,))
            counter[0] += 1
            if m.gen.parity:
                keys.append((index[path], counter[0]))
            return Node(m.gen, [graft(c) for c in m.children])

        return graft(X.root)

    root = build(T.root, ())
    sign = -1 if inversion_parity(keys) else 1
    return TreeMonomial(root, T.arity, T.kind, check=False), sign


def boundary(tables: TruncatedOperadTables, chain: Chain) -> Chain:
    """The cobar differential applied to a chain."""
    out: Chain = {}
    for T, coeff in chain.items():
        odd_before = 0
        for path, node in _preorder_paths(T.root):
            for dec in tables.decompositions.get(node.gen.id, ()):
                new, sort_sign = _expand_vertex(T, path, dec.tree)
                sign = sort_sign
                if dec.outer_parity:
                    sign = -sign
                if odd_before % 2:
                    sign = -sign
                _accumulate(out, new, coeff * dec.coeff * sign)
            if node.gen.parity:
                odd_before += 1
    return out


@dataclass
class DifferentialMatrix:
    """Columns indexed by source trees; entries keyed by target trees."""
    source: ChainBasis
    target: ChainBasis
    columns: List[Chain]

    @property
    def entries(self) -> int:
        return sum(len(c) for c in self.columns)

    def rank(self, key: Callable) -> int:
        echelon = Echelon(key)
        for col in self.columns:
            echelon.add(col)
        return echelon.rank

    def apply(self, vector: Dict[int, Fraction]) -> Chain:
        out: Chain = {}
        for j, c in vector.items():
            for m, v in self.columns[j].items():
                _accumulate(out, m, c * v)
        return out


def differential(tables: TruncatedOperadTables, arity: int, degree: int) -> DifferentialMatrix:
    """
    Matrix of the differential from ``degree`` to ``degree - 1``.

    Raises:
        NotCompletedError: outside the tables' bound
        ResourceLimitError: when the slice exceeds the configured caps
    """
    source = chain_basis(tables, arity, degree)
    target = chain_basis(tables, arity, degree - 1) if degree >= 1 else ChainBasis(arity, degree - 1, [])
    check_size(len(target), len(source), f"cobar differential arity {arity}, degree {degree}")
    columns = [boundary(tables, {T: Fraction(1)}) for T in source.monomials]
    return DifferentialMatrix(source, target, columns)


def compose_chains(tables: TruncatedOperadTables, left: Chain, slot: int, right: Chain,
                   all_unshuffles: bool = True) -> Chain:
    """Sum over unshuffles (or the identity only) of left o_{slot,sigma} right."""
    out: Chain = {}
    for A, a in left.items():
        for B, b in right.items():
            sigmas = (_unshuffles(slot, B.arity, A.arity, tables.kind) if all_unshuffles
                      else [Unshuffle.identity(slot, B.arity, A.arity)])
            for sigma in sigmas:
                mono, sign = compose(A, slot, sigma, B)
                _accumulate(out, mono, a * b * sign)
    return out


@dataclass
class HomologySlice:
    degree: int
    chains: int
    rank_out: int
    homology: int


def homology_ranks(tables: TruncatedOperadTables, arity: int) -> List[HomologySlice]:
    """
    Ranks of homology per syzygy degree at one arity.

    Raises:
        NotCompletedError: outside the tables' bound
    """
    top = max_degree(tables, arity)
    key = tables.order.key
    sizes = [len(chain_basis(tables, arity, d)) for d in range(top + 1)]
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        ranks[d] = differential(tables, arity, d).rank(key)
    out = []
    for d in range(top + 1):
        out.append(HomologySlice(d, sizes[d], ranks[d], sizes[d] - ranks[d] - ranks[d + 1]))
    logger.info(f"Cobar homology at arity {arity}: {[s.homology for s in out]}")
    return out


def euler_characteristic(slices: List[HomologySlice]) -> Tuple[int, int]:
    """Alternating sums of chain sizes and of homology ranks."""
    chains = sum((-1) ** s.degree * s.chains for s in slices)
    homology = sum((-1) ** s.degree * s.homology for s in slices)
    return chains, homology


def square_defects(tables: TruncatedOperadTables, arity: int) -> int:
    """Number of source trees whose double boundary is nonzero."""
    defects = 0
    for d in range(2, max_degree(tables, arity) + 1):
        for T in chain_basis(tables, arity, d).monomials:
            if boundary(tables, boundary(tables, {T: Fraction(1)})):
                defects += 1
    return defects


# ---------------------------------------------------------------------------
# Boundaries
# ---------------------------------------------------------------------------

@dataclass
class BoundarySolution:
    """
    Args:
        solution: coefficients over the source basis, or None when unsolvable
        zero_coefficients: source trees with coefficient zero in the solution
        all_nonzero: whether every source coefficient is nonzero
        attempts: randomized kernel combinations tried
    """
    arity: int
    degree: int
    solution: Optional[Chain]
    zero_coefficients: int = 0
    all_nonzero: bool = False
    attempts: int = 0
    kernel: List[Chain] = field(default_factory=list, repr=False)

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def _zeros(source: ChainBasis, x: Chain) -> int:
    return sum(1 for m in source.monomials if not x.get(m))


def _perturb(base: Chain, kernel_vectors: List[Chain], rng: random.Random) -> Chain:
    out = dict(base)
    for v in kernel_vectors:
        r = rng.randint(1, 9)
        for m, c in v.items():
            _accumulate(out, m, r * c)
    return out


def solve_boundary(tables: TruncatedOperadTables, target: Chain, degree: Optional[int] = None,
                   seed: Optional[int] = None) -> BoundarySolution:
    """
    Find x with boundary(x) = target.

    The reduced-echelon particular solution is returned; when it has zero
    coefficients, random kernel combinations are tried up to
    WITNESS_ATTEMPTS times to find a solution with every coefficient nonzero.
    """
    if not target:
        return BoundarySolution(0, degree or 0, {}, 0, True)
    sample = next(iter(target))
    arity = sample.arity
    degree = degree_of(sample) if degree is None else degree
    D = differential(tables, arity, degree + 1)
    key = tables.order.key
    x = solve(D.columns, target, key)
    if x is None:
        logger.info(f"Target at arity {arity}, degree {degree} is not a boundary")
        return BoundarySolution(arity, degree + 1, None)
    solution = {D.source.monomials[j]: c for j, c in x.items()}
    result = BoundarySolution(arity, degree + 1, solution, _zeros(D.source, solution))
    result.all_nonzero = result.zero_coefficients == 0
    if not result.all_nonzero:
        result.kernel = [{D.source.monomials[j]: c for j, c in v.items()}
                         for v in kernel(D.columns, key)]
        rng = random.Random(settings.SEED if seed is None else seed)
        while result.attempts < settings.WITNESS_ATTEMPTS and result.kernel:
            result.attempts += 1
            candidate = _perturb(solution, result.kernel, rng)
            if not _zeros(D.source, candidate):
                result.solution, result.zero_coefficients, result.all_nonzero = candidate, 0, True
                break
        if not result.all_nonzero:
            logger.info(f"Nonzero-coefficient witness not found after {result.attempts} attempts")
    logger.info(
        f"Boundary solved at arity {arity}: {len(result.solution)} terms, "
        f"{result.zero_coefficients} zero coefficients"
    )
    return result


# ---------------------------------------------------------------------------
# Pure cycles of the mock-commutative cobar complexes
# ---------------------------------------------------------------------------

@dataclass
class PureCycleResult:
    n: int
    arity: int
    labels: Dict[str, str]
    nu_terms: int
    nu_zero_coefficients: int
    nu_all_nonzero: bool
    witness_attempts: int
    is_cycle: bool
    method: str
    non_bounding: bool
    omega: str
    omega_in_alpha: Fraction
    omega_in_beta: Fraction
    image_rank: Optional[int] = None
    augmented_rank: Optional[int] = None
    witness_valid: Optional[bool] = None

    @property
    def certified(self) -> bool:
        return self.is_cycle and self.non_bounding and self.omega_in_beta == 0


def left_comb_sum(tables: TruncatedOperadTables, gen: GeneratorSymbol, count: int) -> Chain:
    """Sum of the shuffle left combs LC_(count) of a label."""
    return {m: Fraction(1) for m in left_combs([gen] * count, tables.kind)}


def omega_tree(tables: TruncatedOperadTables, ell: GeneratorSymbol, xi: GeneratorSymbol, n: int) -> TreeMonomial:
    """ell o_1 xi(id, ..., id, ell, ..., ell), slots filled from the last one."""
    kind = tables.kind
    gamma = corolla(xi, kind)
    for slot in range(xi.arity, n, -1):
        gamma, _ = compose(gamma, slot, Unshuffle.identity(slot, ell.arity, gamma.arity), corolla(ell, kind))
    top = corolla(ell, kind)
    omega, _ = compose(top, 1, Unshuffle.identity(1, gamma.arity, top.arity), gamma)
    return omega


def _decomposition_edges(tables: TruncatedOperadTables) -> set:
    return {(d.outer.id, d.inner.id) for decs in tables.decompositions.values() for d in decs}


def _edges(T: TreeMonomial) -> Iterable[Tuple[str, str]]:
    for node in T.preorder:
        for child in node.children:
            if not isinstance(child, int):
                yield node.gen.id, child.gen.id


def mock_commutative_tables(n: int) -> TruncatedOperadTables:
    """
    Composition tables of tCom^n_1 up to arity 3n - 2, where its weight-3 layer vanishes.

    Raises:
        PresentationError: for n outside {2, 3}
    """
    from operadkit.presets import create_preset

    if n not in (2, 3):
        raise PresentationError("Mock-commutative cobar tables are available for n = 2 and n = 3")
    return composition_tables(as_shuffle(create_preset(f"tcom:{n}:1")), 3 * n - 2)


def left_comb_boundary(tables: TruncatedOperadTables, n: int, seed: Optional[int] = None) -> BoundarySolution:
    """Solve boundary(nu) = n! times the sum of LC_(n+1) in the n-ary label."""
    ell = tables.labels_of(n, 1)[0]
    target = {m: c * factorial(n) for m, c in left_comb_sum(tables, ell, n + 1).items()}
    return solve_boundary(tables, target, 0, seed)


def pure_cycle_report(n: int, seed: Optional[int] = None) -> PureCycleResult:
    """
    Build the degree-one cycle alpha_n - beta_n of the cobar complex of the
    dual of tCom^n_1 at arity n^2 + n - 1 and certify that it does not bound.

    Raises:
        PresentationError: for n outside {2, 3}
    """
    tables = mock_commutative_tables(n)
    ell = tables.labels_of(n, 1)[0]
    xi = tables.labels_of(2 * n - 1, 2)[0]

    solved = left_comb_boundary(tables, n, seed)
    if not solved.solvable:
        raise PresentationError(f"n! times the left combs of LC_({n + 1}) is not a boundary")
    nu = solved.solution

    omega = omega_tree(tables, ell, xi, n)
    gamma = omega.root.children[0]
    gamma_mono = TreeMonomial(gamma, n * n, tables.kind, check=False)
    if not nu.get(gamma_mono) and solved.kernel:
        rng = random.Random((settings.SEED if seed is None else seed) + 1)
        for _ in range(settings.WITNESS_ATTEMPTS):
            candidate = _perturb(nu, solved.kernel, rng)
            if candidate.get(gamma_mono):
                nu = candidate
                break

    ell_chain = {corolla(ell, tables.kind): Fraction(1)}
    alpha = compose_chains(tables, ell_chain, 1, nu)
    beta = compose_chains(tables, nu, 1, ell_chain)
    cycle = dict(alpha)
    for m, c in beta.items():
        _accumulate(cycle, m, -c)
    is_cycle = not boundary(tables, cycle)
    arity = n * n + n - 1

    result = PureCycleResult(
        n=n, arity=arity, labels=tables.describe(), nu_terms=len(nu),
        nu_zero_coefficients=solved.zero_coefficients, nu_all_nonzero=solved.all_nonzero,
        witness_attempts=solved.attempts, is_cycle=is_cycle, method="rank", non_bounding=False,
        omega=omega.text(), omega_in_alpha=alpha.get(omega, Fraction(0)),
        omega_in_beta=beta.get(omega, Fraction(0)),
    )
    rows, cols = slice_size(tables, arity, 1), slice_size(tables, arity, 2)
    try:
        check_size(rows, cols, f"degree-2 slice at arity {arity}")
        D = differential(tables, arity, 2)
        key = tables.order.key
        echelon = Echelon(key)
        for col in D.columns:
            echelon.add(col)
        result.image_rank = echelon.rank
        echelon.add(cycle)
        result.augmented_rank = echelon.rank
        result.non_bounding = bool(cycle) and result.augmented_rank > result.image_rank
    except ResourceLimitError:
        result.method = "witness"
        blocked = _decomposition_edges(tables)
        result.witness_valid = not any(edge in blocked for edge in _edges(omega))
        result.non_bounding = result.witness_valid and bool(cycle.get(omega))
    logger.info(
        f"Pure cycle n={n}: cycle={is_cycle}, non-bounding={result.non_bounding} by {result.method}"
    )
    return result