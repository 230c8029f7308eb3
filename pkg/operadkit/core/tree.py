"""
Tree monomials of free shuffle and nonsymmetric operads.

A monomial is a rooted tree whose internal vertices carry generators and
whose leaves carry labels 1..arity.  Leaves are plain ints, internal vertices
are ``Node`` objects.  Symmetric-kind monomials drop the shuffle condition and
are only used to write relations of symmetric operads before they are
rewritten into shuffle form.

Sign convention: the orientation of a monomial is the list of its odd
vertices in preorder (root first, leftmost child first).  Every construction
that builds a monomial out of smaller pieces reports the parity of the
permutation sorting the pieces' concatenated orientations into the
orientation of the result.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from operadkit.errors import CompositionError, ParseError, ResourceLimitError, TreeError
from operadkit.utils.config import settings
from operadkit.utils.logger import setup_logger

logger = setup_logger("tree")

Path = Tuple[int, ...]


class Kind(str, Enum):
    SHUFFLE = "shuffle"
    NONSYMMETRIC = "nonsymmetric"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class GeneratorSymbol:
    """A generator: id, arity, parity of its homological degree, weight."""
    id: str
    arity: int
    parity: int = 0
    weight: int = 1

    def __post_init__(self):
        if self.arity < 1:
            raise TreeError(f"Generator {self.id} must have arity >= 1")
        if self.weight < 1:
            raise TreeError(f"Generator {self.id} must have weight >= 1")
        if self.parity not in (0, 1):
            raise TreeError(f"Generator {self.id} parity must be 0 or 1")


class Node:
    """Internal vertex of a tree monomial."""

    __slots__ = ("gen", "children", "min_leaf", "_hash")

    def __init__(self, gen: GeneratorSymbol, children: Sequence[Union["Node", int]]):
        children = tuple(children)
        if len(children) != gen.arity:
            raise TreeError(
                f"Generator {gen.id} has arity {gen.arity} but got {len(children)} children"
            )
        self.gen = gen
        self.children = children
        self.min_leaf = min(_min_leaf(c) for c in children)
        self._hash = hash((gen.id, children))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Node):
            return False
        return self._hash == other._hash and self.gen == other.gen and self.children == other.children

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return _to_text(self)


Tree = Union[Node, int]


def _min_leaf(t: Tree) -> int:
    return t if isinstance(t, int) else t.min_leaf


def _to_text(t: Tree) -> str:
    if isinstance(t, int):
        return str(t)
    return f"{t.gen.id}({','.join(_to_text(c) for c in t.children)})"


def _preorder(t: Tree) -> List[Node]:
    out: List[Node] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, int):
            continue
        out.append(node)
        stack.extend(reversed(node.children))
    return out


def _preorder_paths(t: Tree, path: Path = ()) -> List[Tuple[Path, Node]]:
    out: List[Tuple[Path, Node]] = []
    stack = [(t, path)]
    while stack:
        node, p = stack.pop()
        if isinstance(node, int):
            continue
        out.append((p, node))
        for idx in range(len(node.children) - 1, -1, -1):
            stack.append((node.children[idx], p + (idx,)))
    return out


def _planar_leaves(t: Tree) -> List[int]:
    if isinstance(t, int):
        return [t]
    out: List[int] = []
    for c in t.children:
        out.extend(_planar_leaves(c))
    return out


def _relabel(t: Tree, mapping: Callable[[int], int]) -> Tree:
    if isinstance(t, int):
        return mapping(t)
    return Node(t.gen, [_relabel(c, mapping) for c in t.children])


def _subtree(t: Tree, path: Path) -> Tree:
    for idx in path:
        t = t.children[idx]
    return t


def inversion_parity(keys: Sequence) -> int:
    """Parity (0 or 1) of the number of inversions of a sequence of comparable keys."""
    parity = 0
    for a in range(len(keys)):
        ka = keys[a]
        for b in range(a + 1, len(keys)):
            if ka > keys[b]:
                parity ^= 1
    return parity


class TreeMonomial:
    """
    Leaf-labelled rooted tree with generator-labelled vertices.

    Args:
        root: a Node, or the int 1 for the unit
        arity: number of leaves
        kind: shuffle, nonsymmetric or symmetric (no ordering condition)
        check: validate labels and the shuffle condition

    Raises:
        TreeError: if the labels or the ordering condition are violated
    """

    __slots__ = ("root", "arity", "kind", "_hash", "_preorder", "_weight", "_parity", "_text")

    def __init__(self, root: Tree, arity: int, kind: Kind = Kind.SHUFFLE, check: bool = True):
        self.root = root
        self.arity = arity
        self.kind = Kind(kind)
        self._hash = hash((self.kind.value, root))
        self._preorder = None
        self._weight = None
        self._parity = None
        self._text = None
        if check:
            self._validate()

    def _validate(self):
        leaves = _planar_leaves(self.root)
        if sorted(leaves) != list(range(1, self.arity + 1)):
            raise TreeError(f"Leaf labels of {_to_text(self.root)} are not 1..{self.arity}")
        if self.kind == Kind.NONSYMMETRIC and leaves != list(range(1, self.arity + 1)):
            raise TreeError(f"Nonsymmetric monomial {_to_text(self.root)} must read leaves in order")
        if self.kind == Kind.SHUFFLE:
            for node in _preorder(self.root):
                mins = [_min_leaf(c) for c in node.children]
                if any(mins[k] >= mins[k + 1] for k in range(len(mins) - 1)):
                    raise TreeError(f"Shuffle condition violated at {_to_text(node)}")

    @property
    def preorder(self) -> List[Node]:
        if self._preorder is None:
            self._preorder = _preorder(self.root)
        return self._preorder

    @property
    def weight(self) -> int:
        if self._weight is None:
            self._weight = sum(node.gen.weight for node in self.preorder)
        return self._weight

    @property
    def size(self) -> int:
        """Number of internal vertices."""
        return len(self.preorder)

    @property
    def parity(self) -> int:
        if self._parity is None:
            self._parity = sum(node.gen.parity for node in self.preorder) % 2
        return self._parity

    @property
    def is_unit(self) -> bool:
        return isinstance(self.root, int)

    def generators(self) -> List[GeneratorSymbol]:
        return [node.gen for node in self.preorder]

    def planar_leaves(self) -> List[int]:
        return _planar_leaves(self.root)

    def text(self) -> str:
        if self._text is None:
            self._text = _to_text(self.root)
        return self._text

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, TreeMonomial):
            return NotImplemented
        return self._hash == other._hash and self.kind == other.kind and self.root == other.root

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.text()

    def __str__(self):
        return self.text()


def unit(kind: Kind = Kind.SHUFFLE) -> TreeMonomial:
    """The arity-1, weight-0 unit."""
    return TreeMonomial(1, 1, kind)


def corolla(gen: GeneratorSymbol, kind: Kind = Kind.SHUFFLE) -> TreeMonomial:
    return TreeMonomial(Node(gen, range(1, gen.arity + 1)), gen.arity, kind)


def relabel(t: TreeMonomial, mapping: Dict[int, int], kind: Optional[Kind] = None) -> TreeMonomial:
    """Relabel leaves (used for symmetric-kind monomials and standardization)."""
    return TreeMonomial(_relabel(t.root, mapping.__getitem__), t.arity, kind or t.kind)


def standardize(t: Tree) -> Tuple[Tree, int]:
    """Relabel the leaves of a subtree to 1..k preserving their relative order."""
    labels = sorted(_planar_leaves(t))
    rank = {label: idx + 1 for idx, label in enumerate(labels)}
    return _relabel(t, rank.__getitem__), len(labels)


# ---------------------------------------------------------------------------
# Unshuffles and infinitesimal compositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Unshuffle:
    """
    Data of an infinitesimal shuffle composition at slot ``i``.

    ``values`` lists sigma(i+1), ..., sigma(n+m-1): the first m-1 values
    label inner leaves 2..m, the rest label outer leaves i+1..n.
    """
    i: int
    m: int
    n: int
    values: Tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return self.values == tuple(range(self.i + 1, self.n + self.m))

    @classmethod
    def identity(cls, i: int, m: int, n: int) -> "Unshuffle":
        return cls(i, m, n, tuple(range(i + 1, n + m)))


def enumerate_unshuffles(i: int, m: int, n: int) -> List[Unshuffle]:
    """
    All (m-1, n-i)-unshuffles for composing an arity-m tree into slot i of an
    arity-n tree, in lexicographic order of the inner block.

    Raises:
        CompositionError: if the slot is out of range
    """
    if m < 1 or n < 1 or not 1 <= i <= n:
        raise CompositionError(f"Slot {i} out of range for arities outer={n}, inner={m}")
    pool = list(range(i + 1, n + m))
    result = []
    for inner in combinations(pool, m - 1):
        chosen = set(inner)
        rest = tuple(v for v in pool if v not in chosen)
        result.append(Unshuffle(i, m, n, tuple(inner) + rest))
    assert len(result) == comb(n - i + m - 1, m - 1)
    return result


def compose(outer: TreeMonomial, i: int, sigma: Unshuffle, inner: TreeMonomial) -> Tuple[TreeMonomial, int]:
    """
    Infinitesimal shuffle composition ``outer o_{i,sigma} inner``.

    Returns:
        (result monomial, Koszul sign +1/-1).  The sign compares the
        orientation "outer's odd vertices, then inner's" with the result.

    Raises:
        CompositionError: on kind mismatch, bad arities or a non-identity
            unshuffle for nonsymmetric monomials
    """
    if outer.kind != inner.kind:
        raise CompositionError(f"Cannot compose {outer.kind.value} with {inner.kind.value} monomials")
    if outer.kind == Kind.SYMMETRIC:
        raise CompositionError("Symmetric-kind monomials are not composed; rewrite them first")
    n, m = outer.arity, inner.arity
    if sigma.i != i or sigma.n != n or sigma.m != m:
        raise CompositionError(f"Unshuffle {sigma} does not match slot {i}, arities {n}, {m}")
    if not 1 <= i <= n:
        raise CompositionError(f"Slot {i} out of range for arity {n}")
    if outer.kind == Kind.NONSYMMETRIC and not sigma.is_identity:
        raise CompositionError("Nonsymmetric compositions only accept the identity unshuffle")

    values = sigma.values
    inner_labels = {1: i}
    for k in range(2, m + 1):
        inner_labels[k] = values[k - 2]
    new_inner = _relabel(inner.root, inner_labels.__getitem__)

    def outer_label(j: int) -> int:
        if j < i:
            return j
        return values[m - 1 + (j - i - 1)]

    odd_after = 0
    seen_slot = False

    def build(t: Tree) -> Tree:
        nonlocal odd_after, seen_slot
        if isinstance(t, int):
            if t == i:
                seen_slot = True
                return new_inner
            return outer_label(t)
        if seen_slot and t.gen.parity:
            odd_after += 1
        return Node(t.gen, [build(c) for c in t.children])

    root = build(outer.root)
    sign = -1 if (inner.parity and odd_after % 2) else 1
    return TreeMonomial(root, n + m - 1, outer.kind, check=False), sign


def left_comb(labels: Sequence[GeneratorSymbol], kind: Kind = Kind.SHUFFLE) -> TreeMonomial:
    """
    Left comb of the given generators, listed from the bottom vertex up.

    Each new generator receives the previous comb in its first slot through
    the identity unshuffle.
    """
    if not labels:
        raise TreeError("A left comb needs at least one generator")
    comb_ = corolla(labels[0], kind)
    for gen in labels[1:]:
        top = corolla(gen, kind)
        comb_, _ = compose(top, 1, Unshuffle.identity(1, comb_.arity, top.arity), comb_)
    return comb_


def left_combs(labels: Sequence[GeneratorSymbol], kind: Kind = Kind.SHUFFLE) -> List[TreeMonomial]:
    """All shuffle left combs: every unshuffle at every step."""
    if not labels:
        raise TreeError("A left comb needs at least one generator")
    combs = [corolla(labels[0], kind)]
    for gen in labels[1:]:
        top = corolla(gen, kind)
        nxt = []
        for c in combs:
            for sigma in enumerate_unshuffles(1, c.arity, top.arity):
                if kind == Kind.NONSYMMETRIC and not sigma.is_identity:
                    continue
                nxt.append(compose(top, 1, sigma, c)[0])
        combs = nxt
    return combs


# ---------------------------------------------------------------------------
# Divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Occurrence:
    """
    An embedding of a divisor into an ambient monomial.

    ``nodes`` are the matched vertex paths in the divisor's preorder;
    ``hanging[k-1]`` is the ambient subtree (or leaf) plugged into the
    divisor's leaf k, found at ``hanging_paths[k-1]``.
    """
    anchor: Path
    nodes: Tuple[Path, ...]
    hanging: Tuple[Tree, ...]
    hanging_paths: Tuple[Path, ...]
    right: bool


def _match(d: Tree, t: Tree, path: Path, nodes: List[Path], hanging: Dict[int, Tuple[Tree, Path]]) -> bool:
    if isinstance(d, int):
        hanging[d] = (t, path)
        return True
    if isinstance(t, int) or t.gen != d.gen:
        return False
    nodes.append(path)
    for idx, (dc, tc) in enumerate(zip(d.children, t.children)):
        if not _match(dc, tc, path + (idx,), nodes, hanging):
            return False
    return True


def occurrence_at(D: TreeMonomial, T: TreeMonomial, anchor: Path) -> Optional[Occurrence]:
    """The occurrence of D anchored at the given vertex of T, if any."""
    if D.is_unit:
        return None
    return occurrence_in(D, _subtree(T.root, anchor), anchor)


def occurrence_in(D: TreeMonomial, sub: Tree, anchor: Path = ()) -> Optional[Occurrence]:
    """Match D at the root of a bare subtree whose path in the ambient tree is ``anchor``."""
    nodes: List[Path] = []
    hanging: Dict[int, Tuple[Tree, Path]] = {}
    if not _match(D.root, sub, anchor, nodes, hanging):
        return None
    subtrees = tuple(hanging[k][0] for k in range(1, D.arity + 1))
    mins = [_min_leaf(s) for s in subtrees]
    if any(mins[k] >= mins[k + 1] for k in range(len(mins) - 1)):
        return None
    return Occurrence(
        anchor=anchor,
        nodes=tuple(nodes),
        hanging=subtrees,
        hanging_paths=tuple(hanging[k][1] for k in range(1, D.arity + 1)),
        right=all(isinstance(s, int) for s in subtrees),
    )


def divisor_occurrences(D: TreeMonomial, T: TreeMonomial) -> List[Occurrence]:
    """All occurrences of D in T, in preorder of their anchors."""
    if D.kind != T.kind:
        raise TreeError("Divisor and ambient monomial must have the same kind")
    if D.is_unit or D.size > T.size:
        return []
    found = []
    root_gen = D.root.gen
    for path, node in _preorder_paths(T.root):
        if node.gen != root_gen:
            continue
        occ = occurrence_at(D, T, path)
        if occ is not None:
            found.append(occ)
    return found


def right_divisors_weight(T: TreeMonomial, d: int) -> List[Occurrence]:
    """
    The set R_d(T): occurrences of right divisors of weight d.

    A right divisor has every leaf mapped to a leaf of T, so it is the full
    subtree below its anchor; these occurrences are pairwise disjoint.
    """
    if d < 1:
        raise TreeError("Weight of a right divisor must be >= 1")
    found = []
    for path, node in _preorder_paths(T.root):
        sub_weight = sum(v.gen.weight for v in _preorder(node))
        if sub_weight != d:
            continue
        sub_paths = [path + p for p, _ in _preorder_paths(node)]
        leaves = _planar_leaves(node)
        leaf_paths = _leaf_paths(node, path)
        order = sorted(range(len(leaves)), key=lambda k: leaves[k])
        found.append(Occurrence(
            anchor=path,
            nodes=tuple(sub_paths),
            hanging=tuple(leaves[k] for k in order),
            hanging_paths=tuple(leaf_paths[k] for k in order),
            right=True,
        ))
    return found


def _leaf_paths(t: Tree, path: Path) -> List[Path]:
    if isinstance(t, int):
        return [path]
    out: List[Path] = []
    for idx, c in enumerate(t.children):
        out.extend(_leaf_paths(c, path + (idx,)))
    return out


def divisor_at(T: TreeMonomial, occ: Occurrence) -> TreeMonomial:
    """The standardized divisor monomial of an occurrence."""
    hanging_rank = {p: k + 1 for k, p in enumerate(occ.hanging_paths)}

    def build(t: Tree, path: Path) -> Tree:
        if path in hanging_rank:
            return hanging_rank[path]
        return Node(t.gen, [build(c, path + (idx,)) for idx, c in enumerate(t.children)])

    return TreeMonomial(build(_subtree(T.root, occ.anchor), occ.anchor), len(occ.hanging), T.kind, check=False)


def replace_occurrence(T: TreeMonomial, occ: Occurrence, M: TreeMonomial) -> Tuple[TreeMonomial, int]:
    """
    Replace the divisor at ``occ`` by the monomial M (same arity as the divisor).

    The sign compares the orientation of T, with the divisor's vertices
    replaced in place by M's odd vertices, against the result.  Replacing a
    divisor by itself gives sign +1.
    """
    if M.arity != len(occ.hanging):
        raise CompositionError(f"Replacement of arity {M.arity} for a divisor of arity {len(occ.hanging)}")
    index = {p: k for k, (p, _) in enumerate(_preorder_paths(T.root))}
    anchor_idx = index[occ.anchor]
    keys: List[Tuple[int, int]] = []

    def build_t(t: Tree, path: Path) -> Tree:
        if isinstance(t, int):
            return t
        if path == occ.anchor:
            counter = [0]
            return build_m(M.root, counter)
        if t.gen.parity:
            keys.append((index[path], 0))
        return Node(t.gen, [build_t(c, path + (idx,)) for idx, c in enumerate(t.children)])

    def build_m(m: Tree, counter: List[int]) -> Tree:
        if isinstance(m, int):
            return build_t(occ.hanging[m - 1], occ.hanging_paths[m - 1])
        counter[0] += 1
        if m.gen.parity:
            keys.append((anchor_idx, counter[0]))
        return Node(m.gen, [build_m(c, counter) for c in m.children])

    root = build_t(T.root, ())
    sign = -1 if inversion_parity(keys) else 1
    return TreeMonomial(root, T.arity, T.kind, check=False), sign




def substitute_vertices(
    T: TreeMonomial,
    images: Callable[[GeneratorSymbol], Optional[TreeMonomial]],
    kind: Optional[Kind] = None,
) -> Tuple[TreeMonomial, int]:
    """
    Replace every vertex whose generator has an image by that image, grafting
    the vertex's children into the image's leaves.

    The sign compares "T's vertices in preorder, each replaced by its image's
    odd vertices" against the orientation of the result.
    """
    index = {p: k for k, (p, _) in enumerate(_preorder_paths(T.root))}
    keys: List[Tuple[int, int]] = []

    def build(t: Tree, path: Path) -> Tree:
        if isinstance(t, int):
            return t
        image = images(t.gen)
        if image is None:
            if t.gen.parity:
                keys.append((index[path], 0))
            return Node(t.gen, [build(c, path + (idx,)) for idx, c in enumerate(t.children)])
        if image.arity != t.gen.arity:
            raise CompositionError(f"Image of {t.gen.id} has arity {image.arity}, expected {t.gen.arity}")
        counter = [0]

        def graft(m: Tree) -> Tree:
            if isinstance(m, int):
                return build(t.children[m - 1], path + (m - 1,))
            counter[0] += 1
            if m.gen.parity:
                keys.append((index[path], counter[0]))
            return Node(m.gen, [graft(c) for c in m.children])

        return graft(image.root)

    root = build(T.root, ())
    sign = -1 if inversion_parity(keys) else 1
    return TreeMonomial(root, T.arity, kind or T.kind, check=False), sign


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _set_partitions(n: int, blocks: int):
    """Set partitions of 1..n into exactly ``blocks`` blocks, ordered by minima."""
    current: List[List[int]] = []

    def rec(i: int):
        if i > n:
            if len(current) == blocks:
                yield tuple(tuple(b) for b in current)
            return
        if len(current) + (n - i + 1) < blocks:
            return
        for b in current:
            b.append(i)
            yield from rec(i + 1)
            b.pop()
        if len(current) < blocks:
            current.append([i])
            yield from rec(i + 1)
            current.pop()

    yield from rec(1)


def _intervals(n: int, blocks: int):
    """Decompositions of 1..n into ``blocks`` consecutive nonempty intervals."""
    for cuts in combinations(range(1, n), blocks - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(tuple(range(bounds[k] + 1, bounds[k + 1] + 1)) for k in range(blocks))


class TreeEnumerator:
    """
    Memoized enumeration of standard trees (leaves 1..arity) per (arity, weight).

    Raises:
        TreeError: when a weight is needed but unary generators make the
            arity slice infinite
        ResourceLimitError: when a slice exceeds MAX_ENUMERATION
    """

    def __init__(self, gens: Iterable[GeneratorSymbol], kind: Kind = Kind.SHUFFLE):
        self.gens = list(gens)
        self.kind = Kind(kind)
        if self.kind == Kind.SYMMETRIC:
            raise TreeError("Only shuffle and nonsymmetric monomials can be enumerated")
        self.has_unary = any(g.arity == 1 for g in self.gens)
        self.max_weight = max((g.weight for g in self.gens), default=1)
        self._memo: Dict[Tuple[int, int], List[Tree]] = {}
        self._blocks: Dict[Tuple[int, int], list] = {}

    def weight_range(self, arity: int) -> range:
        if self.has_unary:
            raise TreeError("Unary generators require an explicit weight bound")
        return range(0, (arity - 1) * self.max_weight + 1)

    def accept(self, node: Node) -> bool:
        """Filter on candidate trees whose children were already accepted."""
        return True

    def block_partitions(self, arity: int, blocks: int) -> list:
        key = (arity, blocks)
        if key not in self._blocks:
            if self.kind == Kind.SHUFFLE:
                self._blocks[key] = list(_set_partitions(arity, blocks))
            else:
                self._blocks[key] = list(_intervals(arity, blocks))
        return self._blocks[key]

    def trees(self, arity: int, weight: int) -> List[Tree]:
        key = (arity, weight)
        if key in self._memo:
            return self._memo[key]

        result: List[Tree] = []
        if weight == 0:
            result = [1] if arity == 1 else []
        elif weight > 0:
            for g in self.gens:
                if g.weight > weight or g.arity > arity:
                    continue
                for blocks in self.block_partitions(arity, g.arity):
                    sizes = [len(b) for b in blocks]
                    for weights in self._distribute(weight - g.weight, sizes):
                        choices = []
                        for block, w in zip(blocks, weights):
                            relabel_map = block.__getitem__
                            choices.append([_relabel(s, lambda k, m=relabel_map: m(k - 1))
                                            for s in self.trees(len(block), w)])
                        for combo in product(*choices):
                            node = Node(g, combo)
                            if self.accept(node):
                                result.append(node)
                        if len(result) > settings.MAX_ENUMERATION:
                            raise ResourceLimitError(
                                f"Enumeration of arity {arity}, weight {weight} exceeds "
                                f"MAX_ENUMERATION={settings.MAX_ENUMERATION}"
                            )
        self._memo[key] = result
        return result

    def _distribute(self, total: int, sizes: List[int]):
        if not sizes:
            if total == 0:
                yield ()
            return
        head, rest = sizes[0], sizes[1:]
        for w in range(0, total + 1):
            if not self.trees(head, w):
                continue
            for tail in self._distribute(total - w, rest):
                yield (w,) + tail

    def monomials(self, arity: int, weight: Optional[int] = None) -> List[TreeMonomial]:
        weights = [weight] if weight is not None else self.weight_range(arity)
        out = []
        for w in weights:
            out.extend(TreeMonomial(t, arity, self.kind, check=False) for t in self.trees(arity, w))
        return out


def enumerate_tree_monomials(
    gens: Iterable[GeneratorSymbol],
    arity: int,
    weight: Optional[int] = None,
    kind: Kind = Kind.SHUFFLE,
    order=None,
) -> List[TreeMonomial]:
    """
    All monomials of the given arity (and weight), sorted ascending.

    Args:
        gens: generator set
        arity: arity >= 1
        weight: optional weight filter (required with unary generators)
        kind: shuffle or nonsymmetric
        order: an OrderSpec; defaults to the configured order on ``gens``

    Returns:
        Sorted list of TreeMonomial
    """
    from operadkit.core.orders import OrderSpec

    gens = list(gens)
    if arity < 1:
        raise TreeError("Arity must be >= 1")
    if order is None:
        order = OrderSpec.default(gens)
    monomials = TreeEnumerator(gens, kind).monomials(arity, weight)
    monomials.sort(key=order.key)
    return monomials


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

class _MonomialParser:
    def __init__(self, text: str, generators: Dict[str, GeneratorSymbol], line: Optional[int], column: int):
        self.text = text
        self.pos = 0
        self.generators = generators
        self.line = line
        self.column = column

    def error(self, message: str):
        raise ParseError(message, self.line, self.column + self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self) -> Tree:
        self.skip()
        tree = self.parse_tree()
        self.skip()
        if self.pos != len(self.text):
            self.error(f"Unexpected '{self.text[self.pos]}'")
        return tree

    def parse_tree(self) -> Tree:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos].isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return int(self.text[start:self.pos])
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start:self.pos]
        if not name:
            self.error("Expected a generator or a leaf label")
        if name not in self.generators:
            self.pos = start
            self.error(f"Unknown generator '{name}'")
        gen = self.generators[name]
        self.skip()
        if self.pos >= len(self.text) or self.text[self.pos] != "(":
            self.error(f"Expected '(' after {name}")
        self.pos += 1
        children = [self.parse_tree()]
        self.skip()
        while self.pos < len(self.text) and self.text[self.pos] == ",":
            self.pos += 1
            children.append(self.parse_tree())
            self.skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ")":
            self.error("Expected ')'")
        self.pos += 1
        if len(children) != gen.arity:
            self.pos = start
            self.error(f"Generator '{name}' has arity {gen.arity}, got {len(children)} arguments")
        return Node(gen, children)


def parse_monomial(
    text: str,
    generators: Dict[str, GeneratorSymbol],
    kind: Kind = Kind.SHUFFLE,
    line: Optional[int] = None,
    column: int = 1,
) -> TreeMonomial:
    """
    Parse the functional text form, e.g. ``b(b(1,3),2)``.

    Raises:
        ParseError: on syntax errors, unknown generators or invalid labels
    """
    root = _MonomialParser(text, generators, line, column).parse()
    leaves = _planar_leaves(root)
    try:
        return TreeMonomial(root, len(leaves), kind)
    except TreeError as exc:
        raise ParseError(str(exc), line, column) from exc
