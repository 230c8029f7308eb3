"""
Monomial orders on tree monomials.

Both variants compare weight first.  ``pdl`` then compares the sequence of
root-to-leaf path words indexed by leaf label 1..n, each word by length and
then letterwise; a letter is (generator rank, child index).  ``rpdl`` keeps
the weight comparison and reverses everything after it.  Both are
compatible with infinitesimal compositions on either side.
"""
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from operadkit.core.tree import GeneratorSymbol, TreeMonomial
from operadkit.errors import OrderError
from operadkit.utils.config import settings

VARIANTS = ("pdl", "rpdl")
GENERATOR_ORDERS = ("declared", "reversed")


class Comparison(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


class OrderSpec:
    """
    A concrete monomial order.

    Args:
        generators: generators in declaration order
        variant: "pdl" or "rpdl"
        generator_order: "declared" (first declared is largest) or "reversed"

    Raises:
        OrderError: for an unknown variant or generator order
    """

    def __init__(self, generators: Iterable[GeneratorSymbol], variant: str = "rpdl",
                 generator_order: str = "declared"):
        if variant not in VARIANTS:
            raise OrderError(f"Unknown order variant: {variant}")
        if generator_order not in GENERATOR_ORDERS:
            raise OrderError(f"Unknown generator order: {generator_order}")
        self.generators: List[GeneratorSymbol] = list(generators)
        self.variant = variant
        self.generator_order = generator_order
        count = len(self.generators)
        if generator_order == "declared":
            self.rank: Dict[str, int] = {g.id: count - idx for idx, g in enumerate(self.generators)}
        else:
            self.rank = {g.id: idx + 1 for idx, g in enumerate(self.generators)}
        self.key = lru_cache(maxsize=settings.ORDER_KEY_CACHE_SIZE)(self._key)

    @classmethod
    def default(cls, generators: Iterable[GeneratorSymbol]) -> "OrderSpec":
        return cls(generators, settings.DEFAULT_ORDER)

    def describe(self) -> str:
        return f"{self.variant}/{self.generator_order}:" + ">".join(g.id for g in self.generators)

    def _rank(self, gen: GeneratorSymbol) -> int:
        try:
            return self.rank[gen.id]
        except KeyError:
            raise OrderError(f"Generator {gen.id} is not ordered by {self.describe()}")

    def _words(self, T: TreeMonomial) -> List[tuple]:
        words: Dict[int, tuple] = {}
        stack: List[Tuple[object, tuple]] = [(T.root, ())]
        while stack:
            node, word = stack.pop()
            if isinstance(node, int):
                words[node] = (len(word), word)
                continue
            letter_rank = self._rank(node.gen)
            for idx, child in enumerate(node.children):
                stack.append((child, word + ((letter_rank, idx),)))
        return [words[label] for label in range(1, T.arity + 1)]

    def _key(self, T: TreeMonomial) -> tuple:
        """Sort key: larger key means larger monomial (fixed arity and kind)."""
        words = self._words(T)
        if self.variant == "rpdl":
            words = [(-length, tuple((-r, -c) for r, c in letters)) for length, letters in words]
        return (T.weight, tuple(words))

    def compare(self, S: TreeMonomial, T: TreeMonomial) -> Comparison:
        if S.arity != T.arity or S.kind != T.kind:
            raise OrderError(
                f"Cannot compare monomials of arity/kind {S.arity}/{S.kind.value} and {T.arity}/{T.kind.value}"
            )
        if S == T:
            return Comparison.EQUAL
        return Comparison.LESS if self.key(S) < self.key(T) else Comparison.GREATER

    def max(self, monomials: Iterable[TreeMonomial]) -> TreeMonomial:
        return max(monomials, key=self.key)


def compare(order: OrderSpec, S: TreeMonomial, T: TreeMonomial) -> Comparison:
    """Compare two monomials of the same arity and kind under ``order``."""
    return order.compare(S, T)
