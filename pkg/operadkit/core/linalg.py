"""
Sparse exact linear algebra over the rationals.

Vectors are dicts column -> Fraction; columns are any hashable objects
ordered by a key function (largest key = leading column).
"""
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Set

from operadkit.errors import ResourceLimitError
from operadkit.utils.config import settings
from operadkit.utils.logger import setup_logger

logger = setup_logger("linalg")

Vector = Dict[Hashable, Fraction]


class Echelon:
    """
    Incremental reduced row echelon form.

    Every stored row is monic at its pivot and contains no other pivot
    column, so reducing a vector only needs one pass over its entries.
    """

    def __init__(self, key: Callable[[Hashable], object]):
        self.key = key
        self.rows: Dict[Hashable, Vector] = {}
        # columna -> pivotes cuyas filas la contienen
        self._occurs: Dict[Hashable, Set[Hashable]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows, key=self.key, reverse=True)

    def reduce(self, vector: Dict[Hashable, object]) -> Vector:
        """Fully reduce a vector against the stored rows."""
        out: Vector = {c: Fraction(v) for c, v in vector.items() if v}
        for col in [c for c in out if c in self.rows]:
            coeff = out.get(col)
            if not coeff:
                continue
            for c, v in self.rows[col].items():
                nv = out.get(c, 0) - coeff * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
        return out

    def add(self, vector: Dict[Hashable, object]) -> Optional[Hashable]:
        """
        Add a vector to the row space.

        Returns:
            The new pivot column, or None when the vector was dependent
        """
        r = self.reduce(vector)
        if not r:
            return None
        pivot = max(r, key=self.key)
        lead = r[pivot]
        if lead != 1:
            r = {c: v / lead for c, v in r.items()}
        for other in list(self._occurs.get(pivot, ())):
            row = self.rows[other]
            coeff = row[pivot]
            for c, v in r.items():
                nv = row.get(c, 0) - coeff * v
                if nv:
                    if c not in row and c != other:
                        self._occurs.setdefault(c, set()).add(other)
                    row[c] = nv
                else:
                    row.pop(c, None)
                    if c != other:
                        self._occurs.get(c, set()).discard(other)
        self._occurs.pop(pivot, None)
        self.rows[pivot] = r
        for c in r:
            if c != pivot:
                self._occurs.setdefault(c, set()).add(pivot)
        return pivot

    def contains(self, vector: Dict[Hashable, object]) -> bool:
        return not self.reduce(vector)

    def rows_sorted(self) -> List[Vector]:
        """Rows in descending order of their pivots."""
        return [dict(self.rows[p]) for p in self.pivots()]


def check_size(rows: int, columns: int, what: str) -> None:
    """
    Raises:
        ResourceLimitError: when rows x columns exceeds MAX_MATRIX_ENTRIES
    """
    if rows * columns > settings.MAX_MATRIX_ENTRIES:
        raise ResourceLimitError(
            f"{what}: {rows} x {columns} matrix exceeds MAX_MATRIX_ENTRIES={settings.MAX_MATRIX_ENTRIES}"
        )


def _augmented_key(key: Callable[[Hashable], object]):
    def wrapped(col):
        tag, value = col
        if tag == "x":
            return (1, key(value))
        return (0, value)
    return wrapped


def kernel(images: Sequence[Dict[Hashable, object]], key: Callable[[Hashable], object]) -> List[Dict[int, Fraction]]:
    """
    Kernel of the linear map sending basis vector j to images[j].

    Returns:
        Kernel vectors (index -> coefficient) in reduced echelon form
    """
    echelon = Echelon(_augmented_key(key))
    for idx, image in enumerate(images):
        row = {("x", c): v for c, v in image.items() if v}
        row[("t", idx)] = Fraction(1)
        echelon.add(row)
    out = []
    for pivot in echelon.pivots():
        if pivot[0] == "t":
            row = echelon.rows[pivot]
            out.append({col[1]: v for col, v in row.items()})
    return out


def solve(images: Sequence[Dict[Hashable, object]], target: Dict[Hashable, object],
          key: Callable[[Hashable], object]) -> Optional[Dict[int, Fraction]]:
    """
    Find x with sum_j x_j images[j] = target.

    Returns:
        The reduced echelon particular solution, or None when unsolvable
    """
    echelon = Echelon(_augmented_key(key))
    for idx, image in enumerate(images):
        row = {("x", c): v for c, v in image.items() if v}
        row[("t", idx)] = Fraction(1)
        echelon.add(row)
    residue = echelon.reduce({("x", c): v for c, v in target.items() if v})
    if any(col[0] == "x" for col in residue):
        return None
    return {col[1]: -v for col, v in residue.items()}
