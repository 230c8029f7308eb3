"""
Tests para el álgebra lineal exacta dispersa.
"""
from fractions import Fraction
import pytest
from unittest.mock import patch
from operadkit.core.linalg import Echelon, check_size, kernel, solve
from operadkit.errors import ResourceLimitError


def _key(col):
    return col


def test_echelon_add_returns_pivot_or_none():
    """Prueba que add devuelve el pivote nuevo o None si el vector es dependiente."""
    echelon = Echelon(_key)
    assert echelon.add({"a": 1, "b": 2}) == "b"
    assert echelon.add({"a": 2, "b": 4}) is None
    assert echelon.add({"a": 3}) == "a"
    assert echelon.rank == 2
    assert len(echelon) == 2


def test_echelon_rows_are_reduced_and_monic():
    """Prueba que cada fila es mónica y no contiene otros pivotes."""
    echelon = Echelon(_key)
    echelon.add({"a": 1, "c": 2})
    echelon.add({"b": 3, "c": 3})
    echelon.add({"a": 1, "b": 1})
    for pivot, row in echelon.rows.items():
        assert row[pivot] == 1
        assert not any(c in echelon.rows for c in row if c != pivot)
    assert echelon.pivots() == ["c", "b", "a"]


def test_echelon_contains_and_reduce():
    echelon = Echelon(_key)
    echelon.add({"x": 1, "y": 1})
    assert echelon.contains({"x": Fraction(1, 2), "y": Fraction(1, 2)})
    assert not echelon.contains({"x": 1})
    assert echelon.reduce({"y": 1}) == {"x": Fraction(-1)}


def test_kernel_of_dependent_images():
    """Prueba el núcleo de una aplicación con una dependencia."""
    images = [{"u": 1}, {"v": 1}, {"u": 1, "v": 1}]
    vectors = kernel(images, _key)
    assert len(vectors) == 1
    v = vectors[0]
    combination = {}
    for idx, coeff in v.items():
        for col, value in images[idx].items():
            combination[col] = combination.get(col, 0) + coeff * value
    assert all(value == 0 for value in combination.values())


def test_solve_and_unsolvable_target():
    """Prueba solve con un objetivo alcanzable y otro que no lo es."""
    images = [{"u": 1, "v": 1}, {"v": 2}]
    x = solve(images, {"u": 3, "v": 5}, _key)
    assert x is not None
    assert x.get(0, 0) * 1 == 3
    assert x.get(0, 0) + 2 * x.get(1, 0) == 5
    assert solve(images, {"w": 1}, _key) is None


def test_check_size_limit():
    """Prueba que una matriz demasiado grande produce ResourceLimitError."""
    with patch('operadkit.core.linalg.settings.MAX_MATRIX_ENTRIES', 100):
        check_size(10, 10, "ok")
        with pytest.raises(ResourceLimitError):
            check_size(11, 10, "grande")
