"""
Tests para los complejos cobar truncados.
"""
from fractions import Fraction
import pytest
from operadkit.core.tree import corolla
from operadkit.core.linalg import check_size
from operadkit.errors import NotCompletedError, PresentationError, ResourceLimitError
from operadkit.services.cobar import (
    associativity_defects, boundary, chain_basis, composition_tables, euler_characteristic,
    homology_ranks, left_comb_boundary, left_comb_sum, max_degree, mock_commutative_tables,
    pure_cycle_report, slice_size, solve_boundary, square_defects,
)

pytestmark = pytest.mark.cobar


@pytest.fixture(scope="module")
def tables2():
    return mock_commutative_tables(2)


def test_mock_tables_shape(tables2):
    """Prueba las tablas de tCom^2_1: una etiqueta binaria y una ternaria, nilpotentes."""
    assert tables2.bound == 4
    assert tables2.sizes() == [1, 1, 1, 0]
    assert [g.id for g in tables2.labels] == ["c1", "c2"]
    assert len(tables2.labels_of(2, 1)) == 1
    assert len(tables2.labels_of(3, 2)) == 1
    assert tables2.nilpotent
    assert set(tables2.describe()) == {"c1", "c2"}
    tables2.require(10)


def test_mock_tables_only_for_two_and_three():
    with pytest.raises(PresentationError):
        mock_commutative_tables(4)


def test_tables_are_associative(tables2, lie, lie_gb):
    assert associativity_defects(tables2) == 0
    assert associativity_defects(composition_tables(lie, 4, lie_gb)) == 0


def test_truncated_tables_refuse_larger_arities(lie, lie_gb):
    """Prueba que unas tablas no nilpotentes no responden fuera de su cota."""
    tables = composition_tables(lie, 4, lie_gb)
    assert not tables.nilpotent
    with pytest.raises(NotCompletedError):
        tables.require(5)


def test_differential_squares_to_zero(tables2):
    for arity in range(2, 5):
        assert square_defects(tables2, arity) == 0


def test_chain_basis_matches_slice_size(tables2):
    for arity in range(2, 5):
        for degree in range(max_degree(tables2, arity) + 1):
            assert len(chain_basis(tables2, arity, degree)) == slice_size(tables2, arity, degree)


def test_homology_euler_characteristic(tables2):
    """Prueba que la característica de Euler de las cadenas coincide con la de la homología."""
    for arity in range(2, 5):
        slices = homology_ranks(tables2, arity)
        chains, homology = euler_characteristic(slices)
        assert chains == homology
        assert all(s.homology >= 0 for s in slices)


def test_boundary_of_generator_corolla_is_zero(tables2):
    ell = tables2.labels_of(2, 1)[0]
    assert boundary(tables2, {corolla(ell, tables2.kind): Fraction(1)}) == {}


def test_left_comb_boundary_is_solvable(tables2):
    """Prueba que n! veces la suma de peines izquierdos es un borde."""
    solved = left_comb_boundary(tables2, 2, seed=0)
    assert solved.solvable
    assert solved.degree == 1
    ell = tables2.labels_of(2, 1)[0]
    target = {m: c * 2 for m, c in left_comb_sum(tables2, ell, 3).items()}
    assert boundary(tables2, solved.solution) == target


def test_solve_boundary_of_empty_target(tables2):
    assert solve_boundary(tables2, {}).solvable


def test_pure_cycle_is_certified():
    """Prueba que el ciclo puro de aridad 5 es un ciclo que no es borde."""
    report = pure_cycle_report(2, seed=0)
    assert report.arity == 5
    assert report.is_cycle
    assert report.method == "rank"
    assert report.augmented_rank == report.image_rank + 1
    assert report.certified


@pytest.mark.slow
def test_pure_cycle_for_ternary_generator():
    report = pure_cycle_report(3, seed=0)
    assert report.arity == 11
    assert report.certified


@pytest.mark.slow
def test_default_matrix_cap_fits_ternary_boundary_slice():
    """Prueba que con la configuración por defecto el borde de aridad 9 cabe y el rango de aridad 11 no."""
    tables3 = mock_commutative_tables(3)
    rows, cols = slice_size(tables3, 9, 0), slice_size(tables3, 9, 1)
    assert rows * cols > 20000000
    check_size(rows, cols, "cobar differential arity 9")
    with pytest.raises(ResourceLimitError):
        check_size(slice_size(tables3, 11, 1), slice_size(tables3, 11, 2), "cobar differential arity 11")
