"""
Tests para duales de Koszul, suspensión y duales homotópicos puros.
"""
from math import factorial
import pytest
from operadkit.core.exact import double_factorial
from operadkit.errors import NonQuadraticError, PresentationError
from operadkit.presets import create_preset
from operadkit.services.dual import (
    PAIRING, dual_generator, pure_homotopy, quadratic_dual, quadratic_monomials, same_relation_space,
    suspend_parity, veronese_dual,
)
from operadkit.services.rewrite import dims
from operadkit.services.series import tangent_dims
from operadkit.core.tree import GeneratorSymbol, Kind

pytestmark = pytest.mark.dual


def test_dual_generator_parity():
    """Prueba que la paridad del dual se desplaza con la aridad."""
    assert dual_generator(GeneratorSymbol("b", 2)).parity == 0
    assert dual_generator(GeneratorSymbol("t", 3)).parity == 1
    assert dual_generator(GeneratorSymbol("t", 3, 1)).id == "t_dual"


def test_quadratic_monomial_counts():
    b = GeneratorSymbol("b", 2)
    assert len(quadratic_monomials([b], 3, Kind.SHUFFLE)) == 3
    assert len(quadratic_monomials([b], 3, Kind.NONSYMMETRIC)) == 2


def test_dual_of_com_is_lie(com):
    """Prueba que Com^! tiene las dimensiones de Lie."""
    result = quadratic_dual(com)
    assert result.source == "com"
    assert result.pairing == PAIRING
    assert result.presentation.name == "com^!"
    assert len(result.presentation.relations) == 1
    assert dims(result.presentation, 4) == [factorial(n - 1) for n in range(1, 5)]


def test_dual_of_lie_is_com(lie):
    result = quadratic_dual(lie)
    assert len(result.presentation.relations) == 2
    assert dims(result.presentation, 4) == [1, 1, 1, 1]


def test_dual_of_ass_is_ass(ass):
    result = quadratic_dual(ass)
    assert len(result.presentation.relations) == 6
    assert dims(result.presentation, 4) == [factorial(n) for n in range(1, 5)]


@pytest.mark.parametrize("name", ["com", "lie", "ass", "perm", "prelie", "leib", "tcom:2:1"])
def test_double_dual_has_the_dimensions_of_the_source(name):
    """Prueba que el dual del dual recupera las dimensiones del operad original."""
    source = create_preset(name)
    twice = quadratic_dual(quadratic_dual(source).presentation).presentation
    assert dims(twice, 4) == dims(source, 4)


def test_non_quadratic_input():
    with pytest.raises(NonQuadraticError):
        quadratic_dual(create_preset("example1"))


def test_suspension_flips_parity_and_action(lie):
    """Prueba que la suspensión cambia la paridad y el carácter de signo, y es involutiva en el nombre."""
    suspended = suspend_parity(lie)
    assert suspended.name == "lie~"
    assert suspended.generators[0].parity == 1
    assert suspended.actions["b"].describe() == "sign(+1)"
    back = suspend_parity(suspended)
    assert back.name == "lie"
    assert back.generators[0].parity == 0
    with pytest.raises(PresentationError):
        suspend_parity(create_preset("freens"))


def test_pure_homotopy_matches_veronese_dual(lie, lie_gb):
    """Prueba que el dual homotópico puro coincide con el dual de la potencia cuadrática."""
    pure = pure_homotopy(lie, 2, lie_gb)
    assert pure.name == "lie_pure2"
    assert [g.id for g in pure.generators] == ["y1_dual", "y2_dual"]
    assert same_relation_space(pure, veronese_dual(lie, 2, lie_gb).presentation)


def test_veronese_dual_of_lie_has_tangent_dims(lie, lie_gb):
    """Prueba las dimensiones 1, 2, 16 (números tangentes) en aridades 1, 3, 5."""
    dual = veronese_dual(lie, 2, lie_gb).presentation
    values = dims(dual, 5)
    assert [values[2 * n - 2] for n in (1, 2, 3)] == [tangent_dims(n) for n in (1, 2, 3)]
    assert values[1] == values[3] == 0


def test_pure_homotopy_of_com(com, com_gb):
    """Prueba las dimensiones ((2n-3)!!)^2 del dual puro de Com."""
    pure = pure_homotopy(com, 2, com_gb)
    values = dims(pure, 5)
    assert [values[0], values[2], values[4]] == [double_factorial(2 * n - 3) ** 2 for n in (1, 2, 3)]


def test_same_relation_space_rejects_other_generators(lie, com):
    assert not same_relation_space(quadratic_dual(lie).presentation, com)
