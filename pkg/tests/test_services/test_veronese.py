"""
Tests para las potencias de Veronese.
"""
from math import factorial
import pytest
from operadkit.core.opoly import OperadPolynomial
from operadkit.core.tree import GeneratorSymbol, Kind, parse_monomial
from operadkit.errors import NotCompletedError, PresentationError
from operadkit.presets import create_preset
from operadkit.services.rewrite import Bound, buchberger
from operadkit.services.veronese import (
    arity_for_weight, di_dims, di_from_dims, ensure_groebner, evaluate, free_membership, generators,
    leftcomb_spanning, minimal_relations, naive_dims, pbw_check, quadratic_veronese, suboperad_dims,
)

pytestmark = pytest.mark.veronese

B = GeneratorSymbol("b", 2)


def _free(text, kind=Kind.SHUFFLE):
    return parse_monomial(text, {"b": B}, kind)


def test_arity_for_weight(lie):
    assert arity_for_weight(lie, 2) == 3
    assert arity_for_weight(create_preset("tcom:3:0"), 2) == 5


def test_generators_of_lie_square(lie, lie_gb):
    """Prueba que los generadores de peso 2 de Lie son sus dos monomiales normales ternarios."""
    basis = generators(lie, 2, lie_gb)
    assert [g.id for g in basis.generators] == ["y1", "y2"]
    assert all(g.arity == 3 and g.weight == 2 for g in basis.generators)
    assert set(basis.definitions().values()) == {m.text() for m in lie_gb.normal_monomials(3)}
    with pytest.raises(PresentationError):
        generators(lie, 0, lie_gb)


def test_evaluate_generator_is_its_image(lie, lie_gb):
    basis = generators(lie, 2, lie_gb)
    from operadkit.core.tree import corolla

    for gen, mono in zip(basis.generators, basis.monomials):
        image = evaluate(OperadPolynomial.monomial(corolla(gen)), basis, lie_gb)
        assert image == OperadPolynomial.monomial(mono)


def test_naive_and_generated_lie_square(lie, lie_gb):
    """Prueba que el cuadrado de Veronese de Lie tiene dimensiones (n-1)! en aridades impares."""
    expected = [1, 0, 2, 0, 24]
    assert naive_dims(lie, 2, 5, lie_gb) == expected
    assert suboperad_dims(lie, 2, 5, lie_gb) == expected


def test_naive_exceeds_generated_for_free_operad():
    """Prueba que en el operad libre la potencia generada es menor que la ingenua en aridad 5."""
    free = create_preset("free")
    G = buchberger(free, Bound(5))
    assert suboperad_dims(free, 2, 5, G)[4] < naive_dims(free, 2, 5, G)[4]


def test_free_membership():
    """Prueba la pertenencia a la potencia de Veronese del operad libre."""
    assert free_membership(_free("b(1,2)"), 1)
    assert free_membership(_free("b(b(b(b(1,2),3),4),5)"), 2)
    assert free_membership(_free("b(b(1,2),3)"), 2)
    assert not free_membership(_free("b(b(b(1,2),b(3,4)),5)"), 2)
    assert not free_membership(_free("b(b(b(1,2),3),4)"), 2)
    assert not free_membership(_free("b(1,2)"), 0)


def test_di_dims(lie, lie_gb):
    assert di_from_dims([1, 1, 2]) == [1, 2, 6]
    assert di_dims(lie, 4, lie_gb) == [n * factorial(n - 1) for n in range(1, 5)]


def test_quadratic_veronese_of_lie(lie, lie_gb):
    """Prueba que el núcleo cuadrático tiene 40 - 24 = 16 relaciones en aridad 5."""
    Q = quadratic_veronese(lie, 2, lie_gb)
    assert Q.name == "lie^[2]"
    assert [g.id for g in Q.generators] == ["y1", "y2"]
    assert len(Q.relations) == 16
    assert all(r.arity == 5 for r in Q.relations)
    assert Q.metadata["veronese_degree"] == "2"
    basis = generators(lie, 2, lie_gb)
    for rel in Q.relations:
        assert evaluate(rel, basis, lie_gb).is_zero()


def test_ensure_groebner_rejects_short_basis(lie, lie_gb):
    with pytest.raises(NotCompletedError):
        ensure_groebner(lie, lie_gb, 7)
    assert ensure_groebner(lie, lie_gb, 4) is lie_gb


def test_example1_has_cubic_minimal_relations():
    """Prueba que example1 tiene relaciones mínimas de peso 3 en sus potencias."""
    P = create_preset("example1")
    for d in (2, 3):
        layers = minimal_relations(P, d, 3)
        assert any(layer.weight == 3 and layer.new_relations for layer in layers)


@pytest.mark.slow
def test_lie_square_is_quadratic(lie):
    layers = minimal_relations(lie, 2, 3)
    assert all(not layer.new_relations for layer in layers if layer.weight == 3)


def test_pbw_fails_for_free_nonsymmetric():
    """Prueba que el criterio PBW falla en el operad libre no simétrico con d = 2."""
    result = pbw_check(create_preset("freens"), 2)
    assert result.quadratic_gb
    assert not result.passed
    assert "b(b(b(1,2),b(3,4)),5)" in [m.text() for m in result.failures]


def test_left_combs_span_lie_and_com(lie_gb, com_gb, lie, com):
    span = leftcomb_spanning(lie, 4, lie_gb)
    assert span.spans
    assert span.dims == [1, 1, 2, 6]
    assert leftcomb_spanning(com, 4, com_gb).spans
