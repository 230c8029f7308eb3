"""
Tests para las bases de Gröbner acotadas, las formas normales y la reducción por espacios.
"""
from math import factorial
import pytest
from operadkit.core.opoly import OperadPolynomial, Presentation
from operadkit.core.tree import GeneratorSymbol, Kind, TreeEnumerator, parse_monomial
from operadkit.errors import NotCompletedError, PresentationError
from operadkit.presets import create_preset
from operadkit.services.rewrite import Bound, buchberger, dims, is_quadratic_up_to, span_reduce

pytestmark = pytest.mark.rewrite


def test_bound_contains():
    bound = Bound(4, 3)
    assert bound.contains(4, 3)
    assert not bound.contains(5, 1)
    assert not bound.contains(3, 4)
    assert Bound(4).contains(4, 100)
    assert bound.describe() == {"max_arity": 4, "max_weight": 3}


def test_lie_dims(lie_gb):
    """Prueba dim Lie(n) = (n-1)!."""
    assert lie_gb.dims(5) == [factorial(n - 1) for n in range(1, 6)]


def test_com_dims(com_gb):
    assert com_gb.dims(5) == [1, 1, 1, 1, 1]


def test_relations_reduce_to_zero(lie_gb, com_gb):
    """Prueba que cada relación de la presentación shuffle tiene forma normal cero."""
    for G in (lie_gb, com_gb):
        for rel in G.presentation.relations:
            assert G.normal_form(rel).is_zero()


def test_normal_monomials_are_fixed_points(lie_gb):
    for n in range(1, 5):
        for mono in lie_gb.normal_monomials(n):
            p = OperadPolynomial.monomial(mono)
            assert lie_gb.normal_form(p) == p


def test_normal_form_is_linear(lie_gb):
    """Prueba que NF(p + 2q) = NF(p) + 2 NF(q) en aridad 4."""
    monomials = TreeEnumerator(lie_gb.presentation.generators).monomials(4)
    p = OperadPolynomial.monomial(monomials[0])
    q = OperadPolynomial.monomial(monomials[-1])
    assert lie_gb.normal_form(p + q.scale(2)) == lie_gb.normal_form(p) + lie_gb.normal_form(q).scale(2)


def test_basis_is_monic_and_reduced(lie_gb):
    order = lie_gb.order
    for g, lead in zip(lie_gb.basis, lie_gb.leading):
        assert g.leading(order) == (lead, 1)
        tail = OperadPolynomial({m: c for m, c in g.terms.items() if m != lead}, check=False)
        assert lie_gb.normal_form(tail) == tail


def test_outside_bound_raises(lie_gb):
    """Prueba que consultar fuera de la región completada produce NotCompletedError."""
    big = TreeEnumerator(lie_gb.presentation.generators).monomials(6)[0]
    with pytest.raises(NotCompletedError):
        lie_gb.normal_form(OperadPolynomial.monomial(big))
    with pytest.raises(NotCompletedError):
        lie_gb.normal_monomials(6)


def test_export_is_sorted(com_gb):
    exported = com_gb.export()
    assert exported == sorted(exported)
    assert all(" * " in line for line in exported)


def test_free_nonsymmetric_catalan():
    """Prueba los números de Catalan del operad no simétrico libre."""
    G = buchberger(create_preset("freens"), Bound(5))
    assert G.basis == []
    assert G.dims(5) == [1, 1, 2, 5, 14]


def test_monomial_relation_is_not_quadratic():
    """Prueba que la relación cúbica de example1 se detecta como no cuadrática."""
    G = buchberger(create_preset("example1"), Bound(5))
    check = is_quadratic_up_to(G)
    assert not check.quadratic
    assert check.offending_weights() == [3]
    assert G.dims(5) == [1, 1, 2, 4, 9]


def test_example2_normal_form():
    """Prueba la reescritura de mu(nu(1,nu(2,3)),nu(4,5)) en example2."""
    P = create_preset("example2")
    G = buchberger(P, Bound(5))
    gens = P.generator_map
    source = parse_monomial("mu(nu(1,nu(2,3)),nu(4,5))", gens, Kind.NONSYMMETRIC)
    target = parse_monomial("rho(1,nu(nu(2,3),nu(4,5)))", gens, Kind.NONSYMMETRIC)
    nf = G.normal_form(OperadPolynomial.monomial(source))
    assert nf == OperadPolynomial.monomial(target)
    assert G.dims(3) == [1, 3, 4]


def test_odd_tcom_vanishes_from_weight_three():
    G = buchberger(create_preset("tcom:2:1"), Bound(6))
    assert G.dims(6) == [1, 1, 1, 0, 0, 0]
    assert G.vanishes_from_weight == 3


def test_unary_generator_needs_weight_bound():
    u, b = GeneratorSymbol("u", 1), GeneratorSymbol("b", 2)
    P = Presentation("unary", Kind.SHUFFLE, [u, b], [])
    with pytest.raises(PresentationError):
        buchberger(P, Bound(3))
    G = buchberger(P, Bound(2, 2))
    assert [len(G.normal_monomials(2, w)) for w in (1, 2)] == [1, 3]


def test_span_reduce_matches_groebner(lie):
    """Prueba que las dos rutas de cálculo dan las mismas dimensiones."""
    assert dims(lie, 5, method="span") == dims(lie, 5, method="groebner")
    reduction = span_reduce(lie, 4)
    assert len(reduction.normal) == 6
    assert len(reduction.leading) == 15 - 6


def test_dims_rejects_unknown_method(com):
    with pytest.raises(ValueError):
        dims(com, 3, method="magic")
