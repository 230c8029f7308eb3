"""
Tests para los monomiales de árbol, la composición infinitesimal y los divisores.
"""
import pytest
from operadkit.core.tree import (
    GeneratorSymbol, Kind, Node, TreeEnumerator, TreeMonomial, Unshuffle, compose, corolla,
    divisor_at, divisor_occurrences, enumerate_tree_monomials, enumerate_unshuffles, left_comb,
    left_combs, parse_monomial, replace_occurrence, right_divisors_weight, substitute_vertices, unit,
)
from operadkit.errors import CompositionError, ParseError, TreeError

pytestmark = pytest.mark.tree

B = GeneratorSymbol("b", 2)
C = GeneratorSymbol("c", 2, parity=1)
A = GeneratorSymbol("a", 2)
GENS = {"b": B, "c": C, "a": A}


def _mono(text, kind=Kind.SHUFFLE):
    return parse_monomial(text, GENS, kind)


def test_generator_validation():
    """Prueba que aridad, peso y paridad se validan."""
    with pytest.raises(TreeError):
        GeneratorSymbol("z", 0)
    with pytest.raises(TreeError):
        GeneratorSymbol("z", 2, weight=0)
    with pytest.raises(TreeError):
        GeneratorSymbol("z", 2, parity=2)


def test_monomial_attributes():
    t = _mono("b(c(1,3),2)")
    assert t.arity == 3
    assert t.weight == 2
    assert t.size == 2
    assert t.parity == 1
    assert t.planar_leaves() == [1, 3, 2]
    assert [g.id for g in t.generators()] == ["b", "c"]
    assert t.text() == "b(c(1,3),2)"
    assert not t.is_unit
    assert unit().is_unit and unit().weight == 0


@pytest.mark.parametrize("root,arity,kind", [
    (Node(B, [Node(B, [2, 1]), 3]), 3, Kind.SHUFFLE),
    (Node(B, [2, 1]), 2, Kind.SHUFFLE),
    (Node(B, [1, 3]), 2, Kind.SHUFFLE),
    (Node(B, [Node(B, [1, 3]), 2]), 3, Kind.NONSYMMETRIC),
])
def test_invalid_monomials_are_rejected(root, arity, kind):
    """Prueba la condición de shuffle, las etiquetas 1..n y el orden planar."""
    with pytest.raises(TreeError):
        TreeMonomial(root, arity, kind)


def test_symmetric_kind_accepts_any_leaf_order():
    t = TreeMonomial(Node(B, [2, 1]), 2, Kind.SYMMETRIC)
    assert t.planar_leaves() == [2, 1]


def test_parse_errors_carry_position():
    """Prueba que los errores de parseo llevan línea y columna."""
    with pytest.raises(ParseError) as exc:
        parse_monomial("b(1,x(2,3))", GENS, Kind.SHUFFLE, line=4, column=10)
    assert exc.value.line == 4
    assert exc.value.column == 14
    assert str(exc.value).startswith("line 4, column 14: ")
    with pytest.raises(ParseError):
        parse_monomial("b(1,2,3)", GENS)
    with pytest.raises(ParseError):
        parse_monomial("b(1,2", GENS)
    with pytest.raises(ParseError):
        parse_monomial("b(2,1)", GENS)


def test_enumerate_unshuffles_counts():
    """Prueba el número de unshuffles C(n-i+m-1, m-1)."""
    assert len(enumerate_unshuffles(1, 2, 2)) == 2
    assert len(enumerate_unshuffles(2, 2, 2)) == 1
    assert len(enumerate_unshuffles(1, 3, 3)) == 6
    assert enumerate_unshuffles(1, 2, 2)[0].is_identity
    with pytest.raises(CompositionError):
        enumerate_unshuffles(3, 2, 2)


def test_compose_binary_corollas():
    """Prueba las tres composiciones de b consigo mismo."""
    b = corolla(B)
    results = set()
    for i in (1, 2):
        for sigma in enumerate_unshuffles(i, 2, 2):
            mono, sign = compose(b, i, sigma, b)
            assert sign == 1
            results.add(mono.text())
    assert results == {"b(b(1,2),3)", "b(b(1,3),2)", "b(1,b(2,3))"}


def test_compose_koszul_sign():
    """Prueba que el signo cuenta los vértices impares posteriores a la hoja."""
    outer = _mono("c(1,c(2,3))")
    odd_inner = corolla(C)
    even_inner = corolla(A)
    _, sign = compose(outer, 1, Unshuffle.identity(1, 2, 3), odd_inner)
    assert sign == -1
    _, sign = compose(outer, 1, Unshuffle.identity(1, 2, 3), even_inner)
    assert sign == 1
    _, sign = compose(outer, 3, Unshuffle.identity(3, 2, 3), odd_inner)
    assert sign == 1


def test_compose_rejects_mismatches():
    b = corolla(B)
    with pytest.raises(CompositionError):
        compose(b, 1, Unshuffle.identity(1, 2, 2), corolla(B, Kind.NONSYMMETRIC))
    ns = corolla(B, Kind.NONSYMMETRIC)
    sigma = [s for s in enumerate_unshuffles(1, 2, 2) if not s.is_identity][0]
    with pytest.raises(CompositionError):
        compose(ns, 1, sigma, ns)
    with pytest.raises(CompositionError):
        compose(b, 2, Unshuffle.identity(1, 2, 2), b)


def test_left_combs():
    assert left_comb([B, B, B]).text() == "b(b(b(1,2),3),4)"
    assert len(left_combs([B, B])) == 2
    assert len(left_combs([B, B], Kind.NONSYMMETRIC)) == 1
    assert len(left_combs([B, B, B])) == 6


def test_divisor_occurrences_and_extraction():
    """Prueba la búsqueda de divisores y la extracción del divisor estandarizado."""
    T = _mono("b(b(b(1,2),3),4)")
    D = _mono("b(b(1,2),3)")
    occurrences = divisor_occurrences(D, T)
    assert [occ.anchor for occ in occurrences] == [(), (0,)]
    assert [occ.right for occ in occurrences] == [False, True]
    assert divisor_at(T, occurrences[0]).text() == "b(b(1,2),3)"
    assert len(divisor_occurrences(corolla(B), T)) == 3


def test_right_divisors_by_weight():
    T = _mono("b(b(b(1,2),3),4)")
    assert [occ.anchor for occ in right_divisors_weight(T, 2)] == [(0,)]
    assert [occ.anchor for occ in right_divisors_weight(T, 1)] == [(0, 0)]
    assert [occ.anchor for occ in right_divisors_weight(T, 3)] == [()]


def test_replace_occurrence():
    """Prueba que reemplazar un divisor reescribe el árbol en su sitio."""
    T = _mono("b(b(b(1,2),3),4)")
    occ = divisor_occurrences(_mono("b(b(1,2),3)"), T)[1]
    result, sign = replace_occurrence(T, occ, _mono("b(1,b(2,3))"))
    assert result.text() == "b(b(1,b(2,3)),4)"
    assert sign == 1
    same, sign = replace_occurrence(T, occ, divisor_at(T, occ))
    assert same == T and sign == 1


def test_substitute_vertices_grafts_images():
    T = _mono("a(a(1,2),3)")
    image = _mono("b(1,2)")
    result, sign = substitute_vertices(T, lambda g: image if g.id == "a" else None)
    assert result.text() == "b(b(1,2),3)"
    assert sign == 1


def test_enumeration_counts():
    """Prueba (2n-3)!! árboles shuffle y números de Catalan en el caso no simétrico."""
    shuffle = TreeEnumerator([B], Kind.SHUFFLE)
    assert [len(shuffle.monomials(n)) for n in range(1, 6)] == [1, 1, 3, 15, 105]
    planar = TreeEnumerator([B], Kind.NONSYMMETRIC)
    assert [len(planar.monomials(n)) for n in range(1, 6)] == [1, 1, 2, 5, 14]
    with pytest.raises(TreeError):
        TreeEnumerator([B], Kind.SYMMETRIC)


def test_enumeration_with_unary_generator_needs_weight():
    u = GeneratorSymbol("u", 1)
    enumerator = TreeEnumerator([u, B])
    with pytest.raises(TreeError):
        enumerator.monomials(2)
    assert len(enumerator.monomials(1, 3)) == 1
    assert len(enumerator.monomials(2, 2)) == 3


def test_enumerate_tree_monomials_sorted():
    from operadkit.core.orders import OrderSpec

    order = OrderSpec([B], "pdl")
    monomials = enumerate_tree_monomials([B], 3, 2, Kind.SHUFFLE, order)
    keys = [order.key(m) for m in monomials]
    assert keys == sorted(keys)
    assert monomials[-1].text() == "b(b(1,2),3)"
