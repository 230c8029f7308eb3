"""
Tests para el formato de archivo de presentaciones (.oprd).
"""
import pytest
from operadkit.cli.fileformat import load_presentation, parse_presentation, serialize_presentation
from operadkit.core.opoly import as_shuffle
from operadkit.core.tree import Kind
from operadkit.errors import ActionError, ParseError
from operadkit.presets import create_preset
from operadkit.services.dual import same_relation_space

pytestmark = pytest.mark.cli

LIE_TEXT = """
# corchete de Lie
operad lie
kind symmetric
order rpdl declared
generator b arity 2 degree 0 action sign(-1)
relation b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)
meta family lie
"""


def test_parse_lie():
    P = parse_presentation(LIE_TEXT)
    assert P.name == "lie"
    assert P.kind == Kind.SYMMETRIC
    assert P.order == "rpdl"
    assert [g.id for g in P.generators] == ["b"]
    assert P.generators[0].arity == 2
    assert P.metadata == {"family": "lie"}
    assert same_relation_space(as_shuffle(P), as_shuffle(create_preset("lie")))


def test_parse_weight_and_table_action():
    text = (
        "operad pair\n"
        "kind symmetric\n"
        "generator x arity 2 degree 0 action table s1:y:+1\n"
        "generator y arity 2 degree 0 weight 1 action table s1:x:+1\n"
    )
    P = parse_presentation(text)
    assert set(P.actions) == {"x", "y"}
    assert P.relations == []


@pytest.mark.parametrize("text,line", [
    ("kind symmetric\n", None),
    ("operad x\n", None),
    ("operad x\nkind planar\n", 2),
    ("operad x\nkind symmetric\nfoo bar\n", 3),
    ("operad x\nkind symmetric\ngenerator b arity 2 degree 2\n", 3),
    ("operad x\nkind symmetric\ngenerator b arity two degree 0\n", 3),
    ("operad x\nkind symmetric\ngenerator b arity 2 degree 0\ngenerator b arity 2 degree 0\n", 4),
    ("operad x\nkind shuffle\ngenerator b arity 2 degree 0\nrelation c(b(1,2),3)\n", 4),
])
def test_parse_errors(text, line):
    """Prueba que los errores de sintaxis indican la línea."""
    with pytest.raises(ParseError) as exc_info:
        parse_presentation(text)
    assert exc_info.value.line == line
    if line is not None:
        assert str(exc_info.value).startswith(f"line {line}")


def test_unknown_directive_column():
    with pytest.raises(ParseError) as exc_info:
        parse_presentation("operad x\nkind symmetric\n   foo bar\n")
    assert exc_info.value.column == 4
    assert "line 3, column 4" in str(exc_info.value)


def test_invalid_action_entry():
    text = "operad x\nkind symmetric\ngenerator b arity 2 degree 0 action table t1:b:+1\n"
    with pytest.raises((ParseError, ActionError)):
        parse_presentation(text)


@pytest.mark.parametrize("token", ["lie", "ass", "example2", "tcom:3:1", "freens"])
def test_serialize_round_trip(token):
    """Prueba que serializar y volver a leer da la misma presentación."""
    P = create_preset(token)
    Q = parse_presentation(serialize_presentation(P))
    assert Q.name == P.name
    assert Q.kind == P.kind
    assert Q.order == P.order
    assert [(g.id, g.arity, g.parity, g.weight) for g in Q.generators] == \
        [(g.id, g.arity, g.parity, g.weight) for g in P.generators]
    assert Q.metadata == P.metadata
    assert same_relation_space(as_shuffle(Q), as_shuffle(P))


def test_load_presentation(tmp_path):
    path = tmp_path / "lie.oprd"
    path.write_text(LIE_TEXT, encoding="utf-8")
    assert load_presentation(path).name == "lie"
    assert load_presentation(str(path)).name == "lie"
