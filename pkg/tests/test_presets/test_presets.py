"""
Tests para el catálogo de presentaciones y las tablas de dimensiones conocidas.
"""
import pytest
from operadkit.cli.fileformat import load_presentation
from operadkit.core.opoly import as_shuffle
from operadkit.core.tree import Kind
from operadkit.errors import UnknownPresetError
from operadkit.presets import DATA_DIR, create_preset, known_dims, list_presets, preset_file
from operadkit.services.dual import same_relation_space
from operadkit.services.rewrite import dims

pytestmark = pytest.mark.presets


def test_list_presets():
    names = list_presets()
    for name in ("ass", "com", "example1", "example2", "lie", "prelie"):
        assert name in names
    assert "tcom:n:d" in names


@pytest.mark.parametrize("token", ["lie", "LIE", "tcom:3:1", "nlie:3:0", "ttcom:2:1", "tlie:3:0"])
def test_create_preset(token):
    P = create_preset(token)
    assert P.generators
    assert P.relations


@pytest.mark.parametrize("token", ["nope", "lie:2:1", "tcom", "tcom:3", "tcom:1:0", "tcom:a:1"])
def test_invalid_tokens(token):
    with pytest.raises(UnknownPresetError):
        create_preset(token)


def test_preset_kinds():
    assert create_preset("freens").kind == Kind.NONSYMMETRIC
    assert create_preset("example1").kind == Kind.NONSYMMETRIC
    assert create_preset("lie").kind == Kind.SYMMETRIC


def test_known_dims_tables():
    """Prueba las tablas clásicas y las de las familias."""
    assert known_dims("lie").upto(5) == {1: 1, 2: 1, 3: 2, 4: 6, 5: 24}
    assert known_dims("cominf3").get(7) == 272
    assert known_dims("cominf3").get(8) is None
    assert known_dims("tcom:3:1").upto(7) == {1: 1, 2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 0}
    assert known_dims("tcom:3:0").upto(7) == {1: 1, 2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 1}
    # ttcom:3:1 es la suspensión de tcom:3:3
    assert known_dims("ttcom:3:1").upto(7) == known_dims("tcom:3:1").upto(7)
    assert known_dims("nlie:4:0").values == {1: 1, 4: 1}
    with pytest.raises(UnknownPresetError):
        known_dims("unknown")


def test_preset_file_names():
    assert preset_file("tcom:3:1") == DATA_DIR / "tcom_3_1.oprd"
    assert preset_file("lie").exists()


@pytest.mark.parametrize("path", sorted(DATA_DIR.glob("*.oprd")), ids=lambda p: p.stem)
def test_shipped_files_match_catalog(path):
    """Prueba que cada archivo .oprd presenta el mismo operad que el catálogo."""
    token = path.stem.replace("_", ":")
    from_file = load_presentation(path)
    from_catalog = create_preset(token)
    assert from_file.kind == from_catalog.kind
    assert [g.id for g in from_file.generators] == [g.id for g in from_catalog.generators]
    assert same_relation_space(as_shuffle(from_file), as_shuffle(from_catalog))


@pytest.mark.parametrize("token,max_arity", [
    ("com", 4), ("lie", 4), ("ass", 4), ("leib", 4), ("perm", 4), ("prelie", 4),
    ("free", 4), ("freens", 5), ("example1", 5), ("jordan", 3), ("example2", 3),
    ("tcom:2:1", 4), ("tcom:3:0", 5), ("nlie:3:0", 4),
])
def test_dims_match_known_tables(token, max_arity):
    """Prueba las dimensiones calculadas contra las tablas conocidas."""
    computed = dims(create_preset(token), max_arity)
    for arity, expected in known_dims(token).upto(max_arity).items():
        assert computed[arity - 1] == expected, f"{token} arity {arity}"
