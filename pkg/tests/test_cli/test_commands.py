"""
Tests para la línea de comandos: sobre JSON, TSV y códigos de salida.
"""
import io
import json
import logging
import sys
import pytest
from operadkit.cli.commands import EXIT_OK, EXIT_USAGE, run
from operadkit.cli.fileformat import parse_presentation
from operadkit.utils.logger import redirect_console

pytestmark = pytest.mark.cli

ENVELOPE_KEYS = {"command", "input", "order_spec", "bounds", "result", "provenance"}


@pytest.fixture
def cli():
    """Ejecuta la línea de comandos y devuelve (código, stdout, stderr)."""
    def invoke(*argv):
        out, err = io.StringIO(), io.StringIO()
        code = run(list(argv), out, err)
        return code, out.getvalue(), err.getvalue()
    yield invoke
    redirect_console(sys.stdout, logging.NOTSET)


def test_dims_json_envelope(cli):
    code, out, err = cli("dims", "--preset", "lie", "--max-arity", "4")
    assert code == EXIT_OK
    data = json.loads(out)
    assert set(data) == ENVELOPE_KEYS
    assert data["command"] == "dims"
    assert data["input"]["preset"] == "lie"
    assert data["order_spec"].startswith("rpdl")
    assert data["result"]["dims"] == [1, 1, 2, 6]
    assert data["result"]["matches_known"] is True
    assert data["provenance"]["completed"]


def test_monomial_order_override(cli):
    code, out, _ = cli("--monomial-order", "pdl", "dims", "--preset", "lie", "--max-arity", "4")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["order_spec"].startswith("pdl")
    assert data["result"]["dims"] == [1, 1, 2, 6]


def test_span_method(cli):
    code, out, _ = cli("dims", "--preset", "com", "--max-arity", "4", "--method", "span")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["result"]["method"] == "span"
    assert data["result"]["dims"] == [1, 1, 1, 1]


def test_dims_tsv(cli):
    code, out, _ = cli("--format", "tsv", "dims", "--preset", "lie", "--max-arity", "4")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "command\tdims"
    assert "dims\t1,1,2,6" in lines


@pytest.mark.parametrize("argv", [
    ("dims", "--max-arity", "4"),
    ("dims", "--preset", "lie", "--file", "lie.oprd", "--max-arity", "4"),
    ("dims", "--preset", "lie"),
    ("series", "invert"),
    ("bogus",),
    (),
])
def test_usage_errors(cli, argv):
    """Prueba que los errores de uso devuelven el código 2."""
    code, out, err = cli(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err.startswith("usage error:")


def test_library_errors_exit_two(cli):
    code, out, err = cli("dims", "--preset", "nope", "--max-arity", "3")
    assert code == EXIT_USAGE
    assert err.startswith("error:")
    assert "ERROR" not in err
    assert out == ""
    code, _, err = cli("dual", "--preset", "example1")
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_preset_list_and_dump(cli):
    code, out, _ = cli("preset", "list")
    assert code == EXIT_OK
    assert "lie" in json.loads(out)["result"]["presets"]
    code, out, _ = cli("preset", "dump", "lie")
    assert code == EXIT_OK
    assert out.startswith("operad lie")
    assert parse_presentation(out).name == "lie"


def test_dims_from_file(cli, tmp_path):
    _, text, _ = cli("preset", "dump", "com")
    path = tmp_path / "com.oprd"
    path.write_text(text, encoding="utf-8")
    code, out, _ = cli("dims", "--file", str(path), "--max-arity", "4")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["dims"] == [1, 1, 1, 1]


def test_normal_form_of_relation(cli):
    code, out, _ = cli("normal-form", "--preset", "lie", "--poly", "b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["is_zero"] is True


def test_gb_export(cli):
    code, out, _ = cli("gb", "--preset", "lie", "--max-arity", "4", "--export")
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["quadratic"] is True
    assert len(result["relations"]) == result["basis_size"]


def test_dual_of_com(cli):
    code, out, _ = cli("dual", "--preset", "com", "--dims", "4")
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["name"] == "com^!"
    assert result["dims"] == [1, 1, 2, 6]


def test_series_invert(cli):
    """Prueba que la inversa de arctan es tan hasta orden 9."""
    code, out, _ = cli("series", "invert", "--coeffs", "0,1,0,-1/3,0,1/5,0,-1/7,0,1/9")
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["output"] == "0, 1, 0, 1/3, 0, 2/15, 0, 17/315, 0, 62/2835"
    assert result["first_negative"] is None
    _, naive, _ = cli("series", "invert", "--coeffs", "0,1,0,-1/3,0,1/5,0,-1/7,0,1/9", "--method", "naive")
    assert json.loads(naive)["result"]["output"] == result["output"]


def test_series_positivity_of_binary_mock(cli):
    """Prueba que la inversa de t - t^2/2 + t^3/6 tiene su primer coeficiente negativo, -7/144, en el índice 6."""
    code, out, _ = cli("series", "positivity", "--coeffs", "0,1,-1/2,1/6", "--order", "12")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["first_negative"] == "6"


def test_cobar_boundary(cli):
    code, out, _ = cli("cobar", "boundary", "--n", "2", "--seed", "3")
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["solvable"] is True
    assert result["arity"] == 3
    assert json.loads(out)["input"]["seed"] == 3


def test_seed_before_and_after_the_subcommand(cli):
    """Prueba que --seed se acepta antes y después del subcomando, y el del subcomando gana."""
    code, out, _ = cli("--seed", "5", "cobar", "boundary", "--n", "2")
    assert code == EXIT_OK
    assert json.loads(out)["input"]["seed"] == 5
    code, out, _ = cli("--seed", "5", "cobar", "boundary", "--n", "2", "--seed", "9")
    assert code == EXIT_OK
    assert json.loads(out)["input"]["seed"] == 9
    code, _, err = cli("dims", "--preset", "lie", "--max-arity", "3", "--seed", "1")
    assert code == EXIT_USAGE
    assert err.startswith("usage error:")


@pytest.mark.slow
def test_lie_dims_to_arity_six(cli):
    code, out, _ = cli("dims", "--preset", "lie", "--max-arity", "6")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["dims"] == [1, 1, 2, 6, 24, 120]


@pytest.mark.slow
def test_positivity_of_ternary_commutative_operad(cli):
    """Prueba que la inversa de la serie de tCom^3_1 no tiene coeficientes negativos hasta orden 401."""
    code, out, _ = cli("series", "positivity", "--preset", "tcom:3:1", "--order", "401")
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["first_negative"] == "none"
    assert result["order"] == 401
