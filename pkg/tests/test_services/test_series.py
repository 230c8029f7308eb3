"""
Tests para las series de potencias truncadas, la inversión y la recurrencia de tres términos.
"""
from fractions import Fraction
import pytest
from operadkit.errors import SeriesError
from operadkit.presets import create_preset
from operadkit.services.series import (
    MOCK_TERNARY_RECURRENCE, MOCK_TERNARY_SERIES, RationalSeries, compose_series, egf_from_dims, extrapolated_ratio,
    gk_check, inverse_coefficient_an, is_inverse, lagrange_invert, mock_ternary_coefficients,
    mock_ternary_comparison, naive_invert, operad_series, parse_series, positivity_scan, ratio_report,
    recurrence_verify, tangent_dims,
)

pytestmark = pytest.mark.series


def _odd_series(values, order=9):
    """t + c3 t^3 + c5 t^5 + ... a partir de los coeficientes impares."""
    coeffs = [Fraction(0)] * (order + 1)
    for k, v in enumerate(values):
        if 2 * k + 1 <= order:
            coeffs[2 * k + 1] = Fraction(v)
    return RationalSeries(tuple(coeffs))


ARCTAN = _odd_series([1, Fraction(-1, 3), Fraction(1, 5), Fraction(-1, 7), Fraction(1, 9)])
TAN = _odd_series([1, Fraction(1, 3), Fraction(2, 15), Fraction(17, 315), Fraction(62, 2835)])
SIN = _odd_series([1, Fraction(-1, 6), Fraction(1, 120), Fraction(-1, 5040), Fraction(1, 362880)])
ARCSIN = _odd_series([1, Fraction(1, 6), Fraction(3, 40), Fraction(5, 112), Fraction(35, 1152)])


def test_series_arithmetic():
    f = RationalSeries.from_list([1, 2, 3])
    g = RationalSeries.from_list([0, 1], 2)
    assert (f + g).coeffs == (1, 3, 3)
    assert (f - f).coeffs == (0, 0, 0)
    assert (f * g).coeffs == (0, 1, 2)
    assert f.scale(Fraction(1, 2))[2] == Fraction(3, 2)
    assert f.truncate(1).order == 1
    with pytest.raises(SeriesError):
        f[3]


def test_series_validation():
    with pytest.raises(SeriesError):
        RationalSeries((), "ordinary")
    with pytest.raises(SeriesError):
        RationalSeries((Fraction(1),), "weird")


def test_parse_series_and_text():
    f = parse_series("0, 1, -1/2, 1/6")
    assert f.coeffs == (0, 1, Fraction(-1, 2), Fraction(1, 6))
    assert f.text() == "0, 1, -1/2, 1/6"


def test_egf_from_dims():
    """Prueba la serie exponencial y sus modos de signo."""
    f = egf_from_dims([1, 1, 2])
    assert f.flavor == "exponential"
    assert f.coeffs == (0, 1, Fraction(1, 2), Fraction(1, 3))
    assert f.dims() == [0, 1, 1, 2]
    alternating = egf_from_dims([1, 0, 2, 0, 16], "alternating")
    assert alternating[3] == Fraction(-2, 6)
    assert alternating[5] == Fraction(16, 120)
    euler = egf_from_dims([1, 1], "euler", [0, 1])
    assert euler[2] == Fraction(-1, 2)
    with pytest.raises(SeriesError):
        egf_from_dims([1], "euler")
    with pytest.raises(SeriesError):
        egf_from_dims([1], "weird")


@pytest.mark.parametrize("f,g", [(ARCTAN, TAN), (SIN, ARCSIN)])
def test_inversion_of_classical_pairs(f, g):
    """Prueba arctan/tan y sin/arcsin hasta orden 9 con ambos métodos."""
    assert lagrange_invert(f).coeffs == g.coeffs
    assert naive_invert(f).coeffs == g.coeffs
    assert is_inverse(f, g)
    assert is_inverse(g, f)


def test_inversion_requires_linear_term():
    with pytest.raises(SeriesError):
        lagrange_invert(RationalSeries.from_list([1, 1]))
    with pytest.raises(SeriesError):
        naive_invert(RationalSeries.from_list([0, 0, 1]))
    with pytest.raises(SeriesError):
        compose_series(ARCTAN, RationalSeries.from_list([1, 1]))


def test_binary_mock_has_negative_inverse_coefficient():
    """Prueba que la inversa de t - t^2/2 + t^3/6 tiene coeficientes negativos."""
    f = RationalSeries.from_list([0, 1, Fraction(-1, 2), Fraction(1, 6)], 20)
    assert positivity_scan(lagrange_invert(f)) is not None


def test_ternary_mock_inverse_is_positive():
    inverse = lagrange_invert(MOCK_TERNARY_SERIES, 101)
    assert positivity_scan(inverse) is None


def test_closed_form_matches_inversion():
    """Prueba que la fórmula cerrada a_n coincide con la inversión de Lagrange."""
    inverse = lagrange_invert(MOCK_TERNARY_SERIES, 41)
    assert all(inverse[2 * n + 1] == inverse_coefficient_an(n) for n in range(21))
    assert inverse_coefficient_an(0) == 1
    assert inverse_coefficient_an(1) == Fraction(1, 6)
    with pytest.raises(SeriesError):
        inverse_coefficient_an(-1)


def test_tangent_dims():
    assert [tangent_dims(n) for n in range(1, 5)] == [1, 2, 16, 272]
    with pytest.raises(SeriesError):
        tangent_dims(0)


def test_recurrence_holds_for_both_sequences():
    """Prueba la recurrencia de tres términos para a_n y b_n."""
    a = mock_ternary_coefficients(60)
    b = mock_ternary_comparison(60)
    assert b[:2] == [1, 1]
    assert recurrence_verify(a, MOCK_TERNARY_RECURRENCE, 2).holds
    assert recurrence_verify(b, MOCK_TERNARY_RECURRENCE, 2).holds
    broken = list(a)
    broken[30] += 1
    check = recurrence_verify(broken, MOCK_TERNARY_RECURRENCE, 2)
    assert not check.holds
    assert check.violations[0] == 30
    with pytest.raises(SeriesError):
        recurrence_verify(a, MOCK_TERNARY_RECURRENCE, 2, 61)


def test_recurrence_characteristic_polynomial():
    assert MOCK_TERNARY_RECURRENCE.order == 2
    assert len(MOCK_TERNARY_RECURRENCE.characteristic()) == 3


@pytest.mark.slow
def test_ratio_report():
    """Prueba los cocientes a_n/a_(n-1) y b_n/b_(n-1) en n = 200."""
    report = ratio_report(200)
    assert report.recurrence_holds
    assert report.a_over_b_decreasing
    assert abs(report.a_ratio - 0.9905853066) < 1e-6
    assert abs(report.b_ratio - 3.696914693) < 1e-4
    assert abs(report.a_ratio_raw - 0.9905853066) > 1e-3
    assert abs(report.b_ratio_raw - 3.696914693) > 1e-2
    assert report.radius_inverse_is_root
    with pytest.raises(SeriesError):
        ratio_report(1)


def test_extrapolated_ratio_is_exact_for_linear_tails():
    """Prueba que si r_n = 2 + 2/n el límite extrapolado es exactamente 2."""
    seq = [Fraction(2 ** n * (n + 1)) for n in range(12)]
    assert seq[11] / seq[10] == Fraction(24, 11)
    assert extrapolated_ratio(seq, 11) == 2
    assert extrapolated_ratio(seq, 11, points=2) == 2
    with pytest.raises(SeriesError):
        extrapolated_ratio(seq, 12)
    with pytest.raises(SeriesError):
        extrapolated_ratio([Fraction(0), Fraction(1)], 1)


def test_extrapolated_ratio_beats_raw_ratio_for_mock_ternary():
    """Prueba que a n = 40 el cociente extrapolado está mucho más cerca de la raíz que el cociente crudo."""
    root = 0.9905853066
    a = mock_ternary_coefficients(40)
    raw = float(a[40] / a[39])
    limit = float(extrapolated_ratio(a, 40))
    assert abs(raw - root) > 1e-2
    assert abs(limit - root) < 1e-3
    assert abs(limit - root) < abs(raw - root) / 10


def test_operad_series_of_nilpotent_operad():
    """Prueba que un operad que se anula a partir de peso 3 da una serie finita con signos por vértices."""
    f, G = operad_series(create_preset("tcom:2:1"), 8)
    assert G.vanishes_from_weight == 3
    assert f.order == 8
    assert f[1] == 1
    assert f[2] == Fraction(-1, 2)
    assert f[3] == Fraction(1, 6)
    assert all(f[n] == 0 for n in range(4, 9))


def test_gk_check_on_lie(lie):
    result = gk_check(lie, 5)
    assert result.dims == [1, 1, 2, 6, 24]
    assert result.dual_dims == [1, 1, 1, 1, 1]
    assert result.inverse_holds
    assert result.first_negative is None
    assert result.verdict == "passes positivity up to the truncation order"
