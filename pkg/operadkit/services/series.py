"""
Exact truncated power series: signed dimension series of operads, Lagrange
inversion, the Ginzburg-Kapranov positivity test, and the three-term
recurrence with its asymptotics for the inverse of t - t^3/6 + t^5/120.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Tuple

from sympy import Poly, Rational as SymRational, nsimplify, roots, simplify, sqrt, symbols

from operadkit.core.exact import bernoulli, binomial, format_rational, parse_rational
from operadkit.core.opoly import Presentation
from operadkit.errors import SeriesError
from operadkit.services.dual import quadratic_dual
from operadkit.services.rewrite import GroebnerData, dims as presentation_dims
from operadkit.services.veronese import ensure_groebner
from operadkit.utils.logger import setup_logger

logger = setup_logger("series")

FLAVORS = ("ordinary", "exponential")
SIGN_MODES = ("plain", "alternating", "euler")


@dataclass(frozen=True)
class RationalSeries:
    """
    Coefficients c_0..c_N of a power series truncated at order N.

    With the exponential flavor the coefficient of t^n is dim/n!.
    """
    coeffs: Tuple[Fraction, ...]
    flavor: str = "ordinary"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise SeriesError(f"Unknown series flavor '{self.flavor}'")
        if not self.coeffs:
            raise SeriesError("A truncated series needs at least the constant coefficient")

    @classmethod
    def from_list(cls, values: Sequence, order: Optional[int] = None, flavor: str = "ordinary") -> "RationalSeries":
        coeffs = [Fraction(v) for v in values]
        if order is not None:
            coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(tuple(coeffs), flavor)

    @classmethod
    def identity(cls, order: int) -> "RationalSeries":
        return cls.from_list([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise SeriesError(f"Coefficient {n} lies beyond the truncation order {self.order}")
        return self.coeffs[n] if n >= 0 else Fraction(0)

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries.from_list(self.coeffs, order, self.flavor)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        N = min(self.order, other.order)
        return RationalSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(N + 1)), self.flavor)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return self + other.scale(-1)

    def scale(self, factor) -> "RationalSeries":
        q = Fraction(factor)
        return RationalSeries(tuple(c * q for c in self.coeffs), self.flavor)

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        N = min(self.order, other.order)
        a = [(k, c) for k, c in enumerate(self.coeffs[: N + 1]) if c]
        out = [Fraction(0)] * (N + 1)
        for j, d in enumerate(other.coeffs[: N + 1]):
            if not d:
                continue
            for k, c in a:
                if j + k > N:
                    break
                out[j + k] += c * d
        return RationalSeries(tuple(out), self.flavor)

    def dims(self) -> List[Fraction]:
        """Coefficients times n! for exponential series."""
        if self.flavor == "exponential":
            return [c * factorial(n) for n, c in enumerate(self.coeffs)]
        return list(self.coeffs)

    def text(self) -> str:
        return ", ".join(format_rational(c) for c in self.coeffs)


def parse_series(text: str, flavor: str = "ordinary") -> RationalSeries:
    """Comma-separated rational coefficients, constant term first."""
    parts = [p for p in text.split(",") if p.strip()]
    return RationalSeries(tuple(parse_rational(p) for p in parts), flavor)


def egf_from_dims(dims: Sequence[int], sign_mode: str = "plain", parities: Optional[Sequence[int]] = None,
                  step: int = 2) -> RationalSeries:
    """
    Sum over arities n >= 1 of sign(n) dims(n)/n! t^n.

    Args:
        dims: dimensions indexed from arity 1
        sign_mode: "plain"; "alternating" with sign (-1)^((n-1) // step);
            "euler" with sign (-1)^parities[n-1]
        parities: per-arity parities for the euler mode
        step: arity step of the alternating mode (2 for ternary generators)

    Raises:
        SeriesError: for an unknown mode or missing parities
    """
    if sign_mode not in SIGN_MODES:
        raise SeriesError(f"Unknown sign mode '{sign_mode}'")
    if sign_mode == "euler" and (parities is None or len(parities) < len(dims)):
        raise SeriesError("The euler sign mode needs one parity per arity")
    coeffs = [Fraction(0)]
    for idx, d in enumerate(dims):
        n = idx + 1
        sign = 1
        if sign_mode == "alternating" and ((n - 1) // step) % 2:
            sign = -1
        elif sign_mode == "euler" and parities[idx] % 2:
            sign = -1
        coeffs.append(Fraction(sign * d, factorial(n)))
    return RationalSeries(tuple(coeffs), "exponential")


# ---------------------------------------------------------------------------
# Composition and inversion
# ---------------------------------------------------------------------------

def _check_invertible(f: RationalSeries) -> None:
    if f.coeffs[0] != 0:
        raise SeriesError("Compositional inversion needs a series without constant term")
    if f.order < 1 or f.coeffs[1] == 0:
        raise SeriesError("Compositional inversion needs a nonzero coefficient of t")


def _negative_power_coefficients(q: List[Fraction], k: int, upto: int) -> List[Fraction]:
    """
    Coefficients 0..upto of q^(-k) by the power recurrence
    p_m = 1/(m q_0) sum_j ((1 - k) j - m) q_j p_{m-j}.
    """
    support = [(j, c) for j, c in enumerate(q) if c and j > 0]
    p = [q[0] ** (-k)]
    for m in range(1, upto + 1):
        total = Fraction(0)
        for j, c in support:
            if j > m:
                break
            total += ((1 - k) * j - m) * c * p[m - j]
        p.append(total / (m * q[0]))
    return p


def lagrange_invert(f: RationalSeries, N: Optional[int] = None) -> RationalSeries:
    """
    Compositional inverse to order N: [t^k] g = (1/k) [u^(k-1)] (u/f(u))^k.

    Raises:
        SeriesError: when f has a constant term or no linear term
    """
    _check_invertible(f)
    N = f.order if N is None else N
    q = [f.coeffs[j + 1] if j + 1 <= f.order else Fraction(0) for j in range(N)]
    coeffs = [Fraction(0)] * (N + 1)
    for k in range(1, N + 1):
        coeffs[k] = _negative_power_coefficients(q, k, k - 1)[k - 1] / k
    return RationalSeries(tuple(coeffs), f.flavor)


def naive_invert(f: RationalSeries, N: Optional[int] = None) -> RationalSeries:
    """Inverse by undetermined coefficients, solving f(g(t)) = t degree by degree."""
    _check_invertible(f)
    N = f.order if N is None else N
    g = [Fraction(0), 1 / f.coeffs[1]] + [Fraction(0)] * (N - 1)
    for m in range(2, N + 1):
        partial = compose_series(f.truncate(N), RationalSeries(tuple(g[:N + 1])), m)
        g[m] = -partial[m] / f.coeffs[1]
    return RationalSeries(tuple(g[: N + 1]), f.flavor)


def compose_series(f: RationalSeries, g: RationalSeries, N: Optional[int] = None) -> RationalSeries:
    """
    f(g(t)) truncated at N, by Horner's scheme.

    Raises:
        SeriesError: when g has a constant term
    """
    if g.coeffs[0] != 0:
        raise SeriesError("The inner series of a composition must have no constant term")
    N = min(f.order, g.order) if N is None else N
    g = g.truncate(N)
    top = min(f.order, N)
    result = RationalSeries.from_list([f.coeffs[top]], N, f.flavor)
    for k in range(top - 1, -1, -1):
        result = result * g
        result = RationalSeries((result.coeffs[0] + f.coeffs[k],) + result.coeffs[1:], f.flavor)
    return result


def is_inverse(f: RationalSeries, g: RationalSeries, N: Optional[int] = None) -> bool:
    """f(g(t)) = t up to order N."""
    N = min(f.order, g.order) if N is None else N
    return compose_series(f, g, N).coeffs == RationalSeries.identity(N).coeffs


def positivity_scan(f: RationalSeries) -> Optional[int]:
    """Least index with a negative coefficient, or None."""
    for n, c in enumerate(f.coeffs):
        if c < 0:
            return n
    return None


# ---------------------------------------------------------------------------
# Ginzburg-Kapranov test
# ---------------------------------------------------------------------------

def signed_counts(G: GroebnerData, max_arity: int) -> List[int]:
    """Per arity, normal monomials counted with sign (-1)^(number of vertices)."""
    out = []
    for n in range(1, max_arity + 1):
        out.append(sum(-1 if m.size % 2 else 1 for m in G.normal_monomials(n)))
    return out


def weight_signed_series(G: GroebnerData, N: int) -> RationalSeries:
    """
    Exponential series of P with vertex-count signs, up to order N.

    Coefficients beyond the Groebner bound are zero when the operad is
    known to vanish from some weight on.

    Raises:
        SeriesError: when N exceeds the bound of a non-nilpotent operad
    """
    top = min(N, G.bound.max_arity)
    if top < N and G.vanishes_from_weight is None:
        raise SeriesError(f"Dimensions are only known up to arity {G.bound.max_arity}")
    counts = signed_counts(G, top)
    return egf_from_dims(counts + [0] * (N - top))


def operad_series(P: Presentation, N: int, G: Optional[GroebnerData] = None) -> Tuple[RationalSeries, GroebnerData]:
    """
    Vertex-signed exponential series of P up to order N.

    Without G, a basis up to the arity of three-vertex trees is computed
    first; a full basis up to N follows only when no weight layer vanishes.
    """
    if G is None:
        lookahead = min(N, 3 * (P.max_generator_arity() - 1) + 1)
        G = ensure_groebner(P, None, lookahead)
        if lookahead < N and G.vanishes_from_weight is None:
            G = ensure_groebner(P, None, N)
    return weight_signed_series(G, N), G


@dataclass
class GKResult:
    name: str
    order: int
    dims: List[int]
    dual_dims: List[int]
    series: RationalSeries
    inverse: RationalSeries
    inverse_holds: bool
    first_negative: Optional[int]
    predicted_dual_dims: List[Fraction] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.first_negative is not None:
            return "fails necessary Koszulness test"
        return "passes positivity up to the truncation order"


def gk_check(P: Presentation, N: int, G: Optional[GroebnerData] = None) -> GKResult:
    """
    Compare the vertex-signed series of P with the plain series of its
    quadratic dual, and scan the inverse of P's series for negative
    coefficients.
    """
    series, G = operad_series(P, N, G)
    inverse = lagrange_invert(series, N)
    dual = quadratic_dual(P).presentation
    dual_dims = presentation_dims(dual, N)
    dual_series = egf_from_dims(dual_dims)
    result = GKResult(
        name=P.name, order=N, dims=G.dims(min(N, G.bound.max_arity)), dual_dims=dual_dims,
        series=series, inverse=inverse, inverse_holds=is_inverse(series, dual_series, N),
        first_negative=positivity_scan(inverse), predicted_dual_dims=inverse.dims()[1:],
    )
    logger.info(f"{P.name}: GK inverse relation {'holds' if result.inverse_holds else 'fails'} to order {N}")
    return result


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def tangent_dims(n: int) -> int:
    """2^(2n) (2^(2n) - 1) |B_2n| / (2n), the arity 2n - 1 dimension of the pure ternary dual."""
    if n < 1:
        raise SeriesError("tangent_dims needs n >= 1")
    value = Fraction(4 ** n * (4 ** n - 1)) * abs(bernoulli(2 * n)) / (2 * n)
    if value.denominator != 1:
        raise SeriesError(f"tangent_dims({n}) is not an integer")
    return value.numerator


def inverse_coefficient_an(n: int) -> Fraction:
    """Coefficient of t^(2n+1) in the inverse of t - t^3/6 + t^5/120, in closed form."""
    if n < 0:
        raise SeriesError("inverse_coefficient_an needs n >= 0")
    total = Fraction(0)
    for k in range(n // 2, n + 1):
        term = binomial(2 * n + k, k) * binomial(k, n - k) * Fraction(1, 6) ** (2 * k - n) * Fraction(1, 120) ** (n - k)
        total += -term if (n - k) % 2 else term
    return total / (2 * n + 1)


MOCK_TERNARY_SERIES = RationalSeries.from_list([0, 1, 0, Fraction(-1, 6), 0, Fraction(1, 120)])


# ---------------------------------------------------------------------------
# Recurrences
# ---------------------------------------------------------------------------

_n = symbols("n")


def _ascending(expr) -> Tuple[int, ...]:
    """Integer coefficients of a polynomial in n, constant term first."""
    return tuple(int(c) for c in reversed(Poly(expr, _n).all_coeffs()))


@dataclass(frozen=True)
class RecurrenceSpec:
    """
    sum_i signs[i] * s_i(n) * x_(n-i) = 0, with s_i given by ascending
    integer coefficients.
    """
    polynomials: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.polynomials) - 1

    def evaluate(self, i: int, n: int) -> int:
        return sum(c * n ** k for k, c in enumerate(self.polynomials[i]))

    def residual(self, seq: Sequence[Fraction], n: int) -> Fraction:
        return sum((self.signs[i] * self.evaluate(i, n) * seq[n - i] for i in range(self.order + 1)), Fraction(0))

    def propagate(self, initial: Sequence, N: int) -> List[Fraction]:
        """
        Extend initial values to x_0..x_N.

        Raises:
            SeriesError: when the leading coefficient vanishes at some n
        """
        xs = [Fraction(v) for v in initial]
        for n in range(len(xs), N + 1):
            lead = self.signs[0] * self.evaluate(0, n)
            if lead == 0:
                raise SeriesError(f"Leading recurrence coefficient vanishes at n = {n}")
            rest = sum((self.signs[i] * self.evaluate(i, n) * xs[n - i] for i in range(1, self.order + 1)),
                       Fraction(0))
            xs.append(-rest / lead)
        return xs

    def characteristic(self) -> List[int]:
        """Signed leading coefficients, highest power of the root first."""
        degree = max(len(p) for p in self.polynomials) - 1
        return [self.signs[i] * (self.polynomials[i][degree] if len(self.polynomials[i]) > degree else 0)
                for i in range(self.order + 1)]

    def alternating_sum(self) -> Tuple[int, ...]:
        """Coefficients of sum_i signs[i] s_i(n)."""
        width = max(len(p) for p in self.polynomials)
        return tuple(sum(self.signs[i] * (p[k] if k < len(p) else 0) for i, p in enumerate(self.polynomials))
                     for k in range(width))


MOCK_TERNARY_RECURRENCE = RecurrenceSpec(
    (
        _ascending(128 * _n * (_n - 1) * (2 * _n + 1) * (2 * _n - 1) * (5 * _n - 6)),
        _ascending(80 * (_n - 1) * (2 * _n - 1) * (5 * _n - 1) * (15 * _n ** 2 - 30 * _n + 14)),
        _ascending(3 * (5 * _n - 1) * (5 * _n - 4) * (5 * _n - 6) * (5 * _n - 7) * (5 * _n - 8)),
    ),
    (1, -1, 1),
)


@dataclass
class RecurrenceCheck:
    first: int
    last: int
    violations: List[int]

    @property
    def holds(self) -> bool:
        return not self.violations


def recurrence_verify(seq: Sequence[Fraction], spec: RecurrenceSpec = MOCK_TERNARY_RECURRENCE,
                      first: Optional[int] = None, last: Optional[int] = None) -> RecurrenceCheck:
    """Indices n in [first, last] where the recurrence fails for seq."""
    first = spec.order if first is None else max(first, spec.order)
    last = len(seq) - 1 if last is None else last
    if last >= len(seq):
        raise SeriesError(f"Sequence has {len(seq)} terms, cannot check up to n = {last}")
    violations = [n for n in range(first, last + 1) if spec.residual(seq, n) != 0]
    if violations:
        logger.warning(f"Recurrence fails at {len(violations)} indices, first n = {violations[0]}")
    return RecurrenceCheck(first, last, violations)


def mock_ternary_coefficients(N: int) -> List[Fraction]:
    """a_0..a_N from the closed form."""
    return [inverse_coefficient_an(n) for n in range(N + 1)]


def mock_ternary_comparison(N: int) -> List[Fraction]:
    """b_0..b_N: b_0 = b_1 = 1 extended by the recurrence."""
    return MOCK_TERNARY_RECURRENCE.propagate([1, 1], N)


# ---------------------------------------------------------------------------
# Asymptotics
# ---------------------------------------------------------------------------

def extrapolated_ratio(seq: Sequence[Fraction], N: int, points: int = 4) -> Fraction:
    """
    Limit of seq[n] / seq[n-1] from the last ``points`` ratios up to n = N.

    The ratios of a sequence growing like lambda^n n^alpha expand in powers of
    1/n, so the polynomial in x = 1/n through (1/n, r_n) is evaluated at x = 0.

    Raises:
        SeriesError: when fewer than two terms are available or a term vanishes
    """
    if N < 1 or N >= len(seq):
        raise SeriesError(f"Cannot take ratios up to n = {N} of {len(seq)} terms")
    nodes = list(range(N, max(N - points, 0), -1))
    limit = Fraction(0)
    for n in nodes:
        if seq[n - 1] == 0:
            raise SeriesError(f"Term {n - 1} vanishes; its ratio is undefined")
        weight = Fraction(1)
        for m in nodes:
            if m != n:
                weight *= Fraction(n, n - m)
        limit += weight * (seq[n] / seq[n - 1])
    return limit


@dataclass
class RatioReport:
    """
    Exact monotonicity checks and float ratio tails for the coefficients
    a_n of the mock ternary inverse and the comparison sequence b_n.
    The ratio tails are extrapolated to n = infinity; the raw last ratios
    are kept alongside.
    """
    order: int
    characteristic: List[int]
    roots_exact: List[str]
    roots: List[float]
    radius_exact: str
    radius: float
    radius_inverse_is_root: bool
    a_ratio: float
    b_ratio: float
    a_ratio_raw: float
    b_ratio_raw: float
    limit_ratio: float
    a_over_b_decreasing: bool
    b_ratio_at_least_one: bool
    first_difference: Fraction
    alternating_sum: List[int]
    recurrence_holds: bool


def ratio_report(N: int = 200) -> RatioReport:
    """
    Raises:
        SeriesError: when N < 2
    """
    if N < 2:
        raise SeriesError("ratio_report needs N >= 2")
    spec = MOCK_TERNARY_RECURRENCE
    a = mock_ternary_coefficients(N)
    b = mock_ternary_comparison(N)

    t = symbols("t")
    chi = spec.characteristic()
    chi_poly = Poly(sum(c * t ** (len(chi) - 1 - k) for k, c in enumerate(chi)), t)
    exact = sorted(roots(chi_poly).keys(), key=lambda r: float(r))
    radius = SymRational(16, 75) * (3 + sqrt(3))
    radius_inverse_is_root = any(simplify(1 / radius - r) == 0 for r in exact)

    quotients = [a[n] / b[n] for n in range(N + 1)]
    report = RatioReport(
        order=N,
        characteristic=chi,
        roots_exact=[str(nsimplify(r)) for r in exact],
        roots=[float(r) for r in exact],
        radius_exact=str(radius),
        radius=float(radius),
        radius_inverse_is_root=radius_inverse_is_root,
        a_ratio=float(extrapolated_ratio(a, N)),
        b_ratio=float(extrapolated_ratio(b, N)),
        a_ratio_raw=float(a[N] / a[N - 1]),
        b_ratio_raw=float(b[N] / b[N - 1]),
        limit_ratio=float(min(exact, key=lambda r: float(r))),
        a_over_b_decreasing=all(quotients[n] < quotients[n - 1] for n in range(1, N + 1)),
        b_ratio_at_least_one=all(b[n] >= b[n - 1] for n in range(2, N + 1)),
        first_difference=quotients[1] - quotients[0],
        alternating_sum=list(spec.alternating_sum()),
        recurrence_holds=recurrence_verify(a, spec).holds,
    )
    logger.info(f"Mock ternary ratios at n = {N}: a {report.a_ratio:.10f}, b {report.b_ratio:.10f}")
    return report
