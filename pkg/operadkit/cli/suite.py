"""
Reproduction battery behind ``operadkit paper-suite``.

Each check computes bounded evidence with the library and compares it with
a stated value.  ``quick`` shrinks the slow slices (Jordan arity 5, the
arity-7 duals, the n = 3 cobar complex, order-401 positivity).
"""
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, List, Optional, Tuple

from operadkit.core.exact import double_factorial
from operadkit.core.opoly import OperadPolynomial, as_shuffle
from operadkit.core.orders import OrderSpec
from operadkit.core.tree import (
    GeneratorSymbol,
    Kind,
    TreeEnumerator,
    TreeMonomial,
    Unshuffle,
    compose,
    enumerate_unshuffles,
    parse_monomial,
)
from operadkit.errors import OperadkitError
from operadkit.presets import create_preset, known_dims
from operadkit.presets.catalog import FIXED_PRESETS
from operadkit.schemas.reports import SuiteCheck, SuiteReport
from operadkit.services import cobar, dual, identities, rewrite, series, veronese
from operadkit.utils.logger import setup_logger

logger = setup_logger("suite")

Outcome = Tuple[bool, str]


@dataclass
class SuiteContext:
    quick: bool
    seed: int

    def rng(self, salt: int) -> random.Random:
        return random.Random(self.seed * 1000 + salt)


# ---------------------------------------------------------------------------
# Dimensions and Veronese powers
# ---------------------------------------------------------------------------

def check_lie_lts(ctx: SuiteContext) -> Outcome:
    top = 6 if ctx.quick else 8
    dims = rewrite.dims(create_preset("lie"), top)
    expected = [factorial(n - 1) for n in range(1, top + 1)]
    odd_top = 5 if ctx.quick else 7
    sub = veronese.suboperad_dims(create_preset("lie"), 2, odd_top)
    lts = {n: sub[n - 1] for n in range(3, odd_top + 1, 2)}
    lts_expected = {n: factorial(n - 1) for n in lts}
    return dims == expected and lts == lts_expected, f"lie={dims} lts={lts}"


TCOM_PARAMETERS = ((2, 0), (2, 1), (3, 0), (3, 1), (4, 1))


def _triple_top(gen: GeneratorSymbol) -> TreeMonomial:
    """mu o_n (mu o_n mu) for an n-ary generator."""
    n = gen.arity
    inner = parse_monomial(f"{gen.id}({','.join(str(k) for k in range(1, n + 1))})", {gen.id: gen})
    out = inner
    for _ in range(2):
        out, _ = compose(inner, n, Unshuffle.identity(n, out.arity, n), out)
    return out


def check_tcom(ctx: SuiteContext) -> Outcome:
    top = 10
    failures = []
    for n, d in TCOM_PARAMETERS:
        if ctx.quick and n == 4:
            continue
        token = f"tcom:{n}:{d}"
        G = rewrite.buchberger(as_shuffle(create_preset(token)), rewrite.Bound(top))
        expected = [known_dims(token, top).get(k) for k in range(1, top + 1)]
        if G.dims(top) != expected:
            failures.append(f"{token} dims {G.dims(top)}")
        if d % 2 and _triple_top(G.presentation.generators[0]) not in G.leading:
            failures.append(f"{token} has no cubic monomial in its basis")
    return not failures, "; ".join(failures) or "all tcom dims match"


def check_naive_generated(ctx: SuiteContext) -> Outcome:
    free = as_shuffle(create_preset("free"))
    nu = parse_monomial("b(b(b(1,2),b(3,4)),5)", free.generator_map)
    member = veronese.free_membership(nu, 2)
    naive = veronese.naive_dims(free, 2, 5)
    sub = veronese.suboperad_dims(free, 2, 5)
    return not member and sub[4] < naive[4], f"member={member} naive(5)={naive[4]} generated(5)={sub[4]}"


def check_counterexamples(ctx: SuiteContext) -> Outcome:
    detail = []
    ok = True
    for d in (2, 3):
        layers = veronese.minimal_relations(create_preset("example1"), d, 3)
        cubic = sum(len(L.new_relations) for L in layers if L.weight == 3)
        ok = ok and cubic > 0
        detail.append(f"example1 d={d}: {cubic} cubic")

    P = create_preset("example2")
    G = veronese.ensure_groebner(P, None, 7)
    gens = G.presentation.generator_map
    composite = parse_monomial("mu(nu(1,nu(2,3)),nu(4,5))", gens, Kind.NONSYMMETRIC)
    expected = parse_monomial("rho(1,nu(nu(2,3),nu(4,5)))", gens, Kind.NONSYMMETRIC)
    nf = G.normal_form(OperadPolynomial.monomial(composite))
    ok = ok and nf.terms == {expected: Fraction(1)}
    layers = veronese.minimal_relations(P, 2, 3, G)
    cubic = sum(len(L.new_relations) for L in layers if L.weight == 3)
    ok = ok and cubic == 2
    detail.append(f"example2: B o1 D -> {nf.to_text(G.order)}, {cubic} cubic")
    return ok, "; ".join(detail)


def check_identities(ctx: SuiteContext) -> Outcome:
    detail = []
    ok = True
    for name in ("lts", "tcom", "tass"):
        corpus = identities.get_corpus(name)
        cmp = identities.compare_with_veronese(create_preset(corpus.operad), corpus, 5)
        ok = ok and cmp.equal
        detail.append(f"{name}: {cmp.identity_rank}/{cmp.veronese_rank}/{cmp.common_rank}")
    corpora = ("prelie_triple",) if ctx.quick else ("prelie_triple", "jts")
    for name in corpora:
        corpus = identities.get_corpus(name)
        residues = identities.evaluate_identities(create_preset(corpus.operad), corpus)
        holding = sum(1 for r in residues if r.holds)
        ok = ok and holding == len(residues)
        detail.append(f"{name}: {holding}/{len(residues)} reduce to zero")
    return ok, "; ".join(detail)


# ---------------------------------------------------------------------------
# Duality and series
# ---------------------------------------------------------------------------

def check_duality(ctx: SuiteContext) -> Outcome:
    top = 5 if ctx.quick else 7
    cominf = rewrite.dims(dual.veronese_dual(create_preset("lie"), 2).presentation, top)
    lieinf = rewrite.dims(dual.pure_homotopy(create_preset("com"), 2), top)
    odd = range(3, top + 1, 2)
    ok = all(cominf[n - 1] == series.tangent_dims((n + 1) // 2) for n in odd)
    ok = ok and all(lieinf[n - 1] == double_factorial(n - 2) ** 2 for n in odd)
    same = []
    for name in ("lie", "com"):
        for k in ((2,) if ctx.quick else (2, 3)):
            P = create_preset(name)
            same.append(dual.same_relation_space(dual.pure_homotopy(P, k), dual.veronese_dual(P, k).presentation))
    ok = ok and all(same)
    return ok, f"cominf3={cominf} lieinf3={lieinf} pure=veronese dual: {same}"


def _odd_arity_series(values: Callable[[int], int], N: int, sign_mode: str) -> series.RationalSeries:
    dims = [values(n) if n % 2 else 0 for n in range(1, N + 1)]
    return series.egf_from_dims(dims, sign_mode)


def check_gk_series(ctx: SuiteContext) -> Outcome:
    N = 9
    arctan = _odd_arity_series(lambda n: factorial(n - 1), N, "alternating")
    tan = _odd_arity_series(lambda n: series.tangent_dims((n + 1) // 2), N, "plain")
    sin = _odd_arity_series(lambda n: 1, N, "alternating")
    arcsin = _odd_arity_series(lambda n: double_factorial(n - 2) ** 2, N, "plain")
    pairs = [series.is_inverse(arctan, tan, N), series.is_inverse(sin, arcsin, N)]
    binary = series.RationalSeries.from_list([0, 1, Fraction(-1, 2), Fraction(1, 6)])
    binary_negative = series.positivity_scan(series.lagrange_invert(binary, 12))
    order = 101 if ctx.quick else 401
    ternary_negative = series.positivity_scan(series.lagrange_invert(series.MOCK_TERNARY_SERIES, order))
    ok = all(pairs) and binary_negative is not None and ternary_negative is None
    return ok, (f"inverse pairs={pairs} binary first negative={binary_negative} "
                f"ternary first negative={ternary_negative} to order {order}")


def check_recurrence(ctx: SuiteContext) -> Outcome:
    from operadkit.cli.commands import recurrence_report

    rec = recurrence_report(200)
    ratios = series.ratio_report(200)
    ok = (rec.holds and ratios.a_over_b_decreasing
          and abs(ratios.a_ratio - 0.9905853066) < 1e-6 and abs(ratios.b_ratio - 3.696914693) < 1e-4)
    return ok, (f"recurrence holds={rec.holds} closed form agrees on {rec.lagrange_agreement} "
                f"a_ratio={ratios.a_ratio:.10f} b_ratio={ratios.b_ratio:.9f}")


# ---------------------------------------------------------------------------
# Cobar complexes
# ---------------------------------------------------------------------------

def check_cobar(ctx: SuiteContext) -> Outcome:
    detail = []
    ok = True
    for n in ((2,) if ctx.quick else (2, 3)):
        tables = cobar.mock_commutative_tables(n)
        defects = sum(cobar.square_defects(tables, k) for k in range(2, min(tables.bound, 2 * n + 1) + 1))
        solved = cobar.left_comb_boundary(tables, n, ctx.seed)
        report = cobar.pure_cycle_report(n, ctx.seed)
        ok = ok and defects == 0 and solved.solvable and report.certified
        detail.append(f"n={n}: d^2 defects={defects} boundary={solved.solvable} "
                      f"certified={report.certified} by {report.method}")
    return ok, "; ".join(detail)


# ---------------------------------------------------------------------------
# Property suites
# ---------------------------------------------------------------------------

PROPERTY_GENERATORS = [GeneratorSymbol("a", 2), GeneratorSymbol("c", 2, 1), GeneratorSymbol("t", 3)]


def _monomial_pool(gens: Iterable[GeneratorSymbol], kind: Kind, max_arity: int) -> List[TreeMonomial]:
    enumerator = TreeEnumerator(gens, kind)
    pool = []
    for n in range(2, max_arity + 1):
        pool.extend(m for m in enumerator.monomials(n) if m.size <= 2)
    return pool


def _random_sigma(rng: random.Random, i: int, m: int, n: int, kind: Kind) -> Unshuffle:
    if kind == Kind.NONSYMMETRIC:
        return Unshuffle.identity(i, m, n)
    return rng.choice(enumerate_unshuffles(i, m, n))


def order_compatibility(rng: random.Random, trials: int) -> int:
    """Number of random composition contexts that reverse a strict comparison."""
    violations = 0
    pool = _monomial_pool(PROPERTY_GENERATORS, Kind.SHUFFLE, 4)
    by_arity = {}
    for m in pool:
        by_arity.setdefault(m.arity, []).append(m)
    arities = [n for n, ms in by_arity.items() if len(ms) > 1]
    for variant in ("pdl", "rpdl"):
        order = OrderSpec(PROPERTY_GENERATORS, variant)
        for _ in range(trials // 2):
            S, T = rng.sample(by_arity[rng.choice(arities)], 2)
            if order.key(S) > order.key(T):
                S, T = T, S
            U = rng.choice(pool)
            if rng.random() < 0.5:
                i = rng.randint(1, U.arity)
                sigma = _random_sigma(rng, i, S.arity, U.arity, Kind.SHUFFLE)
                left, right = compose(U, i, sigma, S)[0], compose(U, i, sigma, T)[0]
            else:
                i = rng.randint(1, S.arity)
                sigma = _random_sigma(rng, i, U.arity, S.arity, Kind.SHUFFLE)
                left, right = compose(S, i, sigma, U)[0], compose(T, i, sigma, U)[0]
            if not order.key(left) < order.key(right):
                violations += 1
    return violations


def composition_associativity(rng: random.Random, trials: int) -> int:
    """
    Random triples checked against the sequential rule (equal signs) and the
    parallel rule (signs differ by the product of the parities).
    """
    violations = 0
    for kind in (Kind.SHUFFLE, Kind.NONSYMMETRIC):
        pool = _monomial_pool(PROPERTY_GENERATORS, kind, 4)
        for _ in range(trials // 2):
            A, B, C = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            m, k = B.arity, C.arity
            i = rng.randint(1, A.arity)
            j = rng.randint(1, m)
            AB, s1 = compose(A, i, Unshuffle.identity(i, m, A.arity), B)
            left, s2 = compose(AB, i + j - 1, Unshuffle.identity(i + j - 1, k, AB.arity), C)
            BC, s3 = compose(B, j, Unshuffle.identity(j, k, m), C)
            right, s4 = compose(A, i, Unshuffle.identity(i, BC.arity, A.arity), BC)
            if left != right or s1 * s2 != s3 * s4:
                violations += 1
            if A.arity < 2:
                continue
            i, j = sorted(rng.sample(range(1, A.arity + 1), 2))
            AC, t1 = compose(A, j, Unshuffle.identity(j, k, A.arity), C)
            first, t2 = compose(AC, i, Unshuffle.identity(i, m, AC.arity), B)
            AB, t3 = compose(A, i, Unshuffle.identity(i, m, A.arity), B)
            shifted = j + m - 1
            second, t4 = compose(AB, shifted, Unshuffle.identity(shifted, k, AB.arity), C)
            twist = -1 if (B.parity and C.parity) else 1
            if first != second or t1 * t2 != twist * t3 * t4:
                violations += 1
    return violations


def oracle_agreement(max_arity: int) -> List[str]:
    """Presets where the Groebner and span-reduction dimensions differ."""
    tokens = sorted(FIXED_PRESETS) + ["tcom:2:1", "tcom:3:1", "nlie:2:0"]
    mismatches = []
    for token in tokens:
        P = create_preset(token)
        top = max_arity if len(P.generators) == 1 and token != "jordan" else min(max_arity, 5)
        if rewrite.dims(P, top, "groebner") != rewrite.dims(P, top, "span"):
            mismatches.append(token)
    return mismatches


def membership_brute_force(max_vertices: int, degrees: Tuple[int, ...] = (2, 3)) -> int:
    """
    Compare free_membership with an exhaustive assembly from weight-d
    blocks, over all shuffle monomials of one binary generator.
    """
    b = GeneratorSymbol("b", 2)
    enumerator = TreeEnumerator([b], Kind.SHUFFLE)
    disagreements = 0
    for d in degrees:
        blocks = enumerator.monomials(d + 1, d)
        generated = set(blocks)
        frontier = list(blocks)
        while frontier:
            nxt = []
            for A in frontier:
                if A.weight + d > max_vertices:
                    continue
                for i in range(1, A.arity + 1):
                    for sigma in enumerate_unshuffles(i, d + 1, A.arity):
                        for block in blocks:
                            T = compose(A, i, sigma, block)[0]
                            if T not in generated:
                                generated.add(T)
                                nxt.append(T)
            frontier = nxt
        for w in range(1, max_vertices + 1):
            for T in enumerator.monomials(w + 1, w):
                if veronese.free_membership(T, d) != (T in generated):
                    disagreements += 1
    return disagreements


def check_properties(ctx: SuiteContext) -> Outcome:
    trials = 200 if ctx.quick else 1000
    order_violations = order_compatibility(ctx.rng(1), trials)
    assoc_violations = composition_associativity(ctx.rng(2), trials)
    mismatches = oracle_agreement(4 if ctx.quick else 6)
    membership = membership_brute_force(4 if ctx.quick else 6)
    ok = order_violations == 0 and assoc_violations == 0 and not mismatches and membership == 0
    return ok, (f"order violations={order_violations} associativity violations={assoc_violations} "
                f"oracle mismatches={mismatches} membership disagreements={membership}")


CHECKS: List[Tuple[str, Callable[[SuiteContext], Outcome]]] = [
    ("lie_lts_dims", check_lie_lts),
    ("tcom_dims", check_tcom),
    ("naive_vs_generated", check_naive_generated),
    ("counterexamples", check_counterexamples),
    ("triple_identities", check_identities),
    ("duality", check_duality),
    ("gk_series", check_gk_series),
    ("recurrence_asymptotics", check_recurrence),
    ("cobar", check_cobar),
    ("properties", check_properties),
]


def run_suite(quick: bool = False, seed: Optional[int] = None, timings: bool = False) -> SuiteReport:
    """
    Run every check; errors inside a check count as failures.

    Args:
        quick: shrink the slow slices
        seed: seed of the randomized searches and property samples
        timings: report wall-clock seconds per check
    """
    ctx = SuiteContext(quick, 0 if seed is None else seed)
    checks = []
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            passed, detail = fn(ctx)
        except OperadkitError as exc:
            passed, detail = False, f"error: {exc}"
        elapsed = time.perf_counter() - start
        logger.info(f"{name}: {'pass' if passed else 'FAIL'} in {elapsed:.1f}s")
        checks.append(SuiteCheck(name=name, passed=passed, detail=detail,
                                 seconds=round(elapsed, 3) if timings else None))
    passed = sum(1 for c in checks if c.passed)
    return SuiteReport(checks=checks, passed=passed, failed=len(checks) - passed)
