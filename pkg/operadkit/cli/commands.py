"""
Command dispatch for the operadkit command line.

Every command prints one report: a JSON envelope (sorted keys) or TSV
lines.  Exit codes: 0 on success, 1 when the reproduction battery has a
failing check, 2 on usage or input errors.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, TextIO, Tuple

from pydantic import BaseModel

from operadkit.cli.fileformat import load_presentation, serialize_presentation
from operadkit.core.exact import format_rational
from operadkit.core.opoly import Presentation, as_shuffle, canonicalize, parse_polynomial
from operadkit.core.orders import GENERATOR_ORDERS, VARIANTS, OrderSpec
from operadkit.core.tree import Kind
from operadkit.errors import OperadkitError, ResourceLimitError
from operadkit.presets import create_preset, known_dims, list_presets
from operadkit.schemas.reports import (
    AsymptoticsReport,
    BoundaryReport,
    DimsReport,
    DualReport,
    GKReport,
    GroebnerReport,
    HomologyReport,
    HomologySliceReport,
    LeftCombReport,
    NormalFormReport,
    PbwReport,
    PositivityReport,
    PureCycleReport,
    QuadraticityReport,
    RecurrenceReport,
    ReportEnvelope,
    SeriesReport,
    VeroneseDimsReport,
    VeroneseRelationsReport,
)
from operadkit.services import cobar, dual, rewrite, series, veronese
from operadkit.utils.config import settings
from operadkit.utils.logger import redirect_console, setup_logger

logger = setup_logger("cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Invalid combination of command line flags."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------

def _presentation(args) -> Presentation:
    if bool(getattr(args, "preset", None)) == bool(getattr(args, "file", None)):
        raise UsageError("Give exactly one of --preset and --file")
    P = create_preset(args.preset) if args.preset else load_presentation(args.file)
    if args.monomial_order:
        P = P.with_order(args.monomial_order, args.generator_order)
    return P


def _input(args) -> Dict[str, Any]:
    skip = {"handler", "format", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _bounds(G: rewrite.GroebnerData) -> Dict[str, Any]:
    return G.bound.describe()


def _provenance(G: rewrite.GroebnerData) -> Dict[str, Any]:
    return {"completed": G.completeness(), "vanishes_from_weight": G.vanishes_from_weight}


Outcome = Tuple[Any, Dict[str, Any]]


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def cmd_dims(args) -> Outcome:
    P = _presentation(args)
    method = "span" if args.method == "span" else "groebner"
    extras: Dict[str, Any] = {}
    if method == "groebner":
        try:
            G = rewrite.buchberger(P, rewrite.Bound(args.max_arity, args.max_weight))
            values = G.dims(args.max_arity)
            extras = {"order_spec": G.order.describe(), "bounds": _bounds(G), "provenance": _provenance(G)}
        except ResourceLimitError as exc:
            if args.method == "groebner":
                raise
            logger.warning(f"Groebner route failed ({exc}); falling back to span reduction")
            method = "span"
    if method == "span":
        values = rewrite.dims(P, args.max_arity, "span", args.max_weight)
        extras = {"order_spec": as_shuffle(P).order_spec().describe(),
                  "provenance": {"method": "span_reduce"}}
    known = None
    matches = None
    try:
        known = known_dims(P.name).upto(args.max_arity)
        matches = all(values[n - 1] == d for n, d in known.items())
    except OperadkitError:
        pass
    return DimsReport(name=P.name, max_arity=args.max_arity, method=method, dims=values,
                      known=known, matches_known=matches), extras


def cmd_gb(args) -> Outcome:
    P = _presentation(args)
    G = rewrite.buchberger(P, rewrite.Bound(args.max_arity, args.max_weight))
    check = rewrite.is_quadratic_up_to(G)
    report = GroebnerReport(
        name=P.name, basis_size=len(G.basis), quadratic=check.quadratic,
        offending_weights=check.offending_weights(), vanishes_from_weight=G.vanishes_from_weight,
        relations=G.export() if args.export else None,
    )
    return report, {"order_spec": G.order.describe(), "bounds": _bounds(G), "provenance": _provenance(G)}


def cmd_normal_form(args) -> Outcome:
    P = _presentation(args)
    poly = parse_polynomial(args.poly, P.generator_map, P.kind)
    if P.kind == Kind.SYMMETRIC:
        poly = canonicalize(poly, P)
    G = rewrite.buchberger(P, rewrite.Bound(max(poly.arity or 1, args.max_arity or 1), args.max_weight))
    nf = G.normal_form(poly)
    report = NormalFormReport(name=P.name, input=args.poly, normal_form=nf.to_text(G.order), is_zero=nf.is_zero())
    return report, {"order_spec": G.order.describe(), "bounds": _bounds(G), "provenance": _provenance(G)}


def _y_relations(Q: Presentation) -> List[str]:
    order = Q.order_spec()
    return sorted(r.to_text(order) for r in Q.relations if r)


def cmd_veronese(args) -> Outcome:
    P = _presentation(args)
    d = args.d
    if args.mode in ("naive", "generated"):
        fn = veronese.naive_dims if args.mode == "naive" else veronese.suboperad_dims
        return VeroneseDimsReport(name=P.name, d=d, mode=args.mode, dims=fn(P, d, args.max_arity)), {}
    if args.mode == "quadratic":
        Q = veronese.quadratic_veronese(P, d)
        basis = veronese.generators(P, d)
        return VeroneseRelationsReport(name=Q.name, d=d, generators=basis.definitions(),
                                       relations=_y_relations(Q)), {"order_spec": Q.order_spec().describe()}
    if args.mode == "minimal":
        layers = veronese.minimal_relations(P, d, args.max_weight or 3)
        higher = [r for layer in layers if layer.weight > 2 for r in layer.new_relations]
        order = OrderSpec(list({g.id: g for r in higher for m in r.terms for g in m.generators()}.values()))
        return QuadraticityReport(
            name=P.name, d=d, quadratic=not higher,
            layers=[{"weight": L.weight, "arity": L.arity, "kernel": L.kernel_dim,
                     "generated": L.generated_dim, "new": len(L.new_relations)} for L in layers],
            minimal_relations=sorted(r.to_text(order) for r in higher),
        ), {}
    if args.mode == "pbw":
        result = veronese.pbw_check(P, d)
        return PbwReport(quadratic_gb=result.quadratic_gb, monomials_checked=result.monomials_checked,
                         failures=[m.text() for m in result.failures], passed=result.passed), {}
    span = veronese.leftcomb_spanning(P, args.max_arity)
    return LeftCombReport(ranks=span.ranks, dims=span.dims, spans=span.spans), {}


def _dual_report(target: Presentation, source: str, pairing: str, dims_to: Optional[int]) -> DualReport:
    return DualReport(
        name=target.name, source=source, pairing=pairing,
        generators=[f"{g.id}:{g.arity}:{g.parity}" for g in target.generators],
        relations=_y_relations(target),
        dims=rewrite.dims(target, dims_to) if dims_to else None,
    )


def cmd_dual(args) -> Outcome:
    P = _presentation(args)
    if args.veronese:
        result = dual.veronese_dual(P, args.veronese)
    else:
        result = dual.quadratic_dual(P)
    return _dual_report(result.presentation, result.source, result.pairing, args.dims), {}


def cmd_pure(args) -> Outcome:
    P = _presentation(args)
    target = dual.pure_homotopy(P, args.k)
    return _dual_report(target, P.name, dual.PAIRING, args.dims), {}


def cmd_cobar(args) -> Outcome:
    if args.action == "homology":
        if not args.arity:
            raise UsageError("cobar homology needs --arity")
        P = _presentation(args)
        tables = cobar.composition_tables(P, args.bound or args.arity)
        slices = cobar.homology_ranks(tables, args.arity)
        chains, homology = cobar.euler_characteristic(slices)
        report = HomologyReport(
            name=P.name, arity=args.arity, bound=tables.bound, nilpotent=tables.nilpotent,
            slices=[HomologySliceReport.model_validate(s) for s in slices],
            euler_chains=chains, euler_homology=homology,
            square_defects=cobar.square_defects(tables, args.arity),
        )
        return report, {"order_spec": tables.order.describe(), "provenance": tables.describe()}
    if args.action == "boundary":
        tables = cobar.mock_commutative_tables(args.n)
        solved = cobar.left_comb_boundary(tables, args.n, args.seed)
        report = BoundaryReport(arity=solved.arity, degree=solved.degree,
                                solvable=solved.solvable, zero_coefficients=solved.zero_coefficients,
                                all_nonzero=solved.all_nonzero, attempts=solved.attempts,
                                kernel_dim=len(solved.kernel))
        return report, {"provenance": tables.describe()}
    result = cobar.pure_cycle_report(args.n, args.seed)
    report = PureCycleReport(
        n=result.n, arity=result.arity, labels=result.labels, nu_terms=result.nu_terms,
        nu_zero_coefficients=result.nu_zero_coefficients, nu_all_nonzero=result.nu_all_nonzero,
        witness_attempts=result.witness_attempts, is_cycle=result.is_cycle, method=result.method,
        non_bounding=result.non_bounding, omega=result.omega,
        omega_in_alpha=format_rational(result.omega_in_alpha), omega_in_beta=format_rational(result.omega_in_beta),
        image_rank=result.image_rank, augmented_rank=result.augmented_rank, witness_valid=result.witness_valid,
        certified=result.certified,
    )
    return report, {}


DEFAULT_SERIES_ORDER = 9
DEFAULT_RATIO_ORDER = 200


def _series_order(args) -> int:
    if args.order is not None:
        return args.order
    if args.action == "positivity":
        return settings.POSITIVITY_ORDER
    if args.action == "ratios":
        return DEFAULT_RATIO_ORDER
    return DEFAULT_SERIES_ORDER


def _coeff_series(args) -> series.RationalSeries:
    return series.parse_series(args.coeffs).truncate(args.order)


def cmd_series(args) -> Outcome:
    args.order = _series_order(args)
    if args.action == "invert":
        if not args.coeffs:
            raise UsageError("series invert needs --coeffs")
        f = _coeff_series(args)
        inverse = series.naive_invert(f) if args.method == "naive" else series.lagrange_invert(f)
        return SeriesReport(order=args.order, input=f.text(), output=inverse.text(),
                            first_negative=series.positivity_scan(inverse)), {}
    if args.action == "gk":
        result = series.gk_check(_presentation(args), args.order)
        return GKReport(
            name=result.name, order=result.order, dims=result.dims, dual_dims=result.dual_dims,
            predicted_dual_dims=[format_rational(q) for q in result.predicted_dual_dims],
            inverse_holds=result.inverse_holds, first_negative=result.first_negative, verdict=result.verdict,
        ), {}
    if args.action == "positivity":
        if args.coeffs:
            name, f = "series", _coeff_series(args)
        else:
            P = _presentation(args)
            name, (f, _) = P.name, series.operad_series(P, args.order)
        first = series.positivity_scan(series.lagrange_invert(f, args.order))
        return PositivityReport(name=name, order=args.order, series=f.text(),
                                first_negative="none" if first is None else str(first)), {}
    if args.action == "recurrence":
        return recurrence_report(args.last), {}
    report = series.ratio_report(args.order)
    return AsymptoticsReport(
        order=report.order, characteristic=report.characteristic, roots_exact=report.roots_exact,
        roots=report.roots, radius_exact=report.radius_exact, radius=report.radius,
        radius_inverse_is_root=report.radius_inverse_is_root, a_ratio=report.a_ratio, b_ratio=report.b_ratio,
        a_ratio_raw=report.a_ratio_raw, b_ratio_raw=report.b_ratio_raw,
        limit_ratio=report.limit_ratio, a_over_b_decreasing=report.a_over_b_decreasing,
        b_ratio_at_least_one=report.b_ratio_at_least_one,
        first_difference=format_rational(report.first_difference),
        alternating_sum=report.alternating_sum, recurrence_holds=report.recurrence_holds,
    ), {}


def recurrence_report(last: int, lagrange_top: int = 100) -> RecurrenceReport:
    """Check the recurrence for a_n and b_n on 2..last and the closed form against inversion."""
    spec = series.MOCK_TERNARY_RECURRENCE
    a = series.mock_ternary_coefficients(last)
    b = series.mock_ternary_comparison(last)
    top = min(last, lagrange_top)
    inverse = series.lagrange_invert(series.MOCK_TERNARY_SERIES.truncate(2 * top + 1))
    agreement = sum(1 for n in range(top + 1) if inverse[2 * n + 1] == a[n])
    check_a = series.recurrence_verify(a, spec, 2, last)
    check_b = series.recurrence_verify(b, spec, 2, last)
    return RecurrenceReport(
        first=2, last=last, polynomials=[list(p) for p in spec.polynomials],
        alternating_sum=list(spec.alternating_sum()), a_violations=check_a.violations,
        b_violations=check_b.violations, lagrange_agreement=agreement,
        holds=check_a.holds and check_b.holds and agreement == top + 1,
    )


def cmd_preset(args) -> Outcome:
    if args.action == "list":
        return {"presets": list_presets()}, {}
    if not args.name:
        raise UsageError("preset dump needs a preset name")
    return serialize_presentation(create_preset(args.name)), {"raw": True}


def cmd_paper_suite(args) -> Outcome:
    from operadkit.cli.suite import run_suite

    report = run_suite(quick=args.quick, seed=args.seed, timings=args.timings)
    return report, {"exit": EXIT_OK if report.failed == 0 else EXIT_CHECK_FAILED}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="preset token, e.g. lie or tcom:3:1")
    p.add_argument("--file", help="presentation file (.oprd)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="operadkit", description="Groebner bases, Veronese powers and Koszul duals of operads")
    parser.add_argument("--format", choices=("json", "tsv"), default=settings.OUTPUT_FORMAT)
    parser.add_argument("--monomial-order", choices=VARIANTS, help="override the monomial order variant")
    parser.add_argument("--generator-order", choices=GENERATOR_ORDERS, default=None)
    parser.add_argument("--seed", type=int, default=None, help="seed of the randomized witness search")
    parser.add_argument("--verbose", action="store_true")
    seeded = _Parser(add_help=False)
    seeded.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed of the randomized witness search")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("dims")
    _add_input(p)
    p.add_argument("--max-arity", type=int, required=True)
    p.add_argument("--max-weight", type=int)
    p.add_argument("--method", choices=("auto", "groebner", "span"), default="auto")
    p.set_defaults(handler=cmd_dims)

    p = sub.add_parser("gb")
    _add_input(p)
    p.add_argument("--max-arity", type=int, required=True)
    p.add_argument("--max-weight", type=int)
    p.add_argument("--export", action="store_true")
    p.set_defaults(handler=cmd_gb)

    p = sub.add_parser("normal-form")
    _add_input(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--max-arity", type=int)
    p.add_argument("--max-weight", type=int)
    p.set_defaults(handler=cmd_normal_form)

    p = sub.add_parser("veronese")
    p.add_argument("mode", choices=("naive", "generated", "quadratic", "minimal", "pbw", "leftcomb"))
    _add_input(p)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--max-arity", type=int, default=5)
    p.add_argument("--max-weight", type=int)
    p.set_defaults(handler=cmd_veronese)

    p = sub.add_parser("dual")
    _add_input(p)
    p.add_argument("--veronese", type=int, help="dualize the quadratic Veronese power of this weight")
    p.add_argument("--dims", type=int, help="also compute dims up to this arity")
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser("pure")
    _add_input(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--dims", type=int)
    p.set_defaults(handler=cmd_pure)

    p = sub.add_parser("cobar", parents=[seeded])
    p.add_argument("action", choices=("homology", "boundary", "pure"))
    _add_input(p)
    p.add_argument("--arity", type=int)
    p.add_argument("--bound", type=int)
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(handler=cmd_cobar)

    p = sub.add_parser("series")
    p.add_argument("action", choices=("invert", "gk", "positivity", "recurrence", "ratios"))
    _add_input(p)
    p.add_argument("--coeffs", help="comma-separated coefficients, constant term first")
    p.add_argument("--order", type=int, help="truncation order (9; 401 for positivity; 200 for ratios)")
    p.add_argument("--method", choices=("lagrange", "naive"), default="lagrange")
    p.add_argument("--last", type=int, default=200)
    p.set_defaults(handler=cmd_series)

    p = sub.add_parser("preset")
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("name", nargs="?")
    p.set_defaults(handler=cmd_preset)

    p = sub.add_parser("paper-suite", parents=[seeded])
    p.add_argument("--quick", action="store_true", help="skip the slow slices")
    p.add_argument("--timings", action="store_true", help="report wall-clock seconds per check")
    p.set_defaults(handler=cmd_paper_suite)
    return parser


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _dump(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump()
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


def _tsv_value(value: Any) -> str:
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return ",".join(str(v) for v in value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def render(envelope: ReportEnvelope, fmt: str) -> str:
    data = envelope.model_dump()
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2, default=_dump) + "\n"
    result = data["result"]
    lines = [f"command\t{envelope.command}"]
    if isinstance(result, dict) and "checks" in result:
        for check in result["checks"]:
            lines.append("\t".join([check["name"], "pass" if check["passed"] else "FAIL", check["detail"]]))
        lines.append(f"passed\t{result['passed']}")
        lines.append(f"failed\t{result['failed']}")
    elif isinstance(result, dict):
        lines.extend(f"{k}\t{_tsv_value(result[k])}" for k in sorted(result))
    else:
        lines.append(f"result\t{_tsv_value(result)}")
    return "\n".join(lines) + "\n"


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Parse argv, run the command and print its report.

    Returns:
        The process exit code
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    redirect_console(stderr, logging.DEBUG if args.verbose else logging.WARNING)
    if not getattr(args, "handler", None):
        print("usage error: missing command", file=stderr)
        return EXIT_USAGE
    try:
        result, extras = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except OperadkitError as exc:
        print(f"error: {exc}", file=stderr)
        logger.debug(f"{args.command} failed: {exc}")
        return EXIT_USAGE
    if extras.get("raw"):
        stdout.write(result)
        return EXIT_OK
    envelope = ReportEnvelope(
        command=args.command, input=_input(args), order_spec=extras.get("order_spec"),
        bounds=extras.get("bounds"), result=_dump(result), provenance=extras.get("provenance") or {},
    )
    stdout.write(render(envelope, args.format))
    return extras.get("exit", EXIT_OK)
