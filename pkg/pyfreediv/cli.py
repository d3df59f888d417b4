"""Command-line frontend.

Exit status: 0 for computed verdicts (negative ones included), 2 for
precondition refusals, 1 for invariant violations and failing corpus checks.
"""
import argparse
import json
import logging
import sys

from .cramer import cramer_verify, gsc_search
from .divisor import (
    INCONCLUSIVE,
    analyze,
    gradient_ideal,
    is_free,
    jacobian_ideal,
)
from .errors import DegreeCapExceeded, InvariantViolation, PreconditionError
from .families import (
    compare_expected,
    compare_homogenization,
    family_addition,
    family_addition2,
    family_binary_wh,
    family_cone_of_binary_wh,
    family_quintic_plus,
    homogenization_of,
    named_example,
    preset_addition2_boundary,
    preset_cuspidal,
)
from .groebner import Ideal, dimension, minimal_generators, saturate
from .modsyz import minimal_free_resolution
from .options import ROUTES, AnalysisOptions
from .poly_core import format_poly, is_homogeneous, parse_poly, polynomial_ring
from .typecheck import is_koszul_free, is_linear_type, is_syzygetic, symmetric_ideal

LOGGER = logging.getLogger(__name__)

FAMILIES = ("quintic_plus", "addition", "addition2", "binary_wh", "cuspidal", "named")


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _coefficients(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--vars", default="x,y,z", help="Comma separated variable names.")
    parser.add_argument("--json", action="store_true", help="Print machine-readable JSON.")
    parser.add_argument("--out", help="Also write the JSON result to this path.")
    parser.add_argument("--config", help="JSON file with analysis options.")
    parser.add_argument("--rees", action="store_true", default=None, help="Run Rees eliminations.")
    parser.add_argument("--extend-n", action="store_true", default=None,
                        help="Decide Koszul freeness in more than 3 variables (experimental).")
    parser.add_argument("--route", choices=ROUTES, default=None, help="Linear-type route.")
    parser.add_argument("--gsc-budget", type=int, default=None, help="Perturbed lifts per saturation pivot.")
    parser.add_argument("--seed", type=int, default=None, help="Seed of randomized retries.")
    parser.add_argument("--degree-cap", type=int, default=None, help="Degree cap of Rees eliminations.")
    parser.add_argument("--timings", action="store_true", default=None, help="Record per-stage timings.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging (repeatable).")
    return parser


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="freediv",
        description="Freeness, linear type and saturation analysis of divisors over QQ.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("analyze", "Full divisor report."),
        ("resolve", "Minimal free resolution of the gradient ideal."),
        ("saturation", "Saturation of the gradient ideal by the maximal ideal."),
        ("check-free", "Freeness with its Hilbert-Burch certificate."),
        ("check-linear-type", "Linear type of the gradient ideal."),
        ("check-koszul-free", "Koszul freeness (symmetric sense)."),
        ("check-syzygetic", "Syzygetic test via the Rees ideal."),
        ("cramer", "GSC search and Cramer checks."),
    ):
        command = sub.add_parser(name, parents=[common], help=text, description=text)
        command.add_argument("polynomial", help="Polynomial text, e.g. 'x*y*z*(x+y+z)'.")

    family = sub.add_parser("family", parents=[common], help="Construct and analyze a family member.")
    family.add_argument("tag", choices=FAMILIES)
    family.add_argument("--name", help="Named example tag.")
    family.add_argument("--d", type=int)
    family.add_argument("--m", type=int)
    family.add_argument("--n", type=int)
    family.add_argument("--a", type=_coefficients, help="Coefficients a1,a2,a3,a4.")
    family.add_argument("--r", type=_ints, help="Exponents (or the cuspidal r).")
    family.add_argument("--subset", type=_ints, help="1-based indices of h.")
    family.add_argument("--h", help="Polynomial h in x1..x_{n-2}.")
    family.add_argument("--p", type=int)
    family.add_argument("--q", type=int)
    family.add_argument("--s", type=int)
    family.add_argument("--c", type=_coefficients, help="Coefficients c_x,c_y,c_1..c_{s-1}.")
    family.add_argument("--cone", action="store_true", help="Use the cone over a binary member.")
    family.add_argument("--boundary", action="store_true", help="addition2 preset with h = x1.")

    corpus = sub.add_parser("corpus", parents=[common], help="Run the acceptance corpus.")
    corpus.add_argument("--case", action="append", help="Case id (repeatable).")
    corpus.add_argument("--jobs", type=int, default=1, help="Worker processes.")
    corpus.add_argument("--quick", action="store_true", help="Run the reduced variants of the slow cases.")
    return parser


def _options(args):
    base = AnalysisOptions.from_json(args.config) if args.config else AnalysisOptions()
    return base.replace(
        rees=args.rees, extend_n=args.extend_n, route=args.route, gsc_budget=args.gsc_budget,
        seed=args.seed, degree_cap=args.degree_cap, timings=args.timings,
    )


def _parse(args):
    return parse_poly(args.polynomial, polynomial_ring(args.vars))


def _ideal(F):
    return gradient_ideal(F) if is_homogeneous(F) else jacobian_ideal(F)


def cmd_analyze(args, options):
    return analyze(_parse(args), options).to_dict()


def cmd_resolve(args, options):
    F = _parse(args)
    resolution, betti = minimal_free_resolution(gradient_ideal(F))
    return {
        "input": format_poly(F),
        "betti": betti.to_dict(),
        "regularity": betti.regularity,
        "length": resolution.length,
        "modules": [str(M) for M in resolution.modules()],
        "maps": [d.to_strings() for d in resolution.maps],
        "table": betti.to_frame().to_string(),
    }


def cmd_saturation(args, options):
    F = _parse(args)
    data = saturate(gradient_ideal(F))
    out = {"input": format_poly(F), **data.to_dict()}
    out["extra"] = [format_poly(g) for g in data.extra]
    out["saturated"] = [format_poly(g) for g in minimal_generators(data.saturated)]
    return out


def cmd_check_free(args, options):
    F = _parse(args)
    result = is_free(F)
    return {
        "input": format_poly(F),
        "free": result.free,
        "codim": result.codim,
        "note": result.note,
        "certificate": result.certificate.to_strings() if result.certificate is not None else None,
    }


def cmd_check_linear_type(args, options):
    F = _parse(args)
    I = _ideal(F)
    presentation = symmetric_ideal(Ideal(minimal_generators(I), F.ring))
    perfect = False
    if is_homogeneous(F) and not I.is_unit() and dimension(I)[1] == 2:
        perfect = minimal_free_resolution(I)[0].length == 2
    try:
        verdict = is_linear_type(presentation, route=options.route, perfect=perfect, allow_rees=True,
                                 degree_cap=options.degree_cap)
        out = verdict.to_dict()
        out["evidence"] = verdict.evidence
    except DegreeCapExceeded as exc:
        out = {"verdict": INCONCLUSIVE, "route": "rees", "evidence": {"reason": str(exc)}}
    out["input"] = format_poly(F)
    return out


def cmd_check_koszul_free(args, options):
    F = _parse(args)
    result = is_koszul_free(F, extend_n=options.extend_n)
    return {"input": format_poly(F), "koszul_free": result.koszul_free, "codim": result.codim,
            "reason": result.reason, "sense": "s1"}


def cmd_check_syzygetic(args, options):
    F = _parse(args)
    presentation = symmetric_ideal(Ideal(minimal_generators(_ideal(F)), F.ring))
    try:
        verdict = is_syzygetic(presentation, degree_cap=options.degree_cap)
    except DegreeCapExceeded:
        verdict = INCONCLUSIVE
    return {"input": format_poly(F), "syzygetic": verdict}


def cmd_cramer(args, options):
    F = _parse(args)
    I = gradient_ideal(F)
    saturation = saturate(I)
    cert = gsc_search(I, saturation, options)
    if cert is None:
        return {"input": format_poly(F), "gsc": INCONCLUSIVE}
    _, betti = minimal_free_resolution(I)
    return {"input": format_poly(F), "gsc": True, "certificate": cert.to_dict(),
            "checks": cramer_verify(cert, saturation, betti)}


def _family_member(args):
    tag = args.tag
    if tag == "quintic_plus":
        return family_quintic_plus(args.d, args.a or (1, 1, 1, 1))
    if tag == "addition":
        return family_addition(args.n, args.r, args.subset)
    if tag == "addition2":
        if args.boundary:
            return preset_addition2_boundary()
        return family_addition2(args.n, args.d, args.m, args.h)
    if tag == "binary_wh":
        build = family_cone_of_binary_wh if args.cone else family_binary_wh
        return build(args.p, args.q, args.s, args.c or (1,) * (args.s + 1))
    if tag == "cuspidal":
        return preset_cuspidal(args.r[0] if args.r else 1, args.d)
    return named_example(args.name)


def cmd_family(args, options):
    f, spec = _family_member(args)
    report = analyze(f, options).to_dict()
    out = {"polynomial": format_poly(f), "spec": spec.to_dict(), "report": report}
    diffs = compare_expected(spec, report)
    if "homogenization" in spec.expected and not is_homogeneous(f):
        homogenized = analyze(homogenization_of(f), options).to_dict()
        out["homogenization"] = homogenized
        diffs += compare_homogenization(spec, homogenized)
    out["diffs"] = [d.to_dict() for d in diffs]
    return out


def cmd_corpus(args, options):
    from .corpus import run_corpus

    frame = run_corpus(args.case, options, jobs=args.jobs, quick=args.quick)
    return {"rows": frame.to_dict(orient="records"), "failed": int((~frame["passed"]).sum()),
            "table": frame.to_string(index=False)}


COMMANDS = {
    "analyze": cmd_analyze,
    "resolve": cmd_resolve,
    "saturation": cmd_saturation,
    "check-free": cmd_check_free,
    "check-linear-type": cmd_check_linear_type,
    "check-koszul-free": cmd_check_koszul_free,
    "check-syzygetic": cmd_check_syzygetic,
    "cramer": cmd_cramer,
    "family": cmd_family,
    "corpus": cmd_corpus,
}


def _print_human(result, stream):
    for key, value in result.items():
        if key == "table":
            continue
        if isinstance(value, dict):
            print(f"{key}:", file=stream)
            for k, v in value.items():
                print(f"  {k}: {v}", file=stream)
        else:
            print(f"{key}: {value}", file=stream)
    if "table" in result:
        print(result["table"], file=stream)


def _configure_logging(verbosity):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def run(argv=None, stream=None):
    """Run the command line and return the exit status."""
    stream = stream or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        options = _options(args)
        result = COMMANDS[args.command](args, options)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    if args.command == "corpus":
        machine = {k: v for k, v in result.items() if k != "table"}
    else:
        machine = result
    text = json.dumps(machine, indent=2, default=str)
    if args.out:
        with open(args.out, "w") as ff:
            ff.write(text + "\n")
    if args.json:
        print(text, file=stream)
    else:
        _print_human(result, stream)
    if args.command == "corpus" and result["failed"]:
        return 1
    return 0


def run_cli():
    """Console entry point."""
    sys.exit(run())


def run_config(config):
    """Analyze a polynomial described by a JSON-like configuration.

    Args:
        config: Mapping with ``polynomial``, optional ``variables`` (default
            ``x,y,z``) and optional ``options`` (see :class:`AnalysisOptions`).

    Returns:
        The report dictionary.
    """
    unknown = set(config) - {"polynomial", "variables", "options"}
    if unknown:
        raise PreconditionError(f"unknown configuration key(s) {sorted(unknown)}")
    ring = polynomial_ring(config.get("variables", "x,y,z"))
    F = parse_poly(config["polynomial"], ring)
    options = AnalysisOptions.from_dict(config.get("options", {}))
    return analyze(F, options).to_dict()
