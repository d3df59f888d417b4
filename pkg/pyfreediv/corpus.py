"""Bundled acceptance corpus.

Each case builds its polynomials, runs the analyzer and emits check rows
``(case, check, expected, computed, passed)``. Cases are independent, so the
runner may execute them in a process pool; the assembled table is always
sorted by case id.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

import pandas as pd
from sympy.polys.domains import QQ

from .divisor import analyze, free_cones_check, gradient_ideal, is_free, lin_syzygy_of_homogenization
from .errors import FreeDivError
from .families import (
    normalize_value,
    binary_wh_sweep,
    family_addition,
    family_addition2,
    homogenization_of,
    named_example,
    preset_addition2_boundary,
    quintic_sweep,
    report_value,
)
from .groebner import Ideal, ideal_equal, minimal_generators, saturate
from .modsyz import Submodule, minimal_free_resolution, module_syzygies
from .options import AnalysisOptions
from .poly_core import format_poly, gradient, total_degree, weighted_weights
from .typecheck import fitting_F1, symmetric_ideal

LOGGER = logging.getLogger(__name__)


@dataclass
class CheckRow:
    case: str
    check: str
    expected: str
    computed: str
    passed: bool

    def to_dict(self):
        return asdict(self)


def _row(case, check, expected, computed, passed=None):
    if passed is None:
        passed = expected == computed
    return CheckRow(case, check, str(expected), str(computed), bool(passed))


def _expectations(case, spec, report, label="", skip=()):
    rows = []
    for name, expected in spec.expected.items():
        if name in skip or (isinstance(expected, dict) and name != "betti"):
            continue
        computed = report_value(report, name)
        passed = normalize_value(name, expected) == normalize_value(name, computed)
        rows.append(_row(case, label + name, normalize_value(name, expected), normalize_value(name, computed), passed))
    return rows


def _nested(case, spec, report, label="homogenization."):
    nested = spec.expected.get("homogenization") or {}
    rows = []
    for name, expected in nested.items():
        computed = report_value(report, name)
        rows.append(_row(case, label + name, normalize_value(name, expected), normalize_value(name, computed),
                         normalize_value(name, expected) == normalize_value(name, computed)))
    return rows


def _betti_shape(betti):
    return {i: betti.shifts(i) for i in betti.table if i}


def _syzygy_rows(case, f, vectors, label):
    Z = module_syzygies([(p,) for p in gradient(f)], 1, f.ring)
    module = Submodule(Z.columns(), f.ring.ngens, f.ring)
    return [_row(case, f"{label}[{k}]", True, module.contains(v)) for k, v in enumerate(vectors)]


def case_conic_line(case, options):
    F, spec = named_example("conic_line")
    x, y, z = F.ring.gens
    rows = _expectations(case, spec, analyze(F, options).to_dict())
    sat = saturate(gradient_ideal(F)).saturated
    rows.append(_row(case, "saturation", "<x, y*z>", "equal" if ideal_equal(sat, Ideal([x, y * z])) else "differs",
                     ideal_equal(sat, Ideal([x, y * z]))))
    return rows


def case_arr1(case, options, cramer=True):
    F, spec = named_example("arr1")
    options = options if cramer else options.replace(cramer=False)
    rows = _expectations(case, spec, analyze(F, options).to_dict())
    sat = saturate(gradient_ideal(F)).saturated
    degrees = sorted(total_degree(g) for g in minimal_generators(sat))
    rows.append(_row(case, "saturation_generator_degrees", [3, 3, 3, 3], degrees))
    return rows


def case_arr2(case, options):
    F, spec = named_example("arr2")
    report = analyze(F, options).to_dict()
    rows = _expectations(case, spec, report)
    rows.append(_row(case, "d_parity", "odd", report["cramer"]["d_parity"]))
    rows.append(_row(case, "companion_check", True, report["cramer"]["companion_check"]))
    return rows


def case_sextic(case, options):
    F, spec = named_example("sextic")
    x, y, z = F.ring.gens
    report = analyze(F, options.replace(rees=True)).to_dict()
    rows = _expectations(case, spec, report)
    I = gradient_ideal(F)
    sat = saturate(I).saturated
    target = I + Ideal([x**2 * y**4])
    rows.append(_row(case, "saturation", "<I, x^2*y^4>", "equal" if ideal_equal(sat, target) else "differs",
                     ideal_equal(sat, target)))
    _, betti = minimal_free_resolution(sat)
    rows.append(_row(case, "saturation_betti", {1: (5, 5, 5, 6), 2: (7, 7, 7)}, _betti_shape(betti)))
    presentation = symmetric_ideal(I)
    sym = presentation.symmetric_ideal()
    extra = sorted(presentation.bidegree(g) for g in presentation.rees(options.degree_cap).generators
                   if not sym.contains(g))
    rows.append(_row(case, "rees_bidegree_2_2", True, (2, 2) in extra))
    return rows


def case_quintic_plus(case, options):
    rows = []
    for F, spec in quintic_sweep(seed=options.seed):
        label = f"d={spec.params['d']} a={[str(c) for c in spec.params['a']]}."
        rows += _expectations(case, spec, analyze(F, options).to_dict(), label)
    return rows


def _divisible_by_variable(f):
    return any(not f.rem(x) for x in f.ring.gens)


def case_binary_wh(case, options):
    rows = []
    for f, spec in binary_wh_sweep(seed=options.seed):
        label = f"{format_poly(f)}."
        weights = [str(a) for a in weighted_weights(f).weights.weights]
        expected = [str(a) for a in spec.expected["rational_weights"]]
        rows.append(_row(case, label + "weights", expected, weights))
        report = analyze(homogenization_of(f), options).to_dict()
        rows += _nested(case, spec, report, label)
        rows.append(_row(case, label + "free_iff_divisible", report["free"], _divisible_by_variable(f)))
    return rows


def case_cone_binary_wh(case, options):
    rows = []
    for G, spec in binary_wh_sweep(seed=options.seed, cone=True):
        f = spec.parts["f"]
        label = f"cone({format_poly(f)})."
        rows += _expectations(case, spec, analyze(G, options).to_dict(), label)
        check = free_cones_check(f, "z")
        rows.append(_row(case, label + "free_cones", True, bool(check.premise and check.conclusion)))
    return rows


ADDITION_MEMBERS = ((3, (1, 1), (1,)), (4, (1, 1, 2), (1, 2)))


def case_addition(case, options, members=ADDITION_MEMBERS):
    rows = []
    for n, r, subset in members:
        f, spec = family_addition(n, r, subset)
        label = f"n={n} r={list(r)}."
        rows += _expectations(case, spec, analyze(f, options).to_dict(), label)
        rows.append(_row(case, label + "g_free", False, is_free(spec.parts["g"]).free))
        presentation = symmetric_ideal(Ideal(minimal_generators(gradient_ideal(f))))
        check = fitting_F1(presentation.matrix, len(presentation.generators))
        rows.append(_row(case, label + "fitting_F1", True, check.passed))
        rows += _syzygy_rows(case, f, spec.syzygies, label + "echelon_syzygy")
    return rows


def case_addition2(case, options, four_variables=True):
    members = [preset_addition2_boundary()]
    if four_variables:
        members.append(family_addition2(4, 4, 1, "x1*x2*(x1+x2)"))
    rows = []
    for f, spec in members:
        label = f"n={spec.params['n']} h={format_poly(spec.params['h'])}."
        rows += _expectations(case, spec, analyze(f, options).to_dict(), label)
        rows += _syzygy_rows(case, f, spec.syzygies, label + "syzygy")
    return rows


def _m_primary(ideal):
    for x in ideal.ring.gens:
        if not any(ideal.contains(x**k) for k in range(1, 31)):
            return False
    return True


def case_cn1(case, options):
    f, spec = named_example("cn1")
    x, y, z = f.ring.gens
    rows = _expectations(case, spec, analyze(f, options).to_dict())
    euler = 2 * x * f.diff(x) + 3 * y * f.diff(y) + 4 * z * f.diff(z)
    rows.append(_row(case, "euler_identity", True, euler == 12 * f))
    presentation = symmetric_ideal(Ideal(minimal_generators(Ideal((f,) + gradient(f)))))
    rows.append(_row(case, "entries_m_primary", True, _m_primary(presentation.matrix.entries_ideal())))
    F = homogenization_of(f)
    report = analyze(F, options.replace(rees=True)).to_dict()
    rows += _nested(case, spec, report)
    degrees = report["gradient"]["syzygy_degrees"] or []
    rows.append(_row(case, "homogenization.linear_syzygies", 1, degrees.count(1)))
    vector = lin_syzygy_of_homogenization(f).vector
    scale = QQ(1) / vector[0].LC
    X, Y, Z, T = vector[0].ring.gens
    target = (X, Y * QQ(-3, 2), Z * (-4), T * 6)
    rows.append(_row(case, "homogenization.linear_syzygy", [format_poly(v) for v in target],
                     [format_poly(v * scale) for v in vector]))
    return rows


def case_cn2(case, options, full=True):
    """Without ``full`` the Rees elimination and the homogenization in 4 variables are skipped."""
    f, spec = named_example("cn2")
    x, y, z = f.ring.gens
    report = analyze(f, options.replace(rees=True) if full else options).to_dict()
    rows = _expectations(case, spec, report, skip=() if full else ("syzygetic",))
    presentation = symmetric_ideal(Ideal(minimal_generators(Ideal((f,) + gradient(f)))))
    inside = presentation.matrix.entries_ideal().issubset(Ideal([x, y]))
    rows.append(_row(case, "entries_in_<x,y>", True, inside))
    if not full:
        return rows
    sym = presentation.symmetric_ideal()
    extra = [presentation.bidegree(g)[1] for g in presentation.rees(options.degree_cap).generators
             if not sym.contains(g)]
    rows.append(_row(case, "rees_extra_t_degrees", [2], sorted(set(extra))))
    F = homogenization_of(f)
    report = analyze(F, options).to_dict()
    rows += _nested(case, spec, report)
    degrees = report["gradient"]["syzygy_degrees"] or []
    rows.append(_row(case, "homogenization.linear_syzygies", True, degrees.count(1) >= 2, degrees.count(1) >= 2))
    return rows


def case_low_degree(case, options):
    rows = []
    for tag in ("conic", "cusp", "node", "line"):
        F, spec = named_example(tag)
        rows += _expectations(case, spec, analyze(F, options).to_dict(), f"{tag}.")
    return rows


CASES = {
    "01_conic_line": case_conic_line,
    "02_arr1": case_arr1,
    "03_arr2": case_arr2,
    "04_sextic": case_sextic,
    "05_quintic_plus": case_quintic_plus,
    "06_binary_wh": case_binary_wh,
    "07_cone_binary_wh": case_cone_binary_wh,
    "08_addition": case_addition,
    "09_addition2": case_addition2,
    "10_cn1": case_cn1,
    "11_cn2": case_cn2,
    "12_low_degree": case_low_degree,
}

# reduced variants of the cases with 4-variable members, Rees eliminations or a GSC search
QUICK_CASES = {
    "02_arr1": partial(case_arr1, cramer=False),
    "08_addition": partial(case_addition, members=ADDITION_MEMBERS[:1]),
    "09_addition2": partial(case_addition2, four_variables=False),
    "11_cn2": partial(case_cn2, full=False),
}


def list_cases():
    return sorted(CASES)


def run_case(case_id, options=None, quick=False):
    """Run one corpus case; kernel errors become a failing ``error`` row.

    With ``quick`` the reduced variant in ``QUICK_CASES`` runs when there is one.
    """
    if case_id not in CASES:
        raise KeyError(f"unknown corpus case {case_id!r}")
    options = options or AnalysisOptions()
    LOGGER.info(f"running corpus case {case_id}")
    try:
        run = QUICK_CASES.get(case_id, CASES[case_id]) if quick else CASES[case_id]
        return run(case_id, options)
    except FreeDivError as exc:
        LOGGER.error(f"corpus case {case_id} raised {type(exc).__name__}: {exc}")
        return [CheckRow(case_id, "error", "", f"{type(exc).__name__}: {exc}", False)]


def _run(args):
    case_id, options, quick = args
    return run_case(case_id, options, quick)


def run_corpus(case_ids=None, options=None, jobs=1, quick=False):
    """Run corpus cases and collect the check rows in a DataFrame sorted by case."""
    case_ids = sorted(case_ids or list_cases())
    unknown = [c for c in case_ids if c not in CASES]
    if unknown:
        raise KeyError(f"unknown corpus case(s) {unknown}")
    options = options or AnalysisOptions()
    work = [(c, options, quick) for c in case_ids]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, work))
    else:
        results = [_run(w) for w in work]
    rows = [r.to_dict() for batch in results for r in batch]
    frame = pd.DataFrame(rows, columns=["case", "check", "expected", "computed", "passed"])
    return frame.sort_values("case", kind="stable").reset_index(drop=True)
