"""Divisor-level semantics: gradient ideals, reducedness, freeness and the report."""
import logging
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import combinations

from sympy.polys.domains import QQ

from .errors import DegreeCapExceeded, HypothesisError, InvariantViolation, PreconditionError
from .groebner import Ideal, dimension, ideal_equal, minimal_generators, saturate
from .modsyz import (
    GradedMatrix,
    hilbert_burch_ideal,
    hilbert_burch_scalar,
    minimal_free_resolution,
    minimal_presentation,
)
from .options import AnalysisOptions
from .poly_core import (
    cone,
    format_poly,
    gradient,
    homogenize,
    is_homogeneous,
    total_degree,
    variable_names,
    weighted_weights,
)

LOGGER = logging.getLogger(__name__)

NOT_COMPUTED = "not_computed"
INCONCLUSIVE = "inconclusive"


def gradient_ideal(f):
    """Ideal of all partial derivatives of ``f``."""
    if f.is_ground:
        raise PreconditionError(f"gradient ideal of the constant {format_poly(f)}")
    if is_homogeneous(f):
        euler_identity(f)
    return Ideal(gradient(f), f.ring)


def jacobian_ideal(f):
    """<f, f_x1, ..., f_xn>; equal to the gradient ideal for Eulerian f."""
    if f.is_ground:
        raise PreconditionError(f"Jacobian ideal of the constant {format_poly(f)}")
    return Ideal((f,) + gradient(f), f.ring)


def euler_identity(F):
    """Check d*F = sum x_i F_xi for a homogeneous F."""
    d = total_degree(F)
    residual = F.mul_ground(QQ(d))
    for x in F.ring.gens:
        residual -= x * F.diff(x)
    if residual:
        raise InvariantViolation(f"Euler identity fails for {format_poly(F)}")
    return True


def is_reduced(f):
    """True iff codim <f, grad f> >= 2 (no repeated factor in characteristic zero)."""
    if f.is_ground:
        raise PreconditionError("reducedness of a constant")
    return dimension(jacobian_ideal(f))[1] >= 2


@dataclass
class FreenessResult:
    """Freeness verdict with its certificate.

    ``certificate`` is the syzygy matrix of the gradient generators when free;
    ``betti`` is filled for homogeneous inputs.
    """

    free: bool
    codim: int
    certificate: object = None
    generators: tuple = ()
    betti: object = None
    resolution: object = None
    note: str = ""

    def __bool__(self):
        return self.free


def _affine_freeness(f, I):
    """Hilbert-Burch test on the Jacobian ideal of a non-homogeneous f."""
    c = dimension(I)[1]
    n = f.ring.ngens
    if c == n + 1:
        return FreenessResult(True, c, note="smooth")
    if c != 2:
        return FreenessResult(False, c, note=f"codim {c} Jacobian ideal")
    # a redundant generating set would let a non-minimal syzygy column into the search
    gens, presentation = minimal_presentation(minimal_generators(I))
    columns = presentation.columns()
    m = len(gens)
    for subset in combinations(range(len(columns)), m - 1):
        rows = [tuple(columns[j][i] for j in subset) for i in range(m)]
        phi = GradedMatrix(f.ring, rows, presentation.target.shifts)
        if ideal_equal(hilbert_burch_ideal(phi), I):
            return FreenessResult(True, c, certificate=phi, generators=gens, note="Hilbert-Burch")
    return FreenessResult(False, c, generators=gens, note="no Hilbert-Burch presentation")


def is_free(F, ideal=None, resolved=None):
    """Decide freeness of the divisor of ``F``.

    Args:
        F: Reduced polynomial in at least two variables.
        ideal: Precomputed gradient (or Jacobian) ideal.
        resolved: Precomputed ``(resolution, betti)`` of the gradient ideal.

    Returns:
        A :class:`FreenessResult`.
    """
    n = F.ring.ngens
    if n < 2:
        raise PreconditionError("freeness needs at least two variables")
    if not is_reduced(F):
        raise HypothesisError(f"{format_poly(F)} is not reduced", hypothesis="reduced")
    if not is_homogeneous(F):
        return _affine_freeness(F, ideal or jacobian_ideal(F))
    I = ideal or gradient_ideal(F)
    if I.is_unit():
        return FreenessResult(True, n + 1, note="hyperplane")
    c = dimension(I)[1]
    resolution, betti = resolved or minimal_free_resolution(I)
    note = "smooth" if c == n and n >= 3 else ""
    if c == 2 and resolution.length == 2:
        gens = resolution.maps[0].rows[0]
        phi = resolution.maps[1]
        if hilbert_burch_scalar(gens, phi) is None:
            raise InvariantViolation(f"maximal minors of the syzygy matrix do not regenerate J_F for {format_poly(F)}")
        return FreenessResult(True, c, phi, tuple(gens), betti, resolution, note)
    return FreenessResult(False, c, None, tuple(resolution.maps[0].rows[0]), betti, resolution, note)


@dataclass
class LinearSyzygy:
    vector: tuple
    weights: object

    def as_strings(self):
        return [format_poly(v) for v in self.vector]


def lin_syzygy_of_homogenization(f, newvar="t"):
    """The linear syzygy ((d a_1 - 1) x_1, ..., (d a_n - 1) x_n, -t) of homogenize(f).

    Raises:
        HypothesisError: f is homogeneous or has no Euler weights.
    """
    if is_homogeneous(f):
        raise HypothesisError(f"{format_poly(f)} is already homogeneous", hypothesis="non-homogeneous")
    classification = weighted_weights(f)
    if not classification.is_eulerian:
        raise HypothesisError(f"{format_poly(f)} is not weighted homogeneous", hypothesis="weighted homogeneous")
    F = homogenize(f, newvar)
    d = total_degree(f)
    gens = F.ring.gens
    vector = [gens[i].mul_ground(QQ(d) * a - 1) for i, a in enumerate(classification.weights.weights)]
    vector.append(-gens[-1])
    if sum((v * F.diff(x) for v, x in zip(vector, gens)), F.ring.zero):
        raise InvariantViolation(f"linear syzygy does not annihilate the gradient of {format_poly(F)}")
    return LinearSyzygy(tuple(vector), classification.weights)


@dataclass
class ConeCheck:
    premise: bool
    conclusion: object = None


def free_cones_check(f, newvar="t"):
    """If the partials of homogenize(f) in the old variables form a perfect codim 2 ideal,
    verify that the gradient ideal of cone(f) is perfect too."""
    F = homogenize(f, newvar)
    partials = [F.diff(x) for x in F.ring.gens[:-1]]
    I_F = Ideal(partials, F.ring)
    if dimension(I_F)[1] != 2:
        return ConeCheck(False)
    resolution, _ = minimal_free_resolution(I_F)
    if resolution.length != 2:
        return ConeCheck(False)
    G = cone(f, newvar)
    J_G = gradient_ideal(G)
    resolution_G, _ = minimal_free_resolution(J_G)
    perfect = dimension(J_G)[1] == 2 and resolution_G.length == 2
    if not perfect:
        raise InvariantViolation(f"gradient ideal of the cone over {format_poly(f)} is not perfect")
    return ConeCheck(True, True)


class Stopwatch:
    """Per-stage wall-clock timings; inert unless enabled."""

    def __init__(self, enabled):
        self.enabled = enabled
        self.stages = {}

    @contextmanager
    def stage(self, name):
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.stages[name] = round(time.perf_counter() - start, 4)

    def to_dict(self):
        return dict(self.stages) if self.enabled else None


@dataclass
class DivisorReport:
    """Aggregate analysis of a divisor; ``to_dict`` gives the JSON schema."""

    input: str
    ring: list
    reduced: bool
    homogeneous: bool
    weights: dict
    gradient: dict = field(default_factory=dict)
    free: object = NOT_COMPUTED
    linear_type: dict = field(default_factory=lambda: {"verdict": NOT_COMPUTED, "route": None})
    syzygetic: object = NOT_COMPUTED
    koszul_saturation: object = NOT_COMPUTED
    koszul_free: object = NOT_COMPUTED
    cramer: dict = field(default_factory=lambda: {
        "gsc": NOT_COMPUTED, "pivot_degree": None, "d_parity": None, "companion_check": NOT_COMPUTED,
    })
    timings: dict = None
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "input": self.input,
            "ring": self.ring,
            "reduced": self.reduced,
            "homogeneous": self.homogeneous,
            "weights": self.weights,
            "gradient": self.gradient,
            "free": self.free,
            "linear_type": self.linear_type,
            "syzygetic": self.syzygetic,
            "koszul_saturation": self.koszul_saturation,
            "koszul_free": self.koszul_free,
            "cramer": self.cramer,
            "timings": self.timings,
            "notes": self.notes,
        }


def _gradient_summary(codim, betti=None, saturation=None, syzygy_degrees=None):
    summary = {
        "codim": codim,
        "betti": betti.to_dict() if betti is not None else None,
        "regularity": betti.regularity if betti is not None else None,
        "st": NOT_COMPUTED,
        "indeg": NOT_COMPUTED,
        "syzygy_degrees": list(syzygy_degrees) if syzygy_degrees is not None else None,
    }
    if saturation is not None:
        summary["st"] = saturation.st
        summary["indeg"] = None if math.isinf(saturation.indeg) else saturation.indeg
    return summary


def analyze(F, options=None):
    """Populate a :class:`DivisorReport` for ``F``.

    Args:
        F: Nonconstant polynomial.
        options: :class:`AnalysisOptions`; defaults when None.
    """
    from .cramer import cramer_verify, gsc_search
    from .typecheck import (
        is_koszul_free,
        is_linear_type,
        is_syzygetic,
        koszul_saturation_check,
        symmetric_ideal,
    )

    options = options or AnalysisOptions()
    if F.is_ground:
        raise PreconditionError(f"cannot analyze the constant {format_poly(F)}")
    watch = Stopwatch(options.timings)
    n = F.ring.ngens
    homogeneous = is_homogeneous(F)
    with watch.stage("weights"):
        classification = weighted_weights(F)
    with watch.stage("reduced"):
        reduced = is_reduced(F)
    report = DivisorReport(
        input=format_poly(F),
        ring=list(variable_names(F.ring)),
        reduced=reduced,
        homogeneous=homogeneous,
        weights=classification.to_dict(),
    )
    if not reduced:
        report.notes.append("non-reduced input: freeness and blowup checks skipped")
        report.gradient = _gradient_summary(dimension(jacobian_ideal(F))[1])
        report.timings = watch.to_dict()
        return report

    I = gradient_ideal(F) if homogeneous else jacobian_ideal(F)
    with watch.stage("dimension"):
        codim = dimension(I)[1]
    resolved = None
    saturation = None
    if homogeneous and not I.is_unit():
        with watch.stage("resolution"):
            resolved = minimal_free_resolution(I)
        if options.saturation:
            with watch.stage("saturation"):
                saturation = saturate(I)
    elif not homogeneous:
        report.notes.append("non-homogeneous input: freeness decided on <f, grad f> by Hilbert-Burch")

    with watch.stage("free"):
        freeness = is_free(F, ideal=I, resolved=resolved)
    report.free = freeness.free
    if freeness.note:
        report.notes.append(freeness.note)

    presentation = None
    if not I.is_unit():
        presentation = symmetric_ideal(Ideal(minimal_generators(I), F.ring))
    syzygy_degrees = None
    if presentation is not None and presentation.matrix.graded:
        syzygy_degrees = sorted(presentation.matrix.column_degrees())
    report.gradient = _gradient_summary(codim, resolved[1] if resolved else None, saturation, syzygy_degrees)

    if saturation is not None and codim == 2 and n == 3:
        saturated = saturation.st == 0
        if saturated != freeness.free:
            raise InvariantViolation(
                f"freeness by resolution length ({freeness.free}) disagrees with saturation ({saturated})"
            )

    if presentation is not None:
        with watch.stage("linear_type"):
            try:
                verdict = is_linear_type(
                    presentation, route=options.route, perfect=freeness.free and codim == 2,
                    allow_rees=options.rees or options.route != "fitting", degree_cap=options.degree_cap,
                )
                report.linear_type = {"verdict": verdict.verdict, "route": verdict.route}
            except DegreeCapExceeded as exc:
                report.linear_type = {"verdict": INCONCLUSIVE, "route": "rees"}
                report.notes.append(str(exc))
        with watch.stage("syzygetic"):
            if options.rees:
                try:
                    report.syzygetic = is_syzygetic(presentation, degree_cap=options.degree_cap)
                except DegreeCapExceeded as exc:
                    report.syzygetic = INCONCLUSIVE
                    report.notes.append(str(exc))
            elif report.linear_type["verdict"] is True:
                report.syzygetic = True
        if saturation is not None:
            with watch.stage("koszul_saturation"):
                report.koszul_saturation = koszul_saturation_check(presentation, saturation)
            if n > 3:
                report.notes.append("koszul_saturation in more than 3 variables is a raw module computation")

    if n == 3 or options.extend_n:
        with watch.stage("koszul_free"):
            if classification.is_eulerian or homogeneous:
                verdict = is_koszul_free(F, freeness=freeness, extend_n=options.extend_n)
                report.koszul_free = verdict.koszul_free
                report.notes.append("koszul_free in the s1 sense")
                if n > 3:
                    report.notes.append("koszul_free beyond 3 variables is experimental")

    if report.free is True and report.linear_type["verdict"] is True and report.koszul_free is False and n == 3:
        raise InvariantViolation("free divisor of linear type reported as not Koszul free")

    if (options.cramer and homogeneous and n == 3 and saturation is not None and saturation.st == 1
            and codim == 2 and len(presentation.generators) == 3
            and len({total_degree(g) for g in presentation.generators}) == 1):
        with watch.stage("cramer"):
            certificate = gsc_search(presentation.ideal(), saturation, options)
            if certificate is None:
                report.cramer = {
                    "gsc": INCONCLUSIVE, "pivot_degree": None,
                    "d_parity": None, "companion_check": NOT_COMPUTED,
                }
            else:
                checks = cramer_verify(certificate, saturation, resolved[1])
                report.cramer = {
                    "gsc": True,
                    "pivot_degree": total_degree(certificate.pivot),
                    "d_parity": "odd" if certificate.degree % 2 else "even",
                    "companion_check": checks["companion"],
                }
    report.timings = watch.to_dict()
    LOGGER.info(f"analyzed {report.input}: free={report.free}, linear_type={report.linear_type['verdict']}")
    return report
