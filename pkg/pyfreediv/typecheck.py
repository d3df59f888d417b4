"""Blowup algebras of an ideal: symmetric and Rees ideals and the type tests built on them."""
import logging
from dataclasses import dataclass, field

from sympy.polys.domains import QQ

from .divisor import NOT_COMPUTED, is_free
from .errors import DegreeCapExceeded, HypothesisError, InvariantViolation, PreconditionError, RouteDisagreement
from .groebner import Ideal, buchberger, dimension
from .modsyz import (
    Submodule,
    koszul_syzygies,
    matrix_rank,
    minimal_presentation,
    minor_ideal,
    module_syzygies,
    submodule_intersect,
)
from .options import ROUTES
from .poly_core import (
    coerce,
    extend_ring,
    format_poly,
    fresh_name,
    gradient,
    is_homogeneous,
    product_ring,
    variable_names,
    weighted_weights,
)

LOGGER = logging.getLogger(__name__)


def bidegree(p, nbase):
    """(R-degree, T-degree) of a bihomogeneous element of R[T] with ``nbase`` base variables."""
    if not p:
        raise PreconditionError("bidegree of zero")
    monom = p.LM
    return sum(monom[:nbase]), sum(monom[nbase:])


class BlowupPresentation:
    """Presentation data of the blowup algebras of <generators>.

    Args:
        generators: Minimal generators f_1, ..., f_m.
        matrix: Generating syzygies as the columns of an m x k GradedMatrix.
    """

    def __init__(self, generators, matrix):
        self.generators = tuple(generators)
        self.matrix = matrix
        self.base = matrix.ring
        names = list(variable_names(self.base))
        tnames = []
        for i in range(len(self.generators)):
            tnames.append(fresh_name(names + tnames, f"T{i + 1}"))
        self.t_names = tuple(tnames)
        self.ring = extend_ring(self.base, tnames)
        self.t_gens = self.ring.gens[self.base.ngens:]
        self.symmetric = tuple(self.linearize(c) for c in matrix.columns())
        self._rees = None

    def linearize(self, column):
        """sum_i column_i T_i in R[T]."""
        return sum((coerce(a, self.ring) * T for a, T in zip(column, self.t_gens)), self.ring.zero)

    def ideal(self):
        return Ideal(self.generators, self.base)

    def symmetric_ideal(self):
        return Ideal(self.symmetric, self.ring)

    def bidegree(self, p):
        return bidegree(p, self.base.ngens)

    def rees(self, degree_cap=None):
        if self._rees is None:
            self._rees = rees_ideal(self, degree_cap)
        return self._rees

    def __repr__(self):
        return f"BlowupPresentation({len(self.generators)} generators, {len(self.symmetric)} symmetric equations)"


def symmetric_ideal(I):
    """Symmetric-algebra presentation of I from its minimal presentation."""
    gens, matrix = minimal_presentation(list(I.generators))
    return BlowupPresentation(gens, matrix)


def rees_ideal(presentation, degree_cap=None):
    """Rees ideal as the u-free part of <T_i - u f_i> in R[u, T].

    Raises:
        DegreeCapExceeded: The elimination produced an element above ``degree_cap``.
    """
    P = presentation
    names = list(variable_names(P.ring))
    u = fresh_name(names, "u")
    ring = product_ring([("grevlex", [u]), ("grevlex", names)])
    uvar = ring.gens[0]
    gens = [coerce(T, ring) - uvar * coerce(f, ring) for T, f in zip(P.t_gens, P.generators)]
    G, _ = buchberger(gens, degree_cap=degree_cap)
    kept = [coerce(g, P.ring) for g in G if not any(m[0] for m in g.itermonoms())]
    rees = Ideal(kept, P.ring)
    for s in P.symmetric:
        if not rees.contains(s):
            raise InvariantViolation(f"symmetric equation {format_poly(s)} is not a Rees equation")
    LOGGER.debug(f"Rees ideal with {len(kept)} generators, bidegrees {[P.bidegree(g) for g in kept]}")
    return rees


@dataclass
class FittingCheck:
    """Fitting condition F1: codim I_t(phi) >= n + 1 - t for every t."""

    passed: bool
    codims: dict
    failing: int = None

    def __bool__(self):
        return self.passed


def fitting_F1(matrix, n):
    """Check codim I_t(matrix) >= n + 1 - t for 1 <= t <= rank, stopping at the first failure."""
    rank = matrix_rank(matrix)
    codims = {}
    if rank == 0:
        return FittingCheck(False, codims, 1)
    for t in range(1, rank + 1):
        codims[t] = dimension(minor_ideal(matrix, t))[1]
        if codims[t] < n + 1 - t:
            return FittingCheck(False, codims, t)
    return FittingCheck(True, codims)


@dataclass
class LinearTypeVerdict:
    verdict: object
    route: str = None
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        return {"verdict": self.verdict, "route": self.route}


def _fitting_verdict(P, perfect):
    n = P.base.ngens
    m = len(P.generators)
    if m == 1:
        return LinearTypeVerdict(True, "fitting", {"principal": True})
    c = dimension(P.ideal())[1]
    if n == 3 and m == 3 and c == 2:
        height = dimension(P.matrix.entries_ideal())[1]
        return LinearTypeVerdict(height == 3, "fitting", {"codim_I1": height})
    if perfect and c == 2:
        check = fitting_F1(P.matrix, m)
        return LinearTypeVerdict(check.passed, "fitting", {"codims": check.codims, "failing": check.failing})
    return None


def _rees_verdict(P, degree_cap):
    rees = P.rees(degree_cap)
    sym = P.symmetric_ideal()
    extra = [g for g in rees.generators if not sym.contains(g)]
    return LinearTypeVerdict(not extra, "rees", {"extra_equations": [P.bidegree(g) for g in extra]})


def is_linear_type(presentation, route="fitting", perfect=False, allow_rees=True, degree_cap=None):
    """Decide whether Sym(I) and the Rees algebra of I coincide.

    Args:
        presentation: :class:`BlowupPresentation` of I.
        route: ``fitting`` (falls back to the Rees comparison when its
            hypotheses fail and ``allow_rees`` is set), ``rees`` or ``both``.
        perfect: I is already known to be perfect of codimension 2.
        allow_rees: Permit the elimination fallback.
        degree_cap: Degree bound of the Rees elimination.

    Raises:
        RouteDisagreement: ``both`` was requested and the routes disagree.
    """
    if route not in ROUTES:
        raise PreconditionError(f"unknown linear-type route {route!r}")
    P = presentation
    fitting = _fitting_verdict(P, perfect) if route != "rees" else None
    if route == "fitting" and fitting is not None:
        return fitting
    if fitting is None and route == "fitting" and not allow_rees:
        return LinearTypeVerdict(NOT_COMPUTED, None)
    try:
        rees = _rees_verdict(P, degree_cap)
    except DegreeCapExceeded:
        if fitting is not None:
            LOGGER.warning("Rees elimination hit the degree cap; keeping the fitting verdict")
            return fitting
        raise
    if fitting is not None and fitting.verdict != rees.verdict:
        raise RouteDisagreement(f"fitting says {fitting.verdict}, rees says {rees.verdict}")
    if route == "both" and fitting is not None:
        return LinearTypeVerdict(rees.verdict, "both", {**fitting.evidence, **rees.evidence})
    return rees


def is_syzygetic(presentation, degree_cap=None):
    """True iff every Rees equation of T-degree at most 2 lies in the symmetric ideal."""
    P = presentation
    sym = P.symmetric_ideal()
    for g in P.rees(degree_cap).generators:
        if P.bidegree(g)[1] <= 2 and not sym.contains(g):
            LOGGER.info(f"non-symmetric Rees equation of bidegree {P.bidegree(g)}")
            return False
    return True


def koszul_saturation_check(presentation, saturation):
    """Test Z(I) intersected with I^sat R^m against the Koszul syzygies K(I), both ways."""
    P = presentation
    m = len(P.generators)
    if m < 2:
        return True
    ring = P.base
    Z = P.matrix.columns()
    sat = [coerce(g, ring) for g in saturation.saturated.generators if g]
    N = []
    for g in sat:
        for i in range(m):
            col = [ring.zero] * m
            col[i] = g
            N.append(tuple(col))
    meet = submodule_intersect(Z, N, m, ring)
    K = koszul_syzygies(P.generators).columns()
    if not meet:
        return not any(any(c) for c in K)
    forward = Submodule(meet, m, ring)
    backward = Submodule(K, m, ring)
    return all(forward.contains(c) for c in K) and all(backward.contains(c) for c in meet)


@dataclass
class KoszulFreeness:
    koszul_free: bool
    codim: int = None
    reason: str = ""

    def __bool__(self):
        return self.koszul_free


def _euler_form(F, ring, tgens):
    xs = ring.gens[:F.ring.ngens]
    if is_homogeneous(F):
        return sum((x * T for x, T in zip(xs, tgens)), ring.zero)
    classification = weighted_weights(F)
    if not classification.is_eulerian:
        raise HypothesisError(f"{format_poly(F)} has no Euler vector field", hypothesis="eulerian")
    weights = classification.weights.weights
    return sum((x * T * QQ(a) for x, T, a in zip(xs, tgens, weights) if a), ring.zero)


def is_koszul_free(F, freeness=None, extend_n=False):
    """Koszul freeness in the symmetric sense: free and codim D_F(1) = n.

    D_F(1) is generated by the Euler form and the T-linearized syzygies of the
    partial derivatives of F.

    Raises:
        HypothesisError: more than 3 variables without ``extend_n``.
    """
    n = F.ring.ngens
    if n != 3 and not extend_n:
        raise HypothesisError("Koszul freeness is decided for 3 variables only", hypothesis="plane divisor")
    freeness = freeness if freeness is not None else is_free(F)
    if not freeness.free:
        return KoszulFreeness(False, reason="not free")
    names = list(variable_names(F.ring))
    tnames = []
    for i in range(n):
        tnames.append(fresh_name(names + tnames, f"T{i + 1}"))
    ring = extend_ring(F.ring, tnames)
    tgens = ring.gens[n:]
    partials = gradient(F)
    Z = module_syzygies([(g,) for g in partials], 1, F.ring)
    forms = [_euler_form(F, ring, tgens)]
    for column in Z.columns():
        forms.append(sum((coerce(a, ring) * T for a, T in zip(column, tgens)), ring.zero))
    height = dimension(Ideal([g for g in forms if g], ring))[1]
    LOGGER.debug(f"codim D_F(1) = {height} for {format_poly(F)}")
    return KoszulFreeness(height == n, height, "" if height == n else f"codim D_F(1) = {height}")


def regular_sequence_syzygy(presentation):
    """A syzygy column whose entries generate an ideal of codim 3, or None."""
    for column in presentation.matrix.columns():
        entries = [e for e in column if e]
        if entries and dimension(Ideal(entries, presentation.base))[1] >= 3:
            return column
    return None
