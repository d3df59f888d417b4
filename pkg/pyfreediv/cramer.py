"""Content matrices of saturation pivots and the generic saturation condition (GSC).

For a 3-generated ideal I = <f_1, f_2, f_3> of forms of degree d in three
variables with saturation exponent 1, an element g of I^sat outside I gives
rows g*x_i = sum_j G[i][j] f_j. The 3 x 4 content matrix M_g = (x | G) is
searched for codim I_3(M_g) = 2; a hit makes I a Cramer ideal with companion g.
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from sympy.polys.domains import QQ

from .divisor import gradient_ideal
from .errors import HypothesisError, InvariantViolation, PreconditionError
from .groebner import Ideal, dimension, ideal_equal, minimal_generators, saturate
from .modsyz import GradedMatrix, determinant, is_resolution, minor_ideal, signed_maximal_minors, syzygies
from .oracle import monomials
from .options import AnalysisOptions
from .poly_core import format_poly, homogeneous_component, multivariate_gcd, total_degree

LOGGER = logging.getLogger(__name__)

COEFFICIENT_RANGE = 3


@dataclass
class ContentMatrix:
    """Rows g*x_i = sum_j G[i][j] f_j with every G entry of degree s."""

    generators: tuple
    pivot: object
    column: tuple
    block: tuple
    s: int
    provenance: list = field(default_factory=list)

    @property
    def ring(self):
        return self.pivot.ring

    def matrix(self):
        """M_g as a 3 x 4 GradedMatrix."""
        rows = [(x,) + tuple(r) for x, r in zip(self.column, self.block)]
        return GradedMatrix(self.ring, rows)

    def check_rows(self):
        for x, row in zip(self.column, self.block):
            total = sum((a * f for a, f in zip(row, self.generators)), self.ring.zero)
            if total != self.pivot * x:
                raise InvariantViolation(f"content row fails for x = {format_poly(x)}")
        return True


def _pairwise_coprime(gens):
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not multivariate_gcd(gens[i], gens[j]).is_ground:
                return False
    return True


def content_matrix(gens, g, check_gcd=True):
    """Build M_g from lifts of g*x_i, keeping the degree-s part of every coordinate.

    Raises:
        PreconditionError: g is not in I : <x, y, z>.
        HypothesisError: two generators share a nonconstant factor.
    """
    gens = tuple(gens)
    ring = g.ring
    I = Ideal(gens, ring)
    if check_gcd and not _pairwise_coprime(gens):
        raise HypothesisError("generators have a common factor; rebase them first", hypothesis="coprime generators")
    d = total_degree(gens[0])
    s = total_degree(g) + 1 - d
    block = []
    provenance = []
    for x in ring.gens:
        coeffs = I.lift(g * x)
        if coeffs is None:
            raise PreconditionError(f"{format_poly(g)} is not in I : m")
        block.append(tuple(homogeneous_component(c, s) for c in coeffs))
        provenance.append("lift")
    cm = ContentMatrix(gens, g, tuple(ring.gens), tuple(block), s, provenance)
    cm.check_rows()
    return cm


def perturb(cm, columns, rng):
    """Add random polynomial combinations of syzygy columns to every row of G."""
    ring = cm.ring
    n = ring.ngens
    block = [list(r) for r in cm.block]
    for i in range(len(block)):
        for column in columns:
            gap = cm.s - max(total_degree(e) for e in column if e)
            if gap < 0:
                continue
            exps = monomials(n, gap)
            mono = tuple(int(e) for e in exps[rng.integers(len(exps))])
            c = int(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1))
            if not c:
                continue
            term = ring.from_dict({mono: QQ(c)})
            block[i] = [a + term * b for a, b in zip(block[i], column)]
    out = ContentMatrix(cm.generators, cm.pivot, cm.column, tuple(tuple(r) for r in block), cm.s,
                        ["perturbed"] * len(block))
    out.check_rows()
    return out


def rebase_generators(gens, rng, attempts=4):
    """Yield recombined generator triples: (f1, f1+f2, f1+f3), then seeded unimodular ones."""
    f1, f2, f3 = gens
    yield (f1, f1 + f2, f1 + f3)
    for _ in range(attempts):
        # upper and lower unitriangular factors keep det = 1
        upper = np.eye(3, dtype=int)
        lower = np.eye(3, dtype=int)
        upper[np.triu_indices(3, 1)] = rng.integers(-2, 3, size=3)
        lower[np.tril_indices(3, -1)] = rng.integers(-2, 3, size=3)
        mixer = upper @ lower
        yield tuple(sum((f.mul_ground(QQ(int(a))) for f, a in zip(gens, row)), f1.ring.zero) for row in mixer)


def saturation_pivots(saturation):
    """Generators of I^sat modulo I, in degree order."""
    return list(saturation.extra)


@dataclass
class CramerCertificate:
    content: ContentMatrix
    companion: object
    degree: int
    attempt: int = 0

    @property
    def pivot(self):
        return self.content.pivot

    def minors_ideal(self):
        return minor_ideal(self.content.matrix(), 3)

    def to_dict(self):
        return {
            "pivot": format_poly(self.pivot),
            "matrix": self.content.matrix().to_strings(),
            "companion": format_poly(self.companion),
            "generators": [format_poly(f) for f in self.content.generators],
            "attempt": self.attempt,
        }


def _try(cm, attempt):
    if dimension(minor_ideal(cm.matrix(), 3))[1] != 2:
        return None
    companion = determinant(cm.block)
    return CramerCertificate(cm, companion, total_degree(cm.generators[0]), attempt)


def gsc_search(I, saturation=None, options=None):
    """Search saturation pivots and perturbed lifts for codim I_3(M_g) = 2.

    Returns:
        A :class:`CramerCertificate`, or None when the budget runs out.

    Raises:
        HypothesisError: I is not 3-generated in one degree, not of codim 2,
            or its saturation exponent differs from 1.
    """
    options = options or AnalysisOptions()
    if I.ring.ngens != 3:
        raise HypothesisError("GSC is searched in three variables", hypothesis="plane")
    gens = minimal_generators(I)
    if len(gens) != 3 or len({total_degree(f) for f in gens}) != 1:
        raise HypothesisError("GSC needs three generators of equal degree", hypothesis="3 equal-degree generators")
    if dimension(I)[1] != 2:
        raise HypothesisError("GSC needs a codim 2 ideal", hypothesis="codim 2")
    saturation = saturation or saturate(I)
    if saturation.st != 1:
        raise HypothesisError(f"saturation exponent {saturation.st}, expected 1", hypothesis="saturation exponent 1")

    candidates = [tuple(gens)]
    if not _pairwise_coprime(gens):
        rng = np.random.default_rng([options.seed, 0])
        candidates = [c for c in rebase_generators(gens, rng) if _pairwise_coprime(c)]
        if not candidates:
            raise HypothesisError("no coprime recombination of the generators", hypothesis="coprime generators")
    base = candidates[0]
    columns = syzygies(base).columns()
    for index, g in enumerate(saturation_pivots(saturation)):
        cm = content_matrix(base, g, check_gcd=False)
        cert = _try(cm, 0)
        if cert is not None:
            return cert
        for attempt in range(1, options.gsc_budget + 1):
            rng = np.random.default_rng([options.seed, index, attempt])
            cert = _try(perturb(cm, columns, rng), attempt)
            if cert is not None:
                LOGGER.info(f"GSC certificate after {attempt} perturbed lifts")
                return cert
    LOGGER.warning("GSC search exhausted its budget")
    return None


def hilbert_burch_direction(cert):
    """Check that (signed minors) <- M_g^T is an acyclic complex."""
    transpose = cert.content.matrix().transpose()
    deltas = signed_maximal_minors(transpose)
    row = GradedMatrix(transpose.ring, [deltas])
    return is_resolution([row, transpose])


def cramer_betti_shape(d):
    if d % 2 == 0:
        raise PreconditionError(f"no Cramer resolution shape for even d = {d}")
    return {1: (d,) * 3, 2: ((3 * d + 1) // 2,) * 3, 3: (3 * (d + 1) // 2,)}


def cramer_verify(cert, saturation, betti=None):
    """Check every consequence of the Cramer/saturation theorem for a certificate.

    Returns:
        Mapping check name -> True.

    Raises:
        InvariantViolation: a check fails.
    """
    g = cert.pivot
    d = cert.degree
    I = Ideal(cert.content.generators, g.ring)
    checks = {}

    def expect(name, value):
        if not value:
            raise InvariantViolation(f"Cramer check {name!r} failed for pivot {format_poly(g)}")
        checks[name] = True

    q, r = cert.companion.div(g) if cert.companion else (None, True)
    expect("companion", not r and q.is_ground and bool(q))
    expect("saturation", ideal_equal(I + Ideal([g]), saturation.saturated))
    expect("d_odd", d % 2 == 1)
    expect("pivot_degree", 2 * total_degree(g) == 3 * (d - 1))
    expect("indeg", (saturation.indeg >= d + 1) == (d >= 5))
    if betti is not None:
        expected = cramer_betti_shape(d)
        expect("betti", all(betti.shifts(i) == shape for i, shape in expected.items()) and betti.length == 3)
    expect("minors", ideal_equal(cert.minors_ideal(), I + Ideal([g])))
    expect("hilbert_burch", bool(hilbert_burch_direction(cert)))
    return checks


def cramer_sweep(polynomials, options=None):
    """Return (F, certificate) for the first form whose gradient ideal is Cramer with d = 3."""
    for F in polynomials:
        I = gradient_ideal(F)
        try:
            gens = minimal_generators(I)
            if len(gens) != 3 or total_degree(gens[0]) != 3:
                continue
            saturation = saturate(I)
            cert = gsc_search(I, saturation, options)
        except HypothesisError as exc:
            LOGGER.debug(f"skipping {format_poly(F)}: {exc}")
            continue
        if cert is not None:
            cramer_verify(cert, saturation)
            return F, cert
    return None
