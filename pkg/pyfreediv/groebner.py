"""Groebner bases with Buchberger's algorithm and the derived ideal operations.

The engine follows the classic pair-set formulation: every new basis element
updates the pair set with the Gebauer-Moeller criteria, pairs are selected by
the normal (sugar) strategy and the result is minimalized and interreduced.
Optionally every basis element carries its representation in the input
generators, which gives lifts and the transformation matrix of an ideal.

The same engine runs on module encodings (see :mod:`pyfreediv.modsyz`): a
``component`` callable restricts pairs to a common lead component and a
``degree`` callable measures degrees in the base variables only.
"""
import logging
import math
import threading
from itertools import combinations

import numpy as np

from .errors import DegreeCapExceeded, PreconditionError
from .poly_core import (
    check_same_ring,
    coerce,
    exact_div,
    format_poly,
    fresh_name,
    is_homogeneous,
    polynomial_ring,
    product_ring,
    total_degree,
    variable_names,
)

LOGGER = logging.getLogger(__name__)


def spoly(f, g, lmf=None, lmg=None):
    """Return the s-polynomial of monic f and g and the two monomial multipliers."""
    lmf = f.LM if lmf is None else lmf
    lmg = g.LM if lmg is None else lmg
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    mf = R.monomial_div(lcm, lmf)
    mg = R.monomial_div(lcm, lmg)
    return f.mul_monom(mf) - g.mul_monom(mg), mf, mg


def _combine(rep_f, mf, rep_g, mg):
    return [a.mul_monom(mf) - b.mul_monom(mg) for a, b in zip(rep_f, rep_g)]


def reduce(g, F, rep=None, reps=None):
    """Fully reduce g by F; with ``rep`` given also return the updated representation."""
    if not F:
        return g, rep
    if rep is None:
        return g.rem(F), None
    quotients, r = g.div(F)
    rep = list(rep)
    for q, rep_k in zip(quotients, reps):
        if q:
            rep = [a - q * b for a, b in zip(rep, rep_k)]
    return r, rep


def select(G, P, lmG, degree):
    """Select the pair with the smallest lcm by degree, then by the ring order."""
    R = G[0].ring

    def key(p):
        lcm = R.monomial_lcm(lmG[p[0]], lmG[p[1]])
        return degree(lcm), R.order(lcm), p

    return min(P, key=key)


def update(G, P, f, lmG, component=None):
    """Return the new basis and pair set after adding the monic f (Gebauer-Moeller)."""
    lmf = f.LM
    R = f.ring
    lcm = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div

    P = {p for p in P if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))}
    candidates = range(len(G))
    if component is not None:
        c = component(lmf)
        candidates = [i for i in candidates if component(lmG[i]) == c]
    lcm_dict = {}
    for i in candidates:
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized_lcms = []
    for L in sorted(lcm_dict.keys(), key=R.order):
        if all(not div(L, L_) for L_ in minimalized_lcms):
            minimalized_lcms.append(L)
    P_ = set()
    for L in minimalized_lcms:
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            P_.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | P_


def minimalize(G, reps=None):
    """Drop elements whose lead monomial is divisible by another lead monomial."""
    if not G:
        return [], ([] if reps is not None else None)
    R = G[0].ring
    order = sorted(range(len(G)), key=lambda k: R.order(G[k].LM))
    kept = []
    for k in order:
        if all(not R.monomial_div(G[k].LM, G[j].LM) for j in kept):
            kept.append(k)
    return [G[k] for k in kept], ([reps[k] for k in kept] if reps is not None else None)


def interreduce(G, reps=None):
    """Return the reduced basis from a minimal basis, sorted ascending by lead monomial."""
    Gred, reps_red = [], []
    for i in range(len(G)):
        others = G[:i] + G[i + 1:]
        if reps is None:
            g, _ = reduce(G[i], others)
            rep = None
        else:
            g, rep = reduce(G[i], others, reps[i], reps[:i] + reps[i + 1:])
        c = g.LC
        Gred.append(g.quo_ground(c))
        if rep is not None:
            reps_red.append([a.quo_ground(c) for a in rep])
    return Gred, (reps_red if reps is not None else None)


def _standard_degree(monom):
    return sum(monom)


def buchberger(F, track=False, component=None, degree=None, degree_cap=None):
    """Return the reduced Groebner basis of F.

    Args:
        F: Polynomials of a common ring.
        track: Also return, per basis element, its coefficients in F.
        component: Callable mapping a lead monomial to its module component;
            pairs are only formed inside one component.
        degree: Callable giving the degree of an exponent vector; used for pair
            selection and the degree cap. Defaults to the total degree.
        degree_cap: Abort with :class:`DegreeCapExceeded` once a new basis
            element exceeds this degree.

    Returns:
        ``(G, reps)`` with ``reps`` None unless ``track`` is set.
    """
    if not F:
        return [], ([] if track else None)
    R = F[0].ring
    check_same_ring(*F)
    degree = degree or _standard_degree
    m = len(F)

    G, lmG, reps = [], [], []
    P = set()
    for j, f in enumerate(F):
        if not f:
            continue
        c = f.LC
        G, P = update(G, P, f.quo_ground(c), lmG, component)
        lmG.append(f.LM)
        if track:
            unit = [R.zero] * m
            unit[j] = R.one.quo_ground(c)
            reps.append(unit)
    if not G:
        return [], ([] if track else None)

    reductions = 0
    while P:
        i, j = select(G, P, lmG, degree)
        P.remove((i, j))
        s, mi, mj = spoly(G[i], G[j], lmf=lmG[i], lmg=lmG[j])
        rep = _combine(reps[i], mi, reps[j], mj) if track else None
        r, rep = reduce(s, G, rep, reps if track else None)
        reductions += 1
        if r:
            if degree_cap is not None:
                top = max(degree(mono) for mono in r.itermonoms())
                if top > degree_cap:
                    raise DegreeCapExceeded(top, degree_cap)
            c = r.LC
            G, P = update(G, P, r.quo_ground(c), lmG, component)
            lmG.append(r.LM)
            if track:
                reps.append([a.quo_ground(c) for a in rep])

    G, reps = minimalize(G, reps if track else None)
    G, reps = interreduce(G, reps)
    LOGGER.debug(f"buchberger: {len(F)} generators, {reductions} reductions, basis of size {len(G)}")
    return G, reps


class Ideal:
    """Ideal of a polynomial ring given by generators.

    The reduced Groebner basis (and, on request, the transformation matrix
    expressing it in the generators) is computed once under a lock and then
    shared read-only.

    Args:
        generators: Polynomials of a common ring.
        ring: Ring of the ideal; required when ``generators`` is empty.
    """

    def __init__(self, generators, ring=None):
        generators = tuple(generators)
        if ring is None:
            if not generators:
                raise PreconditionError("ring required for an ideal without generators")
            ring = generators[0].ring
        if generators:
            check_same_ring(*generators)
            if generators[0].ring != ring:
                raise PreconditionError("generators do not belong to the given ring")
        self.ring = ring
        self.generators = generators
        self._lock = threading.Lock()
        self._basis = None
        self._transform = None

    def __repr__(self):
        return f"Ideal({', '.join(format_poly(g) for g in self.generators)})"

    def basis(self):
        """Reduced Groebner basis, ascending by lead monomial."""
        with self._lock:
            if self._basis is None:
                G, _ = buchberger(list(self.generators))
                self._basis = tuple(G)
            return self._basis

    def tracked_basis(self):
        """Return the reduced basis and rows T with basis[i] = sum_j T[i][j] generators[j]."""
        with self._lock:
            if self._transform is None:
                G, reps = buchberger(list(self.generators), track=True)
                self._basis = tuple(G)
                self._transform = tuple(tuple(row) for row in reps)
            return self._basis, self._transform

    def is_zero(self):
        return not self.basis()

    def is_unit(self):
        G = self.basis()
        return len(G) == 1 and G[0].is_ground

    def is_homogeneous(self):
        return all(is_homogeneous(g) for g in self.generators)

    def normal_form(self, f):
        check_same_ring(f, self.ring.zero)
        G = self.basis()
        return f.rem(list(G)) if G else f

    def contains(self, f):
        return not self.normal_form(f)

    def issubset(self, other):
        return all(other.contains(g) for g in self.generators)

    def lift(self, f):
        """Coefficients c with f = sum_j c_j generators[j], or None if f is not in the ideal."""
        check_same_ring(f, self.ring.zero)
        G, T = self.tracked_basis()
        if not f:
            return tuple(self.ring.zero for _ in self.generators)
        if not G:
            return None
        quotients, r = f.div(list(G))
        if r:
            return None
        coeffs = [self.ring.zero] * len(self.generators)
        for q, row in zip(quotients, T):
            if q:
                coeffs = [c + q * t for c, t in zip(coeffs, row)]
        return tuple(coeffs)

    def __add__(self, other):
        check_same_ring(self.ring.zero, other.ring.zero)
        return Ideal(self.generators + other.generators, self.ring)

    def __mul__(self, other):
        check_same_ring(self.ring.zero, other.ring.zero)
        return Ideal([f * g for f in self.generators for g in other.generators], self.ring)


def groebner_basis(I):
    """Return the reduced Groebner basis of ``I`` with its transformation matrix."""
    return I.tracked_basis()


def normal_form(f, I):
    return I.normal_form(f)


def lift(f, I):
    return I.lift(f)


def ideal_equal(I, J):
    """Equality by mutual membership of generators."""
    return I.issubset(J) and J.issubset(I)


def maximal_ideal(ring):
    return Ideal(ring.gens, ring)


def eliminate(I, names, target=None):
    """Return ``I`` intersected with the subring of the remaining variables.

    Args:
        I: Ideal to eliminate from.
        names: Variable names (or indices) to eliminate.
        target: Ring of the result; defaults to the remaining variables with
            degrevlex order.
    """
    all_names = variable_names(I.ring)
    names = [all_names[v] if isinstance(v, int) else v for v in names]
    unknown = [n for n in names if n not in all_names]
    if unknown:
        raise PreconditionError(f"cannot eliminate unknown variable(s) {unknown}")
    remaining = [n for n in all_names if n not in names]
    if not remaining:
        raise PreconditionError("cannot eliminate every variable")
    if target is None:
        target = polynomial_ring(remaining)
    block = product_ring([("grevlex", names), ("grevlex", remaining)])
    G, _ = buchberger([coerce(g, block) for g in I.generators])
    k = len(names)
    kept = [g for g in G if not any(any(m[:k]) for m in g.itermonoms())]
    LOGGER.debug(f"eliminate {names}: {len(G)} basis elements, {len(kept)} kept")
    return Ideal([coerce(g, target) for g in kept], target)


def intersect(I, J):
    """I intersected with J as the t-free part of <t*I, (1-t)*J>."""
    check_same_ring(I.ring.zero, J.ring.zero)
    if I.is_zero() or J.is_zero():
        return Ideal([], I.ring)
    t = fresh_name(I.ring, "t")
    names = variable_names(I.ring)
    ext = product_ring([("grevlex", [t]), ("grevlex", names)])
    tv = ext.gens[0]
    gens = [tv * coerce(f, ext) for f in I.generators if f]
    gens += [(1 - tv) * coerce(g, ext) for g in J.generators if g]
    G, _ = buchberger(gens)
    kept = [g for g in G if not any(m[0] for m in g.itermonoms())]
    return Ideal([coerce(g, I.ring) for g in kept], I.ring)


def colon(I, J):
    """I : J as the intersection over generators g of J of (I intersect <g>) / g."""
    check_same_ring(I.ring.zero, J.ring.zero)
    gens = [g for g in J.generators if g]
    if not gens:
        raise PreconditionError("colon by the zero ideal")
    result = None
    for g in gens:
        if I.contains(g):
            continue
        meet = intersect(I, Ideal([g]))
        quotient = Ideal([exact_div(h, g) for h in meet.basis()], I.ring)
        result = quotient if result is None else intersect(result, quotient)
    if result is None:
        return Ideal([I.ring.one], I.ring)
    return result


class SaturationData:
    """Saturation I^sat = I : J^inf with its exponent and initial degree.

    Args:
        ideal: The ideal I.
        saturated: I^sat.
        st: Number of strict colon steps (0 iff I is saturated).
        extra: Generators of I^sat not in I, irredundant modulo I, by degree.
    """

    def __init__(self, ideal, saturated, st, extra):
        self.ideal = ideal
        self.saturated = saturated
        self.st = st
        self.extra = tuple(extra)

    @property
    def indeg(self):
        """Smallest degree of a generator of I^sat/I; inf when I is saturated."""
        if not self.extra:
            return math.inf
        return min(total_degree(g) for g in self.extra)

    def to_dict(self):
        return {"st": self.st, "indeg": None if math.isinf(self.indeg) else self.indeg}


def saturate(I, J=None):
    """Saturate ``I`` by ``J`` (the maximal ideal of the variables by default)."""
    if J is None:
        J = maximal_ideal(I.ring)
    current = I
    st = 0
    while True:
        nxt = colon(current, J)
        if nxt.issubset(current):
            break
        current = nxt
        st += 1
        LOGGER.info(f"saturation step {st}: {len(current.basis())} basis elements")
    extra = []
    base = list(I.generators)
    for g in _by_degree(current.basis()):
        if not Ideal(base + extra, I.ring).contains(g):
            extra.append(g)
    saturated = Ideal(list(I.generators) + extra, I.ring) if st else I
    return SaturationData(I, saturated, st, extra)


def _by_degree(polys):
    polys = list(polys)
    if not polys:
        return polys
    R = polys[0].ring
    return sorted(polys, key=lambda g: (total_degree(g), R.order(g.LM)))


def minimal_generators(I):
    """Irredundant generators taken in degree order; minimal for homogeneous ideals."""
    candidates = _by_degree([g for g in I.generators if g])
    basis = [g for g in _by_degree(I.basis()) if g not in candidates]
    candidates = sorted(candidates + basis, key=total_degree)
    kept = []
    for g in candidates:
        if not kept or not Ideal(kept).contains(g):
            kept.append(g)
    return tuple(kept)


def dimension(I):
    """Krull dimension and codimension of R/I from the initial ideal.

    The unit ideal gets dimension -1 and codimension n + 1.
    """
    n = I.ring.ngens
    G = I.basis()
    if not G:
        return n, 0
    if len(G) == 1 and G[0].is_ground:
        return -1, n + 1
    support = np.array([[e > 0 for e in g.LM] for g in G], dtype=bool)
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            mask = np.zeros(n, dtype=bool)
            mask[list(subset)] = True
            # a lead monomial supported inside the subset kills it
            if not np.any(np.all(~support | mask, axis=1)):
                return size, n - size
    return 0, n


def codim(I):
    return dimension(I)[1]
