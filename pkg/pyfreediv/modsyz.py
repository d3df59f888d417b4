"""Graded free modules, syzygies and minimal free resolutions.

Elements of R^k are encoded as polynomials that are linear in marker
variables e_0, ..., e_{k-1}, placed in a lex block ahead of the base
variables. The block order is then a position-over-term module order and the
Buchberger engine of :mod:`pyfreediv.groebner` runs unchanged, restricted to
pairs inside one component. Syzygies are read off extra tag components.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import pandas as pd
from sympy.polys.matrices import DomainMatrix

from .errors import InvariantViolation, PreconditionError
from .groebner import Ideal, buchberger, dimension, minimal_generators
from .poly_core import (
    check_same_ring,
    coerce,
    format_poly,
    fresh_name,
    is_homogeneous,
    order_tag,
    product_ring,
    total_degree,
    variable_names,
)

LOGGER = logging.getLogger(__name__)


class ModuleEncoding:
    """Marker encoding of R^rank (plus optional tag components) as polynomials.

    Args:
        base: The base ring R.
        rank: Number of main components.
        tags: Number of tag components placed after the main ones.
        shifts: Degree shift of every component (main, then tags).
        prefix: Names of auxiliary variables in a leading elimination block.
    """

    def __init__(self, base, rank, tags=0, shifts=None, prefix=()):
        names = variable_names(base)
        taken = list(names)
        self.prefix = []
        for stem in prefix:
            self.prefix.append(fresh_name(taken, stem))
            taken.append(self.prefix[-1])
        self.markers = []
        for k in range(rank + tags):
            self.markers.append(fresh_name(taken, f"_e{k}"))
            taken.append(self.markers[-1])
        base_order = "lex" if order_tag(base) == "lex" else "grevlex"
        self.ring = product_ring([("grevlex", self.prefix), ("lex", self.markers), (base_order, names)])
        self.base = base
        self.rank = rank
        self.tags = tags
        self.offset = len(self.prefix)
        self.width = rank + tags
        self.shifts = tuple(shifts) if shifts is not None else (0,) * self.width

    def component(self, monom):
        block = monom[self.offset:self.offset + self.width]
        return block.index(1)

    def degree(self, monom):
        return sum(monom[self.offset + self.width:]) + self.shifts[self.component(monom)]

    def marker(self, k):
        return self.ring.gens[self.offset + k]

    def prefix_gen(self, k):
        return self.ring.gens[k]

    def encode(self, column, tag=None):
        if len(column) != self.rank:
            raise PreconditionError(f"vector of length {len(column)} in a module of rank {self.rank}")
        v = self.ring.zero
        for k, entry in enumerate(column):
            if entry:
                v += self.marker(k) * coerce(entry, self.ring)
        if tag is not None:
            v += self.marker(self.rank + tag)
        return v

    def decode(self, v):
        """Return (main column, tag column) of a prefix-free encoded element."""
        parts = [dict() for _ in range(self.width)]
        start = self.offset + self.width
        for monom, c in v.items():
            if any(monom[:self.offset]):
                raise InvariantViolation("decoding an element that still involves elimination variables")
            parts[self.component(monom)][monom[start:]] = c
        vectors = [self.base.from_dict(p) for p in parts]
        return tuple(vectors[:self.rank]), tuple(vectors[self.rank:])

    def is_prefix_free(self, v):
        return not any(any(m[:self.offset]) for m in v.itermonoms())


@dataclass(frozen=True)
class GradedFree:
    """Graded free module R(-a_1) + ... + R(-a_r) given by its shifts a_i."""

    shifts: tuple

    @property
    def rank(self):
        return len(self.shifts)

    def __str__(self):
        if not self.shifts:
            return "0"
        counts = Counter(self.shifts)
        return " + ".join(f"R(-{a})^{k}" if k > 1 else f"R(-{a})" for a, k in sorted(counts.items()))


def _vector_degree(vector, shifts):
    """Shift of a vector in a free module with the given component shifts."""
    degrees = {total_degree(e) + s for e, s in zip(vector, shifts) if e}
    if not degrees:
        return None
    return max(degrees)


class GradedMatrix:
    """Matrix of polynomials mapping ``source`` to ``target``.

    Args:
        ring: Base ring.
        rows: Entries as a sequence of rows.
        target: Shifts of the target module (row degrees).
        source: Shifts of the source module; inferred from the columns when None.
    """

    def __init__(self, ring, rows, target=None, source=None):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        nrows = len(self.rows)
        ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise PreconditionError("ragged matrix rows")
        self.shape = (nrows, ncols)
        self.target = GradedFree(tuple(target) if target is not None else (0,) * nrows)
        if source is None:
            source = [_vector_degree(c, self.target.shifts) or 0 for c in self.columns()]
        self.source = GradedFree(tuple(source))
        self.graded = all(
            not e or (is_homogeneous(e) and total_degree(e) == self.source.shifts[j] - self.target.shifts[i])
            for i, r in enumerate(self.rows) for j, e in enumerate(r)
        )

    @classmethod
    def from_columns(cls, ring, columns, target, source=None):
        columns = [tuple(c) for c in columns]
        rows = [tuple(c[i] for c in columns) for i in range(len(target))]
        return cls(ring, rows, target, source)

    def columns(self):
        return [tuple(r[j] for r in self.rows) for j in range(self.shape[1])]

    def column_degrees(self):
        """Standard degrees of the columns: source shift minus the lowest target shift."""
        base = min(self.target.shifts, default=0)
        return tuple(a - base for a in self.source.shifts)

    def transpose(self):
        return GradedMatrix(self.ring, self.columns())

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise PreconditionError(f"cannot compose {self.shape} with {other.shape}")
        cols = other.columns()
        rows = [[sum((a * b for a, b in zip(r, c)), self.ring.zero) for c in cols] for r in self.rows]
        return GradedMatrix(self.ring, rows, self.target.shifts, other.source.shifts)

    def is_zero(self):
        return not any(e for r in self.rows for e in r)

    def has_unit_entry(self):
        return any(e and e.is_ground for r in self.rows for e in r)

    def entries_ideal(self):
        return Ideal([e for r in self.rows for e in r if e], self.ring)

    def to_strings(self):
        return [[format_poly(e) for e in r] for r in self.rows]

    def __repr__(self):
        return f"GradedMatrix({self.shape[0]}x{self.shape[1]}, {self.target} <- {self.source})"


class Submodule:
    """Submodule of R^rank generated by columns, with a cached module Groebner basis."""

    def __init__(self, columns, rank, ring, shifts=None):
        self.columns = [tuple(c) for c in columns]
        self.rank = rank
        self.ring = ring
        self.encoding = ModuleEncoding(ring, rank, shifts=shifts)
        self._basis = None
        self._reps = None

    def _compute(self, track):
        if self._basis is None or (track and self._reps is None):
            enc = self.encoding
            gens = [enc.encode(c) for c in self.columns]
            G, reps = buchberger(gens, track=track, component=enc.component, degree=enc.degree)
            self._basis, self._reps = G, reps

    def contains(self, vector):
        self._compute(False)
        v = self.encoding.encode(vector)
        if not self._basis:
            return not v
        return not v.rem(self._basis)

    def lift(self, vector):
        """Coefficients c with vector = sum_j c_j columns[j], or None."""
        self._compute(True)
        v = self.encoding.encode(vector)
        if not v:
            return tuple(self.ring.zero for _ in self.columns)
        if not self._basis:
            return None
        quotients, r = v.div(self._basis)
        if r:
            return None
        coeffs = [self.encoding.ring.zero] * len(self.columns)
        for q, rep in zip(quotients, self._reps):
            if q:
                coeffs = [c + q * a for c, a in zip(coeffs, rep)]
        return tuple(coerce(c, self.ring) for c in coeffs)


def _column_key(vector, shifts):
    degree = _vector_degree(vector, shifts)
    return -1 if degree is None else degree


def irredundant_columns(columns, rank, ring, shifts=None):
    """Drop columns lying in the span of the kept ones, scanning by degree."""
    shifts = tuple(shifts) if shifts is not None else (0,) * rank
    ordered = sorted((tuple(c) for c in columns if any(c)), key=lambda c: _column_key(c, shifts))
    kept = []
    for c in ordered:
        if not kept or not Submodule(kept, rank, ring).contains(c):
            kept.append(c)
    return kept


def module_syzygies(columns, rank, ring, target=None, minimal=True):
    """Generators of the syzygies of the given columns of R^rank.

    Args:
        columns: Vectors of length ``rank``.
        rank: Rank of the ambient free module.
        ring: Base ring.
        target: Shifts of R^rank; zero when None.
        minimal: Drop redundant syzygies (minimal for homogeneous input).

    Returns:
        A :class:`GradedMatrix` whose columns generate the syzygy module.
    """
    columns = [tuple(c) for c in columns]
    m = len(columns)
    target = tuple(target) if target is not None else (0,) * rank
    source = [_vector_degree(c, target) or 0 for c in columns]
    if m == 0:
        return GradedMatrix(ring, [[] for _ in range(0)], (), ())
    enc = ModuleEncoding(ring, rank, tags=m, shifts=target + tuple(source))
    gens = [enc.encode(c, tag=j) for j, c in enumerate(columns)]
    G, _ = buchberger(gens, component=enc.component, degree=enc.degree)
    syz = []
    for g in G:
        if enc.component(g.LM) >= rank:
            main, tag = enc.decode(g)
            if any(main):
                raise InvariantViolation("tag-led Groebner element with a nonzero main part")
            syz.append(tag)
    if minimal:
        syz = irredundant_columns(syz, m, ring, source)
    LOGGER.debug(f"syzygies of {m} columns in rank {rank}: {len(syz)} generators")
    if not syz:
        return GradedMatrix(ring, [[] for _ in range(m)], source, ())
    return GradedMatrix.from_columns(ring, syz, source)


def syzygies(gens):
    """Minimal generating syzygies of a sequence of polynomials."""
    gens = list(gens)
    if not gens:
        raise PreconditionError("syzygies of an empty sequence")
    ring = gens[0].ring
    check_same_ring(*gens)
    return module_syzygies([(g,) for g in gens], 1, ring)


def koszul_syzygies(gens):
    """The (m choose 2) columns f_j e_i - f_i e_j."""
    gens = list(gens)
    if len(gens) < 2:
        raise PreconditionError("Koszul syzygies need at least two generators")
    ring = gens[0].ring
    columns = []
    for i, j in combinations(range(len(gens)), 2):
        col = [ring.zero] * len(gens)
        col[i] = gens[j]
        col[j] = -gens[i]
        columns.append(col)
    target = [total_degree(g) for g in gens]
    return GradedMatrix.from_columns(ring, columns, target)


def submodule_membership(vector, columns, ring=None):
    """Return (member, lift) for a vector and generating columns."""
    vector = tuple(vector)
    ring = ring or vector[0].ring
    lifted = Submodule(columns, len(vector), ring).lift(vector)
    return lifted is not None, lifted


def submodule_intersect(M, N, rank, ring):
    """Generators of M intersected with N, via the t-free part of t*M + (1-t)*N."""
    M = [tuple(c) for c in M if any(c)]
    N = [tuple(c) for c in N if any(c)]
    if not M or not N:
        return []
    enc = ModuleEncoding(ring, rank, prefix=("t",))
    t = enc.prefix_gen(0)
    gens = [t * enc.encode(c) for c in M] + [(1 - t) * enc.encode(c) for c in N]
    G, _ = buchberger(gens, component=enc.component, degree=enc.degree)
    return [enc.decode(g)[0] for g in G if enc.is_prefix_free(g)]


def prune_unit_entries(generators, columns):
    """Remove generators made redundant by syzygies with a unit entry.

    Scans for the lowest row, then the lowest column, holding a nonzero
    constant u; drops that generator and column and replaces every other
    column c by c - (c_i / u) * col_j.

    Returns:
        (generators, columns) after no unit entry remains.
    """
    generators = list(generators)
    columns = [list(c) for c in columns]
    while True:
        hit = None
        for i in range(len(generators)):
            for j, c in enumerate(columns):
                if c[i] and c[i].is_ground:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            return generators, [tuple(c) for c in columns]
        i, j = hit
        pivot = columns[j]
        u = pivot[i].LC
        rest = []
        for k, c in enumerate(columns):
            if k == j:
                continue
            factor = c[i].quo_ground(u)
            new = [a - factor * b for a, b in zip(c, pivot)]
            del new[i]
            if any(new):
                rest.append(new)
        LOGGER.debug(f"pruned generator {i} using column {j}")
        del generators[i]
        columns = rest


def minimal_presentation(gens):
    """Minimal generators of <gens> and a generating set of their syzygies."""
    gens = [g for g in gens if g]
    if not gens:
        raise PreconditionError("presentation of the zero ideal")
    ring = gens[0].ring
    Z = module_syzygies([(g,) for g in gens], 1, ring, minimal=False)
    kept, columns = prune_unit_entries(gens, Z.columns())
    target = [total_degree(g) for g in kept]
    columns = irredundant_columns(columns, len(kept), ring, target)
    if not columns:
        return kept, GradedMatrix(ring, [[] for _ in kept], target, ())
    return kept, GradedMatrix.from_columns(ring, columns, target)


class BettiData:
    """Graded Betti numbers of R/I.

    Args:
        table: Mapping homological degree -> {shift: multiplicity}.
    """

    def __init__(self, table):
        self.table = {i: dict(sorted(row.items())) for i, row in sorted(table.items()) if row}

    @classmethod
    def from_modules(cls, modules):
        return cls({i: Counter(F.shifts) for i, F in enumerate(modules)})

    @property
    def length(self):
        return max(self.table)

    @property
    def regularity(self):
        return max(shift - i for i, row in self.table.items() for shift in row)

    def shifts(self, i):
        row = self.table.get(i, {})
        return tuple(sorted(s for s, k in row.items() for _ in range(k)))

    def to_dict(self):
        return {str(i): {str(s): k for s, k in row.items()} for i, row in self.table.items()}

    def to_frame(self):
        """Betti table as a DataFrame: rows shift - i, columns i."""
        data = {}
        for i, row in self.table.items():
            for shift, k in row.items():
                data.setdefault(i, {})[shift - i] = k
        frame = pd.DataFrame(data).fillna(0).astype(int)
        return frame.sort_index().sort_index(axis=1)

    def __eq__(self, other):
        return isinstance(other, BettiData) and self.table == other.table

    def __repr__(self):
        return f"BettiData({self.table})"


class FreeResolution:
    """Chain of maps d_1, ..., d_k resolving R/I, with d_1 the generator row."""

    def __init__(self, maps, minimal=True):
        self.maps = tuple(maps)
        self.minimal = minimal

    @property
    def length(self):
        return len(self.maps)

    def modules(self):
        return [self.maps[0].target] + [d.source for d in self.maps]

    def betti(self):
        return BettiData.from_modules(self.modules())


def minimal_free_resolution(I):
    """Graded minimal free resolution of R/I and its Betti data."""
    gens = [g for g in I.generators if g]
    if not gens:
        raise PreconditionError("resolution of the zero ideal")
    if not all(is_homogeneous(g) for g in gens):
        raise PreconditionError("minimal free resolutions need a homogeneous ideal")
    if I.is_unit():
        raise PreconditionError("resolution of the unit ideal")
    ring = I.ring
    kept, presentation = minimal_presentation(minimal_generators(I))
    d1 = GradedMatrix(ring, [kept], (0,))
    maps = [d1]
    current = presentation
    while current.shape[1]:
        if current.has_unit_entry():
            raise InvariantViolation("unit entry in a minimal presentation")
        maps.append(current)
        current = module_syzygies(current.columns(), current.shape[0], ring, target=current.source.shifts)
        if len(maps) > ring.ngens + 1:
            raise InvariantViolation("resolution longer than the number of variables")
    resolution = FreeResolution(maps)
    betti = resolution.betti()
    LOGGER.info(f"resolution of length {resolution.length}, regularity {betti.regularity}")
    return resolution, betti


def minors(matrix, t):
    """All t x t minors of a GradedMatrix (or a sequence of rows)."""
    rows = matrix.rows if isinstance(matrix, GradedMatrix) else tuple(tuple(r) for r in matrix)
    ring = matrix.ring if isinstance(matrix, GradedMatrix) else rows[0][0].ring
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if t == 0:
        return [ring.one]
    if t > min(nrows, ncols):
        return []
    domain = ring.to_domain()
    out = []
    for rset in combinations(range(nrows), t):
        for cset in combinations(range(ncols), t):
            block = [[rows[i][j] for j in cset] for i in rset]
            out.append(DomainMatrix(block, (t, t), domain).det())
    return out


def determinant(rows):
    rows = [list(r) for r in rows]
    ring = rows[0][0].ring
    return DomainMatrix(rows, (len(rows), len(rows)), ring.to_domain()).det()


def minor_ideal(matrix, t):
    ring = matrix.ring if isinstance(matrix, GradedMatrix) else matrix[0][0].ring
    return Ideal([m for m in minors(matrix, t) if m], ring)


def matrix_rank(matrix):
    """Rank over the fraction field as the largest t with a nonzero t-minor."""
    rank = 0
    for t in range(1, min(matrix.shape) + 1):
        if any(minors(matrix, t)):
            rank = t
        else:
            break
    return rank


def signed_maximal_minors(matrix):
    """Delta_i = (-1)^i det(matrix without row i) for an m x (m-1) matrix."""
    m, k = matrix.shape
    if k != m - 1:
        raise PreconditionError(f"signed maximal minors need an m x (m-1) matrix, got {m}x{k}")
    out = []
    for i in range(m):
        block = [r for r0, r in enumerate(matrix.rows) if r0 != i]
        delta = determinant(block) if block else matrix.ring.one
        out.append(delta if i % 2 == 0 else -delta)
    return out


def hilbert_burch_ideal(matrix):
    """Ideal of the signed maximal minors of an m x (m-1) matrix."""
    return Ideal(signed_maximal_minors(matrix), matrix.ring)


def hilbert_burch_scalar(gens, matrix):
    """Return c with gens_i = c * Delta_i for all i, or None if no constant works."""
    deltas = signed_maximal_minors(matrix)
    scalar = None
    for g, delta in zip(gens, deltas):
        if not g and not delta:
            continue
        if not g or not delta:
            return None
        q, r = g.div(delta)
        if r or not q.is_ground:
            return None
        if scalar is None:
            scalar = q.LC
        elif q.LC != scalar:
            return None
    return scalar


class ResolutionCheck:
    """Outcome of the acyclicity test; falsy when a map fails."""

    def __init__(self, ok, failing=None, reason=""):
        self.ok = ok
        self.failing = failing
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"ResolutionCheck(ok={self.ok}, failing={self.failing}, reason={self.reason!r})"


def is_resolution(chain):
    """Buchsbaum-Eisenbud acyclicity test for F_k -> ... -> F_1 -> F_0.

    Args:
        chain: Maps d_1, ..., d_k with d_i: F_i -> F_{i-1}.

    Returns:
        A :class:`ResolutionCheck`; ``failing`` is the 1-based index of the map
        that violates a condition.
    """
    chain = list(chain)
    for i in range(len(chain) - 1):
        if chain[i].shape[1] != chain[i + 1].shape[0]:
            return ResolutionCheck(False, i + 1, "maps are not composable")
        if not (chain[i] @ chain[i + 1]).is_zero():
            return ResolutionCheck(False, i + 1, "nonzero composition")
    expected = [0] * (len(chain) + 1)
    for k in range(len(chain), 0, -1):
        expected[k - 1] = chain[k - 1].shape[1] - (expected[k] if k < len(chain) else 0)
    for k, d in enumerate(chain, start=1):
        r = expected[k - 1]
        if r < 0 or matrix_rank(d) != r:
            return ResolutionCheck(False, k, f"rank of map {k} differs from the expected {r}")
        if r == 0:
            continue
        height = dimension(minor_ideal(d, r))[1]
        if height < k:
            return ResolutionCheck(False, k, f"codim I_{r}(d_{k}) = {height} < {k}")
    return ResolutionCheck(True)
