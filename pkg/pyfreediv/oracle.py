"""Macaulay-matrix brute force over all monomials of a fixed degree.

Independent of the Groebner engine: every question is reduced to the rank of
an explicit coefficient matrix over QQ.
"""
from functools import lru_cache

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import PreconditionError
from .poly_core import check_same_ring, is_homogeneous, total_degree


@lru_cache(maxsize=None)
def _compositions(n, degree):
    if n == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in _compositions(n - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def monomials(n, degree):
    """Exponent vectors of all monomials of ``degree`` in ``n`` variables, lex descending."""
    if degree < 0:
        return np.zeros((0, n), dtype=int)
    return np.array(_compositions(n, degree), dtype=int).reshape(-1, n)


def _index(n, degree):
    return {tuple(int(e) for e in row): k for k, row in enumerate(monomials(n, degree))}


def _rank(columns, nrows):
    if not columns:
        return 0
    rows = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
    return DomainMatrix(rows, (nrows, len(columns)), QQ).rank()


def _coefficients(p, index):
    vec = [QQ(0)] * len(index)
    for monom, c in p.items():
        vec[index[monom]] = QQ(c)
    return vec


def _multiples(gens, degree):
    """All mu * g with deg mu = degree - deg g."""
    n = gens[0].ring.ngens
    out = []
    for g in gens:
        gap = degree - total_degree(g)
        for row in monomials(n, gap):
            out.append(g.mul_monom(tuple(int(e) for e in row)))
    return out


def oracle_membership(f, gens):
    """Homogeneous f lies in <gens> iff appending it keeps the rank."""
    gens = [g for g in gens if g]
    if not f:
        return True
    check_same_ring(f, *gens)
    if not (is_homogeneous(f) and all(is_homogeneous(g) for g in gens)):
        raise PreconditionError("the Macaulay oracle needs homogeneous input")
    degree = total_degree(f)
    index = _index(f.ring.ngens, degree)
    columns = [_coefficients(p, index) for p in _multiples(gens, degree)]
    return _rank(columns, len(index)) == _rank(columns + [_coefficients(f, index)], len(index))


def oracle_syzygy_dimension(gens, degree):
    """Dimension of {(a_j) : sum a_j g_j = 0, deg a_j = degree - deg g_j}."""
    gens = list(gens)
    if not all(g and is_homogeneous(g) for g in gens):
        raise PreconditionError("the Macaulay oracle needs nonzero homogeneous generators")
    index = _index(gens[0].ring.ngens, degree)
    columns = [_coefficients(p, index) for p in _multiples(gens, degree)]
    return len(columns) - _rank(columns, len(index))


def span_dimension(columns, degree, shifts):
    """Dimension of the degree part of the submodule generated by ``columns``.

    Args:
        columns: Homogeneous vectors of polynomials.
        degree: Degree of the graded piece.
        shifts: Shifts of the components of the ambient free module.
    """
    columns = [tuple(c) for c in columns if any(c)]
    if not columns:
        return 0
    ring = next(e for e in columns[0] if e).ring
    n = ring.ngens
    blocks = [_index(n, degree - a) for a in shifts]
    offsets = np.cumsum([0] + [len(b) for b in blocks])
    size = int(offsets[-1])
    vectors = []
    for column in columns:
        lead = next(k for k, e in enumerate(column) if e)
        cdeg = total_degree(column[lead]) + shifts[lead]
        for row in monomials(n, degree - cdeg):
            mono = tuple(int(e) for e in row)
            vec = [QQ(0)] * size
            for k, e in enumerate(column):
                if e:
                    for monom, c in e.mul_monom(mono).items():
                        vec[int(offsets[k]) + blocks[k][monom]] = QQ(c)
            vectors.append(vec)
    return _rank(vectors, size)
