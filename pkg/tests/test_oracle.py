import numpy as np
import pytest

from pyfreediv.errors import PreconditionError
from pyfreediv.groebner import Ideal
from pyfreediv.modsyz import syzygies
from pyfreediv.oracle import monomials, oracle_membership, oracle_syzygy_dimension, span_dimension
from pyfreediv.poly_core import parse_poly, polynomial_ring, total_degree

from .utils import random_poly


@pytest.fixture
def R():
    return polynomial_ring("x,y,z")


def test_monomials():
    assert monomials(3, 2).shape == (6, 3)
    assert monomials(2, -1).shape == (0, 2)
    assert monomials(3, 1).tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_membership_agrees_with_groebner(R, degree):
    gens = [parse_poly(t, R) for t in ("3*x^2+y*z", "x*z", "x*y")]
    I = Ideal(gens)
    for row in monomials(3, degree):
        mono = R.from_dict({tuple(int(e) for e in row): 1})
        assert oracle_membership(mono, gens) == I.contains(mono)


def test_membership_rejects_affine_input(R):
    x, y, z = R.gens
    with pytest.raises(PreconditionError):
        oracle_membership(x + 1, [x, y])
    assert oracle_membership(R.zero, [x])


def test_syzygy_dimension(R):
    x, y, z = R.gens
    gens = [y * z, x * z, x * y]
    assert oracle_syzygy_dimension(gens, 2) == 0
    assert oracle_syzygy_dimension(gens, 3) == 2
    columns = syzygies(gens).columns()
    assert span_dimension(columns, 3, (2, 2, 2)) == 2
    # degree 4 pieces of the syzygy module and of its span agree
    assert span_dimension(columns, 4, (2, 2, 2)) == oracle_syzygy_dimension(gens, 4)


SUITE_DIVISORS = [
    "x*y*z",
    "x*(x^2+y*z)",
    "x*y*z*(x+y+z)",
    "y^2*z-x^3",
    "y^2*z-x^2*(x+z)",
    "y^4*z+x^5+x^2*y^3+x*y^4+y^5",
]


def suite_gradient(text):
    R = polynomial_ring("x,y,z")
    F = parse_poly(text, R)
    return [F.diff(x) for x in R.gens]


def graded_ideal_dimension(I, degree):
    """Number of degree monomials in the initial ideal of I."""
    leads = [g.LM for g in I.basis()]
    return sum(
        1 for row in monomials(3, degree)
        if any(all(int(e) >= a for e, a in zip(row, lead)) for lead in leads)
    )


@pytest.mark.parametrize("degree", range(2, 10))
@pytest.mark.parametrize("text", SUITE_DIVISORS)
def test_oracle_agrees_with_groebner_on_graded_pieces(text, degree):
    gens = suite_gradient(text)
    I = Ideal(gens)
    multiples = sum(len(monomials(3, degree - total_degree(g))) for g in gens)
    assert graded_ideal_dimension(I, degree) == multiples - oracle_syzygy_dimension(gens, degree)
    Z = syzygies(gens)
    assert span_dimension(Z.columns(), degree, Z.target.shifts) == oracle_syzygy_dimension(gens, degree)


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("text", SUITE_DIVISORS)
def test_random_forms_membership(text, seed):
    gens = suite_gradient(text)
    R = gens[0].ring
    I = Ideal(gens)
    rng = np.random.default_rng(seed)
    degree = total_degree(gens[0]) + int(rng.integers(0, 3))
    for _ in range(3):
        f = sum((random_poly(R, rng, degree - total_degree(g), homogeneous=True) * g for g in gens), R.zero)
        if rng.integers(2):
            f += random_poly(R, rng, degree, terms=1, homogeneous=True)
        assert oracle_membership(f, gens) == I.contains(f)
