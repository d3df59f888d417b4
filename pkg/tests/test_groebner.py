import numpy as np
import pytest

from pyfreediv.errors import DegreeCapExceeded, PreconditionError
from pyfreediv.families import named_example
from pyfreediv.groebner import (
    Ideal,
    buchberger,
    colon,
    dimension,
    eliminate,
    ideal_equal,
    intersect,
    maximal_ideal,
    minimal_generators,
    saturate,
)
from pyfreediv.poly_core import format_poly, parse_poly, polynomial_ring, total_degree

from .utils import random_poly


@pytest.fixture
def R():
    return polynomial_ring("x,y,z")


def ideal(R, *texts):
    return Ideal([parse_poly(t, R) for t in texts], R)


def test_reduced_basis_of_a_twisted_cubic(R):
    R4 = polynomial_ring("a,b,c,d")
    I = ideal(R4, "a*c-b^2", "b*d-c^2", "a*d-b*c")
    G = I.basis()
    assert len(G) == 3
    assert all(g.LC == 1 for g in G)
    assert dimension(I) == (2, 2)


def test_membership_and_lift(R):
    x, y, z = R.gens
    I = ideal(R, "x^2-y", "x*y-z")
    f = (x + z) * (x**2 - y) + y * (x * y - z)
    assert I.contains(f)
    coeffs = I.lift(f)
    assert sum((c * g for c, g in zip(coeffs, I.generators)), R.zero) == f
    assert I.lift(x) is None
    assert I.lift(R.zero) == (R.zero, R.zero)


def test_unit_and_zero(R):
    assert ideal(R, "x", "x+1").is_unit()
    assert dimension(ideal(R, "x", "x+1")) == (-1, 4)
    zero = Ideal([], R)
    assert zero.is_zero()
    assert dimension(zero) == (3, 0)
    with pytest.raises(PreconditionError):
        Ideal([])


@pytest.mark.parametrize("gens, expected", [
    (["x"], (2, 1)),
    (["x", "y"], (1, 2)),
    (["x*y", "x*z"], (2, 1)),
    (["y*z", "x*z", "x*y"], (1, 2)),
    (["x", "y", "z"], (0, 3)),
])
def test_dimension(R, gens, expected):
    assert dimension(ideal(R, *gens)) == expected


def test_degree_cap(R):
    I = ideal(R, "x^2-y", "x*y-z")
    with pytest.raises(DegreeCapExceeded) as exc:
        buchberger(list(I.generators), degree_cap=1)
    assert exc.value.cap == 1
    assert exc.value.degree == 2
    G, _ = buchberger(list(I.generators), degree_cap=2)
    assert ideal_equal(Ideal(G), I)


def test_tracked_basis(R):
    I = ideal(R, "x^2+y", "x*y+z")
    G, T = I.tracked_basis()
    for g, row in zip(G, T):
        assert sum((a * f for a, f in zip(row, I.generators)), R.zero) == g


def test_intersect_and_colon(R):
    x, y, z = R.gens
    meet = intersect(ideal(R, "x"), ideal(R, "y"))
    assert ideal_equal(meet, ideal(R, "x*y"))
    assert ideal_equal(colon(ideal(R, "x*y", "x*z"), ideal(R, "x")), ideal(R, "y", "z"))
    assert colon(ideal(R, "x"), ideal(R, "x")).is_unit()


def test_eliminate(R):
    I = ideal(R, "x-y^2", "z-y^3")
    E = eliminate(I, ["y"])
    assert [format_poly(g) for g in E.basis()] == ["x^3 - z^2"]
    with pytest.raises(PreconditionError):
        eliminate(I, ["w"])
    with pytest.raises(PreconditionError):
        eliminate(I, ["x", "y", "z"])


def test_saturation_of_the_conic_and_line(R):
    I = ideal(R, "3*x^2+y*z", "x*z", "x*y")
    data = saturate(I)
    assert data.st == 2
    assert data.indeg == 1
    assert ideal_equal(data.saturated, ideal(R, "x", "y*z"))
    assert data.to_dict() == {"st": 2, "indeg": 1}


def test_saturated_ideal(R):
    data = saturate(ideal(R, "y*z", "x*z", "x*y"))
    assert data.st == 0
    assert data.extra == ()
    assert data.to_dict() == {"st": 0, "indeg": None}


def test_saturation_of_a_power_of_the_maximal_ideal(R):
    m2 = maximal_ideal(R) * maximal_ideal(R)
    data = saturate(m2)
    assert data.saturated.is_unit()
    assert data.indeg == 0


def test_minimal_generators(R):
    I = ideal(R, "x*y", "x*y*z", "x^2", "x^2+x*y")
    gens = minimal_generators(I)
    assert len(gens) == 2
    assert all(total_degree(g) == 2 for g in gens)
    assert ideal_equal(Ideal(gens), I)


def gradient_generators(tag):
    F, _ = named_example(tag)
    return [F.diff(x) for x in F.ring.gens]


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("tag", ["conic_line", "arr1", "cusp"])
def test_basis_is_independent_of_generator_order(tag, seed):
    gens = gradient_generators(tag)
    rng = np.random.default_rng(seed)
    shuffled = [gens[int(i)] * int(rng.integers(1, 10)) for i in rng.permutation(len(gens))]
    assert Ideal(shuffled).basis() == Ideal(gens).basis()


@pytest.mark.parametrize("seed", range(2))
def test_twisted_cubic_basis_is_independent_of_generator_order(seed):
    R4 = polynomial_ring("a,b,c,d")
    gens = [parse_poly(t, R4) for t in ("a*c-b^2", "b*d-c^2", "a*d-b*c")]
    rng = np.random.default_rng(seed)
    shuffled = [gens[int(i)] * int(rng.integers(1, 10)) for i in rng.permutation(3)]
    assert Ideal(shuffled).basis() == Ideal(gens).basis()


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("tag", ["conic_line", "arr1"])
def test_random_members_lift(tag, seed):
    gens = gradient_generators(tag)
    R = gens[0].ring
    I = Ideal(gens)
    rng = np.random.default_rng(seed)
    f = sum((random_poly(R, rng, 3) * g for g in gens), R.zero)
    assert I.contains(f)
    coeffs = I.lift(f)
    assert sum((c * g for c, g in zip(coeffs, gens)), R.zero) == f
    # I is homogeneous and proper, so f + 1 has normal form 1
    assert I.lift(f + 1) is None
    assert I.normal_form(f + 1) == R.one


@pytest.mark.parametrize("tag", ["conic_line", "arr1"])
def test_saturation_is_idempotent(tag):
    I = Ideal(gradient_generators(tag))
    data = saturate(I)
    assert I.issubset(colon(I, maximal_ideal(I.ring)))
    assert I.issubset(data.saturated)
    assert saturate(data.saturated).st == 0


def test_saturation_of_a_unit_ideal_is_immediate(R):
    m2 = maximal_ideal(R) * maximal_ideal(R)
    assert saturate(saturate(m2).saturated).st == 0
