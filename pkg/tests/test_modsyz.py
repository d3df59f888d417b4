from itertools import combinations

import pytest

from pyfreediv.errors import PreconditionError
from pyfreediv.groebner import Ideal, codim, ideal_equal
from pyfreediv.modsyz import (
    BettiData,
    GradedMatrix,
    Submodule,
    hilbert_burch_ideal,
    hilbert_burch_scalar,
    is_resolution,
    koszul_syzygies,
    matrix_rank,
    minimal_free_resolution,
    minimal_presentation,
    minor_ideal,
    signed_maximal_minors,
    submodule_intersect,
    submodule_membership,
    syzygies,
)
from pyfreediv.poly_core import parse_poly, polynomial_ring, total_degree


@pytest.fixture
def R():
    return polynomial_ring("x,y,z")


def annihilates(gens, column):
    return not sum((a * g for a, g in zip(column, gens)), gens[0].ring.zero)


def test_syzygies_of_the_normal_crossing(R):
    x, y, z = R.gens
    gens = [y * z, x * z, x * y]
    Z = syzygies(gens)
    assert Z.shape == (3, 2)
    assert Z.graded
    assert Z.column_degrees() == (1, 1)
    assert all(annihilates(gens, c) for c in Z.columns())
    assert ideal_equal(hilbert_burch_ideal(Z), Ideal(gens))


def test_syzygies_of_a_regular_sequence_are_koszul(R):
    x, y, z = R.gens
    gens = [x, y**2, z**3]
    Z = syzygies(gens)
    K = koszul_syzygies(gens)
    assert Z.shape == (3, 3)
    span = Submodule(Z.columns(), 3, R)
    assert all(span.contains(c) for c in K.columns())
    assert sorted(Z.column_degrees()) == [2, 3, 4]


def test_submodule_membership(R):
    x, y, z = R.gens
    columns = [(x, y), (z, R.zero)]
    member, lift = submodule_membership((x * z + z**2, y * z), columns)
    assert member
    assert lift == (z, z)
    member, lift = submodule_membership((y, x), columns)
    assert not member
    assert lift is None


def test_submodule_intersect(R):
    x, y, z = R.gens
    meet = submodule_intersect([(x, R.zero)], [(y, R.zero)], 2, R)
    assert len(meet) == 1
    assert Submodule(meet, 2, R).contains((x * y, R.zero))
    assert not Submodule(meet, 2, R).contains((x, R.zero))
    assert submodule_intersect([(x, R.zero)], [], 2, R) == []


def test_minimal_presentation_prunes_redundant_generators(R):
    x, y, z = R.gens
    gens, matrix = minimal_presentation([x, y, x + y, z])
    assert len(gens) == 3
    assert matrix.shape == (3, 3)
    assert not matrix.has_unit_entry()


def test_resolution_of_the_maximal_ideal(R):
    resolution, betti = minimal_free_resolution(Ideal(R.gens))
    assert resolution.length == 3
    assert betti.to_dict() == {"0": {"0": 1}, "1": {"1": 3}, "2": {"2": 3}, "3": {"3": 1}}
    assert betti.regularity == 0
    assert is_resolution(resolution.maps)


def test_resolution_of_arr1_gradient(R):
    F = parse_poly("x*y*z*(x+y+z)", R)
    I = Ideal([F.diff(v) for v in R.gens])
    resolution, betti = minimal_free_resolution(I)
    assert betti.shifts(1) == (3, 3, 3)
    assert betti.shifts(2) == (5, 5, 5)
    assert betti.shifts(3) == (6,)
    assert betti.regularity == 3
    assert is_resolution(resolution.maps)


def test_betti_frame():
    betti = BettiData({0: {0: 1}, 1: {2: 3}, 2: {3: 2}})
    frame = betti.to_frame()
    assert frame.loc[0, 0] == 1
    assert frame.loc[1, 1] == 3
    assert frame.loc[1, 2] == 2
    assert betti.length == 2


def test_resolution_refuses_bad_input(R):
    x, y, z = R.gens
    with pytest.raises(PreconditionError):
        minimal_free_resolution(Ideal([x + 1]))
    with pytest.raises(PreconditionError):
        minimal_free_resolution(Ideal([R.zero], R))


def test_minors_and_rank(R):
    x, y, z = R.gens
    M = GradedMatrix(R, [[x, y], [y, z], [R.zero, R.zero]])
    assert matrix_rank(M) == 2
    assert ideal_equal(minor_ideal(M, 2), Ideal([x * z - y**2]))
    assert signed_maximal_minors(M) == [R.zero, R.zero, x * z - y**2]
    with pytest.raises(PreconditionError):
        signed_maximal_minors(GradedMatrix(R, [[x, y]]))


def test_hilbert_burch_scalar(R):
    x, y, z = R.gens
    phi = GradedMatrix(R, [[x, R.zero], [-y, y], [R.zero, -z]])
    deltas = signed_maximal_minors(phi)
    assert deltas == [y * z, x * z, x * y]
    assert hilbert_burch_scalar([2 * y * z, 2 * x * z, 2 * x * y], phi) == 2
    assert hilbert_burch_scalar([y * z, x * z, x], phi) is None


def test_is_resolution_detects_failures(R):
    x, y, z = R.gens
    row = GradedMatrix(R, [[x, y]])
    good = GradedMatrix(R, [[y], [-x]])
    bad = GradedMatrix(R, [[y], [x]])
    assert is_resolution([row, good])
    check = is_resolution([row, bad])
    assert not check
    assert check.failing == 1
    assert is_resolution([GradedMatrix(R, [[x, x]]), GradedMatrix(R, [[R.one], [-R.one]])])
    check = is_resolution([row, GradedMatrix(R, [[x * y], [-x**2]])])
    assert not check
    assert check.failing == 2


def gradient_of(text, R):
    F = parse_poly(text, R)
    return Ideal([F.diff(v) for v in R.gens])


@pytest.mark.parametrize("text, perfect", [
    ("x*y*z", True),
    ("y^4*z+x^5+x^2*y^3+x*y^4+y^5", True),
    ("x*(x^2+y*z)", False),
    ("x*y*z*(x+y+z)", False),
    ("y^2*z-x^3", False),
    ("y^2*z-x^2*(x+z)", False),
])
def test_three_generated_codim_two_dichotomy(R, text, perfect):
    I = gradient_of(text, R)
    resolution, _ = minimal_free_resolution(I)
    gens = resolution.maps[0].rows[0]
    assert len(gens) == 3
    assert codim(I) == 2
    d = total_degree(gens[0])
    assert all(total_degree(g) == d for g in gens)
    degrees = resolution.maps[1].column_degrees()
    assert (resolution.length == 2) == perfect
    if perfect:
        assert len(degrees) == 2
        assert sum(degrees) == d
    else:
        assert all(a + b >= d + 1 for a, b in combinations(degrees, 2))


@pytest.mark.parametrize("text, regularity", [
    ("x*y*z", 1),
    ("x*(x^2+y*z)", 2),
    ("x*y*z*(x+y+z)", 3),
    ("y^4*z+x^5+x^2*y^3+x*y^4+y^5", 4),
])
def test_regularity_is_read_off_the_betti_table(R, text, regularity):
    resolution, betti = minimal_free_resolution(gradient_of(text, R))
    assert betti.regularity == regularity
    from_maps = max(shift - i for i, d in enumerate(resolution.maps, start=1) for shift in d.source.shifts)
    assert from_maps == regularity
    frame = betti.to_frame()
    assert frame.index[(frame != 0).any(axis=1)].max() == regularity
