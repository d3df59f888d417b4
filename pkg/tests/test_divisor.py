import pytest

from pyfreediv.divisor import (
    NOT_COMPUTED,
    Stopwatch,
    analyze,
    euler_identity,
    free_cones_check,
    gradient_ideal,
    is_free,
    is_reduced,
    jacobian_ideal,
    lin_syzygy_of_homogenization,
)
from pyfreediv.errors import HypothesisError, PreconditionError
from pyfreediv.families import binary_wh_sweep
from pyfreediv.groebner import Ideal, ideal_equal
from pyfreediv.modsyz import hilbert_burch_ideal
from pyfreediv.options import AnalysisOptions
from pyfreediv.poly_core import format_poly, homogenize, parse_poly, polynomial_ring


@pytest.fixture
def R():
    return polynomial_ring("x,y,z")


def test_gradient_and_jacobian_ideals(R):
    F = parse_poly("x*y*z", R)
    assert euler_identity(F)
    assert ideal_equal(gradient_ideal(F), jacobian_ideal(F))
    with pytest.raises(PreconditionError):
        gradient_ideal(R.one)


@pytest.mark.parametrize("text, reduced", [
    ("x*y*z", True),
    ("x^2+y*z", True),
    ("x^2*y", False),
    ("(x+y)^2*z", False),
])
def test_is_reduced(R, text, reduced):
    assert is_reduced(parse_poly(text, R)) is reduced


@pytest.mark.parametrize("text, free, codim", [
    ("x*y*z", True, 2),
    ("x*(x^2+y*z)", False, 2),
    ("y^2*z-x^3", False, 2),
    ("x^2+y*z", False, 3),
])
def test_is_free(R, text, free, codim):
    result = is_free(parse_poly(text, R))
    assert result.free is free
    assert result.codim == codim


def test_free_certificate_regenerates_the_gradient(R):
    F = parse_poly("x*y*z", R)
    result = is_free(F)
    assert result.certificate.shape == (3, 2)
    assert ideal_equal(hilbert_burch_ideal(result.certificate), gradient_ideal(F))
    assert result.betti.shifts(2) == (3, 3)


def test_hyperplane_and_smooth_notes(R):
    assert is_free(parse_poly("x", R)).note == "hyperplane"
    assert is_free(parse_poly("x^2+y*z", R)).note == "smooth"


def test_is_free_refusals(R):
    with pytest.raises(HypothesisError) as exc:
        is_free(parse_poly("x^2*y", R))
    assert exc.value.hypothesis == "reduced"
    S = polynomial_ring("x")
    with pytest.raises(PreconditionError):
        is_free(S.gens[0])


def test_affine_free_divisor(R):
    result = is_free(parse_poly("x*y*(x+y)*(x+y*z)", R))
    assert result.free
    assert result.codim == 2
    assert result.note == "Hilbert-Burch"


def test_affine_freeness_ignores_redundant_generators(R):
    f = parse_poly("x*y*(x+y)*(x+y*z)", R)
    x = R.gens[0]
    f_x, f_y, f_z = (f.diff(v) for v in R.gens)
    # f lies in the ideal of its partials since x*f_x + y*f_y = 4*f
    redundant = Ideal([f, x * f, f_x, f_y, f_z, (x + 1) * f_x], R)
    result = is_free(f, ideal=redundant)
    reference = is_free(f)
    assert reference.free
    assert result.free
    assert result.note == "Hilbert-Burch"
    assert result.generators == reference.generators
    m = len(result.generators)
    assert result.certificate.shape == (m, m - 1)
    assert ideal_equal(hilbert_burch_ideal(result.certificate), redundant)


def test_affine_smooth_is_free(R):
    result = is_free(parse_poly("x^2+y^2+z^2-1", R))
    assert result.free
    assert result.note == "smooth"


def test_linear_syzygy_of_cn1(R):
    f = parse_poly("256*z^3-128*x^2*z^2+16*x^4*z+144*x*y^2*z-4*x^3*y^2-27*y^4", R)
    syzygy = lin_syzygy_of_homogenization(f)
    F = homogenize(f, "t")
    assert not sum((v * F.diff(g) for v, g in zip(syzygy.vector, F.ring.gens)), F.ring.zero)
    # d = 5, weights (1/6, 1/4, 1/3)
    assert syzygy.as_strings() == ["-1/6*x", "1/4*y", "2/3*z", "-t"]


def test_linear_syzygy_of_the_cusp():
    S = polynomial_ring("x,y")
    f = parse_poly("y^3-x^2", S)
    syzygy = lin_syzygy_of_homogenization(f, "z")
    # d = 3, weights (1/2, 1/3)
    assert syzygy.as_strings() == ["1/2*x", "0", "-z"]


@pytest.mark.parametrize("seed", range(2))
def test_linear_syzygy_over_the_binary_sweep(seed):
    for f, spec in binary_wh_sweep(seed):
        syzygy = lin_syzygy_of_homogenization(f)
        F = homogenize(f, "t")
        assert not sum((v * F.diff(g) for v, g in zip(syzygy.vector, F.ring.gens)), F.ring.zero)
        assert syzygy.weights.weights == tuple(spec.expected["rational_weights"])


def test_linear_syzygy_refusals(R):
    with pytest.raises(HypothesisError):
        lin_syzygy_of_homogenization(parse_poly("x*y*z", R))
    with pytest.raises(HypothesisError):
        lin_syzygy_of_homogenization(parse_poly("x^2 + x + y", R))


def test_free_cones_check():
    S = polynomial_ring("x,y")
    f = parse_poly("x^3+y^2", S)
    check = free_cones_check(f, "z")
    assert check.premise
    assert check.conclusion


def test_stopwatch():
    watch = Stopwatch(False)
    with watch.stage("dimension"):
        pass
    assert watch.to_dict() is None
    watch = Stopwatch(True)
    with watch.stage("dimension"):
        pass
    assert set(watch.to_dict()) == {"dimension"}


def test_report_key_order(R):
    report = analyze(parse_poly("x*y*z", R)).to_dict()
    assert list(report) == ["input", "ring", "reduced", "homogeneous", "weights", "gradient", "free",
                            "linear_type", "syzygetic", "koszul_saturation", "koszul_free", "cramer",
                            "timings", "notes"]
    assert report["input"] == "x*y*z"
    assert report["ring"] == ["x", "y", "z"]
    assert report["timings"] is None
    assert report["cramer"]["gsc"] == NOT_COMPUTED


def test_report_with_timings(R):
    report = analyze(parse_poly("x*y*z", R), AnalysisOptions(timings=True)).to_dict()
    assert "resolution" in report["timings"]
    assert all(v >= 0 for v in report["timings"].values())


def test_non_reduced_report(R):
    report = analyze(parse_poly("x^2*y", R)).to_dict()
    assert report["reduced"] is False
    assert report["free"] == NOT_COMPUTED
    assert report["linear_type"]["verdict"] == NOT_COMPUTED
    assert any("non-reduced" in note for note in report["notes"])


def test_analyze_refuses_constants(R):
    with pytest.raises(PreconditionError):
        analyze(R.one)


def test_report_input_is_canonical(R):
    report = analyze(parse_poly("(y+x)*z*y", R)).to_dict()
    assert report["input"] == format_poly(parse_poly("x*y*z + y^2*z", R))
