"""Constructors of the divisor families and named examples, with their expected outcomes.

Every constructor returns ``(polynomial, FamilySpec)``. Expected outcomes are
templates keyed like the flat fields of an analysis report; ``guaranteed``
names the fields backed by a theorem (hard assertions), the rest are observed
on examples (soft assertions).
"""
import logging
from dataclasses import dataclass, field
from math import gcd

import numpy as np
from sympy.polys.domains import QQ

from .cramer import cramer_betti_shape
from .divisor import is_reduced
from .errors import HypothesisError, PreconditionError
from .poly_core import (
    _format_rational,
    format_poly,
    homogenize,
    is_homogeneous,
    parse_poly,
    polynomial_ring,
    total_degree,
    variable_names,
)

LOGGER = logging.getLogger(__name__)

BINARY_WH_GRID = ((3, 2, 1), (3, 2, 2), (5, 2, 1), (4, 3, 1))

# f divisible by x: neither weight equals 1/d
BINARY_WH_DIVISIBLE = (((2, 1, 2), (1, 0, 1)), ((3, 1, 2), (1, 0, 1)))

NAMED_EXAMPLES = {
    "conic_line": "x*(x^2+y*z)",
    "arr1": "x*y*z*(x+y+z)",
    "arr2": "x*y*z*(x+y)*(x+z)*(y+z)",
    "sextic": "x^6+x^3*y^3+x^2*y^4+y^5*z",
    "cn1": "256*z^3-128*x^2*z^2+16*x^4*z+144*x*y^2*z-4*x^3*y^2-27*y^4",
    "cn2": "x*y*(x+y)*(x+y*z)",
    "conic": "x^2+y*z",
    "cusp": "y^2*z-x^3",
    "node": "y^2*z-x^2*(x+z)",
    "line": "x",
}

REFUSED_EXAMPLES = {
    "cayley_sextic": "no defining polynomial is available for the Cayley sextics",
}


@dataclass
class FamilySpec:
    """Parameters and expected outcomes of one family member.

    Args:
        tag: Family name.
        params: Constructor parameters.
        expected: Field -> expected value (``betti`` maps i -> shifts).
        guaranteed: Fields whose expectation is a theorem consequence.
        syzygies: Known syzygy vectors of the gradient.
        parts: Named factors (``g``, ``h``) when the family is a product.
    """

    tag: str
    params: dict
    expected: dict = field(default_factory=dict)
    guaranteed: frozenset = frozenset()
    syzygies: tuple = ()
    parts: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "tag": self.tag,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "expected": {k: _jsonable(v) for k, v in self.expected.items()},
            "guaranteed": sorted(self.guaranteed),
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "ring"):
        return format_poly(value)
    if isinstance(value, QQ.dtype):
        return str(value)
    return value


def _ring(n):
    return polynomial_ring([f"x{i}" for i in range(1, n + 1)])


def _rational(c):
    if isinstance(c, str):
        num, _, den = c.partition("/")
        return QQ(int(num), int(den or 1))
    return QQ.convert(c)


def family_quintic_plus(d, a, variables="x,y,z"):
    """F = y^(d-1) z + a1 x^d + a2 x^2 y^(d-2) + a3 x y^(d-1) + a4 y^d.

    Raises:
        HypothesisError: d < 5 or a1 * a2 = 0.
    """
    a = tuple(_rational(c) for c in a)
    if len(a) != 4:
        raise PreconditionError(f"quintic_plus takes four coefficients, got {len(a)}")
    if d < 5:
        raise HypothesisError(f"quintic_plus needs d >= 5, got {d}", hypothesis="d >= 5")
    if not a[0] or not a[1]:
        raise HypothesisError("quintic_plus needs a1 and a2 nonzero", hypothesis="a1, a2 != 0")
    R = polynomial_ring(variables)
    x, y, z = R.gens
    F = y**(d - 1) * z + x**d * a[0] + x**2 * y**(d - 2) * a[1] + x * y**(d - 1) * a[2] + y**d * a[3]
    expected = {
        "free": True,
        "linear_type": d == 5,
        "syzygy_degrees": [2, d - 3],
        "betti": {1: (d - 1,) * 3, 2: tuple(sorted((d + 1, 2 * d - 4)))},
    }
    return F, FamilySpec("quintic_plus", {"d": d, "a": a}, expected, frozenset(expected))


def family_addition(n, r, subset):
    """f = g*h with g = x_1^r_1 ... x_{n-1}^r_{n-1} - x_n^d and h the product of x_i, i in subset.

    Args:
        n: Number of variables.
        r: Exponents r_1..r_{n-1} with d = sum r_i.
        subset: 1-based indices in 1..n-1, n - 2 of them.
    """
    r = tuple(int(e) for e in r)
    subset = tuple(sorted(int(i) for i in subset))
    if n < 3 or len(r) != n - 1:
        raise PreconditionError(f"addition needs n >= 3 and n - 1 exponents, got n={n}, r={r}")
    if any(e < 0 for e in r) or any(e == 0 for e in r[1:]):
        raise HypothesisError(f"addition needs r_i != 0 for i = 2..n-1, got {r}", hypothesis="r_i != 0")
    if len(subset) != n - 2 or len(set(subset)) != n - 2 or not all(1 <= i <= n - 1 for i in subset):
        raise PreconditionError(f"subset must hold n - 2 distinct indices in 1..{n - 1}, got {subset}")
    missing = next(i for i in range(1, n) if i not in subset)
    if r[missing - 1] == 0:
        raise HypothesisError(f"exponent of the free index {missing} vanishes", hypothesis="r_i != 0")
    d = sum(r)
    R = _ring(n)
    xs = R.gens
    monomial = R.one
    for x, e in zip(xs, r):
        monomial *= x**e
    g = monomial - xs[-1]**d
    h = R.one
    for i in subset:
        h *= xs[i - 1]
    f = g * h

    syzygies = []
    rj = QQ(r[missing - 1])
    for i in subset:
        vector = [R.zero] * n
        vector[i - 1] = xs[i - 1]
        vector[missing - 1] = xs[missing - 1] * (-QQ(r[i - 1] + 1) / rj)
        vector[-1] = xs[-1] * (-QQ(1, d))
        syzygies.append(tuple(vector))
    expected = {"free": True, "linear_type": True}
    spec = FamilySpec("addition", {"n": n, "r": r, "subset": subset}, expected, frozenset(expected),
                      tuple(syzygies), {"g": g, "h": h})
    return f, spec


def family_addition2(n, d, m, h, allow_boundary=False):
    """f = g*h with g = x_n^d - x_{n-1}^m h and h a form in x_1..x_{n-2}.

    Args:
        n: Number of variables, at least 3.
        d, m: Exponents with d > m >= 1.
        h: Polynomial text or element in x_1..x_n involving only x_1..x_{n-2}.
        allow_boundary: Accept deg h = 1 (the simplest iterative case).
    """
    R = _ring(n)
    h = parse_poly(h, R) if isinstance(h, str) else h
    xs = R.gens
    if not d > m >= 1:
        raise HypothesisError(f"addition2 needs d > m >= 1, got d={d}, m={m}", hypothesis="d > m >= 1")
    if h.is_ground or not is_homogeneous(h):
        raise HypothesisError("h must be a nonconstant form", hypothesis="h homogeneous")
    if any(monom[n - 2] or monom[n - 1] for monom in h.itermonoms()):
        raise HypothesisError(f"h must only involve x1..x{n - 2}", hypothesis="h in x1..x_{n-2}")
    if total_degree(h) != d - m:
        raise HypothesisError(f"deg h = {total_degree(h)} differs from d - m = {d - m}", hypothesis="deg h = d - m")
    if d - m < 2 and not allow_boundary:
        raise HypothesisError("deg h must be at least 2", hypothesis="deg h >= 2")
    if not is_reduced(h):
        raise HypothesisError(f"h = {format_poly(h)} is not reduced", hypothesis="h reduced")
    g = xs[-1]**d - xs[-2]**m * h
    f = g * h

    D = 2 * d - m
    s0 = list(xs[:n - 2])
    s0.append(xs[-2] * (1 - QQ(D, m)))
    s0.append(xs[-1] * (1 - QQ(D, d)))
    last = [R.zero] * (n - 2) + [xs[-1]**(d - 1) * d, xs[-2]**(m - 1) * h * m]
    expected = {"free": True}
    spec = FamilySpec("addition2", {"n": n, "d": d, "m": m, "h": h}, expected, frozenset(expected),
                      (tuple(s0), tuple(last)), {"g": g, "h": h})
    return f, spec


def preset_addition2_boundary():
    """h = x1, g = x3^2 - x2*x1 in three variables."""
    R = _ring(3)
    return family_addition2(3, 2, 1, R.gens[0], allow_boundary=True)


def preset_cuspidal(r, d):
    """f = (y^r z^(d-r) - x^d) * y, the cuspidal curve with its tangent line."""
    if not 0 < r < d:
        raise PreconditionError(f"cuspidal preset needs 0 < r < d, got r={r}, d={d}")
    R = polynomial_ring("x,y,z")
    x, y, z = R.gens
    g = y**r * z**(d - r) - x**d
    spec = FamilySpec("cuspidal", {"r": r, "d": d}, {"free": True}, frozenset(), parts={"g": g, "h": y})
    return g * y, spec


def _binary_wh(p, q, s, coefficients):
    if s < 1:
        raise PreconditionError(f"s must be positive, got {s}")
    if gcd(p, q) != 1:
        raise PreconditionError(f"gcd(p, q) must be 1, got ({p}, {q})")
    if p == q:
        raise HypothesisError("p = q gives a homogeneous binary form", hypothesis="non-homogeneous")
    coefficients = tuple(_rational(c) for c in coefficients)
    if len(coefficients) != s + 1:
        raise PreconditionError(f"expected {s + 1} coefficients (c_x, c_y, c_1..c_{s - 1}), got {len(coefficients)}")
    R = polynomial_ring("x,y")
    x, y = R.gens
    c_x, c_y, inner = coefficients[0], coefficients[1], coefficients[2:]
    f = x**(s * q) * c_x + y**(s * p) * c_y
    for k, c in enumerate(inner, start=1):
        f += x**((s - k) * q) * y**(k * p) * c
    if f.is_ground or is_homogeneous(f):
        raise HypothesisError(f"{format_poly(f)} is not a non-homogeneous binary form", hypothesis="non-homogeneous")
    return f, coefficients


def binary_wh_case(p, q, s, d):
    """1 when neither weight 1/(sq), 1/(sp) equals 1/d, else 2."""
    return 2 if d in (s * q, s * p) else 1


def family_binary_wh(p, q, s, coefficients):
    """f = c_x x^(sq) + c_y y^(sp) + sum_{1 <= r < s} c_r x^((s-r)q) y^(rp).

    The expectations describe the homogenization in x, y, z.
    """
    f, coefficients = _binary_wh(p, q, s, coefficients)
    d = total_degree(f)
    case = binary_wh_case(p, q, s, d)
    homogenization = {"free": case == 1, "linear_type": True,
                      "betti": expected_resolution(FamilySpec("binary_wh", {"case": case, "d": d}))}
    spec = FamilySpec(
        "binary_wh", {"p": p, "q": q, "s": s, "coefficients": coefficients, "case": case, "d": d},
        {"rational_weights": [QQ(1, s * q), QQ(1, s * p)], "homogenization": homogenization},
        frozenset({"rational_weights", "homogenization"}),
    )
    return f, spec


def family_cone_of_binary_wh(p, q, s, coefficients):
    """z times the homogenization of a binary weighted homogeneous f."""
    f, coefficients = _binary_wh(p, q, s, coefficients)
    d = total_degree(f)
    G = homogenize(f, "z")
    G = G * G.ring.gens[-1]
    params = {"p": p, "q": q, "s": s, "coefficients": coefficients, "d": d}
    expected = {"free": True, "linear_type": True,
                "betti": expected_resolution(FamilySpec("cone_of_binary_wh", params))}
    return G, FamilySpec("cone_of_binary_wh", params, expected, frozenset(expected), parts={"f": f})


def named_example(tag):
    """Polynomial and expectations of a named example."""
    if tag in REFUSED_EXAMPLES:
        raise PreconditionError(f"{tag}: {REFUSED_EXAMPLES[tag]}")
    if tag not in NAMED_EXAMPLES:
        raise PreconditionError(f"unknown example {tag!r}; known: {', '.join(sorted(NAMED_EXAMPLES))}")
    F = parse_poly(NAMED_EXAMPLES[tag], polynomial_ring("x,y,z"))
    cramer5 = expected_resolution(FamilySpec("cramer", {"d": 5}))
    expected = {
        "conic_line": {"free": False, "regularity": 2, "st": 2, "indeg": 1},
        "arr1": {"free": False, "st": 1, "regularity": 3, "linear_type": True, "koszul_saturation": True,
                 "betti": {1: (3, 3, 3), 2: (5, 5, 5), 3: (6,)}},
        "arr2": {"free": False, "st": 1, "regularity": 6, "indeg": 6, "linear_type": True,
                 "betti": cramer5, "gsc": True, "pivot_degree": 6},
        "sextic": {"free": False, "st": 1, "indeg": 6, "linear_type": False, "syzygetic": False,
                   "koszul_saturation": False, "betti": cramer5, "gsc": True},
        "cn1": {"weights": [2, 3, 4], "linear_type": True,
                "homogenization": {"free": False, "linear_type": True}},
        "cn2": {"free": True, "linear_type": False, "syzygetic": False, "koszul_free": False,
                "weights": [1, 1, 0], "homogenization": {"free": True}},
        "conic": {"free": False},
        "cusp": {"free": False},
        "node": {"free": False},
        "line": {"free": True},
    }[tag]
    return F, FamilySpec("named", {"tag": tag}, expected, frozenset(expected))


def expected_resolution(spec):
    """Betti shape {i: shifts} predicted for a family member.

    Raises:
        PreconditionError: the family has no predicted shape.
    """
    params = spec.params
    if spec.tag == "binary_wh":
        d = params["d"]
        if params["case"] == 1:
            return {1: (d - 1,) * 3, 2: tuple(sorted((d, 2 * d - 3)))}
        return {1: (d - 1,) * 3, 2: (d, 2 * d - 2, 2 * d - 2), 3: (2 * d - 1,)}
    if spec.tag == "cone_of_binary_wh":
        d = params["d"]
        return {1: (d,) * 3, 2: tuple(sorted((d + 1, 2 * d - 1)))}
    if spec.tag == "quintic_plus":
        return spec.expected["betti"]
    if spec.tag == "cramer":
        return cramer_betti_shape(params["d"])
    raise PreconditionError(f"no predicted resolution for family {spec.tag!r}")


def _random_rational(rng):
    num = int(rng.integers(1, 10)) * (1 if rng.integers(2) else -1)
    return QQ(num, int(rng.integers(1, 5)))


def quintic_sweep(ds=(5, 6, 7, 8), seed=0):
    """The all-ones member and one seeded random member for every d."""
    members = []
    for d in ds:
        rng = np.random.default_rng([seed, d])
        members.append(family_quintic_plus(d, (1, 1, 1, 1)))
        a = (_random_rational(rng), _random_rational(rng),
             _random_rational(rng) if rng.integers(2) else QQ(0), _random_rational(rng))
        members.append(family_quintic_plus(d, a))
    return members


def binary_wh_coefficients(seed=0):
    """(p, q, s, coefficients) of the binary sweep: all-ones and seeded random tuples, then divisible cases."""
    out = []
    for p, q, s in BINARY_WH_GRID:
        rng = np.random.default_rng([seed, p, q, s])
        out.append((p, q, s, (1,) * (s + 1)))
        out.append((p, q, s, tuple(_random_rational(rng) for _ in range(s + 1))))
    for (p, q, s), c in BINARY_WH_DIVISIBLE:
        out.append((p, q, s, c))
    return out


def binary_wh_sweep(seed=0, cone=False):
    """Reduced members of the binary sweep, as (f or cone, spec)."""
    build = family_cone_of_binary_wh if cone else family_binary_wh
    members = []
    for p, q, s, c in binary_wh_coefficients(seed):
        f, _ = _binary_wh(p, q, s, c)
        if not is_reduced(f):
            LOGGER.warning(f"skipping non-reduced member {format_poly(f)}")
            continue
        members.append(build(p, q, s, c))
    return members


@dataclass
class Diff:
    field: str
    expected: object
    computed: object
    guaranteed: bool

    def to_dict(self):
        return {"field": self.field, "expected": _jsonable(self.expected),
                "computed": _jsonable(self.computed), "guaranteed": self.guaranteed}


def betti_shape(betti):
    """{i: sorted shifts} for i >= 1 from the report form {"i": {"shift": count}}."""
    if betti is None:
        return None
    shape = {}
    for i, row in betti.items():
        if int(i) == 0:
            continue
        shape[int(i)] = tuple(sorted(int(s) for s, k in row.items() for _ in range(k)))
    return shape


def report_value(report, name):
    """Flat view of a report field as used by family expectations."""
    gradient = report.get("gradient") or {}
    if name == "linear_type":
        return report["linear_type"]["verdict"]
    if name in ("st", "indeg", "regularity", "codim"):
        return gradient.get(name)
    if name == "betti":
        return betti_shape(gradient.get("betti"))
    if name == "syzygy_degrees":
        degrees = gradient.get("syzygy_degrees")
        return sorted(degrees) if degrees is not None else None
    if name in ("gsc", "pivot_degree"):
        return report["cramer"][name]
    if name == "weights":
        return report["weights"].get("integer")
    if name == "rational_weights":
        return report["weights"].get("rational")
    return report[name]


def normalize_value(name, value):
    if name == "betti" and value is not None:
        return {int(i): tuple(sorted(v)) for i, v in value.items()}
    if name == "syzygy_degrees" and value is not None:
        return sorted(value)
    if name == "rational_weights" and value is not None:
        return [_format_rational(QQ.convert(v)) if not isinstance(v, str) else v for v in value]
    return value


def compare_expected(spec, report, prefix=""):
    """Differences between a family's expectations and a report dictionary.

    Nested ``homogenization`` expectations are skipped; compare them against
    the report of the homogenized polynomial.
    """
    diffs = []
    for name, expected in spec.expected.items():
        if isinstance(expected, dict) and name != "betti":
            continue
        computed = report_value(report, name)
        if normalize_value(name, expected) != normalize_value(name, computed):
            diffs.append(Diff(prefix + name, expected, computed, name in spec.guaranteed))
    return diffs


def compare_homogenization(spec, report):
    """Compare the nested ``homogenization`` expectations against the homogenized report."""
    nested = spec.expected.get("homogenization")
    if not nested:
        return []
    sub = FamilySpec(spec.tag, spec.params, nested,
                     frozenset(nested) if "homogenization" in spec.guaranteed else frozenset())
    return compare_expected(sub, report, prefix="homogenization.")


def homogenization_of(f, name=None):
    """Homogenize with a fresh last variable (z for binary, t otherwise)."""
    names = variable_names(f.ring)
    return homogenize(f, name or ("z" if len(names) == 2 else "t"))
