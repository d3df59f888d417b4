import json
import os
import subprocess
import sys
from tempfile import TemporaryDirectory

import pytest

import pyfreediv

this_file_dir = os.path.abspath(os.path.dirname(__file__))


def execute_pyfreediv(testfile, mode="analyze"):
    """Execute pyfreediv (via Python interface or command line).

    Args:
        testfile: Path to the input file.
        mode: freediv subcommand (only analyze reads configuration files).
    """
    assert mode in ["analyze"], "unknown mode: " + mode

    # read configuration
    with open(testfile) as ff:
        config = json.load(ff)

    if getattr(pytest, "cli", False):
        # run via the console frontend (slow)
        with TemporaryDirectory() as tempdir:
            out_name = os.path.join(tempdir, "out.json")
            opt_name = os.path.join(tempdir, "options.json")
            with open(opt_name, "w") as ff:
                json.dump(config.get("options", {}), ff)
            subprocess.run(
                [sys.executable, "-m", "pyfreediv", mode, config["polynomial"],
                 "--vars", config.get("variables", "x,y,z"), "--config", opt_name, "--out", out_name],
                check=True,
                stdout=subprocess.DEVNULL,
            )
            with open(out_name) as ff:
                result = json.load(ff)
    else:
        # run via Python interface (fast)
        result = pyfreediv.run_config(config)

    return result, config


def assert_subset(ref, res, path="report"):
    """Every key of the reference must be present with the same value."""
    if isinstance(ref, dict):
        assert isinstance(res, dict), f"{path}: expected a mapping, got {res!r}"
        for key, value in ref.items():
            assert key in res, f"{path}: missing {key}"
            assert_subset(value, res[key], f"{path}.{key}")
    else:
        assert ref == res, f"{path}: expected {ref!r}, got {res!r}"


def run_with_reference(ref, test_config):
    res, _ = execute_pyfreediv(test_config, "analyze")
    assert_subset(ref, json.loads(json.dumps(res, default=str)))
    return res


def run_test_case_by_name(name):
    """Run a test case by its case name.

    Args:
        name: Name of the test case.
    """
    testfile = os.path.join(this_file_dir, "cases", name + ".json")
    result, _ = execute_pyfreediv(testfile, "analyze")
    return result


def random_poly(ring, rng, max_degree, terms=4, homogeneous=False):
    """Random polynomial with integer coefficients in [-9, 9].

    Args:
        ring: Polynomial ring of the result.
        rng: A seeded ``numpy.random.Generator``.
        max_degree: Largest total degree of a term.
        terms: Number of sampled terms (repeated monomials overwrite).
        homogeneous: Sample every term of degree ``max_degree``.
    """
    n = ring.ngens
    coefficients = {}
    for _ in range(terms):
        degree = max_degree if homogeneous else int(rng.integers(0, max_degree + 1))
        cuts = sorted(int(c) for c in rng.integers(0, degree + 1, size=n - 1))
        exponents = [b - a for a, b in zip([0] + cuts, cuts + [degree])]
        coefficients[tuple(exponents)] = int(rng.integers(-9, 10))
    return ring.from_dict(coefficients)
