import pytest

from pyfreediv.corpus import CASES, QUICK_CASES, list_cases, run_case, run_corpus


def test_case_ids_are_sorted():
    assert list_cases() == sorted(CASES)
    assert list_cases()[0] == "01_conic_line"
    assert len(list_cases()) == 12


def test_unknown_case():
    with pytest.raises(KeyError):
        run_case("99_missing")
    with pytest.raises(KeyError):
        run_corpus(["99_missing"])


def test_conic_line_case():
    frame = run_corpus(["01_conic_line"])
    assert list(frame.columns) == ["case", "check", "expected", "computed", "passed"]
    assert frame["passed"].all()
    assert set(frame["check"]) == {"free", "regularity", "st", "indeg", "saturation"}


def test_low_degree_case():
    rows = run_case("12_low_degree")
    assert all(r.passed for r in rows)
    assert {r.check for r in rows} == {"conic.free", "cusp.free", "node.free", "line.free"}


@pytest.mark.slow
@pytest.mark.parametrize("case_id", ["02_arr1", "08_addition", "09_addition2", "11_cn2"])
def test_corpus_case_passes(case_id):
    rows = run_case(case_id)
    failing = [r.to_dict() for r in rows if not r.passed]
    assert failing == []


@pytest.mark.slow
def test_full_corpus_in_parallel():
    frame = run_corpus(jobs=2)
    assert list(frame["case"]) == sorted(frame["case"])
    assert "error" not in set(frame["check"])


def test_quick_variants_exist_for_known_cases():
    assert set(QUICK_CASES) <= set(CASES)
    assert set(QUICK_CASES) == {"02_arr1", "08_addition", "09_addition2", "11_cn2"}


@pytest.mark.parametrize("case_id", ["02_arr1", "08_addition", "09_addition2", "11_cn2"])
def test_quick_corpus_case_passes(case_id):
    rows = run_case(case_id, quick=True)
    failing = [r.to_dict() for r in rows if not r.passed]
    assert rows
    assert failing == []


def test_quick_arr1_keeps_the_saturation_checks():
    checks = {r.check for r in run_case("02_arr1", quick=True)}
    assert {"st", "koszul_saturation", "saturation_generator_degrees"} <= checks


def test_quick_addition_cases_stay_in_three_variables():
    rows = run_case("08_addition", quick=True) + run_case("09_addition2", quick=True)
    assert all(r.check.startswith("n=3 ") for r in rows)


def test_quick_cn2_skips_the_rees_checks():
    checks = {r.check for r in run_case("11_cn2", quick=True)}
    assert checks == {"free", "linear_type", "koszul_free", "weights", "entries_in_<x,y>"}


def test_quick_corpus_in_parallel():
    case_ids = ["01_conic_line", "09_addition2", "12_low_degree"]
    frame = run_corpus(case_ids, jobs=2, quick=True)
    assert list(frame["case"].unique()) == case_ids
    assert frame["passed"].all()
