import fnmatch

import pytest

from lieform import checks


@pytest.fixture(scope="module")
def fixture():
    return checks.load_fixture()


def test_every_check_is_complete(fixture):
    names = [c["name"] for c in fixture]
    assert len(names) == len(set(names))
    for c in fixture:
        assert c["description"] and c["anchor"]
        assert c["provenance"] in {"PAPER", "TRIVIAL", "DERIVED"}
        assert c["recipe"] in checks.RECIPES
        assert c["expected"] is not None
        if c["provenance"] == "DERIVED":
            assert c["oracle"] in checks.ORACLES


def test_frozen_fixture_matches_the_template(fixture):
    template = checks.fixture_template()
    assert [c["name"] for c in template] == [c["name"] for c in fixture]
    for t, f in zip(template, fixture):
        if t["provenance"] != "DERIVED":
            assert t["expected"] == f["expected"], t["name"]


def test_name_glob_selects_exactly_four(fixture):
    assert len([c for c in fixture if fnmatch.fnmatchcase(c["name"], "lemma3.3*")]) == 4


def test_regenerating_reproduces_the_frozen_values(fixture, tmp_path):
    target = tmp_path / "paper.json"
    fresh = checks.regenerate(target)
    assert fresh == fixture
    assert checks.load_fixture(target) == fixture


def test_run_check_reports_errors_instead_of_raising():
    bad = {"name": "x", "recipe": "fifteen", "args": {"beta": 0, "delta": 0, "what": "nonsense"}, "expected": 1}
    r = checks.run_check(bad)
    assert not r["passed"] and "ValueError" in r["error"]
