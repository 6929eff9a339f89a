"""The fourteen acceptance criteria; each test prints one PASS/FAIL line with its witness."""

import pytest

from cyclok.suite import CRITERIA, SuiteConfig, _Context, run_suite, summary_line

IDS = [f"{i:02d}-{fn.__name__.split('_', 1)[1]}" for i, fn in enumerate(CRITERIA, start=1)]


@pytest.fixture(scope="module")
def context():
    return _Context(SuiteConfig())


@pytest.mark.parametrize("index", range(len(CRITERIA)), ids=IDS)
def test_criterion(index, context, capsys):
    result = CRITERIA[index](context)
    with capsys.disabled():
        print("\n" + summary_line(result))
    assert result.passed, "\n".join(result.witnesses)


def test_spinor_fault_breaks_exactly_the_spinor_criteria():
    results = run_suite(SuiteConfig(fault="spinor-sign"))
    failed = {r.id for r in results if not r.passed}
    # criteria that evaluate spinor classes: quadric Grams, quadric blocks, realness
    assert failed == {3, 8, 14}


def test_projective_family_filter():
    results = run_suite(SuiteConfig(family="projective"))
    assert [r.id for r in results] == [1, 4, 5, 14]
    assert all(r.passed for r in results)
    assert set(results[1].details["pairs"]) == {"projective:3", "projective:4"}


if __name__ == "__main__":
    for r in run_suite():
        print(summary_line(r))
