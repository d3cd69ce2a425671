import pytest

from rdickson import suites
from rdickson.dickson import FIRST, derivative_sequence


@pytest.mark.parametrize("name", sorted(suites.SUITES))
def test_every_suite_passes_its_hard_checks(name):
    rep = suites.SUITES[name](None)
    assert rep.checks
    assert rep.passed, [(c.name, c.detail) for c in rep.failures()]


def test_mod24_class_rule_matches_derivatives():
    seq = derivative_sequence(FIRST, 1, 3, 400)
    for n in range(2, 401):
        want = suites.mod24_class_value(n)
        if want is not None:
            assert seq[n] == want, n


def test_reference_layout_deviates_only_at_20():
    published = suites.golden_sequences()["d_prime_mod3_at_1"]["values"]
    got = suites.published_derivative_layout(23)
    assert [n for n in range(24) if got[n] != published[n]] == [20]
    assert got[:2] == [2, 1]


def test_prime_cap_limits_the_scan():
    rep = suites.suite_periods(13)
    assert sorted(rep.results["periods"]) == [3, 5, 7, 11, 13]


def test_run_all_covers_every_suite():
    names = [r.suite for r in suites.run_suite("all", 13)]
    assert names == list(suites.SUITES)


def test_rendered_table_layout():
    text = suites.render_table_csv(FIRST, 5, 0, 3)
    assert text.splitlines()[:2] == ["x,0,1,2,3", "0,2,1,1,1"]
