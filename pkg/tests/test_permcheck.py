import pytest
from hypothesis import given, settings, strategies as st

from rdickson.dickson import FIRST, SECOND, CoefPoly, RdpSpec, coefficient_poly
from rdickson.permcheck import (
    CycleType,
    NotBijective,
    PermMap,
    PermReport,
    analyze,
    cycle_type,
    fixed_points,
    hermite_check,
    is_cpp,
    is_permutation,
    is_pp_crt,
    is_pp_prime_power,
    iterate_count,
    rdp_map,
    tabulate,
)
from rdickson.ring import InvalidModulus, ResidueRing, UnsupportedRing


def test_tabulate_examples():
    assert tabulate(lambda x: x, 5).image == (0, 1, 2, 3, 4)
    assert rdp_map(2, FIRST, 1, 5).image == (1, 4, 2, 0, 3)
    assert rdp_map(4, FIRST, 1, 5).image == (1, 4, 1, 2, 2)


def test_permmap_validation():
    with pytest.raises(ValueError):
        PermMap(ResidueRing(5), (0, 1, 2))
    with pytest.raises(InvalidModulus):
        tabulate(lambda x: x, 1)


def test_is_permutation_examples():
    assert is_permutation(rdp_map(2, FIRST, 1, 5)) == (True, None)
    assert is_permutation(rdp_map(4, FIRST, 1, 5)) == (False, (0, 2, 1))
    assert not is_permutation(tabulate(lambda x: 3, 5))[0]


def test_crt_examples():
    assert not is_pp_crt(3, FIRST, 1, 6)
    assert not is_permutation(rdp_map(3, FIRST, 1, 6))[0]
    assert is_pp_crt(2, FIRST, 1, 9)


def test_lifting_examples():
    assert is_pp_prime_power(3, FIRST, 1, 2, 4)
    assert not is_pp_prime_power(6, FIRST, 1, 3, 2)
    assert is_pp_prime_power(14, FIRST, 1, 3, 3)


def test_crt_matches_tabulation():
    for m in range(2, 61):
        for kind in (FIRST, SECOND):
            for n in range(1, 101):
                assert is_pp_crt(n, kind, 1, m) == is_permutation(rdp_map(n, kind, 1, m))[0], (m, kind, n)


def test_lifting_matches_tabulation():
    for p in (2, 3, 5):
        for t in (1, 2, 3):
            for kind in (FIRST, SECOND):
                for n in range(1, 121):
                    direct = is_permutation(rdp_map(n, kind, 1, p**t))[0]
                    assert is_pp_prime_power(n, kind, 1, p, t) == direct, (p, t, kind, n)


def test_cpp_examples():
    assert is_cpp(3, SECOND, 1, 7)
    assert not is_cpp(2, SECOND, 1, 5)
    for n in range(1, 40):
        for kind in (0, 1, 2):
            assert not is_cpp(n, kind, 1, 2)


def test_hermite_examples():
    f5 = ResidueRing(5)
    assert hermite_check(CoefPoly(f5, (1, 3)), 5)
    assert not hermite_check(CoefPoly(f5, (0, 0, 1)), 5)
    assert hermite_check(coefficient_poly(RdpSpec(10, FIRST, 1, 5)), 5)
    with pytest.raises(UnsupportedRing):
        hermite_check(CoefPoly(ResidueRing(9), (0, 1)), 9)


@pytest.mark.parametrize("p", [5, 7])
def test_hermite_matches_tabulation(p):
    for kind in (FIRST, SECOND):
        for n in range(1, p * p):
            poly = coefficient_poly(RdpSpec(n, kind, 1, p))
            assert hermite_check(poly, p) == is_permutation(rdp_map(n, kind, 1, p))[0]


def test_fixed_point_examples():
    assert fixed_points(rdp_map(2, FIRST, 1, 5)) == [2]
    assert fixed_points(rdp_map(6, FIRST, 1, 5)) == []
    assert len(fixed_points(rdp_map(15, FIRST, 1, 13))) == 7


def test_cycle_type_examples():
    assert str(cycle_type(rdp_map(2, FIRST, 1, 3))) == "(3)"
    assert cycle_type(rdp_map(2, FIRST, 1, 5)).lengths() == [4, 1]
    assert cycle_type(rdp_map(2, SECOND, 1, 7)) == CycleType.from_lengths([2, 2, 2, 1])
    with pytest.raises(NotBijective):
        cycle_type(rdp_map(4, FIRST, 1, 5))


def test_iterate_examples():
    assert iterate_count(tabulate(lambda x: x, 7), 3, 5) == 3
    assert iterate_count(tabulate(lambda x: 1 + 3 * x, 5), 0, 4) == 0
    for p in (5, 7, 11):
        inv2 = pow(2, -1, p)
        f = tabulate(lambda x: 1 - x, p)
        assert all(iterate_count(f, x, 2) == x for x in range(p) if x != inv2)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([5, 7, 11, 13, 17]), st.integers(1, 300), st.integers(0, 2))
def test_cycle_structure_invariants(p, n, kind):
    pm = rdp_map(n, kind, 1, p)
    if not is_permutation(pm)[0]:
        return
    ct = cycle_type(pm)
    assert ct.size == p
    assert len(fixed_points(pm)) == ct.multiplicity(1)
    # every point returns home after its cycle length
    for x in range(p):
        length, y = 1, pm[x]
        while y != x:
            y, length = pm[y], length + 1
        assert iterate_count(pm, x, length) == x


def test_linear_maps_have_one_fixed_point():
    for p in (5, 7, 11, 13):
        for a in range(2, p):
            assert fixed_points(tabulate(lambda x: a * x + 1, p)) == [pow(1 - a, -1, p)]


def test_report_round_trip():
    for n, m in ((2, 5), (4, 5), (3, 7)):
        rep = analyze(rdp_map(n, SECOND, 1, m), cpp=True)
        assert PermReport.from_dict(rep.to_dict()) == rep
