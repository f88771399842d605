from fractions import Fraction

import pytest

from taucalc.brackets import BracketTable, bracket
from taucalc.combinat import multisets_with_sum
from taucalc.npoint import (
    DivisionRemainderError,
    MergedSeries,
    OddPowerError,
    _divide_by_varsum,
    delta_poly,
    extract_bracket,
    merged_series,
    npoint_series,
    one_point_series,
)
from taucalc.identities import alt_pair_sum
from taucalc.rationals import odd_double_factorial
from math import factorial


def test_delta_poly():
    assert delta_poly(1).terms == {}
    assert delta_poly(2).terms == {(2, 1): Fraction(1), (1, 2): Fraction(1)}
    d3 = delta_poly(3)
    assert d3.coefficient((1, 1, 1)) == 2
    assert d3.coefficient((2, 1, 0)) == 1
    assert d3.is_symmetric()


def test_one_point_series():
    s = one_point_series(10)
    assert s.coefficient((1,)) == Fraction(1, 24)
    assert s.coefficient((4,)) == Fraction(-1, 1152)
    assert s.coefficient((2,)) == 0
    assert s.coefficient((7,)) == Fraction(1, 82944)  # + 1/(24^3 3!)


def test_graded_poly_degree_guard():
    s = one_point_series(5)
    with pytest.raises(ValueError, match="tracked degree"):
        s.coefficient((6,))


def test_divide_by_varsum_exact_and_remainder():
    # (x+y)(x^2 - x y + y^2) = x^3 + y^3
    comp = {(3, 0): Fraction(1), (0, 3): Fraction(1)}
    q = _divide_by_varsum(comp, 2)
    assert q == {(2, 0): Fraction(1), (1, 1): Fraction(-1), (0, 2): Fraction(1)}
    with pytest.raises(DivisionRemainderError):
        _divide_by_varsum({(1, 1): Fraction(1)}, 2)


def test_two_point_extraction_examples():
    s2 = npoint_series(2, 6)
    assert extract_bracket(s2, (2, 3)) == Fraction(29, 5760)
    assert extract_bracket(s2, (1, 4)) == Fraction(1, 384)
    assert extract_bracket(s2, (0, 1)) == 0


def test_two_point_second_genus_components():
    # normalized series components: degree 2 is xy/12, degree 5 is
    # x^2 y^2 (x+y)/240
    s2 = npoint_series(2, 3)
    assert s2.g.coefficient((1, 1)) == Fraction(1, 12)
    assert s2.g.coefficient((2, 0)) == 0
    assert s2.g.coefficient((3, 2)) == Fraction(1, 240)


def test_three_point_genus0_normalization():
    s3 = npoint_series(3, 2)
    assert extract_bracket(s3, (0, 0, 0)) == 1


def test_oracle_equivalence_small():
    table = BracketTable()
    for n, g_hi in ((1, 5), (2, 5), (3, 4), (4, 3)):
        series = npoint_series(n, g_hi)
        for g in range(0, g_hi + 1):
            total = 3 * g - 3 + n
            if total < 0:
                continue
            for d in multisets_with_sum(n, total):
                assert extract_bracket(series, d) == bracket(g, d, table), (n, g, d)


def test_symmetry_of_npoint_output():
    assert npoint_series(3, 3).g.is_symmetric()
    assert npoint_series(4, 2).g.is_symmetric()


def test_components_sit_on_the_genus_grading():
    # nonzero homogeneous components only at degrees 3g + n - 3
    for n in (2, 3, 4):
        series = npoint_series(n, 3)
        for deg in {sum(m) for m in series.g.terms}:
            g, rem = divmod(deg - n + 3, 3)
            assert rem == 0 and g >= 0 and 2 * g - 2 + n > 0, (n, deg)


def test_divisibility_invariant_holds_on_generic_path():
    # the generic recursion (n >= 3) performs every P_r division exactly;
    # any remainder raises DivisionRemainderError out of the builder
    npoint_series(3, 6)
    npoint_series(4, 6)


def test_two_point_matches_recursion_deep():
    # the two-point family against the raw recursion through genus 12
    series = npoint_series(2, 12)
    table = BracketTable()
    for g in range(1, 13):
        for d in multisets_with_sum(2, 3 * g - 1):
            assert extract_bracket(series, d) == bracket(g, d, table), (g, d)


def test_merged_series_examples():
    m1 = merged_series(1, 3)
    assert m1.coefficient(1, (1,)) == Fraction(1, 12)
    assert m1.coefficient(2, (0,)) == 0
    m2 = merged_series(2, 2)
    assert m2.coefficient(1, (1, 1)) == Fraction(1, 4)


def test_merged_matches_closed_form():
    for n in (1, 2, 3):
        m = merged_series(n, 4)
        for g in range(0, 5):
            for d in multisets_with_sum(n, g - 1 + n, min_part=1):
                den = 4**g * factorial(2 * g + 1)
                for x in d:
                    den *= odd_double_factorial(x - 1)
                want = Fraction(factorial(2 * g + n - 1), den)
                assert m.coefficient(g, d) == want, (n, g, d)


def test_merged_alt_sums_match_engine():
    table = BracketTable()
    for n in (1, 2, 3):
        m = merged_series(n, 4)
        for g in range(0, 5):
            for K in range(0, g + 4):
                total = 3 * g - 1 + n - 2 * K
                if total < 0 or 2 * K + total > m.degree_cap:
                    continue
                for d in multisets_with_sum(n, total):
                    assert m.alt_sum(K, d) == alt_pair_sum(K, g, d, table), (n, g, K, d)


def test_merged_rejects_odd_power_injection():
    # poison the cached base series with a term that is odd in the pair
    # slots and cannot cancel; construction must abort
    poly = npoint_series(3, 2)
    saved = dict(poly.g.terms)
    try:
        poly.g.terms[(1, 0, 2)] = poly.g.terms.get((1, 0, 2), Fraction(0)) + 1
        with pytest.raises(OddPowerError):
            MergedSeries(1, 2)
    finally:
        poly.g.terms.clear()
        poly.g.terms.update(saved)


def test_dump_format():
    lines = npoint_series(2, 1).dump_lines()
    assert lines[0] == "0,2 -> 1/24"
    assert lines[1] == "1,1 -> 1/24"
