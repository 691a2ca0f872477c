from math import comb

from hypothesis import given, settings, strategies as st

from ppgf.algebra import parse_polynomial, parse_rational
from ppgf.families import antichain, chain, diamond
from ppgf.oracle import enumerate_ppartitions, truncated_gf, verify

from strategies import posets


def test_enumerate_antichain_pair():
    got = list(enumerate_ppartitions(antichain(2), 1))
    assert len(got) == 4


def test_enumerate_chain_pair():
    got = sorted(tuple(sorted(s.items())) for s in enumerate_ppartitions(chain(2), 1))
    assert got == [((1, 0), (2, 0)), ((1, 1), (2, 0)), ((1, 1), (2, 1))]


def test_enumerate_diamond():
    assert len(list(enumerate_ppartitions(diamond(), 1))) == 6


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=4))
def test_enumerate_chain_counts_stars_and_bars(n, bound):
    got = len(list(enumerate_ppartitions(chain(n), bound)))
    assert got == comb(n + bound, n)


@settings(max_examples=40, deadline=None)
@given(posets(max_size=6), st.integers(min_value=0, max_value=4))
def test_enumerate_is_sound_and_duplicate_free(p, bound):
    seen = set()
    for sigma in enumerate_ppartitions(p, bound):
        key = tuple(sorted(sigma.items()))
        assert key not in seen
        seen.add(key)
        assert all(0 <= v <= bound for v in sigma.values())
        for x in p.elements:
            for y in p.above(x):
                assert sigma[x] >= sigma[y]


@settings(max_examples=40, deadline=None)
@given(posets(max_size=6), st.integers(min_value=0, max_value=4))
def test_value_truncation_matches_enumeration_count(p, bound):
    gf = truncated_gf(p, bound, truncation="value")
    assert sum(gf.terms.values()) == len(list(enumerate_ppartitions(p, bound)))


def test_truncated_gf_antichain():
    assert truncated_gf(antichain(2), 1) == parse_polynomial("1 + x1 + x2")


def test_truncated_gf_empty():
    from ppgf.poset import Poset
    assert truncated_gf(Poset.empty(), 5) == parse_polynomial("1")


def test_truncated_gf_diamond_q():
    gf = truncated_gf(diamond(), 2).collapse_to_q()
    assert gf == parse_polynomial("1 + q + 3*q^2")


def test_verify_diamond_closed_form():
    f = parse_rational("(1-x1^2*x2*x3)/"
                       "((1-x1)(1-x1*x2)(1-x1*x3)(1-x1*x2*x3)(1-x1*x2*x3*x4))")
    assert verify(diamond(), f, 8).ok


def test_verify_reports_first_discrepancy():
    wrong = parse_rational("1/((1-x1)(1-x1*x2)(1-x1*x2*x3)(1-x1*x2*x3*x4))")
    result = verify(diamond(), wrong, 3)
    assert not result.ok
    assert result.monomial is not None
    assert result.expected != result.actual
    assert "mismatch" in str(result)
