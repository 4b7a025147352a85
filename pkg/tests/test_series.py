from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magiclab.enumeration import count_series, multivariate_truncation
from magiclab.graph import catalog_graph
from magiclab.monoid import Decomposition, builtin_decomposition
from magiclab.series import (AnsatzMismatch, InsufficientTerms, MultiSeries, RationalGF,
                             ReconstructionError, SeriesError, UniPoly, decomposition_to_truncation,
                             denominator_poly, expand_gf, fit_stanley, parse_factors,
                             reconstruct_numerator, series_equal)
from oracles import binomial_series

G2_DEN = [(1, 3), (2, 1)]
G3_DEN = [(1, 3), (2, 2)]


def test_multiseries_algebra():
    a = MultiSeries.geometric((1, 0), 1, 4)
    b = MultiSeries.geometric((0, 1), 1, 4)
    prod = a * b
    assert len(prod) == 15
    assert prod.y_coefficients() == [1, 2, 3, 4, 5]
    assert (a - a) == MultiSeries(2, 4)
    assert a + (-a) == MultiSeries(2, 4)
    assert MultiSeries.one(2, 4) * a == a
    assert MultiSeries.monomial((1, 1), 5, 4) == MultiSeries(2, 4)
    with pytest.raises(SeriesError):
        MultiSeries.geometric((1, 0), 0, 4)
    with pytest.raises(SeriesError):
        a + MultiSeries.one(2, 3)


def test_tsv_round_trip():
    f = multivariate_truncation(catalog_graph("G2"), 3)
    text = f.to_tsv()
    assert text.splitlines()[0] == "0\t0 0 0 0 0 0 0 0 0\t1"
    assert MultiSeries.from_tsv(text, 9, 3) == f


def test_series_equal_report():
    f = multivariate_truncation(catalog_graph("G1"), 3)
    g = f + MultiSeries.monomial((0,) * 6, 2, 3)
    cmp = series_equal(f, g)
    assert not cmp
    assert cmp.report() == "y^2 x^[0, 0, 0, 0, 0, 0]: 0 != 1"
    assert series_equal(f, f)


def test_expand_gf_examples():
    assert expand_gf(RationalGF((1, 1, 1), G2_DEN), 6) == [1, 4, 11, 23, 42, 69, 106]
    assert expand_gf(RationalGF((1, 2, 4, 2, 1), G3_DEN), 5) == [1, 5, 18, 46, 101, 193]
    assert expand_gf(RationalGF((1,), [(1, 3)]), 7) == binomial_series(3, 7)


def test_reconstruct_examples():
    h2 = list(count_series(catalog_graph("G2"), 10))
    assert reconstruct_numerator(h2, G2_DEN).coeffs == (1, 1, 1)
    h4 = list(count_series(catalog_graph("G4"), 10))
    assert reconstruct_numerator(h4, [(1, 5)]).coeffs == (1, 1, 1)
    h3 = list(count_series(catalog_graph("G3"), 14))
    assert reconstruct_numerator(h3, G3_DEN).coeffs == (1, 2, 4, 2, 1)


def test_reconstruct_failures():
    h1 = list(count_series(catalog_graph("G1"), 3))
    with pytest.raises(ReconstructionError):
        reconstruct_numerator(h1, [(1, 5)])
    with pytest.raises(InsufficientTerms):
        reconstruct_numerator(h1, [(1, 5)])
    h2 = list(count_series(catalog_graph("G2"), 12))
    with pytest.raises(AnsatzMismatch):
        reconstruct_numerator(h2, [(1, 3)])


def test_factor_parsing():
    assert parse_factors("1^3,2") == ((1, 3), (2, 1))
    assert parse_factors("2^1, 1^2, 1") == ((1, 3), (2, 1))
    assert denominator_poly(parse_factors("1^2")) == [1, -2, 1]
    with pytest.raises(SeriesError):
        parse_factors("x^2")
    with pytest.raises(SeriesError):
        parse_factors("0^1")
    gf = RationalGF((1, 1, 1), G2_DEN)
    assert RationalGF.from_json(gf.to_json()) == gf
    assert str(gf) == "(1 + y + y^2) / ((1 - y)^3 (1 - y^2))"


def test_unipoly_divmod():
    q, r = UniPoly((1, -1, -1, 1)).divmod(UniPoly((1, -1)))
    assert q.coeffs == (1, 0, -1) and r.coeffs == ()
    with pytest.raises(SeriesError):
        UniPoly((1, 0, 1)).divmod(UniPoly((0, 2)))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6),
       st.lists(st.tuples(st.integers(1, 4), st.integers(1, 2)), min_size=1, max_size=3),
       st.integers(0, 8))
def test_expand_then_reconstruct(num, factors, extra):
    gf = RationalGF(num, factors)
    D = len(denominator_poly(gf.factors)) - 1
    L = D + len(num) + extra + 1
    h = expand_gf(gf, L - 1)
    assert reconstruct_numerator(h, factors) == gf.numerator
    assert expand_gf(RationalGF(reconstruct_numerator(h, factors), factors), L - 1) == h


def test_fit_examples():
    h1 = list(count_series(catalog_graph("G1"), 7))
    qp = fit_stanley(h1, 2)
    assert qp.P == (1, Fraction(3, 2), Fraction(1, 2)) and qp.q_is_zero
    qp = fit_stanley([1] * 8, 0, 0)
    assert qp.P == (1,) and qp.q_is_zero
    with pytest.raises(SeriesError):
        fit_stanley(h1, 1)
    with pytest.raises(SeriesError):
        fit_stanley([1, 2], 3)


@pytest.mark.parametrize("name,q_zero,degrees", [
    ("G1", True, (2, -1)), ("G2", False, (3, 0)), ("G3", False, (4, 1)), ("G4", True, (4, -1)),
])
def test_fit_extrapolates(name, q_zero, degrees):
    g = catalog_graph(name)
    window = 7
    h = list(count_series(g, window - 1 + 5))
    qp = fit_stanley(h[:window], 4, 1)
    assert qp.q_is_zero == q_zero
    assert qp.degrees() == degrees
    assert [qp(s) for s in range(len(h))] == h


def test_decomposition_series():
    for name, S in (("G1", 4), ("G2", 4), ("G3", 5), ("G4", 5)):
        d = builtin_decomposition(name)
        assert decomposition_to_truncation(d, S) == multivariate_truncation(d.graph, S)
    g1 = builtin_decomposition("G1").graph
    empty = Decomposition(g1, ())
    assert decomposition_to_truncation(empty, 3) == MultiSeries(6, 3)


def test_g2_normal_form():
    S = 6
    num = MultiSeries.one(9, S) - MultiSeries.monomial((1,) * 9, 3, S)
    f = num
    for gens, s in ([(0, 0, 0, 0, 0, 0, 1, 1, 1), 1], [(0, 1, 0, 0, 0, 1, 0, 0, 1), 1],
                    [(1, 0, 0, 0, 1, 0, 0, 1, 0), 1], [(0, 0, 1, 1, 0, 0, 1, 0, 0), 1],
                    [(1, 1, 1, 1, 1, 1, 0, 0, 0), 2]):
        f = f * MultiSeries.geometric(gens, s, S)
    assert f == multivariate_truncation(catalog_graph("G2"), S)
    assert f == decomposition_to_truncation(builtin_decomposition("G2"), S)


def test_g1_product_form():
    S = 4
    f = MultiSeries.one(6, S)
    for e in ((0, 1, 0, 1, 0, 0), (1, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 1)):
        f = f * MultiSeries.geometric(e, 1, S)
    assert series_equal(f, multivariate_truncation(catalog_graph("G1"), S))
