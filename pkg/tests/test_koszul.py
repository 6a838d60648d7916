"""Koszulness machinery: Fröberg series, bar oracle, probe, combiner."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadgor.canonical import DualModuleView
from quadgor.catalog import catalog
from quadgor.field import GF
from quadgor.koszul import (
    SeriesTrunc,
    bar_homology,
    bar_homology_module,
    froberg_coefficients,
    froberg_test,
    gulliksen_combine,
    koszul_probe,
    propagation_check,
)
from quadgor.poly import PolyRing
from quadgor.resolutions import resolve_k_over_quotient
from quadgor.rings import RingPresentation

P = GF(32003)


def test_froberg_witness_145():
    assert froberg_test((1, 4, 5)) == 6


def test_froberg_no_witness_169():
    assert froberg_test((1, 6, 9), N=64) is None
    coeffs = froberg_coefficients((1, 6, 9), 8)
    # 1/H(-t) expands to sum (i+1) 3^i t^i
    assert coeffs == [(i + 1) * 3**i for i in range(9)]


@given(st.lists(st.integers(1, 9), min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_froberg_recurrence_inverts_series(h_tail):
    h = tuple([1] + h_tail)
    N = 12
    a = froberg_coefficients(h, N)
    # verify H(-t) * sum a_k t^k = 1 through degree N
    hm = [((-1) ** i) * (h[i] if i < len(h) else 0) for i in range(N + 1)]
    for m in range(N + 1):
        conv = sum(hm[i] * a[m - i] for i in range(m + 1))
        assert conv == (1 if m == 0 else 0)


def test_koszul_series_of_quadratic_ci_is_positive():
    assert froberg_test((1, 3, 3, 1), N=40) is None
    assert froberg_test((1, 2, 1), N=40) is None


def test_bar_homology_dual_numbers():
    ring = PolyRing(P, ["y"])
    pres = RingPresentation(ring, [ring.var(0) * ring.var(0)])
    Q = pres.quotient()
    tab = bar_homology(Q, N=4, jmax=4)
    # k[y]/y^2 is Koszul with beta_{i,i} = 1
    for i in range(5):
        assert tab.get(i, i) == 1
    assert not tab.off_diagonal()


def test_bar_agrees_with_linear_algebra_route(ex42):
    Q = ex42.quotient()
    a = bar_homology(Q, N=3, jmax=4)
    b = resolve_k_over_quotient(Q, imax=3, jmax=4)
    for i in range(4):
        for j in range(5):
            assert a.get(i, j) == b.get(i, j), (i, j)


def test_bar_module_on_dual_of_gorenstein():
    # for Gorenstein R, omega = R(-1): beta^R_i(omega) = beta^R_i(k shifted)
    pres = catalog("quadratic-ci(n=2)").ring_presentation()
    Q = pres.quotient()
    M = DualModuleView(Q)
    tab = bar_homology_module(Q, M, N=2, jmax=4)
    # free module: resolution is R(-1) itself, no higher syzygies
    assert tab.get(0, 1) == 1
    for j in range(5):
        assert tab.get(1, j) == 0


def test_koszul_probe_ci_is_clean():
    pres = catalog("quadratic-ci(n=2)").ring_presentation()
    v = koszul_probe(pres, N=3, jmax=6)
    assert v.verdict == "koszul-through-N"
    assert v.witness is None


def test_koszul_probe_nonquadratic_shortcut():
    ring = PolyRing(P, ["x", "y"])
    x, y = ring.var(0), ring.var(1)
    pres = RingPresentation(ring, [x * x * x])
    v = koszul_probe(pres, N=2)
    assert v.verdict == "non-koszul-witness"
    assert v.witness == (2, 3)


def test_koszul_probe_ex42(ex42):
    v = koszul_probe(ex42, N=3, jmax=4)
    assert v.verdict == "non-koszul-witness"
    assert v.witness == (3, 4)
    assert v.froberg_witness == 6


def test_series_trunc_helpers():
    s = SeriesTrunc(2, [[1], [0, 3], [0, 0, 4, 1]])
    assert s.coefficient(1, 1) == 3
    assert s.coefficient(2, 3) == 1
    assert s.support(2) == {2, 3}
    assert not s.is_diagonal()
    assert SeriesTrunc(1, [[1], [0, 2]]).is_diagonal()


def test_gulliksen_combiner_roundtrip(ex42):
    Q = ex42.quotient()
    P_R = bar_homology(Q, N=3, jmax=4)
    M = DualModuleView(Q)
    P_M = bar_homology_module(Q, M, N=3, jmax=4)
    sR = SeriesTrunc.from_table(P_R, 3)
    sM = SeriesTrunc.from_table(P_M, 3)
    f = gulliksen_combine(sR, sM)
    assert propagation_check(sR, sM, f)
    # beta_1 of the idealization = n + t = 4 + 5
    assert f.coefficient(1, 1) == 9
    # the off-diagonal witness of P_R survives
    assert 4 in f.support(3)


def test_gulliksen_mismatched_bounds():
    a = SeriesTrunc(2, [[1], [0, 1], [0, 0, 1]])
    b = SeriesTrunc(3, [[1], [0, 1], [0, 0, 1], [0, 0, 0, 1]])
    with pytest.raises(ValueError):
        gulliksen_combine(a, b)
