"""End-to-end acceptance suite.

Each test prints one PASS/FAIL line for its criterion; run with -s (or rely
on pytest's captured-output-on-failure) to see the ledger.
"""

import time
from contextlib import contextmanager
from math import comb

import pytest

from quadgor.canonical import (
    DualModuleView,
    canonical_module_via_duality,
    idealization_expected_hilbert,
    idealize,
    tensor_product,
)
from quadgor.catalog import (
    admissible_range,
    catalog,
    catalog_ids,
    gap_analysis,
    generic_quadrics_verified,
    no_gap_inequality,
)
from quadgor.field import GF, QQ
from quadgor.hilbert import HilbertData
from quadgor.invariants import (
    check_betti_symmetry,
    check_reg_le_pd,
    compute_report,
    is_superlevel,
)
from quadgor.koszul import (
    SeriesTrunc,
    bar_homology,
    bar_homology_module,
    froberg_coefficients,
    froberg_test,
    gulliksen_combine,
    propagation_check,
)
from quadgor.poly import PolyRing
from quadgor.resolutions import betti_via_koszul, resolve_ideal, resolve_k_over_quotient
from quadgor.rings import RingPresentation


CRITERIA = {
    1: "base ring of the 4-variable running example",
    2: "idealization of the running example: full Betti table",
    3: "Gorenstein Betti symmetry across the idealization table",
    4: "six-variable non-Fröberg-detectable ring",
    5: "series test: witnesses where expected, none for (1,6,9)",
    6: "bar complex and syzygy route agree on β^R(k), i ≤ 4",
    7: "Poincaré-series combiner matches the bar oracle on R̃",
    8: "socle-degree-2 family: superlevel bases, Gorenstein quadratic idealizations",
    9: "codimension coverage of the generic-quadric ranges",
    10: "structural identities across the whole catalog",
}


@contextmanager
def criterion(num, desc=None):
    desc = desc or CRITERIA[num]
    try:
        yield
    except BaseException:
        print(f"CRITERION {num}: FAIL — {desc}")
        raise
    print(f"CRITERION {num}: PASS — {desc}")


@pytest.fixture(scope="module")
def ex42_tilde(ex42):
    return idealize(ex42).presentation


@pytest.fixture(scope="module")
def ex42_tilde_betti(ex42_tilde):
    return betti_via_koszul(ex42_tilde.quotient())


EX42_ROWS = {0: {0: 1}, 1: {1: 5}, 2: {2: 15, 3: 16, 4: 5}}
TILDE_ROW1 = [36, 160, 330, 384, 260, 96, 15]
TILDE_ROW2 = [15, 96, 260, 384, 330, 160, 36]


def test_criterion_01_ex42_base_ring(ex42):
    with criterion(1):
        t0 = time.perf_counter()
        Q = ex42.quotient()
        bt = betti_via_koszul(Q)
        omega = canonical_module_via_duality(ex42)
        rep = compute_report(ex42, betti_table=bt, omega=omega)
        elapsed = time.perf_counter() - t0
        assert bt.rows() == EX42_ROWS
        assert rep.reg == 2 and rep.pd == 4 and rep.type == 5
        assert rep.h_vector == (1, 4, 5)
        assert rep.flags["level"] and rep.flags["superlevel"]
        assert rep.flags["almost_complete_intersection"]
        assert rep.flags["quadratic"]
        # cross-oracle: the syzygy route over QQ gives the same table
        qq = catalog("ex42").ring_presentation(field=QQ)
        assert resolve_ideal(qq.generators).betti_table() == bt
        assert elapsed < 5.0, f"runtime {elapsed:.2f}s over budget"


def test_criterion_02_ex42_idealization(ex42, ex42_tilde, ex42_tilde_betti):
    with criterion(2):
        tilde, bt = ex42_tilde, ex42_tilde_betti
        Q = tilde.quotient()
        assert Q.h_vector() == (1, 9, 9, 1)
        assert tilde.is_quadratic_presentation()
        rows = bt.rows()
        assert [rows[1][i] for i in range(1, 8)] == TILDE_ROW1
        assert [rows[2][i] for i in range(2, 9)] == TILDE_ROW2
        assert bt.get(9, 12) == 1
        rep = compute_report(tilde, betti_table=bt)
        assert rep.codim == 9 and rep.reg == 3
        assert rep.flags["gorenstein"]


def test_criterion_03_betti_symmetry(ex42_tilde_betti):
    with criterion(3):
        assert check_betti_symmetry(ex42_tilde_betti, 9, 12)


def test_criterion_04_roos_ring(roos):
    with criterion(4):
        Q = roos.quotient()
        bt = betti_via_koszul(Q)
        assert Q.h_vector() == (1, 6, 9)
        assert bt.rows() == {
            0: {0: 1},
            1: {1: 12, 2: 16, 3: 2},
            2: {2: 32, 3: 96, 4: 100, 5: 48, 6: 9},
        }
        omega = canonical_module_via_duality(roos)
        assert is_superlevel(roos, omega)
        # idealization Hilbert function, via an actual Groebner basis
        tilde = idealize(roos, omega=omega).presentation
        assert tilde.quotient().h_vector() == (1, 15, 15, 1)
        assert list(idealization_expected_hilbert(roos)) == [1, 15, 15, 1]


def test_criterion_05_froberg_certificates():
    with criterion(5):
        assert froberg_test((1, 4, 5)) == 6
        for n, g in [(4, 5), (5, 7), (5, 8), (6, 10), (6, 11)]:
            pres, _ = generic_quadrics_verified(n, g, seed=0)
            h = pres.quotient().h_vector()
            assert h == (1, n, comb(n + 1, 2) - g)
            assert froberg_test(h) is not None, (n, g)
        assert froberg_test((1, 6, 9), N=64) is None
        # the expansion is (i+1)·3^i: positive forever, showing the limit
        assert froberg_coefficients((1, 6, 9), 12) == [
            (i + 1) * 3**i for i in range(13)
        ]


def _cross_oracle_cases():
    P = GF(32003)
    r1 = PolyRing(P, ["y"])
    dual = RingPresentation(r1, [r1.var(0) * r1.var(0)])
    r2 = PolyRing(P, ["x", "y"])
    fat = RingPresentation(
        r2, [r2.var(0) * r2.var(0), r2.var(0) * r2.var(1), r2.var(1) * r2.var(1)]
    )
    r3 = PolyRing(P, ["x", "y", "z"])
    ci = RingPresentation(r3, [r3.var(i) * r3.var(i) for i in range(3)])
    return [("dual numbers", dual), ("fat point", fat), ("monomial CI", ci)]


def test_criterion_06_cross_oracle_agreement(ex42):
    with criterion(6):
        cases = _cross_oracle_cases() + [("running example", ex42)]
        for name, pres in cases:
            Q = pres.quotient()
            jmax = 5
            a = bar_homology(Q, N=4, jmax=jmax)
            b = resolve_k_over_quotient(Q, imax=4, jmax=jmax)
            for i in range(5):
                for j in range(jmax + 1):
                    assert a.get(i, j) == b.get(i, j), (name, i, j)


def test_criterion_07_gulliksen_combiner(ex42, ex42_tilde):
    with criterion(7):
        Q = ex42.quotient()
        N, jmax = 3, 4
        P_R = SeriesTrunc.from_table(bar_homology(Q, N=N, jmax=jmax), N)
        M = DualModuleView(Q)
        P_M = SeriesTrunc.from_table(bar_homology_module(Q, M, N=N, jmax=jmax), N)
        combined = gulliksen_combine(P_R, P_M)
        # independent bar computation on the idealization itself
        P_tilde = SeriesTrunc.from_table(
            bar_homology(ex42_tilde.quotient(), N=N, jmax=jmax), N
        )
        assert combined == P_tilde
        assert propagation_check(P_R, P_M, combined)
        # the off-diagonal monomial s^4 t^3 of P_R survives into P_R̃
        assert P_R.coefficient(3, 4) == 5
        assert 4 in combined.support(3)


FIG2_CS = [10, 11, 14, 18, 19, 24]


def test_criterion_08_figure2_suite():
    with criterion(8):
        for c in FIG2_CS:
            pres = catalog(f"figure2(c={c})").ring_presentation()
            Q = pres.quotient()
            assert Q.is_artinian and Q.top_degree == 2, c
            socle = Q.socle_dimensions()
            assert set(socle) == {2}, c  # level with socle degree 2
            codim = pres.n
            type_ = socle[2]
            assert codim + type_ == c, c
            omega = canonical_module_via_duality(pres)
            assert is_superlevel(pres, omega), c
            tilde = idealize(pres, omega=omega).presentation
            Qt = tilde.quotient()
            assert Qt.h_vector() == (1, c, c, 1), c
            assert Qt.top_degree == 3, c  # reg of the Artinian quotient
            assert Qt.socle_type() == 1, c  # Gorenstein
            assert tilde.is_quadratic_presentation(), c
            if c <= 11:
                bt = betti_via_koszul(Qt)
                rep = compute_report(tilde, betti_table=bt)
                assert rep.reg == 3 and rep.pd == c and rep.type == 1, c
                assert check_betti_symmetry(bt, c, c + 3), c


def test_criterion_09_gap_analysis():
    with criterion(9):
        t0 = time.perf_counter()
        rep = gap_analysis(30)
        assert rep.missing == {10, 11, 14, 15, 18, 19, 24}
        assert all(c in rep.covered for c in range(25, 31))
        assert rep.threshold == 8
        assert no_gap_inequality(8) and not no_gap_inequality(7)
        figure1 = {
            4: (5, 5, [9]),
            5: (7, 8, [13, 12]),
            6: (10, 11, [17, 16]),
            7: (12, 15, [23, 22, 21, 20]),
            8: (15, 19, [29, 28, 27, 26, 25]),
        }
        for n, (lo, hi, cs) in figure1.items():
            r = admissible_range(n)
            assert (r.g_min, r.g_max, r.c_values) == (lo, hi, cs), n
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0, f"runtime {elapsed:.2f}s over budget"


def test_criterion_10_structural_property_suite(ex42, roos):
    with criterion(10):
        for cid in catalog_ids():
            pres = catalog(cid).ring_presentation()
            Q = pres.quotient()
            gb = pres.groebner()
            hd = HilbertData.from_initial_ideal(gb.lead_monos, pres.n)
            heavy = cid.startswith("figure2") and pres.n >= 6
            if not heavy:
                res = resolve_ideal(pres.generators)
                assert res.check_complex(), cid  # d∘d = 0
                assert res.is_minimal(), cid
                bt = res.betti_table()
            else:
                # full syzygy resolutions of the big socle-degree-2 entries
                # are over budget; check d∘d = 0 on a partial resolution and
                # take the table from the independent Koszul-homology engine
                from quadgor.modules import generators_row
                from quadgor.resolutions import resolve_over_poly

                partial = resolve_over_poly(
                    generators_row(pres.ring, pres.generators), max_length=3
                )
                assert partial.check_complex(), cid  # d∘d = 0
                bt = betti_via_koszul(Q)
                for i in (1, 2):
                    assert partial.betti_table().total(i) == bt.total(i), cid
            # Euler characteristic = Hilbert numerator
            assert bt.alternating_numerator() == list(hd.numerator), cid
            # reg ≤ pd with equality exactly on complete intersections
            rep = compute_report(pres, betti_table=bt)
            if rep.flags["quadratic"] and rep.flags["cohen_macaulay"]:
                want = "ci-equality" if rep.flags["complete_intersection"] else "strict"
                assert check_reg_le_pd(rep) == want, cid

        # H_{R̃}(j) = H_R(j) + dim ω_j, verified against actual quotients
        for pres in (ex42, roos, catalog("figure2(c=10)").ring_presentation()):
            tilde = idealize(pres).presentation
            Q = pres.quotient()
            Qt = tilde.quotient()
            a = Q.top_degree
            for j in range(a + 2):
                assert Qt.hilbert_function(j) == Q.hilbert_function(j) + Q.hilbert_function(a + 1 - j)
            # codim R̃ = codim R + type R, reg R̃ = reg R + 1
            assert tilde.ring.n == pres.n + Q.socle_type()
            assert Qt.top_degree == Q.top_degree + 1

        # tensor products multiply h-polynomials
        pairs = [
            ("quadratic-ci(n=2)", "quadratic-ci(n=3)"),
            ("ex42", "dual-numbers"),
        ]
        for ida, idb in pairs:
            A = catalog(ida).ring_presentation()
            B = catalog(idb).ring_presentation()
            ha = A.quotient().h_vector()
            hb = B.quotient().h_vector()
            hab = tensor_product(A, B).quotient().h_vector()
            prod = [0] * (len(ha) + len(hb) - 1)
            for i, x in enumerate(ha):
                for j, y in enumerate(hb):
                    prod[i + j] += x * y
            assert list(hab) == prod, (ida, idb)
