"""Quotient-algebra views: standard bases, multiplication maps, socles."""

import pytest

from quadgor.artinian import QuotientAlgebra
from quadgor.field import GF, QQ
from quadgor.groebner import buchberger
from quadgor.poly import PolyRing

P = GF(32003)


def _quotient(ring, gens, **kw):
    return QuotientAlgebra.from_ideal(gens, **kw)


def test_standard_monomials_descending_and_disjoint():
    ring = PolyRing(P, ["x", "y", "z"])
    x, y, z = (ring.var(i) for i in range(3))
    Q = _quotient(ring, [x * x, y * y, z * z])
    from quadgor.monomials import degrevlex_key

    for d in range(4):
        mons = Q.standard_monomials(d)
        keys = [degrevlex_key(m) for m in mons]
        assert keys == sorted(keys, reverse=True)
    assert Q.h_vector() == (1, 3, 3, 1)
    assert Q.top_degree == 3


def test_non_artinian_quotient_has_no_top_degree():
    ring = PolyRing(P, ["x", "y", "z"])
    x, y = ring.var(0), ring.var(1)
    Q = _quotient(ring, [x * y])
    assert not Q.is_artinian
    with pytest.raises(ValueError):
        Q.h_vector()
    assert Q.hilbert_function(2) == 5


def test_variable_action_composes_like_multiplication():
    ring = PolyRing(P, ["x", "y", "z"])
    x, y, z = (ring.var(i) for i in range(3))
    Q = _quotient(ring, [x * x - y * z, y * y, z * z])
    # action of x then y equals the multiplication matrix of xy
    A = Q.variable_action(0, 1)  # R_1 -> R_2
    B = Q.variable_action(1, 2)  # R_2 -> R_3
    direct = Q.multiplication_matrix(x * y, 1)
    k = ring.field
    n2, n1 = len(B), len(A[0]) if A else 0
    comp = [
        [
            sum_mod(k, (k.mul(B[r][t], A[t][c]) for t in range(len(A))))
            for c in range(n1)
        ]
        for r in range(n2)
    ]
    assert comp == direct


def sum_mod(k, items):
    acc = k.zero()
    for v in items:
        acc = k.add(acc, v)
    return acc


def test_reduce_vector_roundtrip():
    ring = PolyRing(QQ, ["x", "y"])
    x, y = ring.var(0), ring.var(1)
    Q = _quotient(ring, [x * x + y * y])
    d, vec = Q.reduce_vector(x * x)
    assert d == 2
    mons = Q.standard_monomials(2)
    back = ring.from_terms({m: c for m, c in zip(mons, vec)})
    assert Q.gb.normal_form(x * x) == back
    assert Q.reduce_vector(x * x + y * y) == (None, [])


def test_socle_of_monomial_ci_is_one_dimensional():
    ring = PolyRing(P, ["x", "y", "z"])
    gens = [ring.var(i) * ring.var(i) for i in range(3)]
    Q = _quotient(ring, gens)
    assert Q.socle_dimensions() == {3: 1}
    assert Q.socle_type() == 1


def test_socle_over_qq():
    ring = PolyRing(QQ, ["x", "y"])
    x, y = ring.var(0), ring.var(1)
    Q = _quotient(ring, [x * x, x * y, y * y])
    assert Q.socle_dimensions() == {1: 2}


def test_early_stopped_gb_gives_same_algebra():
    ring = PolyRing(P, ["x", "y", "z", "w"])
    x, y, z, w = (ring.var(i) for i in range(4))
    gens = [x * x, y * y, z * z, w * w, x * y + z * w]
    Qf = _quotient(ring, gens)
    Qa = _quotient(ring, gens, stop_when_artinian=True)
    assert Qf.h_vector() == Qa.h_vector() == (1, 4, 5)
    assert Qf.socle_type() == Qa.socle_type() == 5
