"""Graded quotient algebras R = S/I presented by a Groebner basis.

Each graded piece R_d is identified with the span of its standard monomials
(monomials outside the initial ideal), listed in descending degrevlex.  All
multiplication maps are returned as dense matrices over the ground field so
the linear-algebra backends can consume them directly.
"""

from quadgor.groebner import buchberger
from quadgor.monomials import mdeg, mdivides, mmul, variable


class QuotientAlgebra:
    """S/I with degreewise bases of standard monomials.

    For Artinian quotients ``top_degree`` is the socle degree (largest d
    with R_d != 0); for the rest it is None and degreewise data is still
    available in any requested degree.
    """

    __slots__ = ("ring", "gb", "_std_cache", "_index_cache", "top_degree", "_mult_cache")

    def __init__(self, ring, gb, max_probe_degree=64):
        self.ring = ring
        self.gb = gb
        self._std_cache = {}
        self._index_cache = {}
        self._mult_cache = {}
        self.top_degree = self._find_top_degree(max_probe_degree)

    @classmethod
    def from_ideal(cls, gens, stop_when_artinian=False, degree_bound=None):
        gb = buchberger(
            gens, stop_when_artinian=stop_when_artinian, degree_bound=degree_bound
        )
        return cls(gb.ring, gb)

    # -- bases ------------------------------------------------------------

    def standard_monomials(self, d):
        """Degree-d monomials outside the initial ideal, descending."""
        if d < 0:
            return []
        if d in self._std_cache:
            return self._std_cache[d]
        if self.gb.complete_above is not None and d >= self.gb.complete_above:
            out = []
        else:
            leads = [m for m in self.gb.lead_monos if mdeg(m) <= d]
            out = [
                m
                for m in self.ring.monomial_basis(d)
                if not any(mdivides(l, m) for l in leads)
            ]
        self._std_cache[d] = out
        return out

    def index_of(self, d):
        """Monomial -> position map for the degree-d standard basis."""
        if d not in self._index_cache:
            self._index_cache[d] = {
                m: i for i, m in enumerate(self.standard_monomials(d))
            }
        return self._index_cache[d]

    def hilbert_function(self, d):
        return len(self.standard_monomials(d))

    def _find_top_degree(self, max_probe_degree):
        if self.gb.complete_above is not None:
            top = self.gb.complete_above - 1
            while top >= 0 and not self.standard_monomials(top):
                top -= 1
            return top
        # decide Artinian-ness combinatorially before probing degreewise,
        # so positive-dimensional quotients never enumerate huge bases
        from quadgor.hilbert import krull_dimension

        if not self.gb.lead_monos:
            return None
        if krull_dimension(self.gb.lead_monos, self.ring.n) > 0:
            return None
        max_lead = max(mdeg(m) for m in self.gb.lead_monos)
        for d in range(max(1, max_lead), max_probe_degree + 1):
            if not self.standard_monomials(d):
                # an empty degree stays empty in every higher degree
                return d - 1
        return None

    @property
    def is_artinian(self):
        return self.top_degree is not None

    def h_vector(self):
        if not self.is_artinian:
            raise ValueError("h-vector of the quotient requires an Artinian ring")
        return tuple(self.hilbert_function(d) for d in range(self.top_degree + 1))

    # -- reduction to coordinates ----------------------------------------

    def reduce_vector(self, f):
        """Normal form of a homogeneous f as coordinates in its degree."""
        nf = self.gb.normal_form(f)
        if nf.is_zero():
            return None, []
        d = nf.homogeneous_degree()
        idx = self.index_of(d)
        zero = self.ring.field.zero()
        vec = [zero] * len(idx)
        for m, c in nf.terms.items():
            vec[idx[m]] = c
        return d, vec

    # -- multiplication maps ---------------------------------------------

    def variable_action(self, i, d):
        """Matrix of x_i : R_d -> R_{d+1} (rows = target basis)."""
        key = (i, d)
        if key in self._mult_cache:
            return self._mult_cache[key]
        src = self.standard_monomials(d)
        tgt_idx = self.index_of(d + 1)
        k = self.ring.field
        zero = k.zero()
        xi = variable(self.ring.n, i)
        rows = [[zero] * len(src) for _ in range(len(tgt_idx))]
        for c, m in enumerate(src):
            prod = mmul(m, xi)
            if prod in tgt_idx:
                rows[tgt_idx[prod]][c] = k.one()
            else:
                nf = self.gb.normal_form(self.ring.monomial(prod))
                for mm, cc in nf.terms.items():
                    rows[tgt_idx[mm]][c] = cc
        self._mult_cache[key] = rows
        return rows

    def multiplication_matrix(self, f, d):
        """Matrix of multiplication by homogeneous f : R_d -> R_{d + deg f}."""
        e = f.homogeneous_degree()
        if e is None:
            raise ValueError("multiplication by an inhomogeneous element")
        src = self.standard_monomials(d)
        tgt_idx = self.index_of(d + e)
        k = self.ring.field
        zero = k.zero()
        rows = [[zero] * len(src) for _ in range(len(tgt_idx))]
        for c, m in enumerate(src):
            prod = f.term_mul(m, k.one())
            nf = self.gb.normal_form(prod)
            for mm, cc in nf.terms.items():
                rows[tgt_idx[mm]][c] = k.add(rows[tgt_idx[mm]][c], cc)
        return rows

    # -- socle ------------------------------------------------------------

    def socle_dimensions(self):
        """Dimension of the socle (annihilator of the maximal ideal) per
        degree, for an Artinian quotient."""
        if not self.is_artinian:
            raise ValueError("socle computation requires an Artinian ring")
        from quadgor.linalg import nullspace_frac, nullspace_mod, as_modmatrix
        import numpy as np

        dims = {}
        p = self.ring.field.p
        for d in range(self.top_degree + 1):
            nd = self.hilbert_function(d)
            if nd == 0:
                continue
            stacked = []
            for i in range(self.ring.n):
                stacked.extend(self.variable_action(i, d))
            if not stacked:
                dims[d] = nd
                continue
            if p:
                mat = as_modmatrix(stacked, nd, p)
                if mat.shape[0] == 0:
                    dims[d] = nd
                else:
                    ns = nullspace_mod(mat, p)
                    if len(ns):
                        dims[d] = len(ns)
            else:
                ns = nullspace_frac(stacked, nd)
                if ns:
                    dims[d] = len(ns)
        return dims

    def socle_type(self):
        """Total socle dimension (the Cohen-Macaulay type when Artinian)."""
        return sum(self.socle_dimensions().values())
