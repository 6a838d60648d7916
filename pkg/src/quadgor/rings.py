"""Presented graded rings R = S/I and ideal-level utilities."""

from quadgor.groebner import buchberger
from quadgor.linalg import RowSpanFrac, RowSpanMod
from quadgor.poly import PolyRing, poly_from_vector


class RingPresentation:
    """A polynomial ring with homogeneous ideal generators.

    Caches the Groebner basis and the quotient-algebra view on first use;
    ``artinian_hint`` lets large examples opt into the early-exit Groebner
    run (exact in every degree, see groebner.buchberger).
    """

    __slots__ = ("ring", "generators", "_gb", "_quotient", "artinian_hint")

    def __init__(self, ring, generators, artinian_hint=False):
        self.ring = ring
        gens = [g for g in generators if not g.is_zero()]
        for g in gens:
            d = g.homogeneous_degree()
            if d is None or d < 1:
                raise ValueError(f"ideal generator not homogeneous of degree >= 1: {g}")
        self.generators = [g.monic() for g in gens]
        self._gb = None
        self._quotient = None
        self.artinian_hint = artinian_hint

    @property
    def field(self):
        return self.ring.field

    @property
    def n(self):
        return self.ring.n

    def groebner(self):
        if self._gb is None:
            self._gb = buchberger(
                self.generators, stop_when_artinian=self.artinian_hint
            )
        return self._gb

    def quotient(self):
        from quadgor.artinian import QuotientAlgebra

        if self._quotient is None:
            self._quotient = QuotientAlgebra(self.ring, self.groebner())
        return self._quotient

    def minimal_generators(self):
        return minimal_generators(self.ring, self.generators)

    def is_nondegenerate(self):
        """No linear forms among the minimal generators."""
        return all(g.homogeneous_degree() >= 2 for g in self.minimal_generators())

    def is_quadratic_presentation(self):
        return all(g.homogeneous_degree() == 2 for g in self.minimal_generators())

    def rename(self, names):
        """The same presentation over a ring with fresh variable names."""
        new_ring = PolyRing(self.field, names)
        images = [new_ring.var(i) for i in range(self.n)]
        return RingPresentation(
            new_ring,
            [g.substitute(new_ring, images) for g in self.generators],
            artinian_hint=self.artinian_hint,
        )

    def __repr__(self):
        return f"RingPresentation({self.ring}, {len(self.generators)} generators)"


def minimal_generators(ring, gens):
    """A minimal generating subset, degreewise: keep a degree-d generator
    iff its coefficient vector leaves the span of S_1 * (lower-degree part
    of the ideal) plus the generators already kept in degree d."""
    if not gens:
        return []
    k = ring.field
    by_degree = {}
    for g in gens:
        by_degree.setdefault(g.homogeneous_degree(), []).append(g)
    kept = []
    lower = []  # all input generators of strictly smaller degree
    for d in sorted(by_degree):
        dim = len(ring.monomial_basis(d))
        span = RowSpanMod(dim, k.p) if k.p else RowSpanFrac(dim)
        multiples = []
        for g in lower:
            e = d - g.homogeneous_degree()
            for m in ring.monomial_basis(e):
                multiples.append(g.term_mul(m, k.one()).coeff_vector(d))
        if multiples:
            span.add_batch(multiples)
        for g in by_degree[d]:
            if span.add(g.coeff_vector(d)):
                kept.append(g)
        lower.extend(by_degree[d])
    return kept


def random_linear_combination(ring, rng, degree=1):
    """A random form with coefficients drawn uniformly from 1..10000."""
    terms = {}
    for m in ring.monomial_basis(degree):
        terms[m] = ring.field(rng.randint(1, 10000))
    return ring.from_terms(terms)
