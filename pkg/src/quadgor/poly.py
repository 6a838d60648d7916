"""Sparse homogeneous polynomials over an exact ground field."""

from quadgor.field import Field
from quadgor.monomials import (
    degrevlex_key,
    mdeg,
    mmul,
    monomials_of_degree,
    variable,
)


class PolyRing:
    """A standard graded polynomial ring k[x_1, ..., x_n], degrevlex order."""

    __slots__ = ("field", "names", "n", "_basis_cache")

    def __init__(self, field, names):
        if not isinstance(field, Field):
            raise TypeError("field must be a Field")
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.n = len(names)
        self._basis_cache = {}

    def monomial_basis(self, d):
        """Degree-d monomials, descending in degrevlex (cached)."""
        if d not in self._basis_cache:
            self._basis_cache[d] = monomials_of_degree(self.n, d)
        return self._basis_cache[d]

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.n: self.field.one()})

    def var(self, i):
        return Polynomial(self, {variable(self.n, i): self.field.one()})

    def monomial(self, m, c=None):
        c = self.field.one() if c is None else self.field(c)
        if not c:
            return self.zero()
        return Polynomial(self, {tuple(m): c})

    def from_terms(self, terms):
        k = self.field
        clean = {}
        for m, c in terms.items():
            c = k(c)
            if c:
                clean[tuple(m)] = c
        return Polynomial(self, clean)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"


class Polynomial:
    """Sparse polynomial: finite map monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def degree(self):
        """Total degree (-1 for zero)."""
        if not self.terms:
            return -1
        return max(mdeg(m) for m in self.terms)

    def homogeneous_degree(self):
        """Common degree of all terms, or None if inhomogeneous or zero."""
        degs = {mdeg(m) for m in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self):
        return len({mdeg(m) for m in self.terms}) <= 1

    def lead_term(self):
        """(monomial, coefficient) maximal in degrevlex."""
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        m = max(self.terms, key=degrevlex_key)
        return m, self.terms[m]

    def lead_monomial(self):
        return self.lead_term()[0]

    def sorted_terms(self):
        """Terms in descending degrevlex order (the canonical form)."""
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def __add__(self, other):
        self._check(other)
        k = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = k.add(res.get(m, k.zero()), c)
            if v:
                res[m] = v
            elif m in res:
                del res[m]
        return Polynomial(self.ring, res)

    def __sub__(self, other):
        self._check(other)
        k = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = k.sub(res.get(m, k.zero()), c)
            if v:
                res[m] = v
            elif m in res:
                del res[m]
        return Polynomial(self.ring, res)

    def __neg__(self):
        k = self.ring.field
        return Polynomial(self.ring, {m: k.neg(c) for m, c in self.terms.items()})

    def scale(self, c):
        k = self.ring.field
        c = k(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: k.mul(cc, c) for m, cc in self.terms.items()})

    def term_mul(self, mono, coeff):
        """Multiply by coeff * x^mono."""
        k = self.ring.field
        if not coeff:
            return self.ring.zero()
        return Polynomial(
            self.ring, {mmul(m, mono): k.mul(c, coeff) for m, c in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        k = self.ring.field
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mmul(m1, m2)
                v = k.add(res.get(m, k.zero()), k.mul(c1, c2))
                if v:
                    res[m] = v
                elif m in res:
                    del res[m]
        return Polynomial(self.ring, res)

    __rmul__ = scale

    def monic(self):
        if not self.terms:
            return self
        _, c = self.lead_term()
        k = self.ring.field
        if c == k.one():
            return self
        return self.scale(k.inv(c))

    def substitute(self, target_ring, images):
        """Substitute variable i -> images[i] (polynomials in target_ring)."""
        if len(images) != self.ring.n:
            raise ValueError("need one image per variable")
        out = target_ring.zero()
        for m, c in self.terms.items():
            part = target_ring.one().scale(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    part = part * images[i]
            out = out + part
        return out

    def coeff_vector(self, d):
        """Dense coefficient list in the degree-d monomial basis (descending)."""
        basis = self.ring.monomial_basis(d)
        zero = self.ring.field.zero()
        return [self.terms.get(m, zero) for m in basis]

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomial ring mismatch")

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(mono)
            elif factors:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)


def poly_from_vector(ring, d, vec):
    """Inverse of coeff_vector: dense degree-d coefficients -> Polynomial."""
    basis = ring.monomial_basis(d)
    terms = {}
    for m, c in zip(basis, vec):
        c = ring.field(c)
        if c:
            terms[m] = c
    return Polynomial(ring, terms)
