"""Hilbert series of graded quotients, via the initial ideal.

The series of S/I is written K(t)/(1-t)^n with K an integer polynomial (the
numerator), computed by the classical pivot recursion on the monomial
initial ideal.  Krull dimension is computed combinatorially from the
initial ideal and cross-checked against the cancelled denominator.
"""

from functools import lru_cache

from quadgor.monomials import mdeg, mdivides


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ]


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_shift(a, k):
    return [0] * k + list(a)


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _minimalize(gens):
    gens = sorted(set(gens), key=mdeg)
    out = []
    for g in gens:
        if not any(mdivides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def monomial_ideal_numerator(gens, n):
    """Numerator K(t) of Hilb(S/I) = K(t)/(1-t)^n for a monomial ideal.

    Pivot recursion: K(I) = K(I + (x)) + t * K(I : x) for a variable x in
    the support of at least two generators; base cases are the empty ideal
    and pairwise-coprime generators (a regular sequence).
    """
    gens = _minimalize(tuple(tuple(g) for g in gens))

    @lru_cache(maxsize=None)
    def rec(gs):
        if not gs:
            return (1,)
        if len(gs) == 1 or _pairwise_coprime(gs):
            out = [1]
            for g in gs:
                factor = [0] * (mdeg(g) + 1)
                factor[0] = 1
                factor[mdeg(g)] -= 1
                out = _poly_mul(out, factor)
            return tuple(out)
        piv = _pivot_variable(gs)
        plus = []
        colon = []
        xv = tuple(1 if i == piv else 0 for i in range(n))
        for g in gs:
            if g[piv] > 0:
                colon.append(tuple(e - (1 if i == piv else 0) for i, e in enumerate(g)))
            else:
                plus.append(g)
                colon.append(g)
        plus.append(xv)
        a = rec(_minimalize(tuple(plus)))
        b = rec(_minimalize(tuple(colon)))
        return tuple(_trim(_poly_add(a, _poly_shift(b, 1))))

    return _trim(rec(gens))


def _pairwise_coprime(gs):
    support = [set(i for i, e in enumerate(g) if e) for g in gs]
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            if support[i] & support[j]:
                return False
    return True


def _pivot_variable(gs):
    counts = {}
    for g in gs:
        for i, e in enumerate(g):
            if e:
                counts[i] = counts.get(i, 0) + 1
    # most shared variable splits the recursion fastest
    return max(counts, key=lambda i: (counts[i], -i))


def krull_dimension(gens, n):
    """dim S/I for a monomial ideal: the largest variable subset A such
    that no generator is supported inside A (branch-and-bound on
    generator supports)."""
    gens = _minimalize(tuple(tuple(g) for g in gens))
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if any(not s for s in supports):
        raise ValueError("unit generator: the quotient is zero")
    best = 0

    def search(allowed, idx):
        nonlocal best
        if len(allowed) <= best:
            return
        for t in range(idx, len(supports)):
            if supports[t] <= allowed:
                for v in sorted(supports[t]):
                    search(allowed - {v}, t + 1)
                return
        best = max(best, len(allowed))

    search(frozenset(range(n)), 0)
    return best


def divide_by_one_minus_t(coeffs, times):
    """Exact division of an integer polynomial by (1-t)^times; raises if
    the division leaves a remainder."""
    out = list(coeffs)
    for _ in range(times):
        # q(t) = p(t)/(1-t): partial sums, with total sum must be 0
        acc = 0
        q = []
        for c in out:
            acc += c
            q.append(acc)
        if q and q[-1] != 0:
            raise ValueError("polynomial not divisible by (1-t)")
        q.pop()
        out = q if q else [0]
    return _trim(out)


class HilbertData:
    """Numerator, Krull dimension, h-vector, and a-invariant of S/I."""

    __slots__ = ("numerator", "n", "dim", "h_vector", "a_invariant")

    def __init__(self, numerator, n, dim):
        self.numerator = tuple(_trim(numerator))
        self.n = n
        self.dim = dim
        h = None
        try:
            h = tuple(divide_by_one_minus_t(self.numerator, n - dim))
        except ValueError:
            pass  # not Cohen-Macaulay-clean: leave the h-vector unset
        self.h_vector = h
        if h is not None:
            self.a_invariant = (len(h) - 1) - dim
        else:
            self.a_invariant = (len(self.numerator) - 1) - n

    @classmethod
    def from_initial_ideal(cls, lead_monos, n):
        numer = monomial_ideal_numerator(lead_monos, n)
        dim = krull_dimension(lead_monos, n) if lead_monos else n
        # cross-check: the cancelled denominator must give the same dimension
        reduced = divide_by_maximal_power(numer)
        if n - reduced[1] != dim:
            raise AssertionError(
                f"dimension mismatch: combinatorial {dim} vs series {n - reduced[1]}"
            )
        return cls(numer, n, dim)

    def series_coefficients(self, upto):
        """Hilbert function values H(0..upto) by expanding K(t)/(1-t)^n."""
        coeffs = list(self.numerator) + [0] * (upto + 1 - len(self.numerator))
        out = coeffs[: upto + 1]
        for _ in range(self.n):
            acc = 0
            for i in range(upto + 1):
                acc += out[i]
                out[i] = acc
        return out

    def multiplicity(self):
        if self.h_vector is None:
            raise ValueError("multiplicity needs an exact h-vector")
        return sum(self.h_vector)

    def __repr__(self):
        return (
            f"HilbertData(numerator={list(self.numerator)}, dim={self.dim}, "
            f"h={list(self.h_vector) if self.h_vector else None})"
        )


def divide_by_maximal_power(coeffs):
    """(reduced numerator, multiplicity of the root t=1) of an integer
    polynomial."""
    out = _trim(coeffs)
    k = 0
    while sum(out) == 0 and any(out):
        out = divide_by_one_minus_t(out, 1)
        k += 1
    return _trim(out), k
