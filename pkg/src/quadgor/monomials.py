"""Monomials as exponent tuples and the degree reverse lexicographic order.

The degrevlex comparisons are the hot path of the Groebner engine, so
monomials stay plain tuples and the order is expressed as a sort key.
"""

from itertools import combinations_with_replacement


def mdeg(m):
    return sum(m)


def mmul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mdivides(a, b):
    """True if monomial a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mdiv(a, b):
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mlcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mgcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mcoprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def degrevlex_key(m):
    """Sort key: ascending under this key is ascending in degrevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def compare_degrevlex(a, b):
    """-1, 0, or 1 as a <, =, > b in degrevlex."""
    if len(a) != len(b):
        raise ValueError(f"variable count mismatch: {len(a)} vs {len(b)}")
    ka, kb = degrevlex_key(a), degrevlex_key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def monomials_of_degree(n, d):
    """All degree-d monomials in n variables, descending in degrevlex."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    out.sort(key=degrevlex_key, reverse=True)
    return out


def smallest_quadratic_monomials(n, k):
    """The k smallest degree-2 monomials in degrevlex, ascending."""
    total = n * (n + 1) // 2
    if k > total:
        raise ValueError(f"only {total} quadratic monomials in {n} variables")
    quads = sorted(monomials_of_degree(n, 2), key=degrevlex_key)
    return quads[:k]


def variable(n, i):
    m = [0] * n
    m[i] = 1
    return tuple(m)
