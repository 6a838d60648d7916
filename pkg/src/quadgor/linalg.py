"""Exact dense linear algebra over the ground field.

Two backends for prime fields: the compiled kernel in ``_rrefcore`` (built
from Cython) and a vectorized numpy fallback, selected at import time.
Rational arithmetic uses Fraction rows and is only meant for small systems.
"""

from fractions import Fraction

import numpy as np

try:
    from quadgor._rrefcore import echelon as _echelon_fast

    HAVE_COMPILED_KERNEL = True
except ImportError:  # pragma: no cover - exercised only without the extension
    _echelon_fast = None
    HAVE_COMPILED_KERNEL = False


def _echelon_numpy(a, p, reduce_above=True):
    """Numpy row reduction mod p; mutates ``a``, returns pivot columns."""
    m, n = a.shape
    r = 0
    pivots = []
    for col in range(n):
        if r == m:
            break
        sub = a[r:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        if inv != 1:
            a[r, col:] = (a[r, col:] * inv) % p
        if reduce_above:
            rows = np.nonzero(a[:, col])[0]
            rows = rows[rows != r]
        else:
            rows = r + 1 + np.nonzero(a[r + 1:, col])[0]
        if rows.size:
            a[rows, col:] = (a[rows, col:] - np.outer(a[rows, col], a[r, col:])) % p
        pivots.append(col)
        r += 1
    return pivots


def echelon_mod(a, p, reduce_above=True):
    """Reduce ``a`` (int64 ndarray) in place mod p; return pivot columns."""
    if a.size == 0:
        return []
    if _echelon_fast is not None:
        return _echelon_fast(a, p, reduce_above)
    return _echelon_numpy(a, p, reduce_above)


def as_modmatrix(rows, ncols, p):
    """Stack an iterable of int64 row vectors into a canonical mod-p matrix."""
    if len(rows) == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    a = np.array(rows, dtype=np.int64)
    a %= p
    return np.ascontiguousarray(a)


def rank_mod(a, p, copy=True):
    if a.size == 0:
        return 0
    if copy:
        a = np.ascontiguousarray(a.copy())
    return len(echelon_mod(a, p, reduce_above=False))


def nullspace_mod(a, p):
    """Basis of the right nullspace of ``a`` mod p, as matrix rows."""
    m, n = a.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    w = np.ascontiguousarray(a.copy() % p)
    pivots = echelon_mod(w, p, reduce_above=True)
    piv_set = set(pivots)
    free = [j for j in range(n) if j not in piv_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for r, col in enumerate(pivots):
            v = int(w[r, j])
            if v:
                basis[k, col] = (-v) % p
    return basis


class RowSpanMod:
    """Incremental row space over GF(p), kept in reduced echelon form.

    Used wherever we need "which of these vectors extend a known span"
    (minimal generators, pruning redundant ideal generators).
    """

    def __init__(self, ncols, p):
        self.ncols = ncols
        self.p = p
        self.rows = []  # reduced rows, each a canonical int64 vector
        self.pivots = []  # pivot column per row, increasing is not required

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return vec reduced against the current span (not stored)."""
        p = self.p
        v = np.asarray(vec, dtype=np.int64) % p
        for row, piv in zip(self.rows, self.pivots):
            c = int(v[piv])
            if c:
                v = (v - c * row) % p
        return v

    def add(self, vec):
        """Add vec to the span; return True if it enlarged the span."""
        v = self.reduce(vec)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        inv = pow(int(v[piv]), self.p - 2, self.p)
        if inv != 1:
            v = (v * inv) % self.p
        # keep existing rows reduced against the new one
        for i, row in enumerate(self.rows):
            c = int(row[piv])
            if c:
                self.rows[i] = (row - c * v) % self.p
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    def add_batch(self, mat):
        """Add all rows of ``mat``; returns the number of new pivots."""
        before = self.rank
        if len(mat) == 0:
            return 0
        new = as_modmatrix(mat, self.ncols, self.p)
        if self.rows:
            stacked = np.vstack([np.array(self.rows, dtype=np.int64), new])
        else:
            stacked = new
        w = np.ascontiguousarray(stacked)
        piv = echelon_mod(w, self.p, reduce_above=True)
        self.rows = [w[r].copy() for r in range(len(piv))]
        self.pivots = list(piv)
        return self.rank - before

    def contains(self, vec):
        return not np.any(self.reduce(vec))


# ---------------------------------------------------------------------------
# Fraction backend (small systems over Q)


def echelon_frac(rows, reduce_above=True):
    """Row reduce a list of Fraction lists in place; return pivot columns."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    r = 0
    pivots = []
    for col in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][col]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        targets = range(m) if reduce_above else range(r + 1, m)
        for i in targets:
            if i == r:
                continue
            f = rows[i][col]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return pivots


def rank_frac(rows):
    work = [list(r) for r in rows]
    return len(echelon_frac(work, reduce_above=False))


def nullspace_frac(rows, ncols):
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    work = [list(r) for r in rows]
    pivots = echelon_frac(work, reduce_above=True)
    piv_set = set(pivots)
    free = [j for j in range(ncols) if j not in piv_set]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for r, col in enumerate(pivots):
            if work[r][j]:
                v[col] = -work[r][j]
        basis.append(v)
    return basis


class RowSpanFrac:
    """Fraction twin of RowSpanMod."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivots = []

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, vec):
        v = self.reduce(vec)
        piv = next((j for j, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        inv = Fraction(1) / v[piv]
        if inv != 1:
            v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    def add_batch(self, mat):
        before = self.rank
        for row in mat:
            self.add(row)
        return self.rank - before

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))
