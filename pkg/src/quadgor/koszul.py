"""Koszulness probes: bounded Betti tables of the residue field, the
normalized bar-complex oracle, the Fröberg series test, and the Gulliksen
series combiner with its propagation check.

A ring is never certified Koszul — only "no off-diagonal Betti numbers
through the stated bounds".  Non-Koszulness certificates are layered
cheapest-first: generator degrees, then the series test, then the bounded
resolution of k.
"""

from quadgor.linalg import as_modmatrix, rank_frac, rank_mod
from quadgor.resolutions import KBettiResult, resolve_k_over_quotient


class SeriesTrunc:
    """A truncated bigraded series Σ_{i≤N} f_i(s) t^i with integer
    s-polynomial coefficients (f_i[j] = coefficient of s^j)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N, coeffs):
        self.N = N
        self.coeffs = [list(c) for c in coeffs]
        if len(self.coeffs) != N + 1:
            raise ValueError("need one s-polynomial per t-degree 0..N")

    @classmethod
    def from_table(cls, table, N):
        """Poincaré truncation from {(i, j): β} (or a KBettiResult)."""
        if hasattr(table, "table"):
            table = table.table
        coeffs = []
        for i in range(N + 1):
            top = max((j for (ii, j) in table if ii == i), default=0)
            c = [0] * (top + 1)
            for (ii, j), b in table.items():
                if ii == i:
                    c[j] = b
            coeffs.append(_trim(c))
        return cls(N, coeffs)

    def coefficient(self, i, j):
        c = self.coeffs[i]
        return c[j] if 0 <= j < len(c) else 0

    def support(self, i):
        return {j for j, v in enumerate(self.coeffs[i]) if v}

    def is_diagonal(self):
        """True when every f_i is a single monomial c·s^i (the shape forced
        by Koszulness)."""
        return all(self.support(i) <= {i} for i in range(self.N + 1))

    def __eq__(self, other):
        return (
            isinstance(other, SeriesTrunc)
            and self.N == other.N
            and [_trim(c) for c in self.coeffs] == [_trim(c) for c in other.coeffs]
        )

    def __repr__(self):
        return f"SeriesTrunc(N={self.N}, {self.coeffs})"


def _trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _trim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    )


# ---------------------------------------------------------------------------
# Fröberg test


def froberg_test(h_vector, N=32):
    """First degree with a negative coefficient in 1/H_R(−t), or None.

    A Koszul ring satisfies P_R(t) = 1/H_R(−t), so a negative coefficient
    certifies non-Koszulness.  Expansion by the linear recurrence
    a_k = −Σ_{m≥1} (−1)^m h_m a_{k−m}.
    """
    h = list(h_vector)
    a = [1]
    for kdeg in range(1, N + 1):
        acc = 0
        for m in range(1, min(kdeg, len(h) - 1) + 1):
            acc -= (-1) ** m * h[m] * a[kdeg - m]
        a.append(acc)
        if acc < 0:
            return kdeg
    return None


def froberg_coefficients(h_vector, N):
    """The expansion coefficients of 1/H_R(−t) through degree N."""
    h = list(h_vector)
    a = [1]
    for kdeg in range(1, N + 1):
        acc = 0
        for m in range(1, min(kdeg, len(h) - 1) + 1):
            acc -= (-1) ** m * h[m] * a[kdeg - m]
        a.append(acc)
    return a


# ---------------------------------------------------------------------------
# Normalized bar complex (independent oracle)


def bar_homology(Q, N, jmax=None, max_piece=40000):
    """Tor^R_{i,j}(k, k) for i ≤ N from the normalized bar complex with
    B_i = (R_+)^{⊗ i}, internal degree j ≤ jmax.

    Completely independent of the syzygy route: bases are tuples of
    standard monomials and the differential only multiplies adjacent
    entries (outer face maps die against k).
    """
    if not Q.is_artinian:
        raise ValueError("bar oracle requires an Artinian quotient")
    ring = Q.ring
    k = ring.field
    p = k.p
    top = Q.top_degree
    if jmax is None:
        jmax = N * top

    positive = []  # standard monomials of positive degree, with degrees
    for d in range(1, top + 1):
        for m in Q.standard_monomials(d):
            positive.append((m, d))

    def basis(i, j):
        """Tuples (m_1..m_i) of positive standard monomials, total degree j."""
        if i == 0:
            return [()] if j == 0 else []
        out = []

        def rec(prefix, rem, depth):
            if depth == i:
                if rem == 0:
                    out.append(tuple(prefix))
                return
            slots_left = i - depth - 1
            for m, d in positive:  # sorted by degree ascending
                if d > rem - slots_left:
                    break
                if rem - d <= slots_left * top:
                    prefix.append(m)
                    rec(prefix, rem - d, depth + 1)
                    prefix.pop()

        rec([], j, 0)
        return out

    bases = {}

    def get_basis(i, j):
        key = (i, j)
        if key not in bases:
            b = basis(i, j)
            if len(b) > max_piece:
                raise ValueError(
                    f"bar piece ({i},{j}) has dimension {len(b)} > {max_piece}"
                )
            bases[key] = b
        return bases[key]

    def differential_rank(i, j):
        """rank of d_i : B_{i,j} -> B_{i-1,j}."""
        if i < 1:
            return 0
        src = get_basis(i, j)
        tgt = get_basis(i - 1, j)
        if not src or not tgt:
            return 0
        tpos = {t: idx for idx, t in enumerate(tgt)}
        rows = [[k.zero()] * len(src) for _ in range(len(tgt))]
        for c, tup in enumerate(src):
            for t in range(i - 1):
                sign = k.one() if t % 2 == 0 else k.neg(k.one())
                prod = ring.monomial(tup[t]) * ring.monomial(tup[t + 1])
                nf = Q.gb.normal_form(prod)
                for mono, coeff in nf.terms.items():
                    newtup = tup[: t] + (mono,) + tup[t + 2 :]
                    r = tpos.get(newtup)
                    if r is None:
                        continue  # only happens if a product dies: skip
                    rows[r][c] = k.add(rows[r][c], k.mul(sign, coeff))
        if p:
            return rank_mod(as_modmatrix(rows, len(src), p), p, copy=False)
        return rank_frac(rows)

    ranks = {}

    def rank_of(i, j):
        key = (i, j)
        if key not in ranks:
            ranks[key] = differential_rank(i, j)
        return ranks[key]

    table = {(0, 0): 1}
    for i in range(1, N + 1):
        for j in range(i, min(jmax, i * top) + 1):
            dim = len(get_basis(i, j))
            if not dim:
                continue
            b = dim - rank_of(i, j) - rank_of(i + 1, j)
            if b < 0:
                raise AssertionError(f"negative bar Betti number at {(i, j)}")
            if b:
                table[(i, j)] = b
    return KBettiResult(table, N, jmax)


def bar_homology_module(Q, M, N, jmax=None, max_piece=40000):
    """Tor^R_{i,j}(k, M) for i ≤ N from the bar complex with
    B_i = (R_+)^{⊗i} ⊗ M.

    ``M`` provides graded dimensions and variable actions (see
    canonical.DualModuleView); the extra face map multiplies the last bar
    slot into M.
    """
    if not Q.is_artinian:
        raise ValueError("bar oracle requires an Artinian quotient")
    ring = Q.ring
    k = ring.field
    p = k.p
    top = Q.top_degree
    mtop = M.max_degree
    if jmax is None:
        jmax = N * top + mtop

    positive = []
    for d in range(1, top + 1):
        for m in Q.standard_monomials(d):
            positive.append((m, d))

    def basis(i, j):
        """Pairs (monomial tuple, M-basis index) of total degree j."""
        out = []

        def rec(prefix, rem, depth):
            if depth == i:
                for idx in range(M.dim(rem)):
                    out.append((tuple(prefix), rem, idx))
                return
            slots_left = i - depth - 1
            for m, d in positive:
                if d > rem - slots_left - M.min_degree:
                    break
                if rem - d <= slots_left * top + mtop:
                    prefix.append(m)
                    rec(prefix, rem - d, depth + 1)
                    prefix.pop()

        rec([], j, 0)
        return out

    bases = {}

    def get_basis(i, j):
        key = (i, j)
        if key not in bases:
            b = basis(i, j)
            if len(b) > max_piece:
                raise ValueError(
                    f"bar piece ({i},{j}) has dimension {len(b)} > {max_piece}"
                )
            bases[key] = b
        return bases[key]

    action_cache = {}

    def monomial_action(mono, j):
        key = (mono, j)
        if key not in action_cache:
            action_cache[key] = M.monomial_action(mono, j)
        return action_cache[key]

    def differential_rank(i, j):
        if i < 1:
            return 0
        src = get_basis(i, j)
        tgt = get_basis(i - 1, j)
        if not src or not tgt:
            return 0
        tpos = {t: idx for idx, t in enumerate(tgt)}
        rows = [[k.zero()] * len(src) for _ in range(len(tgt))]
        for c, (tup, mdeg_, midx) in enumerate(src):
            # inner faces: multiply adjacent bar slots
            for t in range(i - 1):
                sign = k.one() if t % 2 == 0 else k.neg(k.one())
                prod = ring.monomial(tup[t]) * ring.monomial(tup[t + 1])
                nf = Q.gb.normal_form(prod)
                for mono, coeff in nf.terms.items():
                    key = (tup[:t] + (mono,) + tup[t + 2 :], mdeg_, midx)
                    r = tpos.get(key)
                    if r is not None:
                        rows[r][c] = k.add(rows[r][c], k.mul(sign, coeff))
            # last face: multiply the final slot into M
            sign = k.one() if (i - 1) % 2 == 0 else k.neg(k.one())
            act = monomial_action(tup[i - 1], mdeg_)
            newdeg = mdeg_ + sum(tup[i - 1])
            for r_idx in range(M.dim(newdeg)):
                coeff = act[r_idx][midx]
                if coeff:
                    key = (tup[: i - 1], newdeg, r_idx)
                    r = tpos.get(key)
                    if r is not None:
                        rows[r][c] = k.add(rows[r][c], k.mul(sign, coeff))
        if p:
            return rank_mod(as_modmatrix(rows, len(src), p), p, copy=False)
        return rank_frac(rows)

    ranks = {}

    def rank_of(i, j):
        key = (i, j)
        if key not in ranks:
            ranks[key] = differential_rank(i, j)
        return ranks[key]

    table = {}
    for i in range(0, N + 1):
        for j in range(M.min_degree + i, min(jmax, i * top + mtop) + 1):
            dim = len(get_basis(i, j))
            if not dim:
                continue
            b = dim - rank_of(i, j) - rank_of(i + 1, j)
            if b < 0:
                raise AssertionError(f"negative module bar Betti number at {(i, j)}")
            if b:
                table[(i, j)] = b
    return KBettiResult(table, N, jmax)


# ---------------------------------------------------------------------------
# Probe verdicts


class KoszulVerdict:
    """Outcome of the bounded Koszulness probe."""

    __slots__ = ("N", "jmax", "table", "verdict", "witness", "froberg_witness")

    def __init__(self, N, jmax, table, verdict, witness=None, froberg_witness=None):
        self.N = N
        self.jmax = jmax
        self.table = table
        self.verdict = verdict  # koszul-through-N | non-koszul-witness | inconclusive
        self.witness = witness
        self.froberg_witness = froberg_witness

    def to_dict(self):
        return {
            "N": self.N,
            "jmax": self.jmax,
            "table": {f"{i},{j}": b for (i, j), b in sorted(self.table.table.items())}
            if self.table
            else None,
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness else None,
            "froberg_witness": self.froberg_witness,
        }

    def __repr__(self):
        w = f", witness={self.witness}" if self.witness else ""
        return f"KoszulVerdict({self.verdict}{w}, N={self.N}, jmax={self.jmax})"


def koszul_probe(pres, N=4, jmax=None):
    """Layered non-Koszulness probe of a presented ring.

    Cheap checks first: a minimal generator of degree ≥ 3 settles it, then
    the Fröberg series test (Artinian case), then the bounded resolution
    of k over R.  The verdict never asserts Koszulness beyond the bounds.
    """
    if jmax is None:
        jmax = 2 * N
    mins = pres.minimal_generators()
    bad = [g for g in mins if g.homogeneous_degree() != 2]
    if bad:
        d = min(g.homogeneous_degree() for g in bad)
        # a degree-d minimal generator contributes β^R_{2,d}(k) ≠ 0
        return KoszulVerdict(
            N, jmax, None, "non-koszul-witness", witness=(2, d)
        )
    Q = pres.quotient()
    froberg_witness = None
    if Q.is_artinian:
        froberg_witness = froberg_test(Q.h_vector(), N=max(jmax, 16))
    table = resolve_k_over_quotient(Q, imax=N, jmax=jmax)
    off = table.off_diagonal()
    if off:
        witness = min(off)
        return KoszulVerdict(
            N, jmax, table, "non-koszul-witness",
            witness=witness, froberg_witness=froberg_witness,
        )
    if froberg_witness is not None:
        # the series test certifies non-Koszulness even when the bounded
        # table looks clean (witness beyond the window)
        return KoszulVerdict(
            N, jmax, table, "non-koszul-witness",
            witness=None, froberg_witness=froberg_witness,
        )
    complete = Q.is_artinian and jmax >= N * Q.top_degree
    verdict = "koszul-through-N" if complete else "inconclusive"
    return KoszulVerdict(N, jmax, table, verdict, froberg_witness=None)


# ---------------------------------------------------------------------------
# Gulliksen combiner


def gulliksen_combine(P_R, P_M):
    """P = P_R / (1 − t·P_M) truncated at the common bound, via
    f_i = h_i + Σ_{j=1}^{i} f_{i−j} g_{j−1}."""
    if P_R.N != P_M.N:
        raise ValueError("truncation bounds differ")
    N = P_R.N
    f = []
    for i in range(N + 1):
        acc = list(P_R.coeffs[i])
        for j in range(1, i + 1):
            acc = _poly_add(acc, _poly_mul(f[i - j], P_M.coeffs[j - 1]))
        f.append(acc)
    return SeriesTrunc(N, f)


def propagation_check(P_R, P_M, P_combined):
    """Verify h_i = f_i − Σ f_{i−j} g_{j−1} and supp h_i ⊆ supp f_i.

    The support containment is the non-Koszulness inheritance step: an
    off-diagonal monomial of P_R survives into the combined series.
    """
    if not (P_R.N == P_M.N == P_combined.N):
        raise ValueError("truncation bounds differ")
    N = P_R.N
    f = P_combined.coeffs
    for i in range(N + 1):
        acc = list(f[i])
        for j in range(1, i + 1):
            acc = _poly_sub(acc, _poly_mul(f[i - j], P_M.coeffs[j - 1]))
        if _trim(acc) != _trim(P_R.coeffs[i]):
            return False
        supp_h = {j for j, v in enumerate(acc) if v}
        if not supp_h <= P_combined.support(i):
            return False
    return True
