"""Graded free resolutions, minimalization, Betti tables, and the two
Betti-number engines.

Two independent routes to Betti numbers over S are provided:

* ``resolve_over_poly`` — iterated syzygy computation with unit-entry
  pruning, producing the actual differentials (needed downstream for
  canonical modules);
* ``betti_via_koszul`` — ranks of the Koszul complex on the variables
  tensored with an Artinian quotient, pure linear algebra over the graded
  pieces.  Much faster on large examples and a genuinely independent
  cross-check of the first route.

Resolutions of the residue field over a quotient ring R = S/I are built
degree by degree with ``resolve_k_over_quotient``: each graded piece of a
syzygy module is a subspace of a graded free R-module, minimal generators
come from quotienting by R_1 times the lower piece, and kernels come from
nullspaces.  Everything above the degree bound is reported as unknown
rather than guessed.
"""

from itertools import combinations

from quadgor.linalg import (
    as_modmatrix,
    nullspace_frac,
    nullspace_mod,
    rank_frac,
    rank_mod,
    RowSpanFrac,
    RowSpanMod,
)
from quadgor.modules import GradedFreeModule, GradedMatrix, generators_row
from quadgor.groebner import syzygies


class FreeResolution:
    """A chain F_len -> ... -> F_1 -> F_0 of graded free modules.

    ``differentials[i]`` is the map F_{i+1} -> F_i, so a resolution of
    S/I has differentials[0] = the generator row.
    """

    __slots__ = ("ring", "modules", "differentials")

    def __init__(self, ring, modules, differentials):
        self.ring = ring
        self.modules = list(modules)
        self.differentials = list(differentials)
        for i, d in enumerate(self.differentials):
            if d.target != self.modules[i] or d.source != self.modules[i + 1]:
                raise ValueError(f"differential {i} does not match its modules")

    @property
    def length(self):
        return len(self.modules) - 1

    def check_complex(self):
        """Verify d∘d = 0 everywhere."""
        for i in range(len(self.differentials) - 1):
            if not self.differentials[i].compose(self.differentials[i + 1]).is_zero():
                return False
        return True

    def is_minimal(self):
        for d in self.differentials[1:]:
            for p in d.entries.values():
                if p.homogeneous_degree() == 0:
                    return False
        return True

    def betti_table(self):
        table = {}
        for i, F in enumerate(self.modules):
            for t in F.twists:
                table[(i, t)] = table.get((i, t), 0) + 1
        return BettiTable(table)

    def __repr__(self):
        ranks = " <- ".join(str(F.rank) for F in self.modules)
        return f"FreeResolution({ranks})"


class BettiTable:
    """Graded Betti numbers β_{i,j}, displayed in the usual grid with
    column i (homological degree) and row j - i."""

    __slots__ = ("data",)

    def __init__(self, data):
        self.data = {k: v for k, v in data.items() if v}

    def get(self, i, j):
        return self.data.get((i, j), 0)

    def regularity(self):
        return max((j - i for (i, j) in self.data), default=0)

    def proj_dim(self):
        return max((i for (i, j) in self.data), default=0)

    def rows(self):
        """{row r: {col i: β_{i,i+r}}} for display."""
        out = {}
        for (i, j), b in sorted(self.data.items()):
            out.setdefault(j - i, {})[i] = b
        return out

    def alternating_numerator(self):
        """Σ (-1)^i β_{i,j} t^j — equals the Hilbert numerator of the
        resolved module when the table is minimal (or not)."""
        top = max((j for (_, j) in self.data), default=0)
        out = [0] * (top + 1)
        for (i, j), b in self.data.items():
            out[j] += (-1) ** i * b
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def total(self, i):
        return sum(b for (ii, _), b in self.data.items() if ii == i)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.data == other.data

    def __repr__(self):
        return self.format()

    def format(self):
        if not self.data:
            return "(empty Betti table)"
        pd = self.proj_dim()
        rows = self.rows()
        header = ["    "] + [f"{i:>6}" for i in range(pd + 1)]
        lines = [" ".join(header)]
        tot = ["total"] + [f"{self.total(i):>5}" for i in range(pd + 1)]
        lines.append(" ".join(tot))
        for r in sorted(rows):
            cells = [f"{r:>4}:"]
            for i in range(pd + 1):
                b = rows[r].get(i)
                cells.append(f"{b:>5}" if b else "    .")
            lines.append(" ".join(cells))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Route 1: iterated syzygies over S, with pruning


def resolve_over_poly(presentation, max_length=None, max_pairs=2_000_000):
    """Minimal free resolution of coker(presentation) over the polynomial
    ring, by iterated syzygies with unit-entry pruning after each step.

    ``presentation`` is a GradedMatrix F_1 -> F_0 (for a cyclic quotient,
    the generator row).  Stops when the syzygy module is zero or after
    ``max_length`` steps.
    """
    ring = presentation.ring
    modules = [presentation.target, presentation.source]
    diffs = [presentation]
    step = 1
    while True:
        if max_length is not None and step >= max_length:
            break
        syz = syzygies(diffs[-1], max_pairs=max_pairs)
        if syz.source.rank == 0:
            break
        modules.append(syz.source)
        diffs.append(syz)
        res = FreeResolution(ring, modules, diffs)
        res = minimalize(res)
        modules, diffs = res.modules, res.differentials
        step = len(diffs)
        if diffs[-1].source.rank == 0:
            break
    res = FreeResolution(ring, modules, diffs)
    return minimalize(res)


def minimalize(res):
    """Prune unit (degree-zero) entries from the differentials.

    Cancelling the pivot (r, c) of d_i replaces d_i by its Schur
    complement, drops row c from d_{i+1}, and drops column r from
    d_{i-1}; iterate until no unit entries remain.
    """
    ring = res.ring
    modules = [list(F.twists) for F in res.modules]
    diffs = [
        {rc: p for rc, p in d.entries.items()} for d in res.differentials
    ]
    k = ring.field

    def find_unit():
        for i, d in enumerate(diffs):
            if i == 0:
                continue  # never cancel into F_0: it presents the module itself
            for (r, c), p in d.items():
                if p.homogeneous_degree() == 0:
                    return i, r, c
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        i, r, c = hit
        d = diffs[i]
        u = next(iter(d[(r, c)].terms.values()))
        uinv = k.inv(u)
        # Schur complement on d_i
        row_r = {cc: p for (rr, cc), p in d.items() if rr == r}
        col_c = {rr: p for (rr, cc), p in d.items() if cc == c}
        newd = {}
        for (rr, cc), p in d.items():
            if rr == r or cc == c:
                continue
            corr = None
            if cc in row_r and rr in col_c:
                corr = (col_c[rr] * row_r[cc]).scale(uinv)
            q = p if corr is None else p - corr
            if q:
                newd[(rr, cc)] = q
        for rr, pc in col_c.items():
            if rr == r:
                continue
            for cc, pr in row_r.items():
                if cc == c or (rr, cc) in d:
                    continue
                q = (pc * pr).scale(k.neg(uinv))
                if q:
                    newd[(rr, cc)] = q
        diffs[i] = _reindex(newd, drop_row=r, drop_col=c)
        # adjacent maps: d_{i+1} has rows indexed by the cancelled source
        # basis element c, d_{i-1} has columns indexed by the cancelled
        # target basis element r
        if i + 1 < len(diffs):
            diffs[i + 1] = _reindex(diffs[i + 1], drop_row=c, drop_col=None)
        diffs[i - 1] = _reindex(diffs[i - 1], drop_row=None, drop_col=r)
        del modules[i + 1][c]
        del modules[i][r]

    out_modules = [GradedFreeModule(tw) for tw in modules]
    out_diffs = []
    for i, d in enumerate(diffs):
        out_diffs.append(
            GradedMatrix(ring, out_modules[i + 1], out_modules[i], d, check=True)
        )
    # drop trailing zero modules
    while len(out_modules) > 1 and out_modules[-1].rank == 0:
        out_modules.pop()
        out_diffs.pop()
    return FreeResolution(ring, out_modules, out_diffs)


def _reindex(entries, drop_row, drop_col):
    out = {}
    for (r, c), p in entries.items():
        if drop_row is not None:
            if r == drop_row:
                continue
            if r > drop_row:
                r -= 1
        if drop_col is not None:
            if c == drop_col:
                continue
            if c > drop_col:
                c -= 1
        out[(r, c)] = p
    return out


def resolve_ideal(gens, max_length=None):
    """Minimal free resolution of S/(gens) over S."""
    ring = gens[0].ring
    return resolve_over_poly(generators_row(ring, gens), max_length=max_length)


# ---------------------------------------------------------------------------
# Route 2: Koszul homology of an Artinian quotient


def _koszul_block(Q, subsets_i, subsets_im1, d_internal):
    """Matrix of the Koszul differential (Λ^i ⊗ R_{d})_graded piece ->
    Λ^{i-1} ⊗ R_{d+1}, as a dense row-major list of field rows."""
    ring = Q.ring
    k = ring.field
    src_dim = len(subsets_i) * Q.hilbert_function(d_internal)
    tgt_block = Q.hilbert_function(d_internal + 1)
    pos_im1 = {S: t for t, S in enumerate(subsets_im1)}
    actions = [Q.variable_action(v, d_internal) for v in range(ring.n)]
    zero = k.zero()
    rows = [[zero] * src_dim for _ in range(len(subsets_im1) * tgt_block)]
    nd = Q.hilbert_function(d_internal)
    for a, S in enumerate(subsets_i):
        for t, v in enumerate(S):
            sign = k.one() if t % 2 == 0 else k.neg(k.one())
            T = S[:t] + S[t + 1 :]
            b = pos_im1[T]
            act = actions[v]
            for rr in range(tgt_block):
                arow = act[rr]
                orow = rows[b * tgt_block + rr]
                for cc in range(nd):
                    val = arow[cc]
                    if val:
                        orow[a * nd + cc] = k.add(orow[a * nd + cc], k.mul(sign, val))
    return rows


def betti_via_koszul(Q, imax=None, jmax=None):
    """Graded Betti numbers of an Artinian quotient R over S, as the table
    {(i, j): β}, from ranks of the Koszul complex on the variables:

        β_{i,j} = dim(Λ^i ⊗ R_{j-i}) − rank d_{i,j} − rank d_{i+1,j}.
    """
    if not Q.is_artinian:
        raise ValueError("the Koszul-homology route requires an Artinian quotient")
    ring = Q.ring
    n = ring.n
    p = ring.field.p
    top = Q.top_degree
    if imax is None:
        imax = n
    if jmax is None:
        jmax = n + top
    subsets = [list(combinations(range(n), i)) for i in range(n + 1)]
    ranks = {}  # (i, j) -> rank of d_i in internal degree j

    def rank_of(i, j):
        if i < 1 or i > n:
            return 0
        d_int = j - i
        if d_int < 0 or d_int > top or not Q.hilbert_function(d_int):
            return 0
        key = (i, j)
        if key not in ranks:
            rows = _koszul_block(Q, subsets[i], subsets[i - 1], d_int)
            if not rows or not rows[0]:
                ranks[key] = 0
            elif p:
                ranks[key] = rank_mod(as_modmatrix(rows, len(rows[0]), p), p, copy=False)
            else:
                ranks[key] = rank_frac(rows)
        return ranks[key]

    table = {}
    for i in range(0, min(imax, n) + 1):
        for j in range(i, min(jmax, i + top) + 1):
            dim = len(subsets[i]) * Q.hilbert_function(j - i)
            if not dim:
                continue
            b = dim - rank_of(i, j) - rank_of(i + 1, j)
            if b < 0:
                raise AssertionError(f"negative Betti number at {(i, j)}")
            if b:
                table[(i, j)] = b
    return BettiTable(table)


# ---------------------------------------------------------------------------
# Resolutions of the residue field over R = S/I (degree-truncated)


class KBettiResult:
    """β^R_{i,j}(k) for i ≤ imax, j ≤ jmax; anything outside the window is
    unknown, not zero."""

    __slots__ = ("table", "imax", "jmax")

    def __init__(self, table, imax, jmax):
        self.table = {k: v for k, v in table.items() if v}
        self.imax = imax
        self.jmax = jmax

    def get(self, i, j):
        if i > self.imax or j > self.jmax:
            raise KeyError(f"β_{{{i},{j}}} outside the computed window")
        return self.table.get((i, j), 0)

    def known(self, i, j):
        return i <= self.imax and j <= self.jmax

    def off_diagonal(self):
        """Entries with j > i (witnesses against Koszulness)."""
        return {k: v for k, v in self.table.items() if k[1] > k[0]}

    def __repr__(self):
        return f"KBettiResult({self.table}, i<={self.imax}, j<={self.jmax})"


def _module_var_action(Q, twists, v, j):
    """Action of x_v on the degree-j piece of ⊕R(-a): block diagonal."""
    k = Q.ring.field
    zero = k.zero()
    blocks = [Q.variable_action(v, j - a) for a in twists]
    dims_src = [Q.hilbert_function(j - a) for a in twists]
    dims_tgt = [Q.hilbert_function(j + 1 - a) for a in twists]
    rows = [[zero] * sum(dims_src) for _ in range(sum(dims_tgt))]
    roff = 0
    coff = 0
    for b, blk in enumerate(blocks):
        for rr in range(dims_tgt[b]):
            row = rows[roff + rr]
            brow = blk[rr]
            for cc in range(dims_src[b]):
                if brow[cc]:
                    row[coff + cc] = brow[cc]
        roff += dims_tgt[b]
        coff += dims_src[b]
    return rows


def _free_piece_dim(Q, twists, j):
    return sum(Q.hilbert_function(j - a) for a in twists)


def resolve_k_over_quotient(Q, imax, jmax):
    """β^R_{i,j}(k) for the residue field of an Artinian (or degreewise
    finite) quotient, through homological degree imax and internal degree
    jmax, by degreewise linear algebra.

    At each step the syzygy module is stored by bases of its graded
    pieces inside a graded free module over R; minimal generators in
    degree j are a complement of R_1 times the degree-(j-1) piece, and
    the next syzygy pieces are nullspaces of the induced generator map.
    """
    ring = Q.ring
    k = ring.field
    p = k.p
    n = ring.n

    table = {(0, 0): 1}
    # current module M ⊂ F = ⊕R(-a): twists + {degree j: list of vectors}
    twists = [0]
    pieces = {}
    for j in range(1, jmax + 1):
        dim = Q.hilbert_function(j)
        if dim:
            # the maximal ideal: everything in positive degree
            pieces[j] = [_unit_vector(k, dim, t) for t in range(dim)]

    for i in range(1, imax + 1):
        gens = []  # (degree, vector in F_degree)
        new_twists = []
        # generator coordinates for each degree piece of the new free module
        span_by_degree = {}
        for j in sorted(pieces):
            if j > jmax:
                continue
            vecs = pieces[j]
            if not vecs:
                continue
            fdim = _free_piece_dim(Q, twists, j)
            span = _make_span(k, p, fdim)
            prev = pieces.get(j - 1, [])
            if prev:
                for v in range(n):
                    act = _module_var_action(Q, twists, v, j - 1)
                    imgs = [_apply_matrix(k, act, w) for w in prev]
                    span.add_batch(imgs)
            count = 0
            for w in vecs:
                if span.add(w):
                    gens.append((j, w))
                    new_twists.append(j)
                    count += 1
            if count:
                table[(i, j)] = count
        if not gens:
            break
        if i == imax:
            break
        # next syzygies: kernel of ⊕R(-deg g) -> M degreewise
        new_pieces = {}
        for j in range(min(new_twists) + 1, jmax + 1):
            tdim = _free_piece_dim(Q, twists, j)
            col_index = []  # (generator index, monomial index) per column
            for gidx, (gdeg, gvec) in enumerate(gens):
                nm = Q.hilbert_function(j - gdeg)
                for midx in range(nm):
                    col_index.append((gidx, midx))
            if not col_index:
                continue
            # image of each new-free-basis element: monomial * generator
            mat_rows = [[k.zero()] * len(col_index) for _ in range(tdim)]
            cpos = 0
            for gidx, (gdeg, gvec) in enumerate(gens):
                mons = Q.standard_monomials(j - gdeg)
                for m in mons:
                    img = _multiply_by_monomial(Q, twists, gvec, gdeg, m)
                    for rr, val in enumerate(img):
                        if val:
                            mat_rows[rr][cpos] = val
                    cpos += 1
            kerbasis = _nullspace(k, p, mat_rows, len(col_index))
            if kerbasis:
                new_pieces[j] = kerbasis
        twists = new_twists
        pieces = new_pieces

    return KBettiResult(table, imax, jmax)


def _unit_vector(k, dim, t):
    v = [k.zero()] * dim
    v[t] = k.one()
    return v


def _make_span(k, p, dim):
    if p:
        return RowSpanMod(dim, p)
    return RowSpanFrac(dim)


def _apply_matrix(k, rows, vec):
    out = []
    for row in rows:
        acc = k.zero()
        for a, b in zip(row, vec):
            if a and b:
                acc = k.add(acc, k.mul(a, b))
        out.append(acc)
    return out


def _nullspace(k, p, rows, ncols):
    if p:
        mat = as_modmatrix(rows, ncols, p)
        if mat.shape[0] == 0:
            return [_unit_vector(k, ncols, t) for t in range(ncols)]
        ns = nullspace_mod(mat, p)
        return [[int(x) for x in row] for row in ns]
    return nullspace_frac(rows, ncols)


def _multiply_by_monomial(Q, twists, vec, vdeg, mono):
    """mono · vec inside ⊕R(-a), via repeated variable actions."""
    cur = vec
    d = vdeg
    for v, e in enumerate(mono):
        for _ in range(e):
            act = _module_var_action(Q, twists, v, d)
            cur = _apply_matrix(Q.ring.field, act, cur)
            d += 1
    return cur
