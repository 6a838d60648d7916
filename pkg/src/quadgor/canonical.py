"""Canonical modules, their degree-one normalization, Nagata idealizations,
and tensor products of presented rings.

Two independent constructions of the canonical module are provided:

* ``canonical_module`` dualizes the minimal free resolution of R over S
  (cokernel of the transposed last differential, twisted by the variable
  count) — valid whenever R is Cohen-Macaulay;
* ``canonical_module_via_duality`` builds the graded dual of an Artinian
  quotient degree by degree and presents it over S by kernels of the
  evaluation map from a free module on the top-degree dual basis.

The second route never resolves anything and is the workhorse for large
idealizations; the first is kept both for the general CM case and as a
cross-check.
"""

from quadgor.hilbert import HilbertData
from quadgor.linalg import RowSpanFrac, RowSpanMod
from quadgor.modules import GradedFreeModule, GradedMatrix
from quadgor.poly import PolyRing, poly_from_vector
from quadgor.resolutions import resolve_ideal
from quadgor.rings import RingPresentation


class ModulePresentation:
    """coker(phi : F1 -> F0) over the polynomial ring of a presented
    quotient; twists of F0 are the generator degrees."""

    __slots__ = ("base", "F0", "F1", "phi", "_hilbert")

    def __init__(self, base, F0, F1, phi, hilbert=None):
        self.base = base  # the RingPresentation of R
        self.F0 = F0
        self.F1 = F1
        self.phi = phi
        self._hilbert = hilbert  # optional {degree: dim} of the module

    @property
    def ring(self):
        return self.base.ring

    def generator_degrees(self):
        return tuple(self.F0.twists)

    def is_generated_in_single_degree(self):
        return len(set(self.F0.twists)) == 1

    def hilbert_function(self, j):
        if self._hilbert is None:
            raise ValueError("no Hilbert data attached to this presentation")
        return self._hilbert.get(j, 0)

    def shifted(self, s):
        """The same module with all degrees raised by s (a twist by -s)."""
        F0 = GradedFreeModule([t + s for t in self.F0.twists])
        F1 = GradedFreeModule([t + s for t in self.F1.twists])
        phi = GradedMatrix(self.ring, F1, F0, dict(self.phi.entries), check=True)
        hil = None
        if self._hilbert is not None:
            hil = {j + s: d for j, d in self._hilbert.items()}
        return ModulePresentation(self.base, F0, F1, phi, hilbert=hil)

    def __repr__(self):
        return f"ModulePresentation(F0={self.F0}, F1={self.F1})"


class IdealizationResult:
    """The Nagata idealization R̃ = R ⋉ ω: a presented ring on t extra
    degree-one variables, one per canonical-module generator."""

    __slots__ = ("presentation", "t", "provenance")

    def __init__(self, presentation, t, provenance=""):
        self.presentation = presentation
        self.t = t
        self.provenance = provenance

    def __repr__(self):
        return f"IdealizationResult(t={self.t}, {self.presentation})"


# ---------------------------------------------------------------------------
# Route 1: dual of the minimal free resolution


def canonical_module(pres, resolution=None):
    """ω_R = Ext^c_S(R, S)(-n) for Cohen-Macaulay R = S/I, presented by the
    transpose of the last differential of the minimal resolution."""
    ring = pres.ring
    n = ring.n
    if resolution is None:
        resolution = resolve_ideal(pres.generators)
    c = resolution.length
    codim = n - _dimension_of(pres)
    if c != codim:
        raise ValueError(
            f"canonical module via duality needs CM input (pd {c} != codim {codim})"
        )
    last = resolution.differentials[-1]
    phi = last.transpose(n)
    hil = None
    Q = pres.quotient()
    if Q.is_artinian:
        a = Q.top_degree
        # graded dual: dim ω_j = dim R_{-j} after the a-twist built into phi
        hil = {}
        for j in range(-a, 1):
            d = Q.hilbert_function(-j)
            if d:
                hil[j] = d
    return ModulePresentation(pres, phi.target, phi.source, phi, hilbert=hil)


def _dimension_of(pres):
    gb = pres.groebner()
    hd = HilbertData.from_initial_ideal(gb.lead_monos, pres.n)
    return hd.dim


def shifted_omega(omega):
    """Normalize so the generators sit in degree one (ω(-a-1))."""
    degs = set(omega.F0.twists)
    if len(degs) != 1:
        raise ValueError("generators in several degrees: the ring is not level")
    return omega.shifted(1 - degs.pop())


# ---------------------------------------------------------------------------
# Route 2: graded (Matlis) dual of an Artinian quotient


def omega_generator_degrees(Q):
    """Degrees (after normalization to start at 1) in which the graded dual
    of an Artinian quotient needs generators, with multiplicities.

    The dual of R has graded pieces ω_j = R_{a+1-j}^* for j = 1..a+1, with
    x_i acting by the transpose of multiplication; minimal generators in
    degree j count dim ω_j − dim(S_1 · ω_{j-1}).
    """
    if not Q.is_artinian:
        raise ValueError("graded dual route requires an Artinian quotient")
    a = Q.top_degree
    k = Q.ring.field
    out = {}
    for j in range(1, a + 2):
        dim_j = Q.hilbert_function(a + 1 - j)
        if not dim_j:
            continue
        if j == 1:
            out[1] = dim_j
            continue
        span = RowSpanMod(dim_j, k.p) if k.p else RowSpanFrac(dim_j)
        prev_dim = Q.hilbert_function(a + 2 - j)
        batch = []
        for v in range(Q.ring.n):
            # transpose of x_v : R_{a+1-j} -> R_{a+2-j}
            act = Q.variable_action(v, a + 1 - j)
            for u in range(prev_dim):
                batch.append([act[u][c] for c in range(dim_j)])
        span.add_batch(batch)
        extra = dim_j - span.rank
        if extra:
            out[j] = extra
    return out


def canonical_module_via_duality(pres, degree_cap=None):
    """Presentation over S of the normalized graded dual ω of an Artinian
    quotient, generated in degree one (requires a level ring).

    The free module F0 = S(-1)^t surjects onto ω by sending the l-th basis
    element to the l-th dual basis vector of the socle; the kernel is
    computed degreewise (it is everything from degree a+2 on, so the
    generator search stops there).
    """
    Q = pres.quotient()
    gen_degrees = omega_generator_degrees(Q)
    if set(gen_degrees) != {1}:
        raise ValueError(
            f"not level: canonical module needs generators in degrees {sorted(gen_degrees)}"
        )
    ring = pres.ring
    k = ring.field
    a = Q.top_degree
    t = gen_degrees[1]
    if degree_cap is None:
        degree_cap = a + 2

    omega_dim = lambda j: Q.hilbert_function(a + 1 - j)

    # dual-basis images of the generators, degree by degree:
    # gen_vectors[j][l] = coordinates of (monomials of degree j-1) * δ_l
    # is not needed wholesale; instead build the evaluation matrix Φ_j.
    def transpose_action(v, j):
        """x_v : ω_j -> ω_{j+1} on coordinates."""
        act = Q.variable_action(v, a - j)  # R_{a-j} -> R_{a+1-j}
        rows = omega_dim(j + 1)
        cols = omega_dim(j)
        return [[act[c][r] for c in range(cols)] for r in range(rows)]

    # ω_j coordinates of m·δ_l for every generator l and monomial m
    images = {1: [_unit(k, t, l) for l in range(t)]}
    # evaluation matrices and kernels
    kernels = {}
    phi_cols = []
    col_twists = []
    span_prev = None
    prev_kernel = None
    for j in range(2, degree_cap + 1):
        mons = ring.monomial_basis(j - 1)
        wdim = omega_dim(j)
        cols = []
        for l in range(t):
            for m in mons:
                vec = _unit(k, t, l)
                cur = vec
                deg = 1
                for v, e in enumerate(m):
                    for _ in range(e):
                        if omega_dim(deg) == 0:
                            cur = None
                            break
                        mat = transpose_action(v, deg)
                        cur = _matvec(k, mat, cur) if cur is not None else None
                        deg += 1
                    if cur is None:
                        break
                cols.append(cur if cur is not None else [k.zero()] * wdim)
        ncols = len(cols)
        if wdim:
            rows = [[cols[c][r] for c in range(ncols)] for r in range(wdim)]
        else:
            rows = []
        ker = _nullspace_rows(k, rows, ncols)
        kernels[j] = ker
        # minimal kernel generators: quotient by S_1 * K_{j-1}
        span = RowSpanMod(ncols, k.p) if k.p else RowSpanFrac(ncols)
        if prev_kernel:
            shifted = []
            prev_mons = ring.monomial_basis(j - 2)
            pos = {m: i for i, m in enumerate(mons)}
            from quadgor.monomials import mmul, variable

            for w in prev_kernel:
                for v in range(ring.n):
                    xv = variable(ring.n, v)
                    nv = [k.zero()] * ncols
                    for idx, val in enumerate(w):
                        if not val:
                            continue
                        l, mi = divmod(idx, len(prev_mons))
                        nm = mmul(prev_mons[mi], xv)
                        nv[l * len(mons) + pos[nm]] = k.add(
                            nv[l * len(mons) + pos[nm]], val
                        )
                    shifted.append(nv)
            span.add_batch(shifted)
        for w in ker:
            if span.add(w):
                phi_cols.append((j, list(w)))
                col_twists.append(j)
        prev_kernel = ker

    F0 = GradedFreeModule([1] * t)
    F1 = GradedFreeModule(col_twists)
    entries = {}
    for c, (j, w) in enumerate(phi_cols):
        mons = ring.monomial_basis(j - 1)
        for idx, val in enumerate(w):
            if not val:
                continue
            l, mi = divmod(idx, len(mons))
            cur = entries.get((l, c), ring.zero())
            entries[(l, c)] = cur + ring.monomial(mons[mi], val)
    phi = GradedMatrix(ring, F1, F0, entries, check=True)
    hil = {j: omega_dim(j) for j in range(1, a + 2) if omega_dim(j)}
    return ModulePresentation(pres, F0, F1, phi, hilbert=hil)


def _unit(k, n, i):
    v = [k.zero()] * n
    v[i] = k.one()
    return v


def _matvec(k, rows, vec):
    out = []
    for row in rows:
        acc = k.zero()
        for a, b in zip(row, vec):
            if a and b:
                acc = k.add(acc, k.mul(a, b))
        out.append(acc)
    return out


def _nullspace_rows(k, rows, ncols):
    from quadgor.linalg import as_modmatrix, nullspace_frac, nullspace_mod

    if k.p:
        mat = as_modmatrix(rows, ncols, k.p)
        ns = nullspace_mod(mat, k.p)
        return [[int(x) for x in r] for r in ns]
    return nullspace_frac(rows, ncols)


class DualModuleView:
    """The normalized graded dual ω of an Artinian quotient, seen purely as
    an R-module: graded pieces ω_j = R_{a+1-j}^* (j = 1..a+1) with the
    variables acting by transposed multiplication.

    This is the module interface the bar-complex oracle consumes; it shares
    no presentation data with the syzygy route.
    """

    __slots__ = ("Q", "a")

    def __init__(self, Q):
        if not Q.is_artinian:
            raise ValueError("dual module view requires an Artinian quotient")
        self.Q = Q
        self.a = Q.top_degree

    @property
    def min_degree(self):
        return 1

    @property
    def max_degree(self):
        return self.a + 1

    def dim(self, j):
        if j < 1 or j > self.a + 1:
            return 0
        return self.Q.hilbert_function(self.a + 1 - j)

    def var_action(self, v, j):
        """Matrix of x_v : ω_j -> ω_{j+1} (rows = target basis)."""
        rows = self.dim(j + 1)
        cols = self.dim(j)
        if not rows or not cols:
            return [[self.Q.ring.field.zero()] * cols for _ in range(rows)]
        act = self.Q.variable_action(v, self.a - j)  # R_{a-j} -> R_{a+1-j}
        return [[act[c][r] for c in range(cols)] for r in range(rows)]

    def monomial_action(self, mono, j):
        """Matrix of x^mono : ω_j -> ω_{j+deg}."""
        k = self.Q.ring.field
        cur = None
        d = j
        for v, e in enumerate(mono):
            for _ in range(e):
                step = self.var_action(v, d)
                cur = step if cur is None else _matmul(k, step, cur)
                d += 1
        if cur is None:
            return _identity(k, self.dim(j))
        return cur


def _identity(k, n):
    return [[k.one() if i == j else k.zero() for j in range(n)] for i in range(n)]


def _matmul(k, A, B):
    rows = len(A)
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = [[k.zero()] * cols for _ in range(rows)]
    for r in range(rows):
        Ar = A[r]
        Or = out[r]
        for t in range(inner):
            a = Ar[t]
            if a:
                Bt = B[t]
                for c in range(cols):
                    if Bt[c]:
                        Or[c] = k.add(Or[c], k.mul(a, Bt[c]))
    return out


# ---------------------------------------------------------------------------
# Idealization and tensor products


def idealize(pres, omega=None, provenance="", y_names=None):
    """The Nagata idealization R̃ = R ⋉ ω of a level ring, presented on the
    original variables plus y_1..y_t:

        I(R̃) = I + (y_i y_j : i ≤ j) + (Σ_l f_l y_l : (f_l) a column of φ).
    """
    if omega is None:
        omega = canonical_module_via_duality(pres)
    if set(omega.F0.twists) != {1}:
        omega = shifted_omega(omega)
    ring = pres.ring
    t = omega.F0.rank
    if y_names is None:
        y_names = [f"y{l + 1}" for l in range(t)]
    names = tuple(ring.names) + tuple(y_names)
    if len(set(names)) != len(names):
        raise ValueError("y-variable names collide with the base ring")
    big = PolyRing(ring.field, names)
    xs = [big.var(i) for i in range(ring.n)]
    ys = [big.var(ring.n + l) for l in range(t)]
    gens = [g.substitute(big, xs) for g in pres.generators]
    for i in range(t):
        for j in range(i, t):
            gens.append(ys[i] * ys[j])
    for c in range(omega.F1.rank):
        acc = big.zero()
        for l, p in omega.phi.column(c).items():
            acc = acc + p.substitute(big, xs) * ys[l]
        if acc:
            gens.append(acc)
    out = RingPresentation(big, gens, artinian_hint=True)
    return IdealizationResult(out, t, provenance=provenance)


def idealization_expected_hilbert(pres, upto=None):
    """H_{R̃}(j) = H_R(j) + dim ω_j with ω_j = R_{a+1-j}^* (level Artinian)."""
    Q = pres.quotient()
    a = Q.top_degree
    if upto is None:
        upto = a + 1
    return [
        Q.hilbert_function(j) + Q.hilbert_function(a + 1 - j) for j in range(upto + 1)
    ]


def tensor_product(A, B, rename=True):
    """Segre-free tensor product A ⊗_k B: concatenated variables, union of
    ideals.  Variable clashes are resolved by suffixing the B block."""
    if A.field != B.field:
        raise ValueError("tensor product requires a common ground field")
    names_a = list(A.ring.names)
    names_b = list(B.ring.names)
    if set(names_a) & set(names_b):
        if not rename:
            raise ValueError("variable name clash")
        names_b = [f"{nm}_b" for nm in names_b]
        if set(names_a) & set(names_b):
            raise ValueError("variable name clash persists after renaming")
    big = PolyRing(A.field, names_a + names_b)
    xa = [big.var(i) for i in range(len(names_a))]
    xb = [big.var(len(names_a) + i) for i in range(len(names_b))]
    gens = [g.substitute(big, xa) for g in A.generators]
    gens += [g.substitute(big, xb) for g in B.generators]
    return RingPresentation(
        big, gens, artinian_hint=A.artinian_hint or B.artinian_hint
    )
