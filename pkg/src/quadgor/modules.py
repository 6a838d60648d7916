"""Graded free modules and homogeneous matrices between them."""

from quadgor.monomials import mdeg


class GradedFreeModule:
    """A free module ⊕ S(-j) recorded by its twist vector (one j per basis
    element, so basis element e_i sits in degree twists[i])."""

    __slots__ = ("twists",)

    def __init__(self, twists):
        self.twists = tuple(int(t) for t in twists)

    @property
    def rank(self):
        return len(self.twists)

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and self.twists == other.twists

    def __hash__(self):
        return hash(self.twists)

    def __repr__(self):
        return f"F{list(self.twists)}"


class GradedMatrix:
    """Sparse homogeneous matrix: a map source -> target of graded free
    modules, entry (r, c) of degree source.twists[c] - target.twists[r]."""

    __slots__ = ("ring", "source", "target", "entries")

    def __init__(self, ring, source, target, entries, check=True):
        self.ring = ring
        self.source = source
        self.target = target
        self.entries = {rc: p for rc, p in entries.items() if p}
        if check:
            self.check_degrees()

    def check_degrees(self):
        for (r, c), p in self.entries.items():
            if not (0 <= r < self.target.rank and 0 <= c < self.source.rank):
                raise ValueError(f"entry ({r},{c}) outside matrix shape")
            d = p.homogeneous_degree()
            want = self.source.twists[c] - self.target.twists[r]
            if d is None or d != want:
                raise ValueError(
                    f"entry ({r},{c}) has degree {d}, expected {want}"
                )

    @property
    def nrows(self):
        return self.target.rank

    @property
    def ncols(self):
        return self.source.rank

    def entry(self, r, c):
        return self.entries.get((r, c), self.ring.zero())

    def column(self, c):
        """Column c as {row: Polynomial}."""
        return {r: p for (r, cc), p in self.entries.items() if cc == c}

    def is_zero(self):
        return not self.entries

    def compose(self, other):
        """self ∘ other (apply other first); other.target must equal self.source."""
        if other.target != self.source:
            raise ValueError("composition shape/twist mismatch")
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        by_col_self = {}
        for (r, c), p in self.entries.items():
            by_col_self.setdefault(c, []).append((r, p))
        out = {}
        for (mid, c), q in other.entries.items():
            for r, p in by_col_self.get(mid, []):
                prod = p * q
                if prod:
                    cur = out.get((r, c))
                    s = prod if cur is None else cur + prod
                    if s:
                        out[(r, c)] = s
                    elif (r, c) in out:
                        del out[(r, c)]
        return GradedMatrix(self.ring, other.source, self.target, out, check=False)

    def transpose(self, twist_shift=0):
        """Dual map: S(-j) dualizes to S(j); optional uniform extra twist.

        Basis element degrees of the result are twist_shift - original twist.
        """
        src = GradedFreeModule([twist_shift - t for t in self.target.twists])
        tgt = GradedFreeModule([twist_shift - t for t in self.source.twists])
        out = {(c, r): p for (r, c), p in self.entries.items()}
        return GradedMatrix(self.ring, src, tgt, out, check=False)

    @classmethod
    def identity(cls, ring, module):
        one = ring.one()
        return cls(
            ring, module, module, {(i, i): one for i in range(module.rank)}, check=False
        )

    @classmethod
    def from_columns(cls, ring, target, columns):
        """Build from columns given as {row: Polynomial}; twists inferred."""
        twists = []
        entries = {}
        for c, col in enumerate(columns):
            deg = None
            for r, p in col.items():
                if p:
                    d = p.homogeneous_degree()
                    if d is None:
                        raise ValueError("inhomogeneous column entry")
                    deg = target.twists[r] + d
                    break
            if deg is None:
                raise ValueError("zero column has no inferable twist")
            for r, p in col.items():
                if p:
                    entries[(r, c)] = p
            twists.append(deg)
        m = cls(ring, GradedFreeModule(twists), target, entries, check=True)
        return m

    def __repr__(self):
        return f"GradedMatrix({self.nrows}x{self.ncols}, {len(self.entries)} entries)"


def generators_row(ring, gens):
    """The presentation row S(-d_i) -> S for a generator list."""
    twists = []
    entries = {}
    col = 0
    for g in gens:
        d = g.homogeneous_degree()
        if d is None:
            raise ValueError("inhomogeneous generator")
        twists.append(d)
        entries[(0, col)] = g
        col += 1
    return GradedMatrix(
        ring, GradedFreeModule(twists), GradedFreeModule([0]), entries, check=False
    )


def module_element_degree(twists, elem):
    """Degree of a homogeneous module element {(comp, mono): coeff}."""
    for (comp, mono) in elem:
        return twists[comp] + mdeg(mono)
    return None
