"""Numerical invariants and structural predicates of presented rings:
dimension, codimension, regularity, type, and the level / superlevel /
Gorenstein / quadratic flags, plus Artinian reduction.

Wherever two routes exist (socle vs. last Betti column for the type,
combinatorial vs. series dimension) both are used and compared.
"""

import random

from quadgor.hilbert import HilbertData
from quadgor.poly import PolyRing
from quadgor.rings import RingPresentation


class InvariantReport:
    """The invariant bundle of one ring, as reported in certificates."""

    __slots__ = (
        "codim",
        "reg",
        "pd",
        "dim",
        "a_invariant",
        "type",
        "h_vector",
        "flags",
    )

    def __init__(self, codim, reg, pd, dim, a_invariant, type_, h_vector, flags):
        self.codim = codim
        self.reg = reg
        self.pd = pd
        self.dim = dim
        self.a_invariant = a_invariant
        self.type = type_
        self.h_vector = h_vector
        self.flags = flags
        self._check_consistency()

    def _check_consistency(self):
        f = self.flags
        if f.get("gorenstein") and not f.get("level"):
            raise AssertionError("gorenstein implies level")
        if f.get("level") and f.get("cohen_macaulay") is False:
            raise AssertionError("level implies Cohen-Macaulay")

    def to_dict(self):
        return {
            "codim": self.codim,
            "reg": self.reg,
            "pd": self.pd,
            "dim": self.dim,
            "a_invariant": self.a_invariant,
            "type": self.type,
            "h_vector": list(self.h_vector) if self.h_vector else None,
            "flags": dict(self.flags),
        }

    def __repr__(self):
        on = [k for k, v in self.flags.items() if v]
        return (
            f"InvariantReport(codim={self.codim}, reg={self.reg}, pd={self.pd}, "
            f"dim={self.dim}, type={self.type}, flags={on})"
        )


def hilbert_series(initial_gens, n):
    """HilbertData of S/I from the monomial initial ideal."""
    return HilbertData.from_initial_ideal(initial_gens, n)


def cm_and_type(pres, betti_table):
    """(is_cm, type) from a minimal Betti table over S."""
    hd = hilbert_series(pres.groebner().lead_monos, pres.n)
    codim = pres.n - hd.dim
    pd = betti_table.proj_dim()
    is_cm = pd == codim
    type_ = betti_table.total(pd) if is_cm else None
    return is_cm, type_


def socle(pres):
    """Per-degree socle dimensions of an Artinian quotient."""
    Q = pres.quotient()
    return Q.socle_dimensions()


def is_level_from_socle(pres):
    dims = socle(pres)
    return len(dims) == 1


def is_level(pres, betti_table=None):
    """Level: CM with the last free module generated in one degree.

    For Artinian quotients the equivalent socle criterion is used when
    no Betti table is supplied.
    """
    if betti_table is not None:
        pd = betti_table.proj_dim()
        twists = {j for (i, j) in betti_table.data if i == pd}
        return len(twists) == 1
    return is_level_from_socle(pres)


def is_gorenstein(pres, betti_table=None):
    if betti_table is not None:
        is_cm, t = cm_and_type(pres, betti_table)
        return bool(is_cm and t == 1)
    return pres.quotient().socle_type() == 1


def is_quadratic(pres):
    """All minimal ideal generators in degree exactly 2 (and no linear
    forms, which the degree condition already forces)."""
    mins = pres.minimal_generators()
    return bool(mins) and all(g.homogeneous_degree() == 2 for g in mins)


def is_superlevel(pres, omega):
    """Level, with every entry of the minimal presentation matrix of ω of
    degree ≥ 2 lying in I."""
    if not omega.is_generated_in_single_degree():
        return False
    gb = pres.groebner()
    for p in omega.phi.entries.values():
        if p.homogeneous_degree() >= 2 and not gb.contains(p):
            return False
    return True


def check_reg_le_pd(report):
    """Prop-2.1 classification for quadratic CM rings."""
    if report.reg is None or report.pd is None:
        raise ValueError("report lacks reg/pd")
    if report.reg > report.pd:
        return "violation"
    if report.reg == report.pd:
        return "ci-equality" if report.flags.get("complete_intersection") else "violation"
    if report.flags.get("complete_intersection"):
        return "violation"
    return "strict"


def check_betti_symmetry(bt, c, a_plus_n):
    """Gorenstein duality: β_{i,j} = β_{c-i, a+n-j} across the table."""
    keys = set(bt.data) | {(c - i, a_plus_n - j) for (i, j) in bt.data}
    return all(bt.get(i, j) == bt.get(c - i, a_plus_n - j) for (i, j) in keys)


def artinian_reduction(pres, seed=0, max_retries=8):
    """Quotient by dim-many seeded-random linear forms, eliminating one
    variable per form; verified to preserve the h-vector, with fresh
    seeds on failure."""
    hd = hilbert_series(pres.groebner().lead_monos, pres.n)
    if hd.dim == 0:
        return pres
    target_h = hd.h_vector
    if target_h is None:
        raise ValueError("artinian reduction requires a Cohen-Macaulay h-vector")
    seeds_tried = []
    for attempt in range(max_retries):
        s = seed + attempt
        seeds_tried.append(s)
        rng = random.Random(s)
        try:
            out = _reduce_once(pres, hd.dim, rng)
        except ValueError:
            continue
        out_hd = hilbert_series(out.groebner().lead_monos, out.n)
        if out_hd.dim == 0 and out_hd.h_vector == target_h:
            return out
    raise RuntimeError(
        f"artinian reduction failed after seeds {seeds_tried}: "
        "the sampled linear forms were not a regular sequence"
    )


def _reduce_once(pres, steps, rng):
    cur = pres
    for _ in range(steps):
        ring = cur.ring
        n = ring.n
        if n == 0:
            raise ValueError("ran out of variables")
        coeffs = [ring.field(rng.randint(1, 10000)) for _ in range(n)]
        # substitute the last variable: x_{n-1} = -(1/c_{n-1}) Σ_{i<n-1} c_i x_i
        small = PolyRing(ring.field, ring.names[: n - 1])
        k = ring.field
        inv = k.inv(coeffs[-1])
        images = []
        for i in range(n - 1):
            images.append(small.var(i))
        last = small.zero()
        for i in range(n - 1):
            last = last + small.var(i).scale(k.neg(k.mul(coeffs[i], inv)))
        images.append(last)
        gens = []
        for g in cur.generators:
            h = g.substitute(small, images)
            if h:
                gens.append(h)
        if not gens:
            raise ValueError("ideal collapsed during reduction")
        cur = RingPresentation(small, gens)
    return cur


def compute_report(pres, betti_table=None, omega=None):
    """Assemble the full invariant report.

    ``betti_table`` (over S) refines pd/reg/type/level; without it, the
    Artinian socle-based equivalents are used where valid and the rest is
    left None.
    """
    gb = pres.groebner()
    hd = hilbert_series(gb.lead_monos, pres.n)
    codim = pres.n - hd.dim
    mins = pres.minimal_generators()
    Q = pres.quotient()
    artinian = Q.is_artinian

    flags = {
        "artinian": artinian,
        "quadratic": is_quadratic(pres),
        "nondegenerate": all(g.homogeneous_degree() >= 2 for g in mins),
        "complete_intersection": len(mins) == codim,
        "almost_complete_intersection": len(mins) == codim + 1,
    }

    pd = reg = type_ = None
    cm = None
    level = None
    if betti_table is not None:
        pd = betti_table.proj_dim()
        reg = betti_table.regularity()
        cm, type_ = cm_and_type(pres, betti_table)
        level = is_level(pres, betti_table) if cm else False
    elif artinian:
        cm = True  # zero-dimensional quotients are CM
        pd = codim
        reg = Q.top_degree
        socle_dims = Q.socle_dimensions()
        type_ = sum(socle_dims.values())
        level = len(socle_dims) == 1

    flags["cohen_macaulay"] = cm
    flags["level"] = level
    flags["gorenstein"] = bool(cm and type_ == 1) if type_ is not None else None
    flags["superlevel"] = is_superlevel(pres, omega) if omega is not None else None

    h_vec = hd.h_vector if hd.h_vector is not None else None
    return InvariantReport(
        codim=codim,
        reg=reg,
        pd=pd,
        dim=hd.dim,
        a_invariant=hd.a_invariant,
        type_=type_,
        h_vector=h_vec,
        flags=flags,
    )
