"""Groebner bases over the polynomial ring, for ideals and for submodules
of graded free modules, plus the derived operations: normal forms, initial
ideals, syzygies, and ideal quotients.

Plain Buchberger with the normal selection strategy (lowest lcm degree
first) and both classical criteria for ideals; the product criterion is not
valid for modules and is skipped there.  Reduction ties are broken by the
first basis element in list order, so every output is deterministic.
"""

import heapq
from itertools import combinations

from quadgor.modules import GradedFreeModule, GradedMatrix, generators_row
from quadgor.monomials import (
    degrevlex_key,
    mcoprime,
    mdeg,
    mdiv,
    mdivides,
    mlcm,
    mmul,
)
from quadgor.poly import Polynomial


class ResourceBoundExceeded(Exception):
    """Raised when a configured cap (pair queue, degree) is exceeded."""


def _sub_monomials(mono, d):
    """All degree-d divisors of mono (distinct), as tuples."""
    expanded = []
    for i, e in enumerate(mono):
        expanded.extend([i] * e)
    if d > len(expanded):
        return []
    seen = set()
    out = []
    for combo in combinations(expanded, d):
        if combo in seen:
            continue
        seen.add(combo)
        m = [0] * len(mono)
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return out


class _LeadIndex:
    """Maps lead monomials to basis indices for fast divisor lookup."""

    def __init__(self):
        self.by_mono = {}  # mono -> smallest basis index with that lead
        self.degrees = set()

    def add(self, mono, idx):
        if mono not in self.by_mono:
            self.by_mono[mono] = idx
        self.degrees.add(mdeg(mono))

    def find(self, mono):
        """Smallest basis index whose lead divides mono, or None."""
        best = None
        md = mdeg(mono)
        for d in sorted(self.degrees):
            if d > md:
                break
            for sub in _sub_monomials(mono, d):
                idx = self.by_mono.get(sub)
                if idx is not None and (best is None or idx < best):
                    best = idx
        return best


class GroebnerBasis:
    """A reduced Groebner basis of a homogeneous ideal in degrevlex.

    ``complete_above`` is set when Buchberger stopped early because the
    initial ideal already contains every monomial of that degree (Artinian
    early exit); membership tests remain exact in every degree.
    """

    __slots__ = ("ring", "elements", "lead_monos", "truncated_at", "complete_above")

    def __init__(self, ring, elements, truncated_at=None, complete_above=None):
        self.ring = ring
        self.elements = elements
        self.lead_monos = [g.lead_monomial() for g in elements]
        self.truncated_at = truncated_at
        self.complete_above = complete_above

    def normal_form(self, f):
        if f.ring != self.ring:
            raise ValueError("ring mismatch in normal_form")
        return _normal_form_poly(f, self.elements, self.lead_monos)

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def initial_gens(self):
        """Minimal generators of the initial ideal (the lead monomials)."""
        return list(self.lead_monos)

    def reduces_to_zero(self, f):
        return self.normal_form(f).is_zero()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _normal_form_poly(f, basis, lead_monos):
    """Full normal form of f against (basis, leads); deterministic."""
    if not basis:
        return f
    ring = f.ring
    k = ring.field
    index = _LeadIndex()
    for i, m in enumerate(lead_monos):
        index.add(m, i)
    work = dict(f.terms)
    result = {}
    while work:
        mono = max(work, key=degrevlex_key)
        coeff = work.pop(mono)
        idx = index.find(mono)
        if idx is None:
            result[mono] = coeff
            continue
        g = basis[idx]
        gm, gc = g.lead_term()
        factor_m = mdiv(mono, gm)
        factor_c = k.div(coeff, gc)
        # work -= factor * g, skipping g's lead (it cancels exactly)
        for m2, c2 in g.terms.items():
            if m2 == gm:
                continue
            mm = mmul(m2, factor_m)
            v = k.sub(work.get(mm, k.zero()), k.mul(c2, factor_c))
            if v:
                work[mm] = v
            elif mm in work:
                del work[mm]
    return Polynomial(ring, result)


def _spoly(f, g, k):
    fm, fc = f.lead_term()
    gm, gc = g.lead_term()
    L = mlcm(fm, gm)
    a = f.term_mul(mdiv(L, fm), k.inv(fc))
    b = g.term_mul(mdiv(L, gm), k.inv(gc))
    return a - b


def buchberger(
    gens,
    degree_bound=None,
    stop_when_artinian=False,
    max_pairs=2_000_000,
):
    """Reduced Groebner basis of the homogeneous ideal generated by ``gens``.

    With ``stop_when_artinian`` the pair loop exits as soon as the current
    lead terms cover a whole degree (all higher degrees are then covered
    too, so the initial ideal and all normal forms stay exact); the output
    records that degree in ``complete_above``.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0].ring
    k = ring.field
    for g in gens:
        if g.ring != ring:
            raise ValueError("mixed rings in generator list")
        if not g.is_homogeneous():
            raise ValueError(f"inhomogeneous generator: {g}")

    basis = []
    leads = []
    index = _LeadIndex()
    pair_heap = []  # (lcm degree, i, j)
    treated = set()

    def add_element(h):
        h = h.monic()
        idx = len(basis)
        basis.append(h)
        hm = h.lead_monomial()
        leads.append(hm)
        index.add(hm, idx)
        for i in range(idx):
            L = mlcm(leads[i], hm)
            heapq.heappush(pair_heap, (mdeg(L), i, idx))
        return idx

    # seed with interreduced generators, deterministically ordered
    seen_leads = {}
    for g in sorted(gens, key=lambda g: degrevlex_key(g.lead_monomial())):
        h = _normal_form_poly(g, basis, leads)
        if h.is_zero():
            continue
        if h.lead_monomial() in seen_leads:
            # same lead: subtract and retry via normal form next round
            other = basis[seen_leads[h.lead_monomial()]]
            h2 = _normal_form_poly(h, basis, leads)
            if h2.is_zero():
                continue
            h = h2
        seen_leads[h.lead_monomial()] = add_element(h)

    complete_above = None
    processed_pairs = 0
    last_checked_degree = None
    while pair_heap:
        deg = pair_heap[0][0]
        if degree_bound is not None and deg > degree_bound:
            break  # heap left non-empty so the truncation is recorded
        deg, i, j = heapq.heappop(pair_heap)
        # the cover test is certificate-based (every lead is genuinely in
        # the ideal), so checking once per popped degree is sound and
        # avoids rescanning monomial bases on every pair
        if stop_when_artinian and deg != last_checked_degree:
            last_checked_degree = deg
            ca = _artinian_cover_degree(ring, leads, deg)
            if ca is not None:
                complete_above = ca
                break
        processed_pairs += 1
        if processed_pairs > max_pairs:
            raise ResourceBoundExceeded(
                f"S-pair budget {max_pairs} exceeded at degree {deg}"
            )
        key = (i, j)
        if key in treated:
            continue
        treated.add(key)
        li, lj = leads[i], leads[j]
        if mcoprime(li, lj):
            continue  # product criterion (valid for ideals)
        if _chain_criterion(i, j, li, lj, leads, treated):
            continue
        h = _normal_form_poly(_spoly(basis[i], basis[j], k), basis, leads)
        if not h.is_zero():
            add_element(h)

    truncated_at = degree_bound if pair_heap and complete_above is None else None
    reduced = _interreduce(basis, ring)
    return GroebnerBasis(
        ring, reduced, truncated_at=truncated_at, complete_above=complete_above
    )


def _chain_criterion(i, j, li, lj, leads, treated):
    L = mlcm(li, lj)
    for t, lt in enumerate(leads):
        if t == i or t == j:
            continue
        if mdivides(lt, L):
            a = (min(i, t), max(i, t))
            b = (min(j, t), max(j, t))
            if a in treated and b in treated:
                return True
    return False


def _artinian_cover_degree(ring, leads, upto_degree):
    """Smallest degree d <= upto_degree whose monomials are all divisible by
    a current lead, or None.  Checked lazily and cheaply for small degrees."""
    for d in range(1, upto_degree + 1):
        basis = ring.monomial_basis(d)
        if len(basis) > 40000:
            return None
        covered = True
        for m in basis:
            if not any(mdivides(lt, m) for lt in leads if mdeg(lt) <= d):
                covered = False
                break
        if covered:
            return d
    return None


def _interreduce(basis, ring):
    """Minimalize lead terms, then tail-reduce; output monic, sorted."""
    items = sorted(
        ((g.lead_monomial(), i) for i, g in enumerate(basis)),
        key=lambda t: degrevlex_key(t[0]),
    )
    kept = []
    kept_leads = []
    for lm, i in items:
        if any(mdivides(other, lm) for other in kept_leads):
            continue
        kept.append(basis[i])
        kept_leads.append(lm)
    reduced = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1 :]
        other_leads = kept_leads[:i] + kept_leads[i + 1 :]
        h = _normal_form_poly(g, others, other_leads)
        if not h.is_zero():
            reduced.append(h.monic())
    reduced.sort(key=lambda g: degrevlex_key(g.lead_monomial()), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# Module engine (POT order) and syzygies


def _elem_lead(elem):
    """Lead (comp, mono) under POT: smaller component wins, then degrevlex."""
    return min(elem, key=lambda cm: (cm[0], tuple(-x for x in degrevlex_key(cm[1])[1]), -degrevlex_key(cm[1])[0]))


def _pot_key(cm):
    comp, mono = cm
    return (-comp, degrevlex_key(mono))


def _elem_lead_pot(elem):
    return max(elem, key=_pot_key)


def _elem_normal_form(elem, basis, basis_leads, k, lead_index):
    """Full normal form of a module element against a basis, POT order."""
    work = dict(elem)
    result = {}
    while work:
        cm = max(work, key=_pot_key)
        coeff = work.pop(cm)
        comp, mono = cm
        idx = lead_index.get(comp)
        found = None
        if idx is not None:
            found = idx.find(mono)
        if found is None:
            result[cm] = coeff
            continue
        g = basis[found]
        (gcomp, gmono), gc = basis_leads[found]
        factor_m = mdiv(mono, gmono)
        factor_c = k.div(coeff, gc)
        for (c2, m2), v2 in g.items():
            if (c2, m2) == (gcomp, gmono):
                continue
            key2 = (c2, mmul(m2, factor_m))
            v = k.sub(work.get(key2, k.zero()), k.mul(v2, factor_c))
            if v:
                work[key2] = v
            elif key2 in work:
                del work[key2]
    return result


def _elem_monic(elem, k):
    cm = _elem_lead_pot(elem)
    c = elem[cm]
    if c == k.one():
        return elem
    inv = k.inv(c)
    return {key: k.mul(v, inv) for key, v in elem.items()}


def module_buchberger(ring, twists, gens, max_pairs=2_000_000):
    """Groebner basis of the submodule of ⊕S(-twists) generated by ``gens``
    (module elements as {(comp, mono): coeff}), POT order, component 0 first.

    Returns the list of reduced monic basis elements.
    """
    k = ring.field
    basis = []
    basis_leads = []  # ((comp, mono), coeff)
    lead_index = {}  # comp -> _LeadIndex
    pair_heap = []
    treated = set()

    def elem_degree(elem):
        comp, mono = next(iter(elem))
        return twists[comp] + mdeg(mono)

    def add_element(h):
        h = _elem_monic(h, k)
        idx = len(basis)
        basis.append(h)
        lead = _elem_lead_pot(h)
        basis_leads.append((lead, h[lead]))
        comp, mono = lead
        lead_index.setdefault(comp, _LeadIndex()).add(mono, idx)
        for i in range(idx):
            (icomp, imono), _ = basis_leads[i]
            if icomp != comp:
                continue
            L = mlcm(imono, mono)
            heapq.heappush(pair_heap, (twists[comp] + mdeg(L), i, idx))

    order_key = lambda e: _pot_key(_elem_lead_pot(e))
    for g in sorted((dict(g) for g in gens if g), key=order_key):
        h = _elem_normal_form(g, basis, basis_leads, k, lead_index)
        if h:
            add_element(h)

    processed = 0
    while pair_heap:
        _, i, j = heapq.heappop(pair_heap)
        key = (i, j)
        if key in treated:
            continue
        treated.add(key)
        processed += 1
        if processed > max_pairs:
            raise ResourceBoundExceeded(f"module S-pair budget {max_pairs} exceeded")
        (comp, mi), ci = basis_leads[i]
        (_, mj), cj = basis_leads[j]
        if _module_chain_criterion(i, j, comp, mi, mj, basis_leads, treated):
            continue
        L = mlcm(mi, mj)
        fi = _elem_scale_shift(basis[i], mdiv(L, mi), k.inv(ci), k)
        fj = _elem_scale_shift(basis[j], mdiv(L, mj), k.inv(cj), k)
        s = _elem_sub(fi, fj, k)
        h = _elem_normal_form(s, basis, basis_leads, k, lead_index)
        if h:
            add_element(h)

    return _module_interreduce(basis, k)


def _elem_scale_shift(elem, mono, coeff, k):
    return {(c, mmul(m, mono)): k.mul(v, coeff) for (c, m), v in elem.items()}


def _elem_sub(a, b, k):
    res = dict(a)
    for key, v in b.items():
        nv = k.sub(res.get(key, k.zero()), v)
        if nv:
            res[key] = nv
        elif key in res:
            del res[key]
    return res


def _module_chain_criterion(i, j, comp, mi, mj, basis_leads, treated):
    L = mlcm(mi, mj)
    for t, ((tcomp, tmono), _) in enumerate(basis_leads):
        if t == i or t == j or tcomp != comp:
            continue
        if mdivides(tmono, L):
            a = (min(i, t), max(i, t))
            b = (min(j, t), max(j, t))
            if a in treated and b in treated:
                return True
    return False


def _module_interreduce(basis, k):
    entries = sorted(
        ((_elem_lead_pot(g), i) for i, g in enumerate(basis)),
        key=lambda t: _pot_key(t[0]),
    )
    kept = []
    kept_leads = []
    for (comp, mono), i in entries:
        if any(c == comp and mdivides(m, mono) for (c, m) in kept_leads):
            continue
        kept.append(basis[i])
        kept_leads.append((comp, mono))
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1 :]
        other_leads = [
            (lead, others[t][lead])
            for t, lead in enumerate(kept_leads[:i] + kept_leads[i + 1 :])
        ]
        idx = {}
        for t, (lead, _) in enumerate(other_leads):
            comp, mono = lead
            idx.setdefault(comp, _LeadIndex()).add(mono, t)
        h = _elem_normal_form(g, others, other_leads, k, idx)
        if h:
            out.append(_elem_monic(h, k))
    out.sort(key=lambda g: _pot_key(_elem_lead_pot(g)), reverse=True)
    return out


def syzygies(M, max_pairs=2_000_000):
    """Generators of the kernel of a homogeneous matrix over the polynomial
    ring, via a Groebner basis of the graph module with the target block
    eliminated first (POT).  Output target twists equal M's source twists
    and M ∘ result = 0 exactly.
    """
    ring = M.ring
    m = M.target.rank
    kk = M.source.rank
    twists = tuple(M.target.twists) + tuple(M.source.twists)
    one = ring.field.one()
    gens = []
    for c in range(kk):
        elem = {}
        for r, p in M.column(c).items():
            for mono, coeff in p.terms.items():
                elem[(r, mono)] = coeff
        elem[(m + c, (0,) * ring.n)] = one
        gens.append(elem)
    gb = module_buchberger(ring, twists, gens, max_pairs=max_pairs)
    columns = []
    for g in gb:
        comp, _ = _elem_lead_pot(g)
        if comp >= m:
            col = {}
            for (c, mono), coeff in g.items():
                assert c >= m, "elimination order violated"
                row = c - m
                poly = col.get(row, ring.zero())
                col[row] = poly + ring.monomial(mono, coeff)
            columns.append(col)
    if not columns:
        src = GradedFreeModule([])
        return GradedMatrix(ring, src, M.source, {}, check=False)
    return GradedMatrix.from_columns(ring, M.source, columns)


def syzygies_over_quotient(M, ideal_gens, max_pairs=2_000_000):
    """Kernel generators of M over R = S/I: augment each target coordinate
    with the generators of I, take syzygies over S, and keep the M-columns
    block of the result.
    """
    ring = M.ring
    m = M.target.rank
    kk = M.source.rank
    aug_cols = []
    for c in range(kk):
        aug_cols.append(M.column(c))
    extra_twists = []
    for r in range(m):
        for g in ideal_gens:
            col = {r: g}
            aug_cols.append(col)
            extra_twists.append(M.target.twists[r] + g.homogeneous_degree())
    source = GradedFreeModule(tuple(M.source.twists) + tuple(extra_twists))
    entries = {}
    for c, col in enumerate(aug_cols):
        for r, p in col.items():
            if p:
                entries[(r, c)] = p
    aug = GradedMatrix(ring, source, M.target, entries, check=False)
    syz = syzygies(aug, max_pairs=max_pairs)
    # project onto the first kk coordinates, dropping columns that become zero
    columns = []
    for c in range(syz.source.rank):
        col = {r: p for r, p in syz.column(c).items() if r < kk}
        if col:
            columns.append(col)
    if not columns:
        src = GradedFreeModule([])
        return GradedMatrix(ring, src, M.source, {}, check=False)
    return GradedMatrix.from_columns(ring, M.source, columns)


# ---------------------------------------------------------------------------
# Ideal quotients


def colon_single(L_gens, f, max_pairs=2_000_000):
    """Generators of (L : f) via first coordinates of syzygies of [f | L]."""
    ring = f.ring
    row = generators_row(ring, [f] + list(L_gens))
    syz = syzygies(row, max_pairs=max_pairs)
    out = []
    for c in range(syz.source.rank):
        p = syz.entry(0, c)
        if p:
            out.append(p.monic())
    return _dedupe_polys(out)


def intersect_ideals(A_gens, B_gens, max_pairs=2_000_000):
    """Generators of (A) ∩ (B) from syzygies of the concatenated row."""
    ring = A_gens[0].ring
    row = generators_row(ring, list(A_gens) + list(B_gens))
    syz = syzygies(row, max_pairs=max_pairs)
    na = len(A_gens)
    out = []
    for c in range(syz.source.rank):
        acc = ring.zero()
        for r, p in syz.column(c).items():
            if r < na:
                acc = acc + p * A_gens[r]
        if acc:
            out.append(acc.monic())
    return _dedupe_polys(out)


def ideal_quotient(L_gens, I_gens, max_pairs=2_000_000):
    """Generators of (L : I), intersecting the single-element colon ideals.

    Requires L ⊆ I (checked with normal forms).
    """
    gb_I = buchberger(I_gens)
    for l in L_gens:
        if not gb_I.contains(l):
            raise ValueError("ideal quotient requires L ⊆ I")
    result = None
    for f in I_gens:
        col = colon_single(L_gens, f, max_pairs=max_pairs)
        result = col if result is None else intersect_ideals(result, col, max_pairs=max_pairs)
    gb = buchberger(result)
    return list(gb.elements)


def _dedupe_polys(polys):
    seen = set()
    out = []
    for p in polys:
        key = frozenset(p.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out
