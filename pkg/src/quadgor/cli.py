"""Command-line interface: analyze / idealize / catalog / generic / gaps / tensor.

Every command emits a JSON certificate on stdout.  Exit codes: 0 ok,
1 expectation mismatch, 2 input error, 3 resource bound exceeded (with a
partial certificate).
"""

import hashlib
import os
import sys
import time

import click

from quadgor import __version__
from quadgor.canonical import (
    canonical_module_via_duality,
    idealization_expected_hilbert,
    idealize,
    tensor_product,
)
from quadgor.catalog import (
    admissible_range,
    avoided_monomials_certificate,
    catalog,
    catalog_ids,
    expected_generic_h,
    gap_analysis,
    generic_quadrics_verified,
    hochster_laksov_check,
)
from quadgor.field import DEFAULT_PRIME, GF, QQ
from quadgor.groebner import ResourceBoundExceeded
from quadgor.invariants import compute_report, is_superlevel
from quadgor.ioformats import (
    ParseError,
    betti_to_dict,
    certificate_json,
    parse_ideal_file,
    print_ideal_file,
)
from quadgor.koszul import froberg_test, koszul_probe
from quadgor.resolutions import betti_via_koszul, resolve_ideal

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _load(path, char):
    try:
        pres = parse_ideal_file(path)
    except (OSError, ParseError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    if char is not None:
        field = QQ if char == 0 else GF(char)
        if field.p != pres.field.p:
            from quadgor.rings import RingPresentation

            pres = RingPresentation(
                _rering(pres.ring, field),
                [_refield(g, field) for g in pres.generators],
                artinian_hint=pres.artinian_hint,
            )
    return pres


def _rering(ring, field):
    from quadgor.poly import PolyRing

    return PolyRing(field, ring.names)


def _refield(g, field):
    new_ring = _rering(g.ring, field)
    terms = {}
    for m, c in g.terms.items():
        num = c.numerator if hasattr(c, "numerator") else int(c)
        den = getattr(c, "denominator", 1)
        val = field.mul(field(num), field.inv(field(den))) if den != 1 else field(num)
        if val != field.zero():
            terms[m] = val
    return new_ring.from_terms(terms)


def _describe(pres, **extra):
    d = {
        "field": "QQ" if pres.field.p == 0 else f"GF({pres.field.p})",
        "variables": list(pres.ring.names),
        "generators": len(pres.generators),
    }
    d.update(extra)
    return d


def _emit(payload, out_dir=None, name="analysis"):
    text = certificate_json(payload)
    click.echo(text)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        stable = dict(payload)
        stable.pop("timings", None)
        digest = hashlib.sha256(
            certificate_json(stable).encode()
        ).hexdigest()[:12]
        path = os.path.join(out_dir, f"{name}-{digest}.cert.json")
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _partial_exit(payload, exc, out_dir=None, name="analysis"):
    payload["status"] = "resource-bound-exceeded"
    payload["resource_error"] = str(exc)
    _emit(payload, out_dir, name)
    sys.exit(EXIT_RESOURCE)


def _analysis_payload(pres, koszul_bound, jmax, seed=None):
    """The shared certificate body: invariants, Betti table, Koszul probe."""
    timings = {}
    payload = {"input": _describe(pres, seed=seed), "tool_version": __version__}

    t0 = time.perf_counter()
    Q = pres.quotient()
    bt = None
    if Q.is_artinian:
        bt = betti_via_koszul(Q)
    else:
        bt = resolve_ideal(pres.generators).betti_table()
    timings["betti_s"] = round(time.perf_counter() - t0, 3)

    omega = None
    if Q.is_artinian:
        try:
            omega = canonical_module_via_duality(pres)
        except ValueError:
            omega = None  # not level: superlevel is False by definition
    report = compute_report(pres, betti_table=bt, omega=omega)
    if omega is None and Q.is_artinian:
        report.flags["superlevel"] = False

    t0 = time.perf_counter()
    verdict = koszul_probe(pres, N=koszul_bound, jmax=jmax)
    timings["koszul_s"] = round(time.perf_counter() - t0, 3)

    payload["report"] = report.to_dict()
    payload["betti"] = betti_to_dict(bt)
    payload["koszul"] = verdict.to_dict()
    payload["bounds"] = {"koszul_N": verdict.N, "koszul_jmax": verdict.jmax}
    payload["timings"] = timings
    payload["status"] = "ok"
    return payload


@click.group()
@click.version_option(__version__)
def main():
    """Graded quotient-ring analysis: resolutions, canonical modules,
    Nagata idealizations, and Koszulness probes."""


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--char", type=int, default=None, help="Override the coefficient field characteristic (0 = QQ).")
@click.option("--koszul-bound", "koszul_bound", type=int, default=4, show_default=True)
@click.option("--jmax", type=int, default=None, help="Internal-degree bound of the Koszul probe (default 2N).")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
def analyze(path, char, koszul_bound, jmax, out_dir):
    """Full certificate for the ring presented in an ideal file."""
    pres = _load(path, char)
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        payload = _analysis_payload(pres, koszul_bound, jmax)
    except ResourceBoundExceeded as exc:
        _partial_exit({"input": _describe(pres)}, exc, out_dir, name)
    _emit(payload, out_dir, name)


@main.command("idealize")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--char", type=int, default=None)
@click.option("--emit-ideal", "emit_path", type=click.Path(dir_okay=False), default=None,
              help="Write the idealization as a re-ingestable ideal file.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
def idealize_cmd(path, char, emit_path, out_dir):
    """Certificate for the Nagata idealization of the ring in an ideal file."""
    pres = _load(path, char)
    name = os.path.splitext(os.path.basename(path))[0] + "-idealization"
    payload = {"input": _describe(pres), "tool_version": __version__}
    try:
        result = idealize(pres, provenance=os.path.basename(path))
        tilde = result.presentation
        Qt = tilde.quotient()
        report = compute_report(tilde)
        expected_h = idealization_expected_hilbert(pres)
        payload["idealization"] = {
            "type_of_base": result.t,
            "variables": list(tilde.ring.names),
            "generators": len(tilde.generators),
            "h_vector": list(Qt.h_vector()) if Qt.is_artinian else None,
            "expected_h_vector": list(expected_h),
            "report": report.to_dict(),
        }
        payload["status"] = "ok"
        if Qt.is_artinian and tuple(Qt.h_vector()) != tuple(expected_h):
            payload["status"] = "hilbert-mismatch"
    except ResourceBoundExceeded as exc:
        _partial_exit(payload, exc, out_dir, name)
    if emit_path:
        with open(emit_path, "w") as fh:
            fh.write(print_ideal_file(tilde))
        payload["emitted_ideal"] = emit_path
    _emit(payload, out_dir, name)
    if payload["status"] != "ok":
        sys.exit(EXIT_MISMATCH)


# ---------------------------------------------------------------------------
# Catalog verification


def _betti_rows(bt):
    rows = {}
    for (i, j), b in bt.data.items():
        rows.setdefault(j - i, {})[i] = b
    return rows


def _verify_entry(entry, char=None):
    """Check an entry's expected invariants; returns (mismatches, payload)."""
    field = None
    if char is not None:
        field = QQ if char == 0 else GF(char)
    pres = entry.ring_presentation(field=field)
    exp = entry.expected
    mism = []
    got = {}

    Q = pres.quotient()
    bt = None
    if Q.is_artinian:
        bt = betti_via_koszul(Q)
        got["h"] = Q.h_vector()
    omega = None
    if Q.is_artinian:
        try:
            omega = canonical_module_via_duality(pres)
        except ValueError:
            omega = None
    report = compute_report(pres, betti_table=bt, omega=omega)
    if omega is None and Q.is_artinian:
        report.flags["superlevel"] = False

    got.update({
        "codim": report.codim, "reg": report.reg, "dim": report.dim,
        "type": report.type, "generators": len(pres.minimal_generators()),
        "level": report.flags.get("level"),
        "superlevel": report.flags.get("superlevel"),
        "quadratic": report.flags.get("quadratic"),
        "gorenstein": report.flags.get("gorenstein"),
        "almost_complete_intersection": report.flags.get("almost_complete_intersection"),
        "complete_intersection": report.flags.get("complete_intersection"),
    })
    if report.type is not None and report.codim is not None:
        got["codim_plus_type"] = report.codim + report.type
    if bt is not None:
        got["betti_rows"] = _betti_rows(bt)
    if "idealization_h" in exp:
        got["idealization_h"] = idealization_expected_hilbert(pres)
    if "reduced_h" in exp:
        from quadgor.invariants import artinian_reduction

        red = artinian_reduction(pres)
        got["reduced_h"] = red.quotient().h_vector()
        # re-check Gorenstein on the reduction when the generic fiber
        # offered no Betti table
        if exp.get("gorenstein") is not None and got.get("gorenstein") is None:
            got["gorenstein"] = red.quotient().socle_type() == 1

    for key, want in exp.items():
        if key in ("provenance", "artinian_hint", "idealization_betti_row1",
                   "idealization_betti_row2"):
            continue
        have = got.get(key)
        if isinstance(want, tuple):
            want = tuple(want)
            have = tuple(have) if have is not None else None
        if have != want:
            mism.append({"key": key, "expected": _plain(want), "got": _plain(have)})

    payload = {
        "id": entry.id,
        "input": _describe(pres),
        "expected": {k: _plain(v) for k, v in exp.items()},
        "got": {k: _plain(v) for k, v in got.items() if k in exp},
        "mismatches": mism,
        "status": "ok" if not mism else "mismatch",
    }
    return mism, payload


def _plain(v):
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


@main.group("catalog")
def catalog_group():
    """Built-in example rings with pinned expected invariants."""


@catalog_group.command("list")
def catalog_list():
    for id_ in catalog_ids():
        e = catalog(id_)
        click.echo(f"{id_:24s} {len(e.names)} vars, provenance={e.expected.get('provenance')}")


@catalog_group.command("run")
@click.argument("id_", metavar="ID", required=False)
@click.option("--all", "run_all", is_flag=True, help="Verify every entry (sorted by id).")
@click.option("--char", type=int, default=None)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
def catalog_run(id_, run_all, char, out_dir):
    """Verify one entry (or all) against its expected invariants."""
    if run_all == bool(id_):
        click.echo("error: pass exactly one of ID or --all", err=True)
        sys.exit(EXIT_INPUT)
    ids = catalog_ids() if run_all else [id_]
    results = []
    any_mism = False
    for cid in ids:
        try:
            entry = catalog(cid)
        except KeyError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        try:
            mism, payload = _verify_entry(entry, char)
        except ResourceBoundExceeded as exc:
            _partial_exit({"id": cid}, exc, out_dir, cid)
        results.append(payload)
        any_mism = any_mism or bool(mism)
    body = {"results": results, "tool_version": __version__,
            "status": "ok" if not any_mism else "mismatch"}
    _emit(body, out_dir, "catalog")
    if any_mism:
        sys.exit(EXIT_MISMATCH)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--g", "g", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--char", type=int, default=None)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
def generic(n, g, seed, char, out_dir):
    """Sample g generic quadrics in n variables, verify, idealize, certify."""
    field = None
    if char is not None:
        field = QQ if char == 0 else GF(char)
    try:
        pres, seeds = generic_quadrics_verified(n, g, seed=seed, field=field)
    except (ValueError, RuntimeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    name = f"generic-n{n}-g{g}-s{seed}"
    payload = {"input": _describe(pres, seed=seed, seeds_tried=seeds),
               "tool_version": __version__}
    try:
        Q = pres.quotient()
        h = Q.h_vector()
        want_h = tuple(x for x in expected_generic_h(n, g) if x)
        fw = froberg_test(h)
        payload["generic"] = {
            "h_vector": list(h),
            "expected_h": list(want_h),
            "hochster_laksov": hochster_laksov_check(pres, n, g),
            "avoided_monomials": avoided_monomials_certificate(pres),
            "froberg_witness": fw,
        }
        omega = None
        try:
            omega = canonical_module_via_duality(pres)
        except ValueError:
            pass
        payload["generic"]["superlevel"] = (
            is_superlevel(pres, omega) if omega is not None else False
        )
        payload["idealization"] = {
            "expected_h_vector": list(idealization_expected_hilbert(pres)),
        }
        result = idealize(pres, omega=omega, provenance=name)
        Qt = result.presentation.quotient()
        payload["idealization"]["h_vector"] = (
            list(Qt.h_vector()) if Qt.is_artinian else None
        )
        payload["idealization"]["quadratic"] = result.presentation.is_quadratic_presentation()
        payload["status"] = "ok" if h == want_h else "mismatch"
    except ResourceBoundExceeded as exc:
        _partial_exit(payload, exc, out_dir, name)
    _emit(payload, out_dir, name)
    if payload["status"] != "ok":
        sys.exit(EXIT_MISMATCH)


@main.command()
@click.option("--cmax", type=int, required=True)
def gaps(cmax):
    """Which codimensions c <= cmax the generic-quadric ranges cover."""
    try:
        rep = gap_analysis(cmax)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    ranges = {}
    n = 4
    while True:
        r = admissible_range(n)
        if r.g_max < r.g_min:
            n += 1
            continue
        if min(r.c_values) > cmax:
            break
        ranges[n] = r.to_dict()
        n += 1
    click.echo(certificate_json({
        "gap_analysis": rep.to_dict(),
        "admissible_ranges": ranges,
        "tool_version": __version__,
        "status": "ok",
    }))


@main.command()
@click.argument("path_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("path_b", type=click.Path(exists=True, dir_okay=False))
@click.option("--char", type=int, default=None)
@click.option("--koszul-bound", "koszul_bound", type=int, default=4, show_default=True)
@click.option("--jmax", type=int, default=None)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
def tensor(path_a, path_b, char, koszul_bound, jmax, out_dir):
    """Certificate for the tensor product of two presented rings."""
    a = _load(path_a, char)
    b = _load(path_b, char)
    if a.field.p != b.field.p:
        click.echo("error: the two ideal files use different fields", err=True)
        sys.exit(EXIT_INPUT)
    try:
        ab = tensor_product(a, b)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    name = (os.path.splitext(os.path.basename(path_a))[0] + "-x-"
            + os.path.splitext(os.path.basename(path_b))[0])
    try:
        payload = _analysis_payload(ab, koszul_bound, jmax)
    except ResourceBoundExceeded as exc:
        _partial_exit({"input": _describe(ab)}, exc, out_dir, name)
    payload["factors"] = [_describe(a), _describe(b)]
    _emit(payload, out_dir, name)


if __name__ == "__main__":
    main()
