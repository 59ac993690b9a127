"""Batch CLI: parse complex files, dispatch computations, emit
deterministic reports.

Exit status contract: 0 all checks passed, 1 a check failed, 2 the input
complex failed validation, 3 the input could not be parsed.  Reports are
byte-identical across runs for identical inputs: all iteration is sorted
and the machine format is canonical JSON under a "schema: 1" header.
"""

import json
import os
import sys

import click
from gmpy2 import mpq

from .dolbeault import validate_dolbeault
from .deligne import (
    DegreeMismatch, HomotopyIdentityFailure, build_cone, build_deligne,
    homotopy_maps,
)
from .duality import (
    check_pairing_action_signs, check_pairing_differential_signs, dual_complex,
    exceptional_duality, poincare_iso_check,
)
from .fileformat import ParseError, ValidationError, parse_complex_file, serialize_complex
from .models import (
    UnknownModel, descriptor, formal_deligne_point_complex, green_context,
    jet_model, les_check, semipurity_scan, ses_jet, suite_model,
    SUITE_MODEL_NAMES,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_VALIDATION = 2
EXIT_PARSE = 3

ACTION_REGIMES = [("m>2q", "l>=2r"), ("m<=2q", "l<2r"),
                  ("m>2q", "l<2r"), ("m<=2q", "l>=2r")]


def _jsonable(x):
    if isinstance(x, mpq):
        return str(x)
    if isinstance(x, dict):
        return {_key(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: _key(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _key(k):
    return k if isinstance(k, str) else repr(k)


def emit(report, fmt, out, title):
    if fmt == "json":
        text = "schema: 1\n" + json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    else:
        lines = ["# %s" % title]
        for k, v in sorted(report.items(), key=lambda kv: _key(kv[0])):
            if isinstance(v, dict):
                lines.append("%s:" % _key(k))
                for kk, vv in sorted(v.items(), key=lambda kv: _key(kv[0])):
                    lines.append("  %s = %s" % (_key(kk), _jsonable(vv)))
            else:
                lines.append("%s = %s" % (_key(k), _jsonable(v)))
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


RANGE_CAP = int(os.environ.get("DELCX_RANGE_CAP", "64"))


def parse_range(txt):
    if ".." in txt:
        a, b = txt.split("..", 1)
        rng = range(int(a), int(b) + 1)
    else:
        v = int(txt)
        rng = range(v, v + 1)
    if len(rng) > RANGE_CAP:
        raise ParseError(0, "range %s exceeds the cap of %d (set DELCX_RANGE_CAP)"
                         % (txt, RANGE_CAP))
    return rng


def load_model(model, file):
    if file:
        with open(file) as fh:
            text = fh.read()
        return parse_complex_file(text)
    try:
        return suite_model(model)
    except (UnknownModel, ValueError):
        raise UnknownModel("unknown model %r (suite: %s or jet:N)"
                           % (model, ", ".join(SUITE_MODEL_NAMES[:5])))


def default_window(cx):
    lo, hi = cx.weight_range()
    return range(-2, hi + 3)


def _fail(code, message):
    click.echo(message, err=True)
    sys.exit(code)


def guarded(fn):
    def wrapper(*args, **kwargs):
        try:
            fn(*args, **kwargs)
        except ParseError as exc:
            _fail(EXIT_PARSE, "parse error: %s" % exc)
        except ValidationError as exc:
            _fail(EXIT_VALIDATION, "validation error: %s" % exc)
        except UnknownModel as exc:
            _fail(EXIT_PARSE, str(exc))
        except HomotopyIdentityFailure as exc:
            _fail(EXIT_CHECK, "homotopy identity failure: %s" % exc)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


fmt_option = click.option("--format", "fmt", type=click.Choice(["table", "json"]),
                          default="table", show_default=True)
out_option = click.option("--out", default=None, help="output file (default stdout)")
model_option = click.option("--model", default="P1", show_default=True,
                            help="suite model name or jet:N")
file_option = click.option("--file", "file", default=None,
                           help="complex description file instead of --model")


@click.group()
def main():
    """Exact Deligne-complex computations on finite Dolbeault models."""


@main.command()
@model_option
@file_option
@fmt_option
@out_option
@guarded
def validate(model, file, fmt, out):
    """Structural validation report of a Dolbeault complex."""
    if file:
        with open(file) as fh:
            text = fh.read()
        try:
            cx = parse_complex_file(text)
            report_list = []
        except ValidationError as exc:
            report_list = exc.report
            cx = parse_complex_file(text, validate=False)
    else:
        cx = load_model(model, None)
        report_list = validate_dolbeault(cx)
    report = {
        "model": cx.name or model,
        "violations": [repr(v) for v in report_list],
        "valid": not report_list,
    }
    if not file:
        try:
            report["descriptor"] = repr(descriptor(model))
        except Exception:
            pass
    emit(report, fmt, out, "validate")
    sys.exit(EXIT_OK if not report_list else EXIT_VALIDATION)


@main.command("canonicalize")
@file_option
@out_option
@guarded
def canonicalize(file, out):
    """Re-emit a complex file in canonical form."""
    with open(file) as fh:
        cx = parse_complex_file(fh.read())
    text = serialize_complex(cx)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(EXIT_OK)


@main.command("deligne-table")
@model_option
@file_option
@click.option("--p", "p_range", default=None, help="weight range like 0..2")
@fmt_option
@out_option
@guarded
def deligne_table(model, file, p_range, fmt, out):
    """Homology table of the Deligne complex over a weight window."""
    cx = load_model(model, file)
    window = parse_range(p_range) if p_range else default_window(cx)
    table = {}
    ok = True
    for p in window:
        d = build_deligne(cx, p)
        if not d.check_d_squared():
            ok = False
        for n, (h, _) in sorted(d.homology().items()):
            table[(n, p)] = h
    report = {"model": cx.name or model, "window": [min(window), max(window)],
              "homology": {repr(k): v for k, v in sorted(table.items())},
              "d_squared_zero": ok, "pass": ok}
    emit(report, fmt, out, "deligne-table")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


@main.command("cone-table")
@model_option
@file_option
@click.option("--p", "p_range", default=None, help="weight range like 0..2")
@fmt_option
@out_option
@guarded
def cone_table(model, file, p_range, fmt, out):
    """Homology table of the mapping cone, with the Deligne comparison."""
    cx = load_model(model, file)
    window = parse_range(p_range) if p_range else default_window(cx)
    table = {}
    ok = True
    for p in window:
        cone = build_cone(cx, p)
        d = build_deligne(cx, p, validate=False)
        ch = cone.homology_dims()
        dh = d.homology_dims()
        if ch != dh:
            ok = False
        for n, h in sorted(ch.items()):
            table[(n, p)] = h
    report = {"model": cx.name or model, "window": [min(window), max(window)],
              "homology": {repr(k): v for k, v in sorted(table.items())},
              "agrees_with_deligne": ok, "pass": ok}
    emit(report, fmt, out, "cone-table")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


@main.command("homotopy-check")
@model_option
@file_option
@click.option("--p", "p_range", default=None, help="weight range like 0..2")
@fmt_option
@out_option
@guarded
def homotopy_check(model, file, p_range, fmt, out):
    """Certify the cone/Deligne homotopy identities over a weight window."""
    cx = load_model(model, file)
    window = parse_range(p_range) if p_range else default_window(cx)
    conventions = set()
    for p in window:
        eq = homotopy_maps(cx, p)
        conventions.add(eq.convention)
    report = {"model": cx.name or model, "window": [min(window), max(window)],
              "identities": "psi.phi = Id and phi.psi - Id = dh + hd, exact",
              "cone_convention": sorted(conventions), "pass": True}
    emit(report, fmt, out, "homotopy-check")
    sys.exit(EXIT_OK)


@main.command("duality-check")
@model_option
@file_option
@fmt_option
@out_option
@guarded
def duality_check(model, file, fmt, out):
    """Dual-complex validity, perfect pairing, adjointness, double dual."""
    cx = load_model(model, file)
    dcx, pairing = dual_complex(cx)
    checks = {
        "dual_valid": validate_dolbeault(dcx) == [],
        "pairing_perfect": pairing.check_perfect(),
        "adjointness_sign": pairing.check_adjointness(),
        "double_dual_identity": pairing.double_dual_is_identity(),
        "separated_quotient": "full quotient (finite model)",
    }
    ok = all(v is True for k, v in checks.items() if isinstance(v, bool))
    report = {"model": cx.name or model, "pass": ok}
    report.update(checks)
    emit(report, fmt, out, "duality-check")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


@main.command("pairing-signs")
@click.option("--model", default="jet:2", show_default=True)
@click.option("--p", "p_range", default="0..2", show_default=True)
@click.option("--q", "q_range", default="-1..2", show_default=True)
@click.option("--n", "n_range", default="-1..3", show_default=True)
@click.option("--m", "m_range", default="-2..3", show_default=True)
@fmt_option
@out_option
@guarded
def pairing_signs(model, p_range, q_range, n_range, m_range, fmt, out):
    """Both sign tables of the duality pairing, with regime coverage."""
    cx = load_model(model, None)
    dcx, pairing = dual_complex(cx)
    rep_d = check_pairing_differential_signs(cx, dcx, pairing,
                                             parse_range(p_range), parse_range(n_range))
    rep_a = check_pairing_action_signs(cx, dcx, pairing,
                                       parse_range(p_range), parse_range(q_range),
                                       parse_range(n_range), parse_range(m_range))
    ok = (rep_d.passed(["n<=2p-1", "n>=2p"]) and rep_a.passed(ACTION_REGIMES))
    report = {
        "model": cx.name or model,
        "differential_regimes_hit": {k: v for k, v in sorted(rep_d.hits.items())},
        "differential_nonzero": {k: v for k, v in sorted(rep_d.nonzero.items())},
        "differential_violations": len(rep_d.violations),
        "action_regimes_hit": {repr(k): v for k, v in sorted(rep_a.hits.items())},
        "action_nonzero": {repr(k): v for k, v in sorted(rep_a.nonzero.items())},
        "action_violations": len(rep_a.violations),
        "pass": ok,
    }
    emit(report, fmt, out, "pairing-signs")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


@main.command("exceptional-duality")
@model_option
@click.option("--p", "p_range", default=None, help="weight range like -1..3")
@fmt_option
@out_option
@guarded
def exceptional_duality_cmd(model, p_range, fmt, out):
    """Gram matrices of the exceptional duality over the full window."""
    cx = load_model(model, None)
    if cx.geom_dim is None:
        _fail(EXIT_VALIDATION, "exceptional duality needs a compact equidimensional model")
    dcx, pairing = dual_complex(cx)
    d = cx.geom_dim
    window = parse_range(p_range) if p_range else range(-1, d + 3)
    entries = {}
    ok = True
    for p in window:
        for n in range(-1, 2 * d + 4):
            rep = exceptional_duality(cx, dcx, pairing, n, p)
            if rep.left_dim or rep.right_dim:
                entries[(n, p)] = {"dims": [rep.left_dim, rep.right_dim],
                                   "perfect": rep.perfect()}
            ok = ok and rep.perfect()
    # Poincare regrade check rides along for the same window
    poin = poincare_iso_check(cx, dcx, pairing, window)
    poin_ok = all(v[3] for v in poin.values())
    report = {"model": cx.name or model,
              "pairs": {repr(k): v for k, v in sorted(entries.items())},
              "poincare_iso": poin_ok, "pass": ok and poin_ok,
              "note": "minimal-model results"}
    emit(report, fmt, out, "exceptional-duality")
    sys.exit(EXIT_OK if ok and poin_ok else EXIT_CHECK)


@main.command("les-check")
@click.option("--N", "n_order", type=int, default=3, show_default=True)
@click.option("--k", "k_order", type=int, default=2, show_default=True)
@click.option("--p", "p_range", default="0..2", show_default=True)
@fmt_option
@out_option
@guarded
def les_check_cmd(n_order, k_order, p_range, fmt, out):
    """Long-exact-sequence check for the jet short exact sequence."""
    s = ses_jet(n_order, k_order)
    ok = s.check_exact() == []
    results = {}
    for p in parse_range(p_range):
        rep = les_check(s, p)
        results[p] = {"exact": rep["exact"], "euler": rep["euler"]}
        ok = ok and rep["exact"] and rep["euler"] == 0
    report = {"ses": "jet(%d) with flat order >= %d" % (n_order, k_order),
              "per_weight": results, "pass": ok}
    emit(report, fmt, out, "les-check")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


@main.command("semipurity")
@click.option("--family", default="point", show_default=True)
@click.option("--e", "e_range", default="0..4", show_default=True)
@click.option("--N", "n_range_jets", default="1..5", show_default=True)
@fmt_option
@out_option
@guarded
def semipurity(family, e_range, n_range_jets, fmt, out):
    """Vanishing table of tempered Deligne homology above the bound."""
    if family != "point":
        _fail(EXIT_PARSE, "only the point family is built in (dim Y = 0)")
    from .duality import dual_complex as dc
    fam = {N: dc(jet_model(N), validate=False)[0] for N in parse_range(n_range_jets)}
    scan = semipurity_scan(0, parse_range(e_range), range(-1, 6), family=fam)
    rows = {}
    for r in scan["rows"]:
        rows[(r["model"], r["e"])] = {"bound": r["bound"],
                                      "dims": {str(n): h for n, h in sorted(r["dims"].items())}}
    report = {"family": family, "label": scan["label"],
              "rows": {repr(k): v for k, v in sorted(rows.items())},
              "at_bound_nonzero": sorted(scan["at_bound_nonzero"]),
              "pass": scan["pass"]}
    emit(report, fmt, out, "semipurity")
    sys.exit(EXIT_OK if scan["pass"] else EXIT_CHECK)


@main.command("point-complex")
@click.option("--e", "e_val", type=int, default=0, show_default=True)
@click.option("--N", "n_order", type=int, default=3, show_default=True)
@fmt_option
@out_option
@guarded
def point_complex(e_val, n_order, fmt, out):
    """Two-row point complex vs jet Deligne cohomology, degreewise."""
    rep = formal_deligne_point_complex(e_val, n_order)
    ok = all(rep["agree"].values())
    report = {"e": e_val, "N": n_order,
              "comparison": {str(n): list(v) for n, v in sorted(rep["comparison"].items())},
              "pass": ok}
    emit(report, fmt, out, "point-complex")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


@main.command("green-check")
@click.option("--context", default="P1", show_default=True,
              help="P1, elliptic, or jet")
@click.option("--N", "n_order", type=int, default=3, show_default=True)
@click.option("--k", "k_order", type=int, default=2, show_default=True)
@click.option("--p", "p_weight", type=int, default=0, show_default=True)
@fmt_option
@out_option
@guarded
def green_check(context, n_order, k_order, p_weight, fmt, out):
    """Green criterion battery on a diagram context."""
    from .exactnum import QQ
    from .green import TruncatedClass, a_map, class_map, is_green_for, omega_map
    if context == "jet":
        g = green_context("jet", p=p_weight, p_form=1, N=n_order, k=k_order)
    else:
        g = green_context(context, p=p_weight, p_form=1)
    ctx = g["current"]
    checks = {}
    delta = None
    if g["delta"] is not None and ctx.dambient.dim(ctx.m0):
        try:
            delta = ctx.delta_from_current(g["delta"])
        except DegreeMismatch:
            delta = None        # the named current lives at another degree
    if delta is not None:
        tc = TruncatedClass(ctx, delta, [QQ.zero] * ctx.dcomp.dim(ctx.m0 + 1),
                            check=False)
        checks["matched_scale_green"] = is_green_for(tc, delta).green
        off = TruncatedClass(ctx, [2 * x for x in delta],
                             [QQ.zero] * ctx.dcomp.dim(ctx.m0 + 1), check=False)
        v = is_green_for(off, delta)
        checks["off_scale_not_green"] = (not v.green) and any(v.obstruction)
    n_eta = ctx.dambient.dim(ctx.m0 + 1)
    ca, _ = ctx.chains()
    d_up = ca.d(ctx.m0 + 1)
    omega_a_ok = True
    equiv_ok = True
    zero_delta = [QQ.zero] * ctx.dambient.dim(ctx.m0)
    for i in range(n_eta):
        eta = [QQ.one if j == i else QQ.zero for j in range(n_eta)]
        tc = a_map(ctx, eta)
        omega_a_ok = omega_a_ok and omega_map(tc) == d_up.matvec(eta)
        equiv_ok = equiv_ok and (is_green_for(tc, zero_delta).green
                                 == (not any(class_map(tc))))
    checks["omega_after_a_is_d"] = omega_a_ok
    checks["class_zero_iff_green_for_zero"] = equiv_ok
    ok = all(checks.values())
    report = {"context": ctx.labels, "pass": ok}
    report.update(checks)
    emit(report, fmt, out, "green-check")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


@main.command("star")
@click.option("--context", default="elliptic", show_default=True,
              help="P1, elliptic, or jet")
@click.option("--N", "n_order", type=int, default=3, show_default=True)
@click.option("--k", "k_order", type=int, default=2, show_default=True)
@fmt_option
@out_option
@guarded
def star(context, n_order, k_order, fmt, out):
    """Star-product slot identity and validity on a context."""
    from .exactnum import QQ
    from .duality import wedge_action
    from .green import (GreenObject, TruncatedClass, star_product,
                        _deligne_ambient_current, _deligne_ambient_form, _into_deligne)
    if context == "jet":
        g = green_context("jet", p=0, p_form=1, N=n_order, k=k_order)
        fctx, cctx = g["form"], g["current"]
        ca_f, _ = fctx.chains()
        gamma = [QQ.one if i == 1 else QQ.zero
                 for i in range(fctx.dambient.dim(fctx.m0 + 1))]
        om_w = ca_f.d(fctx.m0 + 1).matvec(gamma)
        g_w = fctx.rho_mat(fctx.m0 + 1).matvec(gamma)
        gw = GreenObject(TruncatedClass(fctx, om_w, g_w),
                         [QQ.zero] * fctx.dambient.dim(fctx.m0))
        ca_c, _ = cctx.chains()
        gamma_v = [QQ.one if i == 0 else QQ.zero
                   for i in range(cctx.dambient.dim(cctx.m0 + 1))]
        om_v = ca_c.d(cctx.m0 + 1).matvec(gamma_v)
        g_v = cctx.rho_mat(cctx.m0 + 1).matvec(gamma_v)
        gv = GreenObject(TruncatedClass(cctx, om_v, g_v),
                         [QQ.zero] * cctx.dambient.dim(cctx.m0))
    else:
        g = green_context(context, p=0 if context == "P1" else 1, p_form=1)
        fctx, cctx = g["form"], g["current"]
        om_w = [QQ.one] * fctx.dambient.dim(fctx.m0)
        gw = GreenObject(TruncatedClass(fctx, om_w, []), om_w)
        if context == "P1":
            delta = cctx.delta_from_current(g["delta"])
            gv = GreenObject(TruncatedClass(cctx, delta, []), delta)
        else:
            om_v = [QQ.one] * cctx.dambient.dim(cctx.m0)
            gv = GreenObject(TruncatedClass(cctx, om_v, []), om_v)
    res = star_product(gw, gv)
    tv = _deligne_ambient_form(fctx.dambient, 2 * fctx.p, gw.tc.omega)
    cur = _deligne_ambient_current(cctx.dambient, cctx.m0, gv.tc.omega)
    direct = _into_deligne(res.context.dambient, res.context.m0,
                           wedge_action(tv, cur))
    val = res.validity()
    checks = {
        "omega_slot_is_wedge_of_omega_slots": res.omega == direct,
        "omega_closed": val["omega_closed"],
        "dA_matches": val["dA"],
        "dB_matches": val["dB"],
        "A-B-dC_exact": val["A-B-dC exact"],
        "omega_slot_dim": res.context.dambient.dim(res.context.m0),
    }
    ok = all(v for k, v in checks.items() if isinstance(v, bool))
    report = {"context": "%s star" % context, "pass": ok}
    report.update(checks)
    emit(report, fmt, out, "star")
    sys.exit(EXIT_OK if ok else EXIT_CHECK)


if __name__ == "__main__":
    main()
