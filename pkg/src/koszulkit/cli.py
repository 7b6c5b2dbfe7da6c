"""Command-line interface: ``koszulkit SUBCOMMAND FILE [options]``.

Exit codes: 0 success, 1 a verdict requested with ``--assert`` failed (or
``validate`` rejected its input, or two oracles disagreed), 2 bad input,
3 a resource guard refused the computation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager

from . import __version__
from .dual_koszul import (DEFAULT_MAX_TENSOR, cm_check, dual_dims, hs1_formula, hs2_formula,
                          koszul_verdict, nkd, pair_reports)
from .errors import (DegreeTooLarge, HypothesisNotMet, InternalInconsistency, KoszulkitError,
                     NotSubcomplex, NotUniform, PosetError, ResourceGuard)
from .linalg import Field
from .order_complex import (DEFAULT_MAX_CELLS, build, cohomology, interval_space_profile,
                            reduced_cohomology, relative_cohomology, set_max_cells)
from .phi_map import build_phi, cochain_sign_check, quasi_iso_check, top_degree_checks
from .poset import (GENERATOR_KINDS, RankedPoset, generate, is_uniform, parse, read_poset,
                    uniformity_classes, wedge)
from .ralgebra import algebra, hilbert_R
from .series import TruncatedSeries

SCHEMA = 1
CHECK, CROSS = "✓", "✗"


class InputError(Exception):
    """Command-line input problem outside the poset format (exit code 2)."""


# -- helpers --------------------------------------------------------------------------------

def _load(path: str) -> RankedPoset:
    if path == "-":
        return parse(sys.stdin.read())
    try:
        return read_poset(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _fields(args) -> list[Field]:
    raw = args.field or args.default_fields
    out = []
    for f in raw:
        try:
            fld = Field.parse(f)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if fld not in out:
            out.append(fld)
    return out


def _poset_header(p: RankedPoset) -> dict:
    return {"name": p.name, "hash": p.content_hash(), "elements": len(p),
            "max_rank": p.max_rank}


def _series(s: TruncatedSeries) -> dict:
    return s.to_json()


def _mark(flag) -> str:
    return CHECK if flag else CROSS


class Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.stages[name] = round(self.stages.get(name, 0.0) + time.perf_counter() - t0, 6)


# -- report builders (pure data) --------------------------------------------------------------

def info_report(p: RankedPoset) -> dict:
    u = is_uniform(p)
    rep = {"poset": _poset_header(p), "rank_profile": list(p.rank_profile()),
           "uniform": bool(u), "cyclic": p.is_cyclic(), "pure": p.is_pure()}
    if not u:
        rep["uniform_witness"] = u.witness
        rep["uniform_classes"] = uniformity_classes(p, u.witness)
    return rep


def cohomology_report(p: RankedPoset, field: Field, augmented: bool) -> dict:
    table = algebra(p, field).internal_cohomology()
    rows = []
    for n in range(p.max_rank):
        rows.append([table.get(n, k, augmented) for k in range(n + 1)])
    return {"field": str(field), "augmented": augmented, "rows": rows,
            "nonzero": [list(t) for t in table.nonzero(augmented)]}


def _profile_dict(prof) -> dict:
    return {"dims": {str(k): v for k, v in sorted(prof.dims.items()) if v},
            "euler": prof.euler, "reduced": prof.reduced}


def order_report(p: RankedPoset, field: Field, interval=None, relative=None,
                 unreduced: bool = False) -> dict:
    rep = {"field": str(field)}
    if interval is not None:
        a, b = interval
        prof = interval_space_profile(p, a, b, field)
        rep.update(complex=f"({a},{b})", cohomology=_profile_dict(prof))
        return rep
    y = build(p, range(1, len(p)), field)
    rep["complex"] = "poset minus star"
    rep["cells"] = list(y.cell_counts())
    if relative is not None:
        missing = [n for n in relative.names[1:] if n not in p.index]
        if missing:
            raise NotSubcomplex(f"elements {missing} of the subposet are not in {p.name}")
        z = build(p, [p.index[n] for n in relative.names[1:]], field)
        rep["relative_to"] = relative.name
        rep["cohomology"] = _profile_dict(relative_cohomology(y, z))
        return rep
    prof = cohomology(y) if unreduced else reduced_cohomology(y)
    rep["cohomology"] = _profile_dict(prof)
    return rep


def cm_report(p: RankedPoset, field: Field) -> dict:
    v = cm_check(p, field)
    rep = {"field": str(field), "cm": v.cm, "intervals_checked": v.intervals_checked}
    if not v.cm:
        rep["witness"] = {"a": v.witness[0], "b": v.witness[1], "degree": v.witness[2],
                          "dims": {str(k): d for k, d in sorted(v.witness_dims.items()) if d}}
    return rep


def koszul_report(p: RankedPoset, field: Field, ext_degree=None, numerical=True,
                  max_tensor=DEFAULT_MAX_TENSOR, timer: Timer | None = None) -> dict:
    timer = timer or Timer(False)
    with timer.stage(f"koszul[{field}]"):
        v = koszul_verdict(p, field, numerical=numerical, max_tensor=max_tensor,
                           ext_degree=ext_degree)
    rep = {"field": str(field), "uniform": v.uniform, "cm": v.cm.cm,
           "koszul_via_cm": v.koszul_via_cm}
    if not v.uniform:
        rep["uniform_witness"] = v.uniform_witness
    if not v.cm.cm:
        rep["cm_witness"] = list(v.cm.witness)
    if v.recursion is not None:
        rep["koszul_via_recursion"] = v.recursion.koszul
        if not v.recursion.koszul:
            rep["recursion_witness"] = list(v.recursion.witness)
    if v.numerical is not None:
        rep["numerically_koszul"] = v.numerical.numerically_koszul
        rep["numerical_order"] = v.numerical.order
        rep["dual_source"] = v.numerical.dual_source
        rep["nkd"] = _series(v.numerical.nkd)
    if v.ext is not None:
        rep["ext"] = {"max_hdeg": v.ext.max_hdeg, "max_internal_deg": v.ext.max_internal_deg,
                      "diagonal": v.ext.diagonal,
                      "dims": [[s, t, d] for (s, t), d in sorted(v.ext.dims.items()) if d]}
    return rep


def hilbert_report(p: RankedPoset, field: Field, max_degree=None,
                   max_tensor=DEFAULT_MAX_TENSOR) -> dict:
    N = p.max_rank + 2 if max_degree is None else max_degree
    direct = hilbert_R(p, field)
    rep = {"field": str(field), "max_degree": N, "direct": _series(direct),
           "direct_alternating": _series(direct.alternate())}
    try:
        dims = dual_dims(p, field, N, max_tensor)
        rep["dual_dims"] = dims
        dual = TruncatedSeries(tuple(dims), N + 1)
        product = (direct.alternate() * dual).truncate(N + 1)
        rep["product"] = _series(product)
        rep["product_is_one"] = product.equals_mod(TruncatedSeries((1,)), N + 1)
    except DegreeTooLarge as exc:
        rep["dual_dims"] = None
        rep["dual_refused"] = str(exc)
    if is_uniform(p):
        reports = pair_reports(p, field)
        h1 = hs1_formula(p, field, reports=reports)
        h2 = hs2_formula(p, field, reports=reports)
        rep["hs1"] = _series(h1)
        rep["hs1_inverse"] = _series(h1.inverse(N + 1))
        rep["hs2"] = _series(h2)
        rep["hs2_matches_direct"] = h2 == direct.alternate()
        if rep.get("dual_dims") is not None:
            rep["hs1_inverse_matches_dual"] = list(h1.inverse(N + 1).coeffs) == \
                list(TruncatedSeries(tuple(rep["dual_dims"]), N + 1).coeffs)
    else:
        rep["hs1"] = rep["hs2"] = None
        rep["note"] = "HS1/HS2 need a uniform poset"
    return rep


def nkd_report(p: RankedPoset, field: Field) -> dict:
    res = nkd(p, field)
    return {"field": str(field), "nkd": _series(res.series),
            "hs1": _series(res.hs1), "hs2": _series(res.hs2),
            "bad_pairs": [[r.v, r.i] for r in res.bad_pairs],
            "pairs": [{"v": r.v, "i": r.i, "chi_reduced": r.chi_reduced,
                       "top_cohomology_dim": r.top_cohomology_dim, "good": r.good}
                      for r in res.pairs]}


def phi_report(p: RankedPoset, field: Field) -> dict:
    phi = build_phi(p, field)
    rep = {"field": str(field), "surjective": True,
           "sign_identity": cochain_sign_check(p, field, phi)}
    try:
        q = quasi_iso_check(p, field)
        rep["quasi_isomorphism"] = q.quasi_isomorphism
        rep["degrees"] = [{"n": d.n, "order_cohomology": d.source_dim,
                           "internal_cohomology": d.target_dim, "induced_rank": d.induced_rank}
                          for d in q.degrees]
    except HypothesisNotMet as exc:
        rep["quasi_isomorphism"] = None
        rep["quasi_isomorphism_skipped"] = str(exc)
    try:
        t = top_degree_checks(p, field)
        rep["top_degree"] = {"top": t.top, "d": t.d, "first_holds": t.first_holds,
                             "second_holds": t.second_holds,
                             "order_cohomology": t.source_dim,
                             "internal_cohomology": t.target_dim,
                             "induced_rank": t.induced_rank,
                             "kills_coboundaries": t.kills_coboundaries,
                             "interval_top_cohomology": t.z_top_dim,
                             "r_top_dim": t.r_top_dim, "map_rank": t.map_rank}
    except HypothesisNotMet as exc:
        rep["top_degree"] = None
        rep["top_degree_skipped"] = str(exc)
    return rep


# -- text rendering -----------------------------------------------------------------------

def _s(d: dict | None) -> str:
    return "n/a" if d is None else d["text"]


def _text_info(rep: dict) -> list[str]:
    p = rep["poset"]
    lines = [f"poset {p['name']}: {p['elements']} elements, max rank {p['max_rank']}",
             f"rank profile: {tuple(rep['rank_profile'])}",
             f"uniform: {'yes' if rep['uniform'] else 'no'}"]
    if not rep["uniform"]:
        classes = " | ".join("{" + ", ".join(c) + "}" for c in rep["uniform_classes"])
        lines[-1] += f" (witness {rep['uniform_witness']}: lower covers split as {classes})"
    lines.append(f"cyclic: {'yes' if rep['cyclic'] else 'no'}")
    lines.append(f"pure: {'yes' if rep['pure'] else 'no'}")
    return lines


def _text_cohomology(rep: dict) -> list[str]:
    kind = "augmented " if rep["augmented"] else ""
    lines = [f"{kind}internal cohomology over {rep['field']} (row n, columns k = 0..n):"]
    for n, row in enumerate(rep["rows"]):
        lines.append(f"  n={n}: " + " ".join(str(d) for d in row))
    return lines


def _dims_text(dims: dict) -> str:
    return ", ".join(f"H^{k}={v}" for k, v in dims.items()) or "all zero"


def _text_order(rep: dict) -> list[str]:
    prof = rep["cohomology"]
    kind = "reduced " if prof["reduced"] else ""
    where = rep["complex"]
    if "relative_to" in rep:
        where += f" relative to {rep['relative_to']}"
    lines = [f"{kind}cohomology of the order complex of {where} over {rep['field']}: "
             f"{_dims_text(prof['dims'])}"]
    if "cells" in rep:
        lines.append(f"cells per dimension: {tuple(rep['cells'])}")
    lines.append(f"euler characteristic: {prof['euler']}")
    return lines


def _text_cm(rep: dict) -> list[str]:
    if rep["cm"]:
        return [f"Cohen-Macaulay over {rep['field']}: yes "
                f"({rep['intervals_checked']} intervals checked)"]
    w = rep["witness"]
    return [f"Cohen-Macaulay over {rep['field']}: no; interval ({w['a']},{w['b']}) has "
            f"reduced cohomology in degree {w['degree']} ({_dims_text(w['dims'])})"]


def _text_koszul(rep: dict) -> list[str]:
    f = rep["field"]
    if not rep["uniform"]:
        lines = [f"Koszul over {f}: undecided (not uniform, witness {rep['uniform_witness']}; "
                 f"CM {_mark(rep['cm'])})"]
    else:
        lines = [f"Koszul over {f}: {'yes' if rep['koszul_via_cm'] else 'no'} "
                 f"(CM {_mark(rep['cm'])}, recursion {_mark(rep['koszul_via_recursion'])})"]
        if not rep["cm"]:
            a, b, n = rep["cm_witness"]
            lines.append(f"  CM witness: interval ({a},{b}), degree {n}")
        if "recursion_witness" in rep:
            x, n, k = rep["recursion_witness"]
            lines.append(f"  recursion witness: H(n={n}, k={k}) of [*,{x}] is nonzero")
    if "numerically_koszul" in rep:
        lines.append(f"  numerically Koszul up to t^{rep['numerical_order'] - 1}: "
                     f"{'yes' if rep['numerically_koszul'] else 'no'} "
                     f"(NKD = {rep['nkd']['text']}, dual series from {rep['dual_source']})")
    if "ext" in rep:
        e = rep["ext"]
        off = [d for d in e["dims"] if d[0] != d[1]]
        state = "diagonal" if e["diagonal"] else \
            "off-diagonal at " + ", ".join(f"Ext^{{{s},{t}}}={d}" for s, t, d in off)
        lines.append(f"  Ext up to homological degree {e['max_hdeg']}: {state}")
    return lines


def _text_hilbert(rep: dict) -> list[str]:
    lines = [f"over {rep['field']}:",
             f"  H(R,t)      = {_s(rep['direct'])}",
             f"  H(R,-t)     = {_s(rep['direct_alternating'])}"]
    if rep.get("hs2") is not None:
        lines.append(f"  HS2         = {_s(rep['hs2'])}  "
                     f"[{'matches' if rep['hs2_matches_direct'] else 'DIFFERS FROM'} H(R,-t)]")
        lines.append(f"  HS1         = {_s(rep['hs1'])}")
        lines.append(f"  1/HS1       = {_s(rep['hs1_inverse'])}")
    elif "note" in rep:
        lines.append(f"  {rep['note']}")
    if rep.get("dual_dims") is not None:
        lines.append(f"  dual dims   = {rep['dual_dims']}")
        lines.append(f"  H(R,-t)·H(R!,t) = {_s(rep['product'])}")
        if "hs1_inverse_matches_dual" in rep:
            lines.append(f"  1/HS1 matches dual dims: "
                         f"{'yes' if rep['hs1_inverse_matches_dual'] else 'no'}")
    else:
        lines.append(f"  dual dims refused: {rep['dual_refused']}")
    return lines


def _text_nkd(rep: dict) -> list[str]:
    bad = ", ".join(f"({v},{i})" for v, i in rep["bad_pairs"]) or "none"
    lines = [f"NKD = {rep['nkd']['text']}; bad pairs: {bad}"]
    lines.append(f"  over {rep['field']}: HS1 = {rep['hs1']['text']}, HS2 = {rep['hs2']['text']}")
    lines.append("  pair      χ̃   dim H̃^(i-2)  good")
    for r in rep["pairs"]:
        lines.append(f"  ({r['v']},{r['i']})".ljust(12) + f"{r['chi_reduced']:>4} "
                     f"{r['top_cohomology_dim']:>10}  {_mark(r['good'])}")
    return lines


def _text_phi(rep: dict) -> list[str]:
    lines = [f"Φ over {rep['field']}: surjective {_mark(rep['surjective'])}, "
             f"sign identity {_mark(rep['sign_identity'])}"]
    if rep["quasi_isomorphism"] is None:
        lines.append(f"  quasi-isomorphism: not checked ({rep['quasi_isomorphism_skipped']})")
    else:
        lines.append(f"  quasi-isomorphism: {'yes' if rep['quasi_isomorphism'] else 'no'}")
        for d in rep["degrees"]:
            lines.append(f"    n={d['n']}: dim H^n(Y)={d['order_cohomology']}, "
                         f"dim H(n,0)={d['internal_cohomology']}, "
                         f"induced rank={d['induced_rank']}")
    t = rep["top_degree"]
    if t is None:
        lines.append(f"  top degree: not checked ({rep['top_degree_skipped']})")
    else:
        lines.append(f"  top degree (top {t['top']}, d={t['d']}): "
                     f"isomorphism in degree d-1 {_mark(t['first_holds'])}, "
                     f"dim H̃^(d-1)(*,{t['top']}) = {t['interval_top_cohomology']} vs "
                     f"dim R(d,0) = {t['r_top_dim']} {_mark(t['second_holds'])}")
    return lines


# -- command handlers --------------------------------------------------------------------

def _per_field(args, builder, renderer, verdict_key=None):
    p = _load(args.file)
    timer = Timer(args.timing)
    reports = []
    for f in _fields(args):
        with timer.stage(str(f)):
            reports.append(builder(p, f))
    out = {"poset": _poset_header(p), "results": reports}
    lines = []
    for r in reports:
        lines.extend(renderer(r))
    failed = verdict_key is not None and not all(verdict_key(r) for r in reports)
    return out, lines, timer, failed


def cmd_validate(args):
    try:
        p = _load(args.file)
    except PosetError as exc:
        rep = {"valid": False, "error": type(exc).__name__, "message": str(exc)}
        return rep, [f"invalid: {type(exc).__name__}: {exc}"], Timer(False), True
    rep = {"valid": True, "poset": _poset_header(p)}
    return rep, [f"valid: {p.name} ({len(p)} elements, max rank {p.max_rank})"], Timer(False), False


def cmd_info(args):
    p = _load(args.file)
    rep = info_report(p)
    return rep, _text_info(rep), Timer(False), False


def cmd_cohomology(args):
    return _per_field(args, lambda p, f: cohomology_report(p, f, args.augmented), _text_cohomology)


def cmd_order(args):
    rel = _load(args.relative) if args.relative else None

    def build_rep(p, f):
        return order_report(p, f, args.interval, rel, args.unreduced)
    return _per_field(args, build_rep, _text_order)


def cmd_cm(args):
    return _per_field(args, cm_report, _text_cm, lambda r: r["cm"])


def cmd_koszul(args):
    p = _load(args.file)
    timer = Timer(args.timing)
    reports = [koszul_report(p, f, args.ext, not args.no_numerical, args.max_tensor, timer)
               for f in _fields(args)]
    lines = []
    for r in reports:
        lines.extend(_text_koszul(r))
    verdicts = {r["field"]: r["koszul_via_cm"] for r in reports}
    out = {"poset": _poset_header(p), "results": reports,
           "fields_agree": len(set(verdicts.values())) <= 1}
    if not out["fields_agree"]:
        lines.append("note: the verdict depends on the field: " +
                     ", ".join(f"{k}: {'yes' if v else 'no'}" for k, v in verdicts.items()))
    return out, lines, timer, not all(verdicts.values())


def cmd_hilbert(args):
    return _per_field(args, lambda p, f: hilbert_report(p, f, args.max_degree, args.max_tensor),
                      _text_hilbert,
                      lambda r: r.get("product_is_one", True) and r.get("hs2_matches_direct", True))


def cmd_nkd(args):
    return _per_field(args, nkd_report, _text_nkd, lambda r: not r["nkd"]["coefficients"])


def cmd_phi(args):
    def ok(r):
        checks = [r["sign_identity"], r["quasi_isomorphism"] is not False]
        if r["top_degree"] is not None:
            checks += [r["top_degree"]["first_holds"], r["top_degree"]["second_holds"]]
        return all(checks)
    return _per_field(args, phi_report, _text_phi, ok)


def _write_poset(p: RankedPoset, out_path: str | None) -> list[str]:
    text = p.to_text()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return [f"wrote {p.name} ({len(p)} elements) to {out_path}"]
    return text.rstrip("\n").split("\n")


def cmd_wedge(args):
    g, o = _load(args.file), _load(args.file2)
    w = wedge(g, o, args.at[0], args.at[1], name=args.name)
    rep = {"poset": _poset_header(w), "text": w.to_text()}
    return rep, _write_poset(w, args.output), Timer(False), False


def _generator_params(kind: str, params: list[str]):
    if kind == "hat":
        if not params:
            raise InputError("hat needs an inner generator, e.g. 'hat prism 2'")
        return (tuple([params[0]] + [_number(x) for x in params[1:]]),)
    if kind == "random_ranked":
        return ([int(x) for x in params],)
    return tuple(_number(x) for x in params)


def _number(x: str):
    try:
        return int(x)
    except ValueError:
        raise InputError(f"expected an integer parameter, got {x!r}") from None


def cmd_generate(args):
    opts = {}
    if args.kind == "random_ranked":
        opts = {"density": args.density, "uniform": args.uniform, "pure": args.pure}
    p = generate(args.kind, *_generator_params(args.kind, args.params), seed=args.seed, **opts)
    if args.name:
        p = p.relabel(args.name)
    rep = {"poset": _poset_header(p), "text": p.to_text()}
    return rep, _write_poset(p, args.output), Timer(False), False


# -- argument parsing -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--assert", dest="assert_", action="store_true",
                        help="exit 1 when the verdict is negative")
    common.add_argument("--timing", action="store_true", help="report time per stage")
    common.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS,
                        help=f"order complex cell guard (default {DEFAULT_MAX_CELLS})")
    common.add_argument("--max-tensor", type=int, default=DEFAULT_MAX_TENSOR,
                        help=f"dual tensor coordinate guard (default {DEFAULT_MAX_TENSOR})")
    fields = argparse.ArgumentParser(add_help=False)
    fields.add_argument("--field", action="append",
                        help="q (rationals) or a prime p; repeat for several fields")

    parser = argparse.ArgumentParser(prog="koszulkit",
                                     description="Ranked posets, the algebra R and Koszul checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, with_fields=True, default_fields=("q",)):
        parents = [common, fields] if with_fields else [common]
        sp = sub.add_parser(name, parents=parents, help=help_text, description=help_text)
        sp.set_defaults(handler=handler, default_fields=list(default_fields))
        return sp

    sp = add("validate", cmd_validate, "parse and validate a poset file", with_fields=False)
    sp.add_argument("file")
    sp = add("info", cmd_info, "ranks, uniformity, cyclic and pure flags", with_fields=False)
    sp.add_argument("file")
    sp = add("cohomology", cmd_cohomology, "internal cohomology table H(n,k)")
    sp.add_argument("file")
    sp.add_argument("--augmented", action="store_true")
    sp = add("order", cmd_order, "cohomology of an order complex")
    sp.add_argument("file")
    sp.add_argument("--interval", nargs=2, metavar=("A", "B"),
                    help="open interval (A,B) instead of the poset minus its star")
    sp.add_argument("--relative", metavar="SUBFILE",
                    help="relative cohomology with respect to the subposet listed in SUBFILE")
    sp.add_argument("--unreduced", action="store_true")
    sp = add("cm", cmd_cm, "Cohen-Macaulay verdict with a witness interval")
    sp.add_argument("file")
    sp = add("koszul", cmd_koszul, "Koszul verdicts from every applicable decider",
             default_fields=("q", "2"))
    sp.add_argument("file")
    sp.add_argument("--ext", type=int, metavar="N", help="also compute Ext up to degree N")
    sp.add_argument("--no-numerical", action="store_true",
                    help="skip the NKD and Hilbert series product test")
    sp = add("hilbert", cmd_hilbert, "Hilbert series, HS1, HS2, dual dims and their product")
    sp.add_argument("file")
    sp.add_argument("--max-degree", type=int, metavar="N")
    sp = add("nkd", cmd_nkd, "numerical Koszul defect with a per-pair report")
    sp.add_argument("file")
    sp = add("phi", cmd_phi, "sign identity, quasi-isomorphism and top-degree checks")
    sp.add_argument("file")
    sp = add("wedge", cmd_wedge, "wedge two posets at rank-one elements", with_fields=False)
    sp.add_argument("file")
    sp.add_argument("file2")
    sp.add_argument("--at", nargs=2, required=True, metavar=("V1", "V2"))
    sp.add_argument("-o", "--output")
    sp.add_argument("--name")
    sp = add("generate", cmd_generate, "write a generated poset", with_fields=False)
    sp.add_argument("kind", choices=GENERATOR_KINDS)
    sp.add_argument("params", nargs="*")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--density", type=float, default=0.5)
    sp.add_argument("--uniform", action="store_true")
    sp.add_argument("--pure", action="store_true")
    sp.add_argument("-o", "--output")
    sp.add_argument("--name")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    previous = set_max_cells(args.max_cells)
    try:
        rep, lines, timer, failed = args.handler(args)
    except (PosetError, NotUniform, NotSubcomplex, InputError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ResourceGuard as exc:
        print(f"refused: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except InternalInconsistency as exc:
        print(f"oracle disagreement: {exc}", file=sys.stderr)
        return 1
    except KoszulkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        set_max_cells(previous)
    if args.json:
        rep = {"schema": SCHEMA, "command": args.command, **rep}
        if args.timing:
            rep["timing"] = timer.stages
        stdout.write(json.dumps(rep, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        for line in lines:
            stdout.write(line + "\n")
        if args.timing:
            for stage, sec in timer.stages.items():
                stdout.write(f"time {stage}: {sec:.3f} s\n")
    if args.command == "validate":
        return 1 if failed else 0
    return 1 if (failed and args.assert_) else 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
