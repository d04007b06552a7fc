"""Command-line front end.

    borsuk VERB --input bundle.ini [--format json|table] [flags]

Exit codes: 0 success, 1 validation error, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import euler_char, poincare_series, validate
from .bundle import FiberSpec, orbit_algebra
from .charpoly import char_polys, free_module_dims, quotient_check, safe_cap
from .document import BundleDocument, DocumentError, DocumentParseError, emit_document, parse_document, parse_space
from .expr import ExprError, eval_poly
from .membership import (
    TOTAL_DEGREE_NOTE,
    Member,
    NonMember,
    audit_degree_argument,
    borsuk_bound,
    coincidence_bound,
    membership,
    verify_certificate,
    verify_member,
)
from .obstructions import free_involution_obstruction
from .report import Report

VERBS = (
    "orbit-algebra",
    "poincare",
    "charpoly",
    "quotient-check",
    "membership",
    "bound",
    "coincidence",
    "audit",
    "obstruction",
)

HYPOTHESIS_NOTE = (
    "assumed, not checked: the quotient bundle has a cohomology extension of the fibre "
    "(the Leray-Hirsch hypothesis); structure coefficients are taken as given"
)


class UsageError(Exception):
    exit_code = 2


@dataclass
class Flags:
    degree_cap: int | None = None
    max_degree: int | None = None
    cohom_dim_base: int | None = None
    q: str | None = None
    k: int | None = None

    def canonical(self) -> dict:
        return {k: v for k, v in sorted(vars(self).items()) if v is not None}


def _digest(canonical_input: str, flags: Flags, verb: str) -> str:
    h = hashlib.sha256()
    h.update(verb.encode())
    h.update(b"\0")
    h.update(canonical_input.encode())
    h.update(b"\0")
    h.update(json.dumps(flags.canonical(), sort_keys=True).encode())
    return h.hexdigest()


def _fiber_dict(f: FiberSpec) -> dict:
    return {"kind": f.kind.value, "n": f.n}


def _need_k(doc: BundleDocument, verb: str):
    if doc.vector_bundle is None:
        raise UsageError(f"'{verb}' needs the vector bundle rank: add [vector_bundle] k or pass --k")
    return doc.vector_bundle


def _coord_label(doc: BundleDocument, coord) -> str:
    i, j, b = coord
    parts = [] if doc.base.labels[b] == "1" else [doc.base.labels[b]]
    for name, e in (("x", i), ("y", j)):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"


def _cohom_dim_base(doc: BundleDocument, flags: Flags, notes: list[str]) -> tuple[int, str]:
    if flags.cohom_dim_base is not None:
        return flags.cohom_dim_base, "flag"
    base = doc.base
    if base.complete:
        top = base.top_degree
        notes.append(
            f"--cohom-dim-base not given; using the top nonzero degree {top} of the base algebra as a suggestion"
        )
        return top, "suggested"
    raise UsageError("--cohom-dim-base is required (the base algebra is not complete below its cap)")


# -- verbs ---------------------------------------------------------------------


def _orbit_algebra(doc, flags, notes, warnings):
    f = doc.fiber
    alg = orbit_algebra(f, flags.degree_cap)
    e = euler_char(alg)
    return {
        "fiber": _fiber_dict(f),
        "cap": alg.cap,
        "generators": [{"name": g.name, "degree": g.degree, "truncation": g.truncation} for g in alg.generators],
        "relations": [f"{g.name}^{g.truncation}" for g in alg.generators],
        "basis": [{"label": lab, "degree": d} for lab, d in zip(alg.labels, alg.degrees)],
        "poincare": list(poincare_series(alg).dims),
        "euler": {"chi": e.chi, "complete": e.complete},
        "violations": [v.detail for v in validate(alg)],
    }


def _poincare(doc, flags, notes, warnings):
    f = doc.fiber
    top = flags.max_degree if flags.max_degree is not None else doc.base.cap
    orbit = orbit_algebra(f, max(top, 0))
    base_dims = list(poincare_series(doc.base).dims)[: top + 1]
    base_dims += [0] * (top + 1 - len(base_dims))
    if top > doc.base.cap:
        warnings.append(f"degrees above the base cap {doc.base.cap} are not computed exactly")
    return {
        "max_degree": top,
        "base": base_dims,
        "orbit_algebra": list(poincare_series(orbit).dims)[: top + 1],
        "total_space": free_module_dims(doc.bundle, top),
    }


def _charpoly(doc, flags, notes, warnings):
    cp = char_polys(doc.bundle, doc.vector_bundle)
    out = {
        "fiber": _fiber_dict(doc.fiber),
        "W1": {"poly": str(cp.W1), "degree": cp.degrees[0]},
        "W2": {"poly": str(cp.W2), "degree": cp.degrees[1]},
    }
    if cp.Wprime is not None:
        out["Wprime"] = {"poly": str(cp.Wprime), "degree": cp.degrees[2]}
    return out


def _quotient_check(doc, flags, notes, warnings):
    cap = safe_cap(doc.bundle, doc.vector_bundle)
    upto = flags.max_degree if flags.max_degree is not None else max(cap, 0)
    rep = quotient_check(doc.bundle, upto, doc.vector_bundle)
    rows = [
        {
            "degree": r.degree,
            "slice_dim": r.slice_dim,
            "ideal_rank": r.ideal_rank,
            "quotient_dim": r.quotient_dim,
            "free_dim": r.free_dim,
            "status": r.status,
        }
        for r in rep.rows
    ]
    unknown = [r.degree for r in rep.rows if r.status == "unknown"]
    if unknown:
        warnings.append(f"degrees {unknown} exceed the safe cap {cap} and are Unknown")
    if not rep.realizable:
        bad = [r.degree for r in rep.rows if r.status == "unequal"]
        warnings.append(f"quotient is not free on the Leray-Hirsch basis in degrees {bad}: coefficients not bundle-realizable")
    notes.append(HYPOTHESIS_NOTE)
    return {"safe_cap": cap, "realizable": rep.realizable, "rows": rows}


def _membership(doc, flags, notes, warnings):
    vb = _need_k(doc, "membership")
    if flags.q is None:
        raise UsageError("'membership' requires --q EXPR")
    cp = char_polys(doc.bundle, vb)
    try:
        q = eval_poly(cp.W1.ring, flags.q)
    except ExprError as exc:
        raise DocumentParseError(f"--q: {exc}", path="--q") from None
    v = membership(q, doc.bundle, vb)
    out = {"q": str(q), "Wprime": str(cp.Wprime), "ideal": [str(cp.W1), str(cp.W2)], "verdict": v.kind}
    if isinstance(v, Member):
        out.update(r1=str(v.r1), r2=str(v.r2), verified=verify_member(v, q, doc.bundle, vb))
    elif isinstance(v, NonMember):
        support = [_coord_label(doc, v.coords[n]) for n in v.certificate.support()]
        out.update(degree=v.degree, certificate=support, verified=verify_certificate(v, q, doc.bundle, vb))
        notes.append("certificate: the linear functional equal to 1 on the listed monomials of the degree slice")
    else:
        out.update(reason=v.reason)
        warnings.append(f"Unknown: {v.reason}")
    notes.append(HYPOTHESIS_NOTE)
    return out


def _bound_dict(rep, source):
    return {
        "fiber": {"kind": rep.kind.value, "n": rep.n},
        "k": rep.k,
        "cohom_dim_base": rep.cohom_dim_base,
        "cohom_dim_base_source": source,
        "bound": rep.bound,
        "valid": rep.valid,
        "monomorphism_range": rep.monomorphism_range,
    }


def _bound(doc, flags, notes, warnings):
    vb = _need_k(doc, "bound")
    dim_b, source = _cohom_dim_base(doc, flags, notes)
    rep = borsuk_bound(doc.fiber, vb.k, dim_b)
    if not rep.valid:
        warnings.append("hypothesis fails (n < k, or 2n < k for complex fibres): the bound is not asserted")
    notes += [rep.interpretation, HYPOTHESIS_NOTE]
    return _bound_dict(rep, source)


def _coincidence(doc, flags, notes, warnings):
    vb = _need_k(doc, "coincidence")
    dim_b, source = _cohom_dim_base(doc, flags, notes)
    tr = coincidence_bound(doc.fiber, vb.k, dim_b)
    if not tr.report.valid:
        warnings.append("hypothesis fails (n < k, or 2n < k for complex fibres): the bound is not asserted")
    notes += [tr.report.interpretation, HYPOTHESIS_NOTE]
    return {
        "trace": {
            "k": tr.k,
            "whitney_sum_dim": tr.whitney_sum_dim,
            "diagonal_dim": tr.diagonal_dim,
            "complement_dim": tr.complement_dim,
            "steps": list(tr.steps),
        },
        "bound": _bound_dict(tr.report, source),
    }


def _audit(doc, flags, notes, warnings):
    vb = _need_k(doc, "audit")
    if flags.max_degree is None:
        raise UsageError("'audit' requires --max-degree N")
    rep = audit_degree_argument(doc.bundle, vb, flags.max_degree)
    rows = [
        {
            "q": r.q,
            "xy_degree": r.xy_degree,
            "verdict": r.verdict,
            "tension": r.tension,
        }
        for r in rep.rows
    ]
    for r in rep.tension_rows:
        warnings.append(
            f"corollary-tension: q = {r.q} has (x,y)-degree {r.xy_degree} < {rep.threshold} but q*W' lies in <W1, W2>"
        )
    for r in rep.rows:
        if r.verdict == "Unknown":
            warnings.append(f"Unknown: q = {r.q}: {r.reason}")
    notes += [
        "rows list monomials q = c*x^i*y^j; tension marks members below the monomorphism range",
        TOTAL_DEGREE_NOTE,
        HYPOTHESIS_NOTE,
    ]
    return {"threshold": rep.threshold, "rows": rows}


_DISPATCH = {
    "orbit-algebra": _orbit_algebra,
    "poincare": _poincare,
    "charpoly": _charpoly,
    "quotient-check": _quotient_check,
    "membership": _membership,
    "bound": _bound,
    "coincidence": _coincidence,
    "audit": _audit,
}


def run_command(verb: str, text: str, flags: Flags | None = None) -> Report:
    """Dispatch one verb on a document; raises ``DocumentError`` or ``UsageError``."""
    flags = flags or Flags()
    if verb not in VERBS:
        raise UsageError(f"unknown verb {verb!r}; expected one of {', '.join(VERBS)}")
    notes: list[str] = []
    warnings: list[str] = []
    if verb == "obstruction":
        space = parse_space(text)
        v = free_involution_obstruction(space)
        result = {"space": str(space), "chi": v.chi, "verdict": v.label}
        if v.note:
            notes.append(v.note)
        canonical = json.dumps({"kind": space.kind.value, "n": space.n, "chi": space.chi}, sort_keys=True)
        return Report(verb, _digest(canonical, flags, verb), result, notes, warnings)
    doc = parse_document(text, cap=flags.degree_cap if verb != "orbit-algebra" else None, k=flags.k)
    result = _DISPATCH[verb](doc, flags, notes, warnings)
    return Report(verb, _digest(emit_document(doc), flags, verb), result, notes, warnings)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borsuk", description="Parametrized Borsuk-Ulam algebra for projective-space bundles")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--input", "-i", type=Path, required=True, help="bundle document")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--cohom-dim-base", type=int)
    p.add_argument("--q", help="polynomial in x, y and base generators")
    p.add_argument("--k", type=int, help="fibre dimension of the target vector bundle")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.input.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"borsuk: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
        return 2
    flags = Flags(args.degree_cap, args.max_degree, args.cohom_dim_base, args.q, args.k)
    try:
        report = run_command(args.verb, text, flags)
    except (DocumentError, UsageError) as exc:
        kind = "parse error" if exc.exit_code == 2 else "validation error"
        print(f"borsuk: {kind}: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_table())
    return 0


__all__ = ["Flags", "UsageError", "VERBS", "build_parser", "main", "run_command"]
