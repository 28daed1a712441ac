"""Command-line front end.

Exit status: 0 when every check passed, 2 on unreadable input or an unmet
precondition, 3 on any mismatch, 4 when the requested truncation order is
too low.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .classes import chi_equivariant, hrr_check, molien_check, verify_global_hirzebruch
from .corpus import corpus_documents, corpus_names
from .document import CheckRecord, DocumentError, RunReport, exact_text, parse_document, parse_polynomial
from .errors import (
    InconsistentSystem,
    MismatchAtVertex,
    NotASummand,
    NotDelzant,
    NotFullDimensional,
    NotLatticePolytope,
    NotSimple,
    PoleResidueNonzero,
    ToricError,
    TruncationTooLow,
)
from .euler_maclaurin import cs_face_sum_check, em_check, rel1_check
from .fan import polytope_cone_data
from .genfunc import brion_assembly, evaluate_brion
from .kernel.ypoly import YPoly
from .polytope import enumerate_lattice_points, face_polytope, weighted_count_oracle

EXIT_OK, EXIT_PARSE, EXIT_MISMATCH, EXIT_TRUNCATION = 0, 2, 3, 4

EM_VARIANTS = {"todd": "todd", "dual": "dual_todd", "y": "hirzebruch_y", "twisted": "twisted", "cs": "cs", "face": "face"}
FACE_SUBS = {"todd": "todd", "dual": "dual_todd", "y": "hirzebruch_y"}
PRECONDITION = (NotSimple, NotDelzant, NotASummand)


class UsageError(Exception):
    pass


def _load(args):
    """``[(document, text)]`` in input order."""
    out = []
    for path in args.input or []:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
        out.append((parse_document(text), text))
    if args.corpus:
        try:
            docs = corpus_documents(args.corpus)
        except KeyError as exc:
            raise DocumentError(exc.args[0]) from None
        out.extend((d, d.dumps()) for d in docs)
    if not out:
        raise DocumentError("no input: give a document path or --corpus NAME")
    return out


def _polytope(doc):
    try:
        return doc.polytope()
    except (NotFullDimensional, NotLatticePolytope) as exc:
        raise DocumentError(f"{doc.name}: {exc}") from None


def _ymode(v):
    return v.constant() if isinstance(v, YPoly) and v.is_constant() else v


# -- count ----------------------------------------------------------------

def _count_routes(P, weighted, interior):
    if interior:
        oracle = len(enumerate_lattice_points(P, P.full_face, "relative_interior"))
        brion = evaluate_brion(P, weighted=True).value.coeff(P.dim)
        loc = chi_equivariant(P, choice="canonical").value
        return oracle, brion, loc
    if weighted:
        return weighted_count_oracle(P), evaluate_brion(P, weighted=True).value, chi_equivariant(P).value
    return len(enumerate_lattice_points(P)), evaluate_brion(P).value, chi_equivariant(P, choice="structure").value


def run_count(args, P, doc):
    target = P
    label = doc.name
    if args.face is not None:
        face = _face(P, args.face)
        label = f"{doc.name}[face {face.id}]"
        if face.dim == 0:
            return [CheckRecord(f"{label}:count", "1", "1", "OK", {"brion": "1", "localization": "1"})]
        target = face_polytope(P, face)
    oracle, brion, loc = (_ymode(v) for v in _count_routes(target, args.weighted, args.interior))
    verdict = "OK" if oracle == brion == loc else "MISMATCH"
    rec = CheckRecord(f"{label}:count", exact_text(oracle), exact_text(loc), verdict, {"brion": exact_text(brion)})
    print(f"{label}: oracle={oracle} brion={brion} localization={loc} {verdict}")
    return [rec]


def _face(P, fid):
    if not 0 <= fid < len(P.faces):
        raise UsageError(f"face id {fid} out of range 0..{len(P.faces) - 1}")
    return P.faces[fid]


# -- em -------------------------------------------------------------------

def run_em(args, P, doc):
    f = parse_polynomial(args.f, P.dim)
    variant = EM_VARIANTS[args.variant]
    if variant == "cs":
        rep = cs_face_sum_check(P, f, args.order, perturb=args.perturb)
        detail = {} if rep.perturbed_left is None else {"perturbed_left": exact_text(rep.perturbed_left)}
        verdict = "OK" if rep.ok else "MISMATCH"
        print(f"{doc.name} cs f={args.f} LEFT={rep.left} RIGHT={rep.right} {verdict}")
        return [CheckRecord(f"{doc.name}:em:cs", exact_text(rep.left), exact_text(rep.right), verdict, detail)]
    kwargs = {}
    if variant == "face":
        if args.face is None:
            raise UsageError("--variant face needs --face ID")
        kwargs = {"face": _face(P, args.face), "sub": FACE_SUBS[args.sub]}
    if variant == "twisted":
        if doc.summand is None:
            raise UsageError(f"{doc.name}: --variant twisted needs a document with a summand")
        kwargs = {"summand": doc.summand_polytope()}
    rep = em_check(P, f, variant, args.order, **kwargs)
    verdict = "OK" if rep.ok else "MISMATCH"
    print(f"{doc.name} {rep.variant} f={args.f} LEFT={rep.left} RIGHT={rep.right} {verdict}")
    return [CheckRecord(f"{doc.name}:em:{rep.variant}", exact_text(rep.left), exact_text(rep.right), verdict, {"order": rep.extra["order"]})]


# -- verify -----------------------------------------------------------------

def run_verify(args, P, doc):
    chosen = [k for k in ("hrr", "global_class", "molien", "rel1") if getattr(args, k)]
    chosen = chosen or ["hrr", "global_class", "molien", "rel1"]
    records = []
    if "hrr" in chosen:
        for c in hrr_check(P):
            records.append(_vertex_record(doc, "hrr", c.vertex, c.deviation, c.ok))
    if "molien" in chosen:
        for c in molien_check(P):
            records.append(_vertex_record(doc, "molien", c.vertex, c.deviation, c.ok))
    if "global_class" in chosen:
        try:
            rep = verify_global_hirzebruch(P)
            ok, dev = rep.ok, rep.max_deviation
            detail = {"collapse": f"(1+y)^({rep.n}-{rep.r})", "global_group": rep.group_size,
                      "max_deviation": f"{dev:.3e}"}
        except MismatchAtVertex as exc:
            ok, dev, detail = False, exc.deviation, {"vertex": list(exc.vertex)}
        verdict = "OK" if ok else "MISMATCH"
        print(f"{doc.name} global-class {verdict} {detail}")
        records.append(CheckRecord(f"{doc.name}:global_class", "restriction", "localized", verdict, detail))
    if "rel1" in chosen:
        vol_f = parse_polynomial("x1", P.dim)
        for E in P.faces:
            rep = rel1_check(P, E, vol_f)
            verdict = "OK" if rep.ok else "MISMATCH"
            print(f"{doc.name} rel1 face {E.id} symbolic={rep.symbolic} series={rep.series} polynomial={rep.polynomial} {verdict}")
            records.append(CheckRecord(f"{doc.name}:rel1:face{E.id}", str(rep.symbolic), str(rep.series and rep.polynomial), verdict))
    return records


def _vertex_record(doc, check, vertex, dev, ok):
    verdict = "OK" if ok else "MISMATCH"
    shown = ("0" if ok else "nonzero") if check == "hrr" else f"{dev:.3e}"
    print(f"{doc.name} {check} vertex {tuple(vertex)} deviation {shown} {verdict}")
    return CheckRecord(f"{doc.name}:{check}:{list(vertex)}", "", "", verdict, {"deviation": shown})


# -- dumps ----------------------------------------------------------------

def run_fan(args, P, doc):
    print(f"# {doc.name}")
    for i, data in enumerate(polytope_cone_data(P)):
        ids = P.vertex_facets[i]
        print(f"vertex {P.vertices[i]} rays {[P.facets[j].normal for j in ids]} facets {list(ids)} mult {data.mult}")
        print(f"  dual basis {[tuple(str(a) for a in m) for m in data.dual_basis]}")
        print(f"  dual rays {list(data.dual_rays)} parallelepiped {sorted(data.parallelepiped)} |G| {len(data.group)}")
    return []


def run_brion(args, P, doc):
    print(f"# {doc.name}")
    for t in brion_assembly(P, weighted=args.weighted):
        num = sorted(t.function.numerator.terms.items())
        body = " + ".join(f"({c})*x^{list(m)}" for m, c in num)
        print(f"vertex {t.vertex}: [{body}] / {[list(w) for w in t.function.denominators]}")
    return []


# -- main -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-em", description="Exact lattice-point, chi_y and Euler-Maclaurin checks on simple lattice polytopes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", nargs="*", help="PolytopeDocument JSON files")
        sp.add_argument("--corpus", metavar="NAME", help="shipped corpus entry, or 'default' for all")
        sp.add_argument("--report", metavar="PATH", help="write the machine-readable report here")
        sp.add_argument("--timing", action="store_true", help="include per-check timings in the report")

    c = sub.add_parser("count", help="lattice-point counts on three routes")
    common(c)
    c.add_argument("--weighted", action="store_true", help="chi_y weights (1+y)^dim E")
    c.add_argument("--face", type=int, metavar="ID")
    c.add_argument("--interior", action="store_true")

    e = sub.add_parser("em", help="Euler-Maclaurin identities")
    common(e)
    e.add_argument("--variant", choices=sorted(EM_VARIANTS), default="todd")
    e.add_argument("--f", default="1", help="polynomial in x1..xn")
    e.add_argument("--order", type=int, help="truncation order D (default n + deg f)")
    e.add_argument("--face", type=int, metavar="ID")
    e.add_argument("--sub", choices=sorted(FACE_SUBS), default="todd", help="face operator flavour")
    e.add_argument("--perturb", action="store_true", help="cs: also evaluate with a kernel-perturbed solution")

    v = sub.add_parser("verify", help="class-level verification suites")
    common(v)
    v.add_argument("--hrr", action="store_true")
    v.add_argument("--global-class", dest="global_class", action="store_true")
    v.add_argument("--molien", action="store_true")
    v.add_argument("--rel1", action="store_true")

    f = sub.add_parser("fan", help="dump normal fan data")
    common(f)
    b = sub.add_parser("brion", help="dump Brion vertex terms")
    common(b)
    b.add_argument("--weighted", action="store_true")

    k = sub.add_parser("corpus", help="list corpus entries or print one document")
    k.add_argument("name", nargs="?")
    return p


RUNNERS = {"count": run_count, "em": run_em, "verify": run_verify, "fan": run_fan, "brion": run_brion}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        if not args.name:
            print("\n".join(corpus_names()))
            return EXIT_OK
        try:
            for d in corpus_documents(args.name):
                sys.stdout.write(d.dumps())
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_PARSE
        return EXIT_OK

    try:
        loaded = _load(args)
    except (DocumentError, NotASummand, NotFullDimensional, NotLatticePolytope) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    report = RunReport(args.command, [text for _, text in loaded])
    single = len(loaded) == 1
    code = EXIT_OK
    for doc, _ in loaded:
        started = time.perf_counter()
        try:
            P = _polytope(doc)
            records = RUNNERS[args.command](args, P, doc)
        except (DocumentError, UsageError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        except TruncationTooLow as exc:
            print(f"error: {doc.name}: {exc}", file=sys.stderr)
            return EXIT_TRUNCATION
        except PRECONDITION as exc:
            if single:
                print(f"error: {doc.name}: {exc}", file=sys.stderr)
                return EXIT_PARSE
            print(f"{doc.name}: skipped ({type(exc).__name__})")
            records = [CheckRecord(f"{doc.name}:{args.command}", "", "", "SKIPPED", {"reason": type(exc).__name__})]
        except (PoleResidueNonzero, InconsistentSystem, ToricError) as exc:
            print(f"{doc.name}: {type(exc).__name__}: {exc}")
            records = [CheckRecord(f"{doc.name}:{args.command}", "", "", "MISMATCH", {"error": str(exc)})]
        elapsed = time.perf_counter() - started
        for r in records:
            r.timing = elapsed / max(len(records), 1)
        report.records.extend(records)

    if not report.ok:
        code = EXIT_MISMATCH
    if args.report:
        Path(args.report).write_text(report.to_json(timing=args.timing))
    print(f"status: {report.status}")
    return code


if __name__ == "__main__":
    sys.exit(main())
