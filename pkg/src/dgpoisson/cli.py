"""Command-line front end.

Exit codes:
    0  verified / passed
    1  axiom or theorem failure (witnesses printed)
    2  parse, structural or size-guard error
    3  disagreement between the rewriting engine and the oracle
    4  window coverage below the --coverage threshold under --strict
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import presentation as pres
from .construct import (DGVectorSpaceData, DeformationData, PreconditionError, TruncationOverflow,
                        deformation_bracket, endomorphism_dgp, exterior_gerstenhaber,
                        gerstenhaber_differential, opposite, semidirect_lie, symmetric_dgp, tensor)
from .core import DegreeMismatchError, StructureError
from .structures import (DGLieData, DGPoissonData, DGPoissonModuleData, VerificationReport,
                         verify_dg_algebra,
                         verify_dg_lie, verify_dg_poisson, verify_dg_poisson_module)
from .theorems import (check_enveloping_ue_iso, check_op_ue_iso, check_sym_lie_ue,
                       check_tensor_ue_iso, compare_with_oracle)
from .ue.modules import module_to_ue_rep, ue_rep_to_module
from .ue.oracle import ideal_quotient_oracle
from .ue.rewriting import RewritingError
from .ue.rewriting import TruncationOverflow as RewriteOverflow
from .ue.truncation import SizeGuardError, UETruncation, ue_truncated
from .ue.universal import canonical_triple, induced_map, verify_ptriple, verify_window

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DISAGREE, EXIT_COVERAGE = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, msg, code=EXIT_INPUT):
        super().__init__(msg)
        self.code = code


# ---------------------------------------------------------------------------
# report document: one dict, rendered either as JSON or as text
# ---------------------------------------------------------------------------

def report_doc(command: str, code: int, lines: list[str], **data) -> dict:
    return {"schema": pres.SCHEMA, "kind": "report", "command": command,
            "exit_code": code, "passed": code == EXIT_OK, "summary": lines, **data}


def render(doc: dict) -> str:
    status = "OK" if doc["passed"] else f"FAILED (exit {doc['exit_code']})"
    return "\n".join([f"[{doc['command']}] {status}", *doc["summary"]])


def _head(report) -> str:
    return report.summary().splitlines()[0]


def _witness_lines(report, limit=10) -> list[str]:
    out = []
    for v in report.violations[:limit]:
        d = v.to_dict()
        out.append(f"  {d['axiom']} at ({', '.join(d['witness'])}): {d['discrepancy']}")
    if len(report.violations) > limit:
        out.append(f"  ... {len(report.violations) - limit} more")
    return out


def dims_table(dims: dict) -> list[str]:
    """Rows 'level | degree: count' from {(level, degree): n}."""
    levels = sorted({l for l, _ in dims})
    degs = sorted({d for _, d in dims})
    head = "level " + " ".join(f"{d:>4}" for d in degs) + " | total"
    rows = [head]
    for l in levels:
        cells = [dims.get((l, d), 0) for d in degs]
        rows.append(f"{l:>5} " + " ".join(f"{c:>4}" for c in cells) + f" | {sum(cells):>5}")
    return rows


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def _load(path, *kinds):
    obj = pres.read(path)
    if kinds and not isinstance(obj, kinds):
        names = ", ".join(k.__name__ for k in kinds)
        raise CliError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _poisson(path) -> DGPoissonData:
    A = _load(path, DGPoissonData)
    rep = verify_dg_poisson(A, noncommutative=not A.commutative)
    if not rep.passed:
        raise CliError(f"{path}: input fails verification\n" + "\n".join(_witness_lines(rep)),
                       EXIT_FAIL)
    return A


def _lie(path) -> DGLieData:
    obj = _load(path, DGLieData, DGPoissonData)
    L = obj.lie if isinstance(obj, DGPoissonData) else obj
    rep = verify_dg_lie(L)
    if not rep.passed:
        raise CliError(f"{path}: input fails verification\n" + "\n".join(_witness_lines(rep)),
                       EXIT_FAIL)
    return L


def _module(path, A=None) -> DGPoissonModuleData:
    doc = pres.parse_text(Path(path).read_text(encoding="utf-8"), str(path))
    if doc["kind"] != "dg-poisson-module":
        raise CliError(f"{path}: expected a dg-poisson-module document")
    try:
        return pres.load_module(doc, A)
    except pres.PresentationError as e:
        raise pres.PresentationError(f"{path}: {e}") from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

_KIND_OF = {DGPoissonData: "poisson", DGLieData: "lie", DGPoissonModuleData: "module",
            DGVectorSpaceData: "space", DeformationData: "deformation"}


def _verify_space(V: DGVectorSpaceData) -> VerificationReport:
    rep = VerificationReport()
    for x in V.space:
        rep.add("d squared", (x,), V.differential(V.differential(V.space.basis(x))))
    return rep


def _verify_deformation(D: DeformationData) -> tuple[VerificationReport, list[str]]:
    """The underlying DG algebra, then the bracket read off the first
    non-symmetric coefficient."""
    rep = verify_dg_algebra(D.algebra)
    if not rep.passed:
        return rep, []
    res = deformation_bracket(D)
    if res.order is None:
        return rep, ["every coefficient is graded symmetric: no bracket"]
    rep.extend(res.report)
    return rep, [f"bracket from B_{res.order}"]


def cmd_verify(args) -> dict:
    if args.kind == "module":
        A = _poisson(args.algebra) if args.algebra else None
        obj = _module(args.input, A)
    else:
        obj = _load(args.input)
    kind = args.kind or _KIND_OF.get(type(obj))
    if kind is None:
        raise CliError(f"{args.input}: cannot verify a {type(obj).__name__}; pass --kind")
    notes = []
    if kind in ("space", "deformation") and _KIND_OF.get(type(obj)) != kind:
        raise CliError(f"--kind {kind} needs a {kind} document")
    if kind == "space":
        rep = _verify_space(obj)
    elif kind == "deformation":
        rep, notes = _verify_deformation(obj)
    elif kind == "algebra":
        if not isinstance(obj, DGPoissonData):
            raise CliError("--kind algebra needs a dg-poisson document")
        rep = verify_dg_algebra(obj.algebra)
    elif kind == "lie":
        rep = verify_dg_lie(obj.lie if isinstance(obj, DGPoissonData) else obj)
    elif kind == "poisson":
        if not isinstance(obj, DGPoissonData):
            raise CliError("--kind poisson needs a dg-poisson document")
        rep = verify_dg_poisson(obj, noncommutative=not obj.commutative)
    else:
        if not isinstance(obj, DGPoissonModuleData):
            raise CliError("--kind module needs a dg-poisson-module document")
        rep = verify_dg_poisson_module(obj)
    code = EXIT_OK if rep.passed else EXIT_FAIL
    return report_doc("verify", code, [f"{kind}: {_head(rep)}", *notes, *_witness_lines(rep)],
                      report=rep.to_dict())


def _parse_alpha(G: DGPoissonData, text: str):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"--alpha: {e.msg}") from None
    if not isinstance(raw, dict):
        raise CliError('--alpha must be a JSON object like {"a∧b": "1"}')
    try:
        return G.space.element({k: G.field.parse(str(v)) for k, v in raw.items()})
    except (KeyError, ValueError) as e:
        raise CliError(f"--alpha: {e}") from None


def cmd_construct(args) -> dict:
    op, ins = args.op, args.inputs
    need = {"tensor": 2}.get(op, 1)
    if len(ins) != need:
        raise CliError(f"construct {op} takes {need} input file(s)")
    notes = []
    if op == "opposite":
        out = opposite(_poisson(ins[0]))
    elif op == "tensor":
        out = tensor(_poisson(ins[0]), _poisson(ins[1]))
    elif op == "sym":
        out = symmetric_dgp(_lie(ins[0]), args.trunc, strict=args.strict)
    elif op == "endo":
        out = endomorphism_dgp(_load(ins[0], DGVectorSpaceData))
    elif op == "gerstd":
        G = _poisson(ins[0])
        if args.alpha is None:
            raise CliError("construct gerstd needs --alpha")
        out = gerstenhaber_differential(G, _parse_alpha(G, args.alpha))
    elif op == "extgerst":
        out = exterior_gerstenhaber(_lie(ins[0]))
    elif op == "deform":
        D = _load(ins[0], DeformationData)
        rep = verify_dg_algebra(D.algebra)
        if not rep.passed:
            raise CliError("deformation base algebra fails verification\n"
                           + "\n".join(_witness_lines(rep)), EXIT_FAIL)
        res = deformation_bracket(D)
        if res.order is None:
            raise CliError("all coefficients are graded symmetric: no bracket", EXIT_FAIL)
        out = res.poisson
        notes.append(f"first non-symmetric order m = {res.order}")
    elif op == "semidirect":
        out = semidirect_lie(_lie(ins[0]))
    else:  # argparse restricts choices
        raise CliError(f"unknown construction {op}")

    if isinstance(out, DGLieData):
        rep = verify_dg_lie(out)
    else:
        rep = verify_dg_poisson(out, noncommutative=not out.commutative)
    lines = notes + [f"re-verification: {_head(rep)}", *_witness_lines(rep)]
    if not rep.passed:
        return report_doc("construct", EXIT_FAIL, lines, report=rep.to_dict())
    text = pres.to_json(out)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        lines.append(f"wrote {args.out}")
    else:
        lines.append(text)
    return report_doc("construct", EXIT_OK, lines, construction=op, report=rep.to_dict())


def cmd_ue(args) -> dict:
    A = _poisson(args.input)
    L = args.max_len
    lines, data = [], {}
    code = EXIT_OK
    if args.engine in ("rewrite", "both"):
        U = ue_truncated(A, L)
    else:
        U = None
    if args.engine == "oracle":
        U = ideal_quotient_oracle(A, L, slack=args.slack)
        lines.append(f"oracle stability (slack {args.slack}): {U.stable}")
    if args.engine == "both":
        cmp_ = compare_with_oracle(A, L, max_slack=args.slack, rewrite=U)
        data["comparison"] = cmp_.to_dict()
        if not cmp_.stable:
            lines.append(f"oracle unstable up to slack {cmp_.slack}: comparison inconclusive")
        lines.append(f"engines {'agree' if cmp_.agree else 'DISAGREE'} "
                     f"(oracle slack {cmp_.slack}, {cmp_.report.checked} identities)")
        lines += _witness_lines(cmp_.report)
        if cmp_.stable and not cmp_.agree:
            code = EXIT_DISAGREE
    check = verify_window(U)
    lines.insert(0, f"dim F_{L} = {U.dim} ({U.provenance})")
    lines[1:1] = dims_table(U.dims())
    lines.append(f"d^2 = 0 and relations: {_head(check)}")
    lines += _witness_lines(check)
    if not check.passed and code == EXIT_OK:
        code = EXIT_FAIL
    if args.out:
        pres.write(U, args.out)
        lines.append(f"wrote {args.out}")
    data["window"] = {"L": L, "dim": U.dim, "provenance": U.provenance, "stable": U.stable,
                      "dims": [[l, d, n] for (l, d), n in sorted(U.dims().items())]}
    return report_doc("ue", code, lines, check=check.to_dict(), **data)


def _coverage_code(args, verified: bool, coverage: float) -> int:
    if not verified:
        return EXIT_FAIL
    if args.strict and coverage < args.coverage:
        return EXIT_COVERAGE
    return EXIT_OK


def _cert_lines(cert) -> list[str]:
    lines = cert.summary().splitlines()
    for r in [cert.ptriple, cert.induced, cert.bijectivity, *cert.extra.values()]:
        lines += _witness_lines(r, 5)
    return lines


def _roundtrip(A, Mod, L) -> tuple[bool, list[str], float]:
    R = module_to_ue_rep(A, Mod, L)
    back = ue_rep_to_module(A, R)
    same = {
        "action": back.action == Mod.action,
        "lie_action": back.lie_action == Mod.lie_action,
        "differential": back.differential == Mod.differential,
    }
    lines = [f"representation checks: {_head(R.report)}", *_witness_lines(R.report)]
    lines += [f"  {k} table {'equal' if v else 'DIFFERS'}" for k, v in same.items()]
    ok = R.report.passed and all(same.values())
    return ok, lines, R.report.coverage


def cmd_check(args) -> dict:
    th, ins, L = args.theorem, args.inputs, args.max_len
    need = {"tensor": 2, "module-roundtrip": 2}.get(th, 1)
    if len(ins) != need:
        raise CliError(f"check {th} takes {need} input file(s)")
    if th == "tensor":
        cert = check_tensor_ue_iso(_poisson(ins[0]), _poisson(ins[1]), L)
    elif th == "opposite":
        cert = check_op_ue_iso(_poisson(ins[0]), L)
    elif th == "enveloping":
        cert = check_enveloping_ue_iso(_poisson(ins[0]), L)
    elif th == "symlie":
        cert = check_sym_lie_ue(_lie(ins[0]), args.sym_trunc, L)
    elif th == "module-roundtrip":
        A = _poisson(ins[0])
        Mod = _module(ins[1], A)
        pre = verify_dg_poisson_module(Mod)
        if not pre.passed:
            return report_doc("check", EXIT_FAIL, ["module fails verification",
                                                   *_witness_lines(pre)])
        ok, lines, cov = _roundtrip(A, Mod, L)
        code = _coverage_code(args, ok, cov)
        return report_doc("check", code, [f"module round trip (L={L}): "
                                          f"{'identity' if ok else 'NOT identity'}"] + lines,
                          coverage=cov)
    elif th == "window":
        U = _load(ins[0], UETruncation)
        A = U.algebra
        pre = verify_dg_poisson(A, noncommutative=not A.commutative)
        rep = verify_window(U)
        rep.extend(verify_ptriple(A, canonical_triple(U)))
        phi = induced_map(A, canonical_triple(U), U, raise_on_relation=False)
        rep.extend(phi.report)
        ok = pre.passed and rep.passed
        lines = [f"stored window L={U.L} dim {U.dim} ({U.provenance})",
                 f"algebra: {_head(pre)}", f"window: {_head(rep)}",
                 *_witness_lines(pre), *_witness_lines(rep)]
        return report_doc("check", _coverage_code(args, ok, rep.coverage), lines,
                          coverage=rep.coverage, report=rep.to_dict())
    else:
        raise CliError(f"unknown theorem {th}")
    code = _coverage_code(args, cert.verified, cert.coverage)
    return report_doc("check", code, _cert_lines(cert), certificate=cert.to_dict())


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dgpoisson",
                                 description="DG Poisson algebras and their enveloping algebras")
    ap.add_argument("--json", action="store_true", help="print the machine-readable report")
    ap.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the axioms of a presentation file")
    v.add_argument("input")
    v.add_argument("--kind", choices=["algebra", "lie", "poisson", "module", "space",
                                      "deformation"])
    v.add_argument("--algebra", help="algebra file for a module without an embedded algebra")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="build a new structure from existing ones")
    c.add_argument("op", choices=["opposite", "tensor", "sym", "endo", "gerstd", "extgerst",
                                  "deform", "semidirect"])
    c.add_argument("inputs", nargs="+")
    c.add_argument("--out", "-o")
    c.add_argument("--trunc", type=int, default=2, help="monomial length bound for sym")
    c.add_argument("--strict", action="store_true",
                   help="sym: fail on overflow instead of taking the quotient")
    c.add_argument("--alpha", help='gerstd: JSON object of coefficients, e.g. {"a∧b": "1"}')
    c.set_defaults(func=cmd_construct)

    u = sub.add_parser("ue", help="compute a window of the enveloping algebra")
    u.add_argument("input")
    u.add_argument("--max-len", type=int, default=3)
    u.add_argument("--engine", choices=["rewrite", "oracle", "both"], default="rewrite")
    u.add_argument("--slack", type=int, default=2,
                   help="oracle slack (with --engine both: the largest slack tried)")
    u.add_argument("--out", "-o")
    u.set_defaults(func=cmd_ue)

    k = sub.add_parser("check", help="certify a theorem on a window")
    k.add_argument("theorem", choices=["tensor", "opposite", "enveloping", "symlie",
                                       "module-roundtrip", "window"])
    k.add_argument("inputs", nargs="+")
    k.add_argument("--max-len", type=int, default=2)
    k.add_argument("--sym-trunc", type=int, default=2)
    k.add_argument("--strict", action="store_true")
    k.add_argument("--coverage", type=float, default=0.9,
                   help="minimum coverage under --strict (default 0.9)")
    k.set_defaults(func=cmd_check)
    return ap


def run(argv=None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except CliError as e:
        doc = report_doc(args.command, e.code, [f"error: {e}"])
    except pres.PresentationError as e:
        doc = report_doc(args.command, EXIT_INPUT, [f"parse error: {e}"])
    except SizeGuardError as e:
        doc = report_doc(args.command, EXIT_INPUT, [f"size guard: {e}"])
    except PreconditionError as e:
        wit = getattr(e, "witness", None)
        lines = [f"precondition failed: {e}"]
        if wit is not None and not hasattr(wit, "violations"):
            lines.append(f"  witness: {wit!r}")
        doc = report_doc(args.command, EXIT_FAIL, lines)
    except (TruncationOverflow, RewriteOverflow, RewritingError) as e:
        doc = report_doc(args.command, EXIT_INPUT, [f"window overflow: {e}"])
    except (DegreeMismatchError, StructureError, OSError) as e:
        doc = report_doc(args.command, EXIT_INPUT, [f"error: {e}"])
    text = json.dumps(doc, ensure_ascii=False, indent=1) if args.json else render(doc)
    print(text)
    if args.report:
        Path(args.report).write_text(json.dumps(doc, ensure_ascii=False, indent=1) + "\n",
                                     encoding="utf-8")
    return doc["exit_code"], doc


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
