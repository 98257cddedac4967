"""Command-line front end.

Exit codes: 0 on success, 2 on an input error, 3 when a verification
assertion fails (the first counterexample is printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import HHError

P_MAX_LIMIT = 16


class VerificationFailed(Exception):
    pass


def _field(text):
    from .exactmath import FieldSpec

    return FieldSpec.parse(text)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def _dims_doc(dims) -> dict:
    return {str(p): d for p, d in enumerate(dims)}


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(_plain(doc), sort_keys=True, indent=2))
    else:
        print(text)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise HHError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise HHError(f"{path} is not valid JSON: {exc.msg}") from exc


def _check_pmax(args):
    for name in ("pmax", "qmax"):
        v = getattr(args, name, None)
        if v is not None and not 0 <= v <= P_MAX_LIMIT:
            raise HHError(f"--{name} must be between 0 and {P_MAX_LIMIT}")


# ---------------------------------------------------------------- commands

def cmd_monogenic(args):
    from .exactmath import parse_poly
    from .monogenic import bracket_table, hh_dims_list, presentation, verify_presentation_in_oracle

    if not args.poly:
        raise HHError("--poly is required")
    F = _field(args.field)
    f = parse_poly(args.poly, F)
    P = presentation(f)
    dims = hh_dims_list(P, args.pmax)
    doc = {"dims": _dims_doc(dims), "presentation": P.as_dict()}
    lines = [
        f"f = {P.f} over {P.field!r}",
        f"d = {P.d}",
        f"q = {P.q}",
        f"u = {P.u}  (mod d)",
        f"w = {P.w}  (mod d)",
        "dims: " + ",".join(str(d) for d in dims),
    ]
    if args.bracket_table:
        tab = bracket_table(P)
        doc["bracket_table"] = tab
        lines.append("bracket table:")
        lines += [f"  {k} = {v}" for k, v in tab.items()]
    failure = None
    if args.verify:
        rep = verify_presentation_in_oracle(f, args.pmax)
        doc["report"] = rep.as_dict()
        lines.append(f"oracle dims: {','.join(map(str, rep.oracle_dims))}")
        lines.append(f"tau^2 = u zeta at cochain level: {rep.ring_relation}")
        lines.append(f"[zeta, tau] = w zeta orientation: {rep.bracket_orientation}")
        lines.append("verification: " + ("PASS" if rep.passed else "FAIL"))
        if not rep.passed:
            failure = _first_failure(rep.as_dict(), ["dims_match", "periodic_match", "ring_relation",
                                                     "zeta_zeta_vanishes", "tau_tau_vanishes"])
            if rep.bracket_orientation is None:
                failure = failure or "bracket_orientation: neither sign is realized"
    _emit(args, doc, "\n".join(lines))
    if failure:
        raise VerificationFailed(failure)


def _first_failure(d: dict, keys) -> str | None:
    for k in keys:
        if d.get(k) is False:
            return f"{k} is false"
    return None


def _quiver_algebra(args):
    from .algebra import make_path_algebra_quotient
    from .combinat import QuiverPresentation

    doc = _load_json(args.file)
    if args.field:
        doc = dict(doc, field=_field_json(args.field))
    try:
        pres = QuiverPresentation.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise HHError(f"malformed quiver file: {exc}") from exc
    return make_path_algebra_quotient(pres), pres


def _field_json(text):
    F = _field(text)
    return "Q" if F.p is None else {"Fp": F.p}


def _report_doc(rep) -> dict:
    d = rep.as_dict()
    extras = d.pop("extras", {})
    d.update(extras)
    return d


def cmd_algebra(args):
    from .algebra import idempotent_ideal, ideal_generated_by
    from .cochain import HochschildComplex
    from .combinat import homological_ideal_report
    from .les import five_term_report, happel_report

    A, pres = _quiver_algebra(args)
    if args.action == "hh":
        dims = HochschildComplex(A).dims(args.pmax)
        _emit(args, {"dims": _dims_doc(dims)}, "HH dims: " + ",".join(map(str, dims)))
        return
    if args.action in ("happel", "homological") and args.vertex is None:
        raise HHError(f"{args.action} needs --vertex")
    if args.action == "homological":
        rep = homological_ideal_report(pres, args.vertex, args.qmax)
        d = rep.as_dict()
        text = "\n".join(f"{k}: {v}" for k, v in d.items())
        _emit(args, {"dims": _dims_doc(rep.tor), "report": d}, text)
        return
    if args.action == "happel":
        rep = happel_report(A, args.vertex, args.pmax, args.qmax)
        doc = {"dims": _dims_doc(rep.extras["hh_A"]), "report": _report_doc(rep)}
        _emit(args, doc, rep.to_text())
        checks = ["side_table_matches", "H_A_B_matches_hh_B", "H0_matches_center_cap_I"]
        if not rep.exact:
            raise VerificationFailed(_inexact(rep))
        fail = _first_failure(rep.extras, checks)
        if fail:
            raise VerificationFailed(fail)
        return
    if args.action == "five-term":
        if args.vertex is not None:
            v = pres.quiver.vertex_index(args.vertex)
            I = idempotent_ideal(A, {A.vertices[v]: 1})
        elif args.ideal:
            I = ideal_generated_by(A, [{_basis_index(A, lab): 1} for lab in args.ideal])
        else:
            raise HHError("five-term needs --vertex or --ideal")
        rep = five_term_report(A, I)
        doc = {"dims": _dims_doc(rep.term_dims), "report": _report_doc(rep)}
        _emit(args, doc, rep.to_text())
        if not all(rep.exact_at[1:4]):
            raise VerificationFailed(_inexact(rep))


def _basis_index(A, label):
    try:
        return A.labels.index(label)
    except ValueError:
        raise HHError(f"unknown basis element {label!r}; known: {', '.join(A.labels)}") from None


def _inexact(rep) -> str:
    for name, e in zip(rep.term_names, rep.exact_at):
        if e is False:
            return f"not exact at {name}"
    return "a composite of consecutive maps is nonzero"


def cmd_poset(args):
    from .algebra import make_incidence
    from .cochain import HochschildComplex
    from .combinat import Poset, order_complex, simplicial_cohomology
    from .les import pair_report

    doc = _load_json(args.file)
    if args.field:
        doc = dict(doc, field=_field_json(args.field))
    try:
        X = Poset.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise HHError(f"malformed poset file: {exc}") from exc
    if args.action == "hh":
        dims = HochschildComplex(make_incidence(X)).dims(args.pmax)
        _emit(args, {"dims": _dims_doc(dims)}, "HH dims: " + ",".join(map(str, dims)))
        return
    if args.ideal is None:
        dims = simplicial_cohomology(order_complex(X), None, args.pmax, X.field)
        _emit(args, {"dims": _dims_doc(dims)}, "H dims: " + ",".join(map(str, dims)))
        return
    rep = pair_report(X, args.ideal, args.pmax)
    rel = rep.extras["relative"]
    doc = {"dims": _dims_doc(rel), "report": _report_doc(rep)}
    _emit(args, doc, rep.to_text() + "\nrelative dims: " + ",".join(map(str, rel)))
    fail = None
    if not rep.consistency:
        fail = "pair sequence is not exactness-consistent"
    fail = fail or _first_failure(rep.extras, ["hh_X_matches", "hh_Y_matches", "H_kX_IY_matches_relative",
                                               "algebra_sequence_exact"])
    if fail:
        raise VerificationFailed(fail)


def cmd_crown(args):
    from .les import crown_check

    rep = crown_check(args.n, args.m, args.pmax, length=args.length)
    d = rep.as_dict()
    text = "\n".join(f"{k}: {v}" for k, v in d.items())
    _emit(args, {"dims": _dims_doc(rep.dims), "report": d}, text)
    if not rep.passed:
        raise VerificationFailed(_first_failure(d, ["periodic", "h0_equals_h2", "odd_products_vanish"]))


def cmd_verify(args):
    """A quick self-check on small examples with known answers."""
    from .algebra import idempotent_ideal, make_path_algebra_quotient
    from .combinat import Poset, Quiver, QuiverPresentation
    from .exactmath import QQ, parse_poly
    from .les import happel_report, pair_report
    from .monogenic import verify_presentation_in_oracle

    results = []
    for txt in ("X^2", "X^3", "X^3 - X^2"):
        rep = verify_presentation_in_oracle(parse_poly(txt, QQ), 4)
        results.append((f"monogenic {txt}", rep.passed))
    Q = Quiver([1, 2, 3], [("alpha", 1, 2), ("beta", 2, 3), ("gamma", 3, 1)])
    A = make_path_algebra_quotient(QuiverPresentation(Q, [["alpha", "beta"]], QQ))
    rep = happel_report(A, 1, 4)
    results.append(("triangle HH dims", rep.extras["hh_A"] == [2, 1, 0, 0, 0]))
    results.append(("triangle Happel sequence exact", rep.exact))
    X = Poset(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    rep = pair_report(X, ["a", "b"], 2)
    results.append(("circle pair relative dims", rep.extras["relative"] == [0, 2, 0]))
    doc = {"dims": {}, "report": {name: ok for name, ok in results}}
    text = "\n".join(f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results)
    _emit(args, doc, text)
    for name, ok in results:
        if not ok:
            raise VerificationFailed(name)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hhkit", description="Exact Hochschild cohomology computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, pmax=4):
        sp.add_argument("--pmax", type=int, default=pmax)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    m = sub.add_parser("monogenic", help="closed form for k[X]/(f)")
    m.add_argument("--field", default="Q")
    m.add_argument("--poly")
    m.add_argument("--verify", action="store_true", help="compare with the cochain oracle")
    m.add_argument("--bracket-table", action="store_true")
    common(m)
    m.set_defaults(func=cmd_monogenic)

    a = sub.add_parser("algebra", help="quiver algebra from a JSON file")
    a.add_argument("file")
    a.add_argument("action", choices=["hh", "happel", "homological", "five-term"])
    a.add_argument("--vertex")
    a.add_argument("--ideal", nargs="+", help="basis labels generating an ideal")
    a.add_argument("--qmax", type=int, default=4)
    a.add_argument("--field")
    common(a)
    a.set_defaults(func=cmd_algebra)

    s = sub.add_parser("poset", help="incidence algebra of a poset from a JSON file")
    s.add_argument("file")
    s.add_argument("action", choices=["cohomology", "hh"])
    s.add_argument("--ideal", nargs="*", help="elements of an order ideal Y")
    s.add_argument("--field")
    common(s, pmax=3)
    s.set_defaults(func=cmd_poset)

    c = sub.add_parser("crown", help="truncated cycle algebra checks")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--length", type=int, help="truncation length (default nm - 1)")
    common(c, pmax=5)
    c.set_defaults(func=cmd_crown)

    v = sub.add_parser("verify", help="run the built-in self-check")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify, pmax=None)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_pmax(args)
        args.func(args)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except HHError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
