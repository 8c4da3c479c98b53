"""Command line interface.

Exit codes: 0 success (or every check passed), 1 domain failure, 2 usage or
I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import library
from .colorings import coloring_report, verify_theorems
from .diagram import DiagramError, parse_diagram, validate_diagram
from .linalg import parse_group
from .shading import checkerboard_shade, goeritz_matrix, goeritz_report


class UsageError(Exception):
    pass


def _load_source(ref):
    """Read a diagram file, falling back to a built-in example name."""
    path = Path(ref)
    if path.is_file():
        try:
            return path.read_text(encoding="utf-8"), None
        except OSError as exc:
            raise UsageError(f"cannot read {ref}: {exc}") from exc
    if ref in library.LIBRARY:
        return library.get(ref).source, library.get(ref)
    raise UsageError(f"no such file or example: {ref}")


def _load_valid(ref):
    text, entry = _load_source(ref)
    d = parse_diagram(text)
    report = validate_diagram(d)
    if not report.ok:
        raise DiagramError(report.errors[0].code, report.errors[0].message)
    return d, entry


def _shading(d, text):
    if text is None:
        return checkerboard_shade(d)
    try:
        face, value = text.split(":")
        face = d.unbounded_face if face in ("u", "unbounded") else int(face)
        value = int(value)
    except ValueError:
        raise UsageError(f"bad --shading {text!r}; expected FACE:VALUE") from None
    if value not in (0, 1) or not 0 <= face < len(d.faces):
        raise UsageError(f"bad --shading {text!r}")
    return checkerboard_shade(d, face, value)


def _mod_range(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError("need 2 <= a <= b")
    return list(range(lo, hi + 1))


def _emit(obj, stream):
    json.dump(obj, stream, indent=2)
    stream.write("\n")


def cmd_validate(args, out):
    text, _ = _load_source(args.path)
    try:
        d = parse_diagram(text)
        report = validate_diagram(d).to_dict()
    except DiagramError as exc:
        report = {
            "ok": False,
            "errors": [
                {
                    "code": exc.code,
                    "message": str(exc),
                    "location": f"line {exc.line}" if exc.line else "",
                }
            ],
            "pieces": [],
        }
    if args.text:
        out.write("ok\n" if report["ok"] else "")
        for e in report["errors"]:
            out.write(f"{e['code']}: {e['message']} {e['location']}\n")
    else:
        _emit(report, out)
    return 0 if report["ok"] else 1


def cmd_goeritz(args, out):
    d, _ = _load_valid(args.path)
    s = _shading(d, args.shading)
    report = goeritz_report(d, s, flipped=args.eta_flipped)
    if args.text:
        out.write(f"faces {report['face_order']}  beta {report['beta']}\n")
        for row in report["matrix"]:
            out.write(" ".join(f"{x:4d}" for x in row) + "\n")
    else:
        _emit(report, out)
    return 0


def cmd_invariants(args, out):
    d, _ = _load_valid(args.path)
    s = _shading(d, args.shading)
    try:
        A = parse_group(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = coloring_report(
        d, s, A, args.mod or (), enumerate_too=not args.no_enumerate,
        flipped=args.eta_flipped,
    )
    data = report.to_dict()
    data["group"] = str(A)
    if args.text:
        out.write(f"G(D,s) = {data['goeritz']['matrix']}\n")
        out.write(f"SNF diag = {data['snf_diag']}  beta = {data['beta']}\n")
        out.write(f"ker_A G = {report.kernel}\n")
        out.write(f"Fox group = {report.fox_group}\n")
        out.write(f"Dehn group = {report.dehn_group}\n")
        for m, c in data["counts"].items():
            out.write(f"m={m}: {c}\n")
        for note in data["notes"]:
            out.write(f"note: {note}\n")
    else:
        _emit(data, out)
    return 0


def golden_results(name, entry, flipped):
    """Compare a library example's default-shading matrix with its expected value."""
    if entry is None or entry.goeritz is None:
        return []
    d = entry.diagram()
    actual = goeritz_matrix(d, checkerboard_shade(d), flipped).tolist()
    expected = [list(r) for r in entry.goeritz]
    return [
        {
            "check": "golden_goeritz",
            "diagram": name,
            "m": None,
            "shading": "s",
            "expected": expected,
            "actual": actual,
            "ok": expected == actual,
        }
    ]


def cmd_verify(args, out):
    if args.all_examples:
        targets = [(n, library.get(n).source, library.get(n)) for n in library.names()]
    elif args.path:
        text, entry = _load_source(args.path)
        targets = [(args.path, text, entry)]
    else:
        raise UsageError("verify needs a path or --all-examples")
    rows = []
    from . import shading

    saved = shading.ETA_RULE_FLIPPED
    shading.ETA_RULE_FLIPPED = args.eta_flipped
    try:
        for name, text, entry in targets:
            d = parse_diagram(text)
            report = validate_diagram(d)
            if not report.ok:
                rows.append(
                    {"check": "valid", "diagram": name, "m": None, "shading": "-",
                     "expected": True, "actual": False, "ok": False}
                )
                continue
            rows.extend(golden_results(name, entry, args.eta_flipped))
            rows.extend(r.to_dict() for r in verify_theorems(d, args.mod_range, name))
    finally:
        shading.ETA_RULE_FLIPPED = saved
    rows.sort(key=lambda r: (r["diagram"], r["check"], r["m"] or 0, r["shading"]))
    failed = sum(1 for r in rows if not r["ok"])
    if args.text:
        for r in rows:
            status = "PASS" if r["ok"] else "FAIL"
            line = f"{status}  {r['diagram']:<20} {r['check']:<32} m={r['m']!s:<4} {r['shading']}"
            if not r["ok"]:
                line += f"  expected={r['expected']} actual={r['actual']}"
            out.write(line + "\n")
        out.write(f"{len(rows) - failed}/{len(rows)} checks passed\n")
    else:
        _emit({"ok": failed == 0, "failed": failed, "total": len(rows), "results": rows}, out)
    return 0 if failed == 0 else 1


def cmd_examples(args, out):
    if args.emit:
        try:
            out.write(library.get(args.emit).source)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return 0
    for n in library.names():
        out.write(f"{n:<20} {library.get(n).description}\n")
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="goeritz", description="Goeritz matrices and link colorings."
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, path=True):
        if path:
            sp.add_argument("path", help="diagram file or built-in example name")
        sp.add_argument("--text", action="store_true", help="human-readable output")

    sp = sub.add_parser("validate", help="parse and validate a diagram")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    for name, func in (("goeritz", cmd_goeritz), ("invariants", cmd_invariants)):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--shading", help="FACE:VALUE, FACE an id or 'u' (default u:0)")
        sp.add_argument("--eta-flipped", action="store_true", help="negate the Goeritz index rule")
        sp.set_defaults(func=func)
        if name == "invariants":
            sp.add_argument("--group", default="Z", help="coefficients, e.g. 'Z^2 + Z/4'")
            sp.add_argument("--mod", type=int, nargs="+", help="moduli for counts")
            sp.add_argument("--no-enumerate", action="store_true")

    sp = sub.add_parser("verify", help="cross-check theorems by enumeration")
    common(sp, path=False)
    sp.add_argument("path", nargs="?")
    sp.add_argument("--all-examples", action="store_true")
    sp.add_argument("--mod-range", type=_mod_range, default=_mod_range("2..5"))
    sp.add_argument("--eta-flipped", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("examples", help="list or print built-in diagrams")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="NAME")
    sp.set_defaults(func=cmd_examples)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DiagramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
