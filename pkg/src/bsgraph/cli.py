"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import perm_core
from .bs_graph import to_dot, unique_return_path_check, validate_gray_code
from .ham_builder import build_with_plan, compare_sjt, factor_to_dot
from .perm_core import Permutation, identity, sjt_cycle, swap
from .prisms import ham_path_in_prism, prism_hamilton_connected, prism_of, validate_prism_path, validate_table1
from .small_cycles import census, certify, family_breakdown, formula_c4_total, formula_c6_total

SCHEMA = "bsgraph.report/1"

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit_json(obj: dict) -> None:
    print(json.dumps({"schema": SCHEMA} | obj, indent=2))


def _parse_scope(text: str | None, n: int) -> tuple[str, int]:
    if text is None:
        return ("full", 0) if n <= 6 else ("sampled", 1)
    if text == "full":
        return "full", 0
    if text.startswith("sample:"):
        try:
            count = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad oracle scope {text!r}") from None
        if count < 1:
            raise UsageError("sample count must be >= 1")
        return "sampled", count
    raise UsageError(f"bad oracle scope {text!r}; use full or sample:<count>")


def _check_n(n: int, minimum: int) -> None:
    if n < minimum or n > perm_core.get_cap():
        raise UsageError(f"--n must be in [{minimum}, {perm_core.get_cap()}], got {n}")


def cmd_census(args) -> int:
    _check_n(args.n, 2)
    scope, count = _parse_scope(args.oracle_scope, args.n)
    cen = census(args.n)
    out = cen.to_dict()
    out["formula_totals"] = {
        "c4": formula_c4_total(args.n) if args.n >= 4 else 0,
        "c6": formula_c6_total(args.n) if args.n >= 3 else 0,
    }
    code = EXIT_OK
    out["certified"] = False
    out["oracle_scope"] = None
    if args.certify:
        rep = certify(args.n, scope=scope, sample=count, seed=args.seed, workers=args.workers)
        out["certified"] = rep.certified
        out["oracle_scope"] = scope
        out["vertices_checked"] = rep.vertices_checked
        if scope == "sampled":
            out["seed"] = args.seed
        else:
            out["oracle_totals"] = rep.oracle_totals
        out["discrepancies"] = rep.discrepancies
        if not rep.certified:
            code = EXIT_FAIL
    if args.figure:
        from .plotting import census_figure

        oracle = None
        if args.certify and args.n >= 3:
            from .bs_graph import enumerate_cycles_through

            p = identity(args.n)
            cycles = enumerate_cycles_through(p, 6)
            if args.n >= 4:
                cycles |= enumerate_cycles_through(p, 4)
            oracle = family_breakdown(cycles)
        out["figure"] = str(census_figure(out, args.figure, oracle))
    _emit_json(out)
    return code


def _emit_form(form, start: Permutation, emit: str) -> None:
    if emit == "indices":
        sys.stdout.write("".join(f"{i}\n" for i in form))
    elif emit == "perms":
        img = start.image
        lines = []
        sep = "" if start.n <= 9 else ","
        for i in form:
            lines.append(sep.join(map(str, img)))
            img = swap(img, i)
        sys.stdout.write("\n".join(lines) + "\n")


def cmd_ham_build(args) -> int:
    if args.n < 5:
        raise UsageError(f"the prism construction needs n >= 5; try `ham sjt --n {args.n}`")
    _check_n(args.n, 5)
    try:
        res = build_with_plan(args.n, base_mode=args.base)
    except (RuntimeError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if not res.report.ok:
        print(f"internal error: constructed cycle failed validation {res.report.to_dict()}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.emit == "plan":
        _emit_json({"plan": res.plan.to_dict(), "base": args.base, "length": len(res.form)})
    else:
        _emit_form(res.form, res.start, args.emit)
    return EXIT_OK


def cmd_ham_sjt(args) -> int:
    _check_n(args.n, 2)
    form = sjt_cycle(args.n)
    if not validate_gray_code(args.n, form).ok:
        return EXIT_INTERNAL
    _emit_form(form, identity(args.n), args.emit)
    return EXIT_OK


def _read_indices(path: str) -> list[int]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(int(line.strip()))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: not an integer: {line!r}") from None
    return out


def cmd_ham_verify(args) -> int:
    _check_n(args.n, 2)
    idx = _read_indices(args.file)
    rep = validate_gray_code(args.n, idx, closed=not args.open)
    _emit_json({"n": args.n, "closed": not args.open, "steps": len(idx)} | rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_ham_compare(args) -> int:
    _check_n(args.n, 5)
    rep = compare_sjt(args.n, base_mode=args.base)
    out = {
        "n": rep["n"],
        "lift_valid": rep["lift_valid"],
        "sjt_valid": rep["sjt_valid"],
        "distinct": rep["distinct"],
        "lift_histogram": {str(k): v for k, v in rep["lift_histogram"].items()},
        "sjt_histogram": {str(k): v for k, v in rep["sjt_histogram"].items()},
    }
    if args.figure:
        from .plotting import histogram_figure

        out["figure"] = str(
            histogram_figure({"prism lift": rep["lift_histogram"], "SJT": rep["sjt_histogram"]}, args.n, args.figure)
        )
    _emit_json(out)
    return EXIT_OK if rep["lift_valid"] and rep["sjt_valid"] else EXIT_FAIL


def cmd_prism_path(args) -> int:
    try:
        pi = Permutation.parse(args.source)
        tau = Permutation.parse(args.target)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if pi.n != tau.n or pi.n < 5:
        raise UsageError("endpoints must be permutations of the same size n >= 5")
    prism = prism_of(pi)
    try:
        path = ham_path_in_prism(prism, pi, tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = validate_prism_path(path, pi, tau)
    if not rep.ok:
        print(f"internal error: prism path rejected {rep.to_dict()}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.emit == "indices":
        sys.stdout.write("".join(f"{i}\n" for i in path.indices()))
    else:
        sys.stdout.write("".join(f"{p}\n" for p in path.vertices))
    return EXIT_OK


def cmd_table1(args) -> int:
    if args.dump:
        sys.stdout.write(resources.files("bsgraph").joinpath("data/table1.json").read_text())
        return EXIT_OK
    results = validate_table1(args.i, args.k, args.i_k_n)
    passed = 0
    for target, form, rep in results:
        mark = "pass" if rep.ok else f"FAIL {rep.first_violation}"
        passed += rep.ok
        tgt = " ".join(f"b{g}" for g in target)
        print(f"pi*{tgt:<12} {' '.join(map(str, form))}  {mark}")
    print(f"{passed}/{len(results)} pass")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def cmd_props(args) -> int:
    ok = True
    print("m-prism Hamilton-connected (m = 3..7):")
    for m in range(3, 8):
        got = prism_hamilton_connected(m)
        expect = m % 2 == 1
        ok &= got == expect
        print(f"  m={m}: {'T' if got else 'F'}  expected {'T' if expect else 'F'}")
    print("unique return path (rows n, columns d; cell = all j pass):")
    for n in range(3, 7):
        cells = []
        for d in range(1, 5):
            if d > n - 2:
                cells.append(" -")
                continue
            good = all(unique_return_path_check(n, j, d) for j in range(1, n - d + 1))
            ok &= good
            cells.append(" T" if good else " F")
        print(f"  n={n}:" + "".join(cells))
    print("all pass" if ok else "FAILURES")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export_dot(args) -> int:
    if args.what == "bs":
        if args.n > 4 or args.n < 2:
            raise UsageError(f"BS_n DOT export needs 2 <= n <= 4, got {args.n}")
        sys.stdout.write(to_dot(args.n))
    else:
        if args.n > 9 or args.n < 5:
            raise UsageError(f"factor-graph DOT export needs 5 <= n <= 9, got {args.n}")
        sys.stdout.write(factor_to_dot(args.n))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bsgraph", description=__doc__.splitlines()[0])
    parser.add_argument("--n-cap", type=int, default=perm_core.DEFAULT_CAP, help="largest admissible n")
    sub = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    cyc = sub.add_parser("cycles").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = cyc.add_parser("census", help="4-/6-cycle counts, optionally certified by brute force")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--oracle-scope", default=None, help="full or sample:<count>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--figure", help="write a per-family bar chart to this file")
    p.set_defaults(func=cmd_census)

    ham = sub.add_parser("ham").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = ham.add_parser("build", help="prism-lifted Hamiltonian cycle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", choices=("sjt", "recursive"), default="sjt")
    p.add_argument("--emit", choices=("indices", "perms", "plan"), default="indices")
    p.set_defaults(func=cmd_ham_build)
    p = ham.add_parser("sjt", help="Steinhaus-Johnson-Trotter cycle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=("indices", "perms"), default="indices")
    p.set_defaults(func=cmd_ham_sjt)
    p = ham.add_parser("verify", help="check an index file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--file", required=True)
    p.add_argument("--open", action="store_true", help="expect a Hamiltonian path, not a cycle")
    p.set_defaults(func=cmd_ham_verify)
    p = ham.add_parser("compare", help="prism lift against SJT")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", choices=("sjt", "recursive"), default="sjt")
    p.add_argument("--figure", help="write a generator-usage chart to this file")
    p.set_defaults(func=cmd_ham_compare)

    pr = sub.add_parser("prism").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = pr.add_parser("path", help="Hamiltonian path of a generalised prism")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--emit", choices=("perms", "indices"), default="perms")
    p.set_defaults(func=cmd_prism_path)

    fx = sub.add_parser("fixtures").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = fx.add_parser("table1", help="validate the tabulated 6-prism paths")
    p.add_argument("--i", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", dest="i_k_n", type=int, default=5)
    p.add_argument("--dump", action="store_true", help="print the JSON fixture instead")
    p.set_defaults(func=cmd_table1)

    pp = sub.add_parser("props").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = pp.add_parser("check", help="prism connectivity and unique-return-path grid")
    p.set_defaults(func=cmd_props)

    ex = sub.add_parser("export").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = ex.add_parser("dot")
    p.add_argument("--what", choices=("bs", "factor"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    old_cap = perm_core.get_cap()
    try:
        perm_core.set_cap(args.n_cap)
        return args.func(args)
    except UsageError as exc:
        print(f"bsgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"bsgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        perm_core.set_cap(old_cap)


if __name__ == "__main__":
    sys.exit(main())
