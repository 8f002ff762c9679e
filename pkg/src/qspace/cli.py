"""Command-line entry point: ``qspace <command> ...``.

Machine-readable output is JSON on stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 usage or I/O error, 2 verification failed or
search capped, 3 internal invariant violated (a proven statement failed).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .bounds import (
    bollobas_sum,
    lemma21_check,
    prop15_lower,
    prop15_uses_symmetry,
    thm18_lhs,
    thm19_cap,
    tuza_sum,
    uniform_caps,
)
from .counting import (
    ExtensionCountParams,
    check_family_disjointness,
    extension_count_bruteforce,
    extension_count_formula,
    family_F,
    family_size_formula,
    witness_from_json,
)
from .errors import InvariantViolation, PreconditionViolated, QSpaceError
from .exactnum import as_exact, format_exact, q_binomial, q_binomial_poly
from .extremal import (
    SearchConfig,
    ladder_label,
    ladder_set_search,
    lift_set_system,
    search_max_set_system,
    search_max_weak_uv,
    witness_report,
)
from .pairsystems import SET_KINDS, SetPairSystem, SubspacePairSystem, verify_kind

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("qspace")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _ratio(x) -> str:
    return format_exact(Fraction(x), True)


def _load_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc


def _load_system(path):
    obj = _load_json(path)
    if isinstance(obj, dict) and "q" in obj:
        return SubspacePairSystem.from_json(obj)
    return SetPairSystem.from_json(obj)


def _load_sets(path) -> SetPairSystem:
    s = _load_system(path)
    if not isinstance(s, SetPairSystem):
        raise UsageError(f"{path} holds a subspace-pair system, a set-pair system is needed")
    return s


def _load_subspaces(path) -> SubspacePairSystem:
    s = _load_system(path)
    if not isinstance(s, SubspacePairSystem):
        raise UsageError(f"{path} holds a set-pair system, a subspace-pair system is needed")
    return s


def _natural(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _positive(text):
    value = _natural(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _seconds(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _rational(text):
    try:
        return as_exact(text)
    except QSpaceError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# -- commands --------------------------------------------------------------------


def cmd_qbinom(args):
    if args.poly:
        if args.q is not None:
            raise UsageError("qbinom --poly takes only n and m")
        print(" ".join(map(str, q_binomial_poly(args.n, args.m).coeffs)) or "0")
        return EXIT_OK
    if args.q is None:
        raise UsageError("qbinom needs q (or --poly)")
    _emit({"value": str(q_binomial(args.n, args.m, args.q))})
    return EXIT_OK


def cmd_verify(args):
    s = _load_system(args.file)
    is_sets = isinstance(s, SetPairSystem)
    if is_sets != (args.kind in SET_KINDS):
        raise UsageError(f"--kind {args.kind} does not apply to a {'set' if is_sets else 'subspace'}-pair system")
    if args.kind == "weak-uv" and (args.u is None or args.v is None):
        raise UsageError("--kind weak-uv needs --u and --v")
    report = verify_kind(s, args.kind, args.u, args.v, collect_all=args.all)
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAILED


def _bound_exit(result) -> int:
    if result.applicable and not result.holds:
        log.error("a proven inequality failed on a system satisfying its hypotheses")
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_bound(args):
    what = args.bound
    if what == "thm19":
        _emit({"value": _ratio(thm19_cap(args.n, args.u, args.v, args.q)), "holds": None})
        return EXIT_OK
    if what == "prop15":
        out = {"value": str(prop15_lower(args.a, args.b)), "holds": None}
        if prop15_uses_symmetry(args.a, args.b):
            out["note"] = "assumes role symmetry m(1,b) = 2b+1"
        _emit(out)
        return EXIT_OK
    if what == "caps":
        c12, c14, c16 = uniform_caps(args.r, args.s)
        _emit({"thm12": _ratio(c12), "thm14": _ratio(c14), "thm16": _ratio(c16)})
        return EXIT_OK
    if what == "lemma21":
        return _lemma21(args)
    if what == "thm18":
        result = thm18_lhs(_load_subspaces(args.file), args.j)
    elif what == "tuza":
        result = tuza_sum(_load_sets(args.file), args.p)
    else:
        result = bollobas_sum(_load_sets(args.file))
    _emit(result.to_json())
    return _bound_exit(result)


def _lemma21(args):
    if args.table:
        print("n\tj\tq\tlhs\trhs\tholds")
        code = EXIT_OK
        for n in range(args.n + 1):
            for j in range(n + 1):
                r = lemma21_check(n, j, args.q)
                print(f"{n}\t{j}\t{args.q}\t{_ratio(r.lhs)}\t{_ratio(r.rhs)}\t{str(r.holds).lower()}")
                code = max(code, _bound_exit(r))
        return code
    if args.j is None:
        raise UsageError("bound lemma21 needs --j (or --table)")
    result = lemma21_check(args.n, args.j, args.q)
    _emit(result.to_json())
    return _bound_exit(result)


def cmd_count(args):
    if args.count == "ext":
        p = ExtensionCountParams(args.n, args.d, args.l1, args.l2, args.q)
        formula = extension_count_formula(p)
        out = {"formula": str(formula)}
        code = EXIT_OK
        if args.brute:
            K, U1 = witness_from_json(_load_json(args.brute), p)
            brute = extension_count_bruteforce(p, K, U1)
            out["bruteforce"] = str(brute)
            out["agree"] = brute == formula
            if brute != formula:
                code = EXIT_INTERNAL
        _emit(out)
        return code
    s = _load_subspaces(args.file)
    if args.count == "family":
        members = list(family_F(s, args.i, args.j))
        U, V = s.pairs[args.i - 1]
        formula = family_size_formula(s.n, U.dim, V.dim, args.j, s.q)
        out = {"i": args.i, "j": args.j, "size": len(members), "formula": str(formula)}
        if args.list:
            out["members"] = [[list(r) for r in M.basis] for M in members]
        _emit(out)
        return EXIT_OK if formula == len(members) else EXIT_INTERNAL
    report = check_family_disjointness(s, args.j)
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_INTERNAL


def cmd_lift(args):
    s = _load_sets(args.file)
    _emit(lift_set_system(s, args.n, args.q).to_json())
    return EXIT_OK


def _search_config(args) -> SearchConfig:
    kwargs = {"threads": args.threads, "time_cap_seconds": args.seconds, "prune_with_thm19": args.thm19_check}
    if args.nodes is not None:
        kwargs["node_cap"] = args.nodes
    return SearchConfig(**kwargs)


def _write_witness(path, result) -> None:
    try:
        with open(path, "w") as fh:
            json.dump(witness_report(result), fh, indent=1, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _result_json(r) -> dict:
    return {
        "kind": r.kind,
        "params": r.params,
        "best_size": r.best_size,
        "exhausted": r.exhausted,
        "nodes_visited": r.nodes_visited,
        "witness": r.witness.to_json() if r.witness is not None else None,
    }


def cmd_search(args):
    cfg = _search_config(args)
    if args.search == "uv":
        r = search_max_weak_uv(args.n, args.q, args.u, args.v, cfg)
        out = _result_json(r)
        out["thm19_cap"] = _ratio(thm19_cap(args.n, args.u, args.v, args.q))
    elif args.ladder:
        r, rungs = ladder_set_search(args.a, args.b, cfg, start=args.ground, max_ground=args.max_ground)
        if args.table:
            print("ground\tbest_size\texhausted\tnodes")
            for rung in rungs:
                print(f"{rung.params['ground']}\t{rung.best_size}\t{str(rung.exhausted).lower()}\t{rung.nodes_visited}")
        out = _result_json(r)
        out["label"] = ladder_label(args.a, args.b, r.best_size)
        out["ladder"] = [{"ground": x.params["ground"], "best_size": x.best_size, "exhausted": x.exhausted} for x in rungs]
        r.exhausted = all(x.exhausted for x in rungs)
        out["exhausted"] = r.exhausted
    else:
        r = search_max_set_system(args.ground, args.a, args.b, cfg)
        out = _result_json(r)
        out["note"] = "maximum for this ground set only"
    if args.witness:
        _write_witness(args.witness, r)
    if not (args.search == "sets" and args.ladder and args.table):
        _emit(out)
    return EXIT_OK if r.exhausted else EXIT_FAILED


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qspace", description="Extremal subspace-pair systems over finite fields.")
    parser.add_argument("--version", action="version", version=f"qspace {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qbinom", help="Gaussian binomial coefficient")
    p.add_argument("--poly", action="store_true", help="print polynomial coefficients, low degree first")
    p.add_argument("n", type=_natural)
    p.add_argument("m", type=_natural)
    p.add_argument("q", type=_natural, nargs="?")
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("verify", help="check the hypotheses of a pair system")
    p.add_argument("--kind", required=True, choices=["bollobas", "tuza", "lovasz", "weak-isp", "weak-uv"])
    p.add_argument("--u", type=_natural)
    p.add_argument("--v", type=_natural)
    p.add_argument("--all", action="store_true", help="report every violation")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="evaluate a bound exactly")
    bsub = p.add_subparsers(dest="bound", required=True, parser_class=_Parser)
    b = bsub.add_parser("thm19")
    for flag in ("--n", "--u", "--v"):
        b.add_argument(flag, type=_natural, required=True)
    b.add_argument("--q", type=_natural, required=True)
    b = bsub.add_parser("thm18")
    b.add_argument("--j", type=_natural, required=True)
    b.add_argument("file")
    b = bsub.add_parser("tuza")
    b.add_argument("--p", type=_rational, required=True, help="rational in (0,1), e.g. 1/2")
    b.add_argument("file")
    b = bsub.add_parser("bollobas")
    b.add_argument("file")
    b = bsub.add_parser("prop15")
    b.add_argument("--a", type=_positive, required=True)
    b.add_argument("--b", type=_positive, required=True)
    b = bsub.add_parser("caps")
    b.add_argument("--r", type=_positive, required=True)
    b.add_argument("--s", type=_positive, required=True)
    b = bsub.add_parser("lemma21")
    b.add_argument("--n", type=_natural, required=True)
    b.add_argument("--j", type=_natural)
    b.add_argument("--q", type=_natural, required=True)
    b.add_argument("--table", action="store_true", help="TSV sweep over all n' <= n and j <= n'")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("count", help="extension counts and F(i,j) families")
    csub = p.add_subparsers(dest="count", required=True, parser_class=_Parser)
    c = csub.add_parser("ext")
    for flag in ("--n", "--d", "--l1", "--l2", "--q"):
        c.add_argument(flag, type=_natural, required=True)
    c.add_argument("--brute", metavar="WITNESS", help='JSON {"K": basis, "U1": basis} for the enumeration check')
    c = csub.add_parser("family")
    c.add_argument("--i", type=_positive, required=True)
    c.add_argument("--j", type=_natural, required=True)
    c.add_argument("--list", action="store_true")
    c.add_argument("file")
    c = csub.add_parser("disjoint")
    c.add_argument("--j", type=_natural, required=True)
    c.add_argument("file")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("lift", help="lift a set-pair system to coordinate subspaces")
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--q", type=_natural, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("search", help="exhaustive extremal search")
    ssub = p.add_subparsers(dest="search", required=True, parser_class=_Parser)
    s_uv = ssub.add_parser("uv")
    for flag in ("--n", "--q", "--u", "--v"):
        s_uv.add_argument(flag, type=_natural, required=True)
    s_sets = ssub.add_parser("sets")
    s_sets.add_argument("--ground", type=_positive, required=True)
    s_sets.add_argument("--a", type=_positive, required=True)
    s_sets.add_argument("--b", type=_positive, required=True)
    s_sets.add_argument("--ladder", action="store_true", help="grow the ground set from --ground until no improvement")
    s_sets.add_argument("--max-ground", type=_positive, default=12)
    s_sets.add_argument("--table", action="store_true", help="with --ladder, print TSV instead of JSON")
    for s in (s_uv, s_sets):
        s.add_argument("--nodes", type=_positive, help="search node cap (default: $QSPACE_NODE_CAP)")
        s.add_argument("--seconds", type=_seconds, help="wall-clock cap")
        s.add_argument("--threads", type=_positive, default=1)
        s.add_argument("--witness", metavar="OUT", help="write witness JSON and verification transcript")
        s.add_argument("--thm19-check", action="store_true", help="assert the size cap during search")
    p.set_defaults(func=cmd_search)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except PreconditionViolated as exc:
        print(f"precondition not met: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except QSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
