"""Command-line front end; every subcommand prints one JSON response.

Exit codes: 0 success, 1 computational error (or a failed check), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .liealg import CartanData, LieAlgError, cartan, parse_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2 too; keep the message on stderr
        raise UsageError(message)


# ------------------------------------------------------------------ parsing


def _type(text: str) -> CartanData:
    try:
        return cartan(text)
    except LieAlgError as exc:
        raise UsageError(str(exc)) from None


def _ints(text: str | None, what: str, length: int | None = None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return parse_weight(text, length)
    except (ValueError, LieAlgError) as exc:
        raise UsageError(f"invalid {what} {text!r}: {exc}") from None


def _flag(text: str | None) -> list[tuple[int, ...]] | None:
    if text is None:
        return None
    return [_ints(part, "flag") for part in text.split(";")]


def _values(text: str, semifield: str) -> list:
    from .semifield import parse

    parts = [p.strip() for p in text.split(",")] if text.strip() else []
    try:
        if semifield == "trop":
            return [int(p) for p in parts]
        if semifield == "pos":
            out = [Fraction(p) for p in parts]
            if any(x <= 0 for x in out):
                raise ValueError("positive semifield values must be > 0")
            return out
        return [parse(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"invalid parameters {text!r}: {exc}") from None


def _semifield(name: str):
    from .semifield import POS, SYM, TROP

    return {"trop": TROP, "pos": POS, "sym": SYM}[name]


def _enc(v: Any) -> Any:
    from .semifield import SFExpr

    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _enc(x) for k, x in v.items()}
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, SFExpr):
        return v.to_text()
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    return v


def _classical_weight(a: CartanData, w: tuple[int, ...] | None, layout) -> tuple[int, ...] | None:
    # coordinates listed in the order of the classical labels
    if w is None:
        return None
    labels = sorted(layout.index_map)
    if len(w) != len(labels):
        raise UsageError(f"expected {len(labels)} coordinates, got {len(w)}")
    out = [0] * a.rank
    for lab, x in zip(labels, w):
        out[layout.index_map[lab] - 1] = x
    return tuple(out)


# ----------------------------------------------------------------- commands
# each handler returns (query, result, enumerated_points, ok)


def cmd_mult(args) -> tuple:
    from .counting import MultiplicityQuery, classical_layout, multiplicity

    a = _type(args.type)
    extra: dict = {}
    lam, nu, mu = (_ints(getattr(args, k), k) for k in ("lam", "nu", "mu"))
    if args.method == "classical":
        layout = classical_layout(a.family, a.rank)
        if args.indexing == "classical":
            lam, nu, mu = (_classical_weight(a, w, layout) for w in (lam, nu, mu))
        extra = {"index_map": {str(k): v for k, v in sorted(layout.index_map.items())},
                 "variables": layout.names, "word": list(layout.word)}
    elif args.indexing == "classical":
        raise UsageError("--indexing classical only applies to --method classical")
    for w, what in ((lam, "lambda"), (nu, "nu"), (mu, "mu")):
        if w is None:
            raise UsageError(f"--{what} is required")
        if len(w) != a.rank:
            raise UsageError(f"{what} needs {a.rank} coordinates")
    q = MultiplicityQuery(a, args.method, lam, nu, mu, _ints(args.word, "word"))
    out = multiplicity(q)
    result = {"count": out["count"], **extra}
    query = q.to_dict()
    query["lambda"] = query.pop("lam")
    return query, result, out["diagnostics"]["enumerated_points"], True


def cmd_branch(args) -> tuple:
    from .counting import MultiplicityQuery, multiplicity, reduction_pq
    from .ineq import count_lattice

    meth = args.method
    nu = _ints(args.nu, "nu")
    beta = _ints(args.beta, "beta")
    if nu is None or beta is None:
        raise UsageError("--nu and --beta are required")
    if meth in ("pq-lusztig", "pq-string"):
        if args.p is None or args.q is None:
            raise UsageError(f"{meth} needs --p and --q")
        sys_ = reduction_pq(args.p, args.q, nu, beta, meth[3:])
        stats: dict = {}
        n = count_lattice(sys_, stats)
        query = {"method": meth, "p": args.p, "q": args.q, "nu": list(nu), "beta": list(beta),
                 "type": f"A{args.p + args.q - 1}"}
        return query, {"count": n}, stats.get("leaves", 0), True
    a = _type(args.type)
    sub = _ints(args.subset, "subset")
    if sub is None:
        raise UsageError("--subset is required")
    method = "branching-oracle" if meth == "oracle" else meth
    q = MultiplicityQuery(a, method, nu=nu, word=_ints(args.word, "word"), subset=sub, beta=beta)
    out = multiplicity(q)
    query = q.to_dict()
    query["method"] = meth
    return query, {"count": out["count"]}, out["diagnostics"]["enumerated_points"], True


def cmd_cone(args) -> tuple:
    from .param import string_cone

    a = _type(args.type)
    word = _ints(args.word, "word")
    flag = _flag(args.flag)
    sys_ = string_cone(a, word, args.mode, flag)
    query = {"type": a.name, "word": list(word), "mode": args.mode}
    if flag is not None:
        query["flag"] = [list(f) for f in flag]
    return query, sys_.to_dict(), None, True


def cmd_transition(args) -> tuple:
    from .param import transition

    src = _ints(args.source, "word")
    dst = _ints(args.target, "word")
    a = _type(args.type) if args.type else cartan("A", max(src + dst))
    K = _semifield(args.semifield)
    t = _values(args.t, args.semifield)
    dualize = None if args.dualize is None else args.dualize == "yes"
    out = transition(a, args.side, src, dst, t, K, dualize)
    query = {"type": a.name, "side": args.side, "semifield": args.semifield,
             "from": list(src), "to": list(dst), "t": _enc(t)}
    return query, _enc(out), None, True


def cmd_trails(args) -> tuple:
    from .repmod import build_module
    from .trails import enumerate_trails

    a = _type(args.type)
    mod_alg = a.langlands_dual() if args.dual else a
    g = _ints(args.source, "weight", a.rank)
    d = _ints(args.target, "weight", a.rank)
    word = _ints(args.word, "word")
    trails = enumerate_trails(build_module(mod_alg, args.module), g, d, word)
    query = {"type": a.name, "module": args.module, "dual": bool(args.dual), "from": list(g),
             "to": list(d), "word": list(word)}
    result = [{"weights": [list(w) for w in tr.weights], "c": list(tr.c), "d": list(tr.d)}
              for tr in trails]
    return query, result, len(result), True


def cmd_crystal(args) -> tuple:
    from .param import crystal_apply, geom_crystal_apply
    from .semifield import POS

    a = _type(args.type)
    word = _ints(args.word, "word")
    query = {"type": a.name, "word": list(word), "i0": args.i0}
    if args.geometric:
        if args.c is None:
            raise UsageError("--geometric needs --c")
        t = _values(args.t, "pos")
        c = _values(args.c, "pos")[0]
        out = geom_crystal_apply(a, word, t, args.i0, c, POS)
        query.update(geometric=True, t=_enc(t), c=_enc(c))
    else:
        t = _ints(args.t, "parameters")
        out = crystal_apply(a, word, t, args.i0, args.n)
        query.update(geometric=False, t=list(t), n=args.n)
    return query, _enc(out), None, True


def cmd_plucker(args) -> tuple:
    from .counting import plucker_coordinates

    a = _type(args.type)
    word = _ints(args.word, "word")
    t = _ints(args.t, "parameters")
    out = plucker_coordinates(a, word, t, args.side)
    query = {"type": a.name, "word": list(word), "t": list(t), "side": args.side}
    return query, _enc(out.to_dict()), None, True


def cmd_verify(args) -> tuple:
    from .minors import IDENTITY_IDS, verify_identity

    a = _type(args.type)
    ids = IDENTITY_IDS if args.id == "all" else (args.id,)
    reports = []
    for ident in ids:
        rep = verify_identity(ident, a, args.seed, args.trials)
        d = rep.to_dict()
        d["passed"] = not rep.failures
        d["applicable"] = rep.checks > 0
        reports.append(d)
    ok = all(r["passed"] for r in reports) and any(r["applicable"] for r in reports)
    query = {"type": a.name, "id": args.id, "seed": args.seed, "trials": args.trials}
    return query, {"passed": ok, "reports": reports}, None, ok


# ------------------------------------------------------------------- driver


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--timing", action="store_true", help="report wall-clock time in diagnostics")


def build_parser() -> argparse.ArgumentParser:
    from .counting import METHODS
    from .minors import IDENTITY_IDS

    top = _Parser(prog="itrails", description="Trail-based multiplicities and parametrizations.")
    top.add_argument("--version", action="version", version=f"itrails {__version__}")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("mult", help="tensor product multiplicity c_{lambda,nu}^mu")
    p.add_argument("--type", required=True)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--nu")
    p.add_argument("--mu")
    p.add_argument("--method", choices=METHODS, default="string-trails")
    p.add_argument("--word", help="reduced word of w_o (default: lexicographically first)")
    p.add_argument("--indexing", choices=("node", "classical"), default="node",
                   help="order of weight coordinates for --method classical")
    _common(p)
    p.set_defaults(handler=cmd_mult)

    p = sub.add_parser("branch", help="multiplicity of a Levi module inside V_nu")
    p.add_argument("--type")
    p.add_argument("--subset")
    p.add_argument("--nu")
    p.add_argument("--beta")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--method", default="reduction-string",
                   choices=("reduction-lusztig", "reduction-string", "oracle", "pq-lusztig", "pq-string"))
    p.add_argument("--word")
    _common(p)
    p.set_defaults(handler=cmd_branch)

    p = sub.add_parser("cone", help="string cone inequalities")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--mode", default="general", choices=("general", "split", "fully_commutative", "typeA"))
    p.add_argument("--flag", help="nested subsets, e.g. '1;1,2;1,2,3'")
    _common(p)
    p.set_defaults(handler=cmd_cone)

    p = sub.add_parser("transition", help="transition map between reduced words")
    p.add_argument("--type", help="default: type A of rank equal to the largest letter")
    p.add_argument("--side", required=True, choices=("lusztig", "string"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tropical", dest="semifield", action="store_const", const="trop")
    g.add_argument("--semifield", choices=("trop", "pos", "sym"))
    p.add_argument("--dualize", choices=("yes", "no"), help="use the dual Cartan matrix")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(semifield="trop")
    _common(p)
    p.set_defaults(handler=cmd_transition)

    p = sub.add_parser("trails", help="enumerate trails in a fundamental module")
    p.add_argument("--type", required=True)
    p.add_argument("--module", type=int, required=True, help="index i of V_{omega_i}")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--dual", action="store_true", help="use the Langlands dual algebra")
    _common(p)
    p.set_defaults(handler=cmd_trails)

    p = sub.add_parser("crystal", help="crystal operator on string parameters")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--i0", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--geometric", action="store_true", help="positive rational geometric lifting")
    p.add_argument("--c", help="scalar for --geometric")
    _common(p)
    p.set_defaults(handler=cmd_crystal)

    p = sub.add_parser("plucker", help="tropical Pluecker coordinates of parameters")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--side", choices=("lusztig", "string"), default="lusztig")
    _common(p)
    p.set_defaults(handler=cmd_plucker)

    p = sub.add_parser("verify", help="exact identity checks at random positive points")
    p.add_argument("--type", required=True)
    p.add_argument("--id", default="all", choices=("all",) + IDENTITY_IDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    _common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("accept", help="run the acceptance criteria")
    p.add_argument("--json", action="store_true", help="one JSON record per criterion")
    p.add_argument("--only", help="comma-separated criterion numbers")
    _common(p)
    p.set_defaults(handler=None)

    p = sub.add_parser("request", help="run a JSON request {command, args} from a file or '-'")
    p.add_argument("path")
    p.set_defaults(handler=None)
    return top


def _request_argv(path: str) -> list[str]:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read request: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON request: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("command"), str):
        raise UsageError("request must be an object with a string 'command'")
    if doc["command"] == "request":
        raise UsageError("requests cannot nest")
    args = doc.get("args", {})
    if not isinstance(args, dict):
        raise UsageError("'args' must be an object")
    argv = [doc["command"]]
    for key in sorted(args):
        v = args[key]
        opt = "--" + key.replace("_", "-")
        if v is True:
            argv.append(opt)
        elif v is False or v is None:
            continue
        elif isinstance(v, list):
            if v and all(isinstance(x, list) for x in v):
                argv += [opt, ";".join(",".join(str(y) for y in x) for x in v)]
            else:
                argv += [opt, ",".join(str(x) for x in v)]
        else:
            argv += [opt, str(v)]
    return argv


def _dump(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True)


def _accept(args, out: Callable[[str], None]) -> int:
    from .acceptance import CRITERIA, run_all

    only = None
    if args.only:
        only = _ints(args.only, "criterion list")
        known = {c[0] for c in CRITERIA}
        bad = [n for n in only if n not in known]
        if bad:
            raise UsageError(f"unknown criteria {bad}")
    results = run_all(only=only)
    for r in results:
        if args.json:
            d = r.to_dict()
            d["version"] = __version__
            if args.timing:
                d["seconds"] = round(r.seconds, 3)
            out(_dump(d))
        else:
            out(r.line())
    if not args.json:
        passed = sum(r.passed for r in results)
        out(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _glue_negatives(argv: list[str]) -> list[str]:
    # "--to -1,1" would be read as an option; bind such values with "="
    out: list[str] = []
    for tok in argv:
        if out and re.match(r"^-\d", tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None, out: Callable[[str], None] = print,
        err: Callable[[str], None] | None = None) -> int:
    """Execute one command; returns the exit code."""
    err = err or (lambda s: print(s, file=sys.stderr))
    argv = _glue_negatives(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        if argv and argv[0] == "request":
            ns = parser.parse_args(argv)
            argv = _glue_negatives(_request_argv(ns.path))
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.command == "accept":
            return _accept(args, out)
        t0 = time.perf_counter()
        query, result, points, ok = args.handler(args)
        elapsed = round((time.perf_counter() - t0) * 1000, 3)
    except UsageError as exc:
        err(f"usage error: {exc}")
        return EXIT_USAGE
    except (ValueError, ArithmeticError, RecursionError) as exc:
        err(f"error: {exc}")
        return EXIT_FAIL
    query["command"] = args.command
    doc = {
        "query": query,
        "result": result,
        "diagnostics": {"timing_ms": elapsed if args.timing else None, "enumerated_points": points},
        "version": __version__,
    }
    out(_dump(doc))
    return EXIT_OK if ok else EXIT_FAIL


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
