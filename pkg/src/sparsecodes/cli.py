"""Command line front end.

Exit status: 0 on success or a passing certificate, 1 when the answer is
negative (not realizable, certificate fails, dimension unavailable), 2 for
unreadable input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings

from .bodies import ArrangementError, Arrangement, DimensionMismatch
from .code import (
    CodeParseError,
    Graph,
    NeuralCode,
    code_graph,
    code_support,
    graph_full_code,
    intersection_violation,
    parse_code,
)

OK, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class DimensionUnavailable(Exception):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def load_code(path: str) -> NeuralCode:
    text = _read(path)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if text.lstrip().startswith("{"):
                return NeuralCode.from_json(json.loads(text))
            return parse_code(text)
    except CodeParseError as exc:
        raise InputError(str(exc)) from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad code file: {exc}") from exc


def load_arrangement(path: str) -> Arrangement:
    try:
        return Arrangement.loads(_read(path))
    except (ArrangementError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad arrangement: {exc}") from exc


def _emit(obj, path=None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def random_code(n: int, seed: int) -> NeuralCode:
    """Random 2-sparse intersection-complete code, deterministic in (n, seed)."""
    if not 1 <= n <= 16:
        raise ValueError("n must be in 1..16")
    rng = random.Random(seed)
    p = rng.random()
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < p]
    code = graph_full_code(Graph.from_pairs(n, pairs))
    sups = set(code.supports)
    for i in range(1, n + 1):
        degree = sum(1 for s in sups if len(s) == 2 and i in s)
        if degree <= 1 and rng.random() < 0.5:
            sups.discard(frozenset((i,)))
    return NeuralCode(n, frozenset(sups))


# ------------------------------------------------------------------ commands

def cmd_analyze(args) -> int:
    from .classify import embedding_dimension

    C = load_code(args.code)
    k = C.max_weight
    v = intersection_violation(C)
    G = code_graph(C)
    out = {
        "n": C.n,
        "words": C.words,
        "sparsity": k,
        "support": [sorted(s) for s in sorted(code_support(C), key=lambda s: (len(s), sorted(s)))],
        "intersection_complete": v is None,
        "violation": [sorted(s) for s in v] if v else None,
        "code_graph": G.to_json(),
    }
    if k > 2:
        out["summary"] = f"k={k}; 2-sparse pipeline not applicable"
        status = OK
    else:
        rep = embedding_dimension(C, construct=args.construct)
        out["report"] = rep.to_json()
        if not rep.realizable:
            out["summary"] = f"not realizable; witness ({{{','.join(map(str, sorted(v[0])))}}}," \
                             f"{{{','.join(map(str, sorted(v[1])))}}})"
            status = FAIL
        elif rep.lower == rep.upper:
            out["summary"] = f"realizable, d(C)={int(rep.upper)}"
            status = OK
        else:
            out["summary"] = f"realizable, {int(rep.lower)} <= d(C) <= {int(rep.upper)}"
            status = OK
    if args.json:
        _emit(out)
    else:
        print(f"code: {C}")
        print(f"sparsity: {k}")
        print(f"intersection-complete: {'yes' if v is None else 'no'}")
        print(f"code graph edges: {G.sorted_edges()}")
        print(out["summary"])
    return status


def realize(C: NeuralCode, dim: int) -> Arrangement:
    from .classify import TooManyNeurons, _realize_in_plane, embedding_dimension, interval_search, is_planar
    from .realize3d import NotRealizable, realize_code_r3

    if C.max_weight > 2:
        raise NotRealizable("only 2-sparse codes are handled")
    if intersection_violation(C) is not None:
        raise NotRealizable("code is not intersection-complete", intersection_violation(C))
    if dim == 1:
        try:
            arr = interval_search(C)
        except TooManyNeurons as exc:
            raise DimensionUnavailable(str(exc)) from exc
        if arr is None:
            raise DimensionUnavailable("no interval realization exists",
                                       embedding_dimension(C, construct=False))
        return arr
    if dim == 2:
        G = code_graph(C)
        got = _realize_in_plane(C, G, bool(is_planar(G)))
        if got is None:
            raise DimensionUnavailable("no planar construction applies to this code",
                                       embedding_dimension(C, construct=False))
        return got[1]
    if dim == 3:
        return realize_code_r3(C)
    raise InputError("dim must be 1, 2 or 3")


def cmd_realize(args) -> int:
    from .realize3d import NotRealizable
    from .svg import render
    from .verify import certify

    C = load_code(args.code)
    try:
        arr = realize(C, args.dim)
    except NotRealizable as exc:
        print(f"not realizable: {exc}", file=sys.stderr)
        return FAIL
    except DimensionUnavailable as exc:
        msg = {"error": "DimensionUnavailable", "message": str(exc),
               "report": exc.report.to_json() if exc.report else None}
        _emit(msg)
        return FAIL
    cert = certify(arr, C, budget=args.budget, seed=args.seed)
    _emit(arr.to_json(), args.out)
    if args.svg and arr.dim <= 2:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render(arr))
    if args.out:
        _emit(cert.to_json())
    return OK if cert.passed else FAIL


def cmd_verify(args) -> int:
    from .verify import certify

    arr = load_arrangement(args.arrangement)
    C = load_code(args.claim)
    if C.n != arr.n:
        raise InputError(f"claim has {C.n} neurons, arrangement has {arr.n} bodies")
    cert = certify(arr, C, budget=args.budget, seed=args.seed)
    _emit(cert.to_json())
    return OK if cert.passed else FAIL


def cmd_render(args) -> int:
    from .svg import Unrenderable, render

    arr = load_arrangement(args.arrangement)
    try:
        text = render(arr)
    except Unrenderable as exc:
        print(f"unrenderable: {exc}", file=sys.stderr)
        return FAIL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_gen(args) -> int:
    try:
        C = random_code(args.n, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(C.format())
    return OK


def cmd_roundtrip(args) -> int:
    from .bodies import CLOSED, OPEN
    from .transforms import choose_trim_epsilon, closed_to_open, open_to_closed, trim_arrangement
    from .verify import compute_code

    arr = load_arrangement(args.arrangement)
    base = compute_code(arr)
    steps = {"original": base}
    if arr.topology == OPEN:
        steps["open_to_closed"] = compute_code(open_to_closed(arr))
        steps["trim"] = compute_code(trim_arrangement(arr, choose_trim_epsilon(arr)))
    if arr.topology == CLOSED:
        steps["closed_to_open"] = compute_code(closed_to_open(arr))
        opened = closed_to_open(arr)
        steps["closed_to_open_to_closed"] = compute_code(open_to_closed(opened))
    same = all(c == base for c in steps.values())
    _emit({"codes": {k: c.words for k, c in steps.items()}, "preserved": same})
    return OK if same else FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparsecodes", description="Convex realizations of 2-sparse neural codes.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="sparsity, intersection-completeness and dimension bounds")
    a.add_argument("code")
    a.add_argument("--json", action="store_true")
    a.add_argument("--construct", action="store_true", help="build a realization behind every upper bound")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("realize", help="construct and certify a realization")
    r.add_argument("code")
    r.add_argument("--dim", type=int, choices=(1, 2, 3), default=3)
    r.add_argument("--out")
    r.add_argument("--svg")
    r.add_argument("--budget", type=int, default=10_000)
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_realize)

    v = sub.add_parser("verify", help="certify an arrangement against a claimed code")
    v.add_argument("arrangement")
    v.add_argument("--claim", required=True)
    v.add_argument("--budget", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("render", help="draw a 1D or 2D arrangement as SVG")
    d.add_argument("arrangement")
    d.add_argument("--out")
    d.set_defaults(func=cmd_render)

    g = sub.add_parser("gen", help="random intersection-complete 2-sparse code")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("roundtrip", help="check that trim, inflate and open/closed conversion keep the code")
    t.add_argument("arrangement")
    t.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (InputError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
