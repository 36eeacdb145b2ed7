"""Command-line entry point.

One executable, eight verbs:

* ``normalize`` / ``equal`` — the word problem, word syntax in and out;
* ``ball`` / ``growth`` — Cayley-ball construction, JSON/DOT export, sphere
  counts;
* ``verify`` — the mechanical condition checks, optionally on a serialized
  graph (``--input``) instead of a freshly built ball;
* ``embed`` / ``qi-fit`` / ``delta`` — disk embedding, metric-comparison
  constants, four-point hyperbolicity defect.

Every JSON-producing verb wraps its payload in the envelope
``{tool_version, invocation, result}``.  Identical argv produces
byte-identical stdout.  Exit codes: 0 success/pass, 1 verification failure,
2 usage error, 3 budget or I/O error.  Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cayley import ball, export, export_obj, import_ball
from .core import (
    BudgetExceeded,
    CactusError,
    ClosureViolation,
    Family,
    GroupSpec,
    affine,
    cactus,
)
from .hyperbolic import embed_ball, four_point_delta, qi_fit, render_svg
from .rewriting import equal, normalize, parse_word
from .verify import (
    check_cube_spans,
    check_median,
    check_no_shared_consecutive_edges,
    check_square_normal_forms,
    check_squares_embedded,
    verify_claim_phi,
    verify_claim_psi,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_BALL_CHECKS = {
    "squares": check_squares_embedded,
    "edges": check_no_shared_consecutive_edges,
    "cubes": check_cube_spans,
    "square-normal-forms": check_square_normal_forms,
}
_CLAIM_CHECKS = {"claim-phi": verify_claim_phi, "claim-psi": verify_claim_psi}


class UsageError(Exception):
    """Invalid flag combination detected after parsing."""


def _spec_of(args: argparse.Namespace) -> GroupSpec:
    return affine(args.n) if args.family == "affine" else cactus(args.n)


def _emit(invocation: dict, result: dict) -> None:
    envelope = {
        "tool_version": __version__,
        "invocation": invocation,
        "result": result,
    }
    sys.stdout.write(json.dumps(envelope, indent=2) + "\n")


def _add_spec_flags(p: argparse.ArgumentParser, default_n: int | None = None) -> None:
    p.add_argument("--family", choices=("affine", "cactus"), default="affine")
    if default_n is None:
        p.add_argument("--n", type=int, required=True)
    else:
        p.add_argument("--n", type=int, default=default_n)
    p.add_argument("--jobs", type=int, default=1, help="worker hint; output is canonical")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cactuskit",
        description="Word problem, Cayley balls, structure checks and disk "
        "embeddings for the cactus and affine cactus groups.",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("normalize", help="rewrite a word to its normal form")
    _add_spec_flags(p)
    p.add_argument("--word", required=True, help='word syntax, e.g. "1,2;2,3"')

    p = sub.add_parser("equal", help="decide whether two words normalize alike")
    _add_spec_flags(p)
    p.add_argument("--word", required=True)
    p.add_argument("--word2", required=True)

    p = sub.add_parser("ball", help="build and export a Cayley ball")
    _add_spec_flags(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out", help="write the export here instead of stdout")
    p.add_argument("--budget", type=int, default=10**6, help="vertex budget")

    p = sub.add_parser("growth", help="sphere sizes of a Cayley ball")
    _add_spec_flags(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**6)

    p = sub.add_parser("verify", help="run one mechanical condition check")
    _add_spec_flags(p)
    p.add_argument(
        "--check",
        required=True,
        choices=sorted([*_BALL_CHECKS, *_CLAIM_CHECKS, "median"]),
    )
    p.add_argument("--radius", type=int)
    p.add_argument("--depth", type=int, default=2, help="triple depth for median")
    p.add_argument("--input", help="ball JSON file to check instead of building one")
    p.add_argument("--budget", type=int, default=10**6)

    p = sub.add_parser("embed", help="embed a degree-3 affine ball in the disk")
    _add_spec_flags(p, default_n=3)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--out", required=True, help="SVG output path")

    p = sub.add_parser("qi-fit", help="graph-vs-plane distance comparison constants")
    _add_spec_flags(p, default_n=3)
    p.add_argument("--radius", type=int, required=True)

    p = sub.add_parser("delta", help="four-point hyperbolicity defect of a ball")
    _add_spec_flags(p, default_n=3)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**7, help="quadruple budget")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")

    return top


def _run_normalize(args: argparse.Namespace) -> int:
    spec = _spec_of(args)
    nf = normalize(parse_word(spec, args.word))
    _emit(
        {"verb": "normalize", "family": args.family, "n": args.n, "word": args.word},
        {"input": args.word, "normal_form": nf.text(), "length": len(nf)},
    )
    return EXIT_PASS


def _run_equal(args: argparse.Namespace) -> int:
    spec = _spec_of(args)
    w1, w2 = parse_word(spec, args.word), parse_word(spec, args.word2)
    n1, n2 = normalize(w1), normalize(w2)
    _emit(
        {
            "verb": "equal",
            "family": args.family,
            "n": args.n,
            "word": args.word,
            "word2": args.word2,
        },
        {
            "equal": equal(w1, w2),
            "normal_form": n1.text(),
            "normal_form2": n2.text(),
        },
    )
    return EXIT_PASS


def _run_ball(args: argparse.Namespace) -> int:
    b = ball(_spec_of(args), args.radius, max_vertices=args.budget)
    inv = {
        "verb": "ball",
        "family": args.family,
        "n": args.n,
        "radius": args.radius,
        "format": args.format,
    }
    payload = export(b, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
        inv["out"] = args.out
        _emit(
            inv,
            {
                "path": args.out,
                "vertices": len(b),
                "sphere_sizes": b.sphere_sizes(),
            },
        )
    elif args.format == "json":
        _emit(inv, export_obj(b))
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_PASS


def _run_growth(args: argparse.Namespace) -> int:
    b = ball(_spec_of(args), args.radius, max_vertices=args.budget)
    sizes = b.sphere_sizes()
    totals = []
    for s in sizes:
        totals.append((totals[-1] if totals else 0) + s)
    _emit(
        {"verb": "growth", "family": args.family, "n": args.n, "radius": args.radius},
        {"sphere_sizes": sizes, "ball_sizes": totals},
    )
    return EXIT_PASS


def _run_verify(args: argparse.Namespace) -> int:
    inv = {
        "verb": "verify",
        "check": args.check,
        "family": args.family,
        "n": args.n,
    }
    if args.check in _CLAIM_CHECKS:
        if args.input:
            raise UsageError(f"--input does not apply to --check {args.check}")
        report = _CLAIM_CHECKS[args.check](args.n)
    else:
        if args.input:
            if args.radius is not None:
                raise UsageError("--input and --radius are mutually exclusive")
            with open(args.input, "r", encoding="utf-8") as fh:
                b = import_ball(json.load(fh))
            inv["input"] = args.input
        else:
            if args.radius is None:
                raise UsageError(f"--check {args.check} needs --radius (or --input)")
            b = ball(_spec_of(args), args.radius, max_vertices=args.budget)
            inv["radius"] = args.radius
        if args.check == "median":
            inv["depth"] = args.depth
            report = check_median(b, args.depth)
        else:
            report = _BALL_CHECKS[args.check](b)
    _emit(inv, report.to_dict())
    return EXIT_PASS if report.passed else EXIT_FAIL


def _require_aj3(args: argparse.Namespace) -> None:
    if args.family != "affine" or args.n != 3:
        raise UsageError(
            f"verb {args.verb!r} is defined for the degree-3 affine group only"
        )


def _run_embed(args: argparse.Namespace) -> int:
    _require_aj3(args)
    b = ball(affine(3), args.radius)
    emb = embed_ball(b)
    svg = render_svg(emb)
    with open(args.out, "wb") as fh:
        fh.write(svg)
    edge_count = sum(1 for v in range(len(b)) for nb, _ in b.adj_entries(v) if nb > v)
    _emit(
        {"verb": "embed", "family": args.family, "n": 3, "radius": args.radius,
         "out": args.out},
        {
            "svg_path": args.out,
            "vertices": len(b),
            "edges": edge_count,
            "edge_length": emb.edge_length,
        },
    )
    return EXIT_PASS


def _run_qi_fit(args: argparse.Namespace) -> int:
    _require_aj3(args)
    fit = qi_fit(embed_ball(ball(affine(3), args.radius)))
    _emit(
        {"verb": "qi-fit", "family": args.family, "n": 3, "radius": args.radius},
        {"lambda": fit.lam, "c": fit.c, "pair_count": fit.pair_count},
    )
    return EXIT_PASS


def _run_delta(args: argparse.Namespace) -> int:
    _require_aj3(args)
    rep = four_point_delta(
        ball(affine(3), args.radius), budget=args.budget, seed=args.seed
    )
    _emit(
        {"verb": "delta", "family": args.family, "n": 3, "radius": args.radius,
         "budget": args.budget, "seed": args.seed},
        {"delta": rep.delta, "quadruples": rep.quadruples, "sampled": rep.sampled},
    )
    return EXIT_PASS


_DISPATCH = {
    "normalize": _run_normalize,
    "equal": _run_equal,
    "ball": _run_ball,
    "growth": _run_growth,
    "verify": _run_verify,
    "embed": _run_embed,
    "qi-fit": _run_qi_fit,
    "delta": _run_delta,
}


def run(argv: list[str]) -> int:
    args = _build_parser().parse_args(argv)
    return _DISPATCH[args.verb](args)


def main(argv: list[str] | None = None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClosureViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (BudgetExceeded, OSError, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CactusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
