"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 a decoding guarantee failed inside the
radius on a certified instance, 3 I/O error. Variable indices are 0-based on
the command line; alist files use their own 1-based convention.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .alist import AlistError, read_alist, save_alist
from .code import ExpansionParams, as_word, certify_expansion, generate_regular
from .decoders import flip_decode, lp_decode
from .harness import (
    ALL,
    EXHAUSTIVE,
    ExperimentConfig,
    TheoremViolation,
    counterexample_graph,
    generate_certified,
    run_counterexample,
    run_experiment,
    word_str,
)
from .witness import (
    WitnessError,
    case_bounds,
    construct_witness,
    decoding_radius,
    fraction_str,
)

EXIT_OK, EXIT_USAGE, EXIT_THEOREM, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _index_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices: {text!r}") from exc


def _trials(text: str) -> int | str:
    if text == EXHAUSTIVE:
        return text
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("trials must be an integer or 'exhaustive'") from exc


def _emit(obj: dict, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(path: str | None):
    if not path:
        raise UsageError("--alist is required")
    return read_alist(path)


def cmd_gen(args: argparse.Namespace) -> int:
    params = ExpansionParams(args.epsilon, args.delta, args.c)
    if not params.eps_c_integral:
        raise UsageError(f"epsilon*c = {params.eps_c} is not an integer (c={args.c}, "
                         f"epsilon={args.epsilon})")
    try:
        g, cert, seed = generate_certified(
            args.n, args.m, args.c, args.epsilon, args.delta, args.seed,
            attempts=args.attempts, budget=args.budget, method=args.method)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        save_alist(g, args.out)
    _emit({
        "certificate": cert.status.value,
        "subsets_checked": cert.checked_budget,
        "seed": seed,
        "n": g.n,
        "m": g.m,
        "c": g.c,
        "epsilon": fraction_str(params.epsilon),
        "delta": fraction_str(params.delta),
        "out": args.out,
    })
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    g = _load_graph(args.alist)
    params = ExpansionParams(args.epsilon, args.delta, g.c)
    cert = certify_expansion(g, params, args.budget)
    _emit({
        "certificate": cert.status.value,
        "violating_subset": None if cert.violating_subset is None else list(cert.violating_subset),
        "subsets_checked": cert.checked_budget,
        "epsilon": fraction_str(params.epsilon),
        "delta": fraction_str(params.delta),
    })
    return EXIT_OK


def decode_request(g, request: dict) -> dict:
    """Handle one ``{"y": "0101...", "algo": "lp"|"flip"}`` request."""
    y = as_word(request["y"], g.n)
    algo = request.get("algo", "lp")
    if algo == "lp":
        res = lp_decode(g, y)
    elif algo == "flip":
        res = flip_decode(g, y, int(request.get("max_rounds", 1000)))
    else:
        raise UsageError(f"unknown algo {algo!r}")
    return {
        "status": res.status.value,
        "word": None if res.word is None else word_str(res.word),
        "value": None if res.lp_value is None else fraction_str(res.lp_value),
    }


def cmd_decode(args: argparse.Namespace) -> int:
    g = _load_graph(args.alist)
    if args.request:
        request = json.loads(args.request)
    elif args.y is not None:
        request = {"y": args.y, "algo": args.algo}
    else:
        request = json.loads(sys.stdin.read())
    try:
        _emit(decode_request(g, request))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad decode request: {exc}") from exc
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    g = _load_graph(args.alist)
    params = ExpansionParams(args.epsilon, args.delta, g.c)
    U = args.errors
    if any(not 0 <= i < g.n for i in U):
        raise UsageError(f"error indices must lie in 0..{g.n - 1}")
    cert = certify_expansion(g, params, args.budget)
    try:
        radius = decoding_radius(params, g.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        wit = construct_witness(g, U, params, certificate=cert.status)
    except WitnessError as exc:
        _emit({"status": "failed", "stage": exc.stage, "message": str(exc),
               "U": sorted(U), "radius": radius, "certificate": cert.status.value})
        in_scope = cert.certified and len(set(U)) <= radius
        return EXIT_THEOREM if in_scope else EXIT_OK
    out = wit.to_json()
    out["status"] = "feasible"
    out["certificate"] = cert.status.value
    out["radius"] = radius
    out["slack"] = [fraction_str(s) for s in wit.report.slack]
    out["cases"] = [
        {"node": i, "case": case, "sum": fraction_str(s), "bound": fraction_str(b)}
        for i, (case, s, b) in enumerate(case_bounds(g, wit.dilation, wit.weights, params))
    ]
    out["matching"] = wit.matching.to_json()
    _emit(out)
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    if args.alist:
        g = read_alist(args.alist)
        source = f"alist:{Path(args.alist).name}"
    elif None not in (args.n, args.m, args.c):
        g = generate_regular(args.n, args.m, args.c, args.graph_seed)
        source = f"generate_regular(n={args.n}, m={args.m}, c={args.c}, seed={args.graph_seed})"
    else:
        raise UsageError("give --alist or all of --n, --m, --c")
    algos = tuple(a for a in args.algo.split(",") if a)
    codewords = args.codewords if args.codewords == ALL else int(args.codewords)
    try:
        config = ExperimentConfig(
            epsilon=args.epsilon,
            delta=args.delta,
            weights=tuple(args.weights) if args.weights is not None else None,
            trials=args.trials,
            decoders=algos,
            witness_check=not args.no_witness,
            seed=args.seed,
            codewords_per_set=codewords,
            allow_uncertified=args.allow_uncertified,
            source=source,
        )
        report = run_experiment(g, config)
        code = EXIT_OK
    except TheoremViolation as exc:
        report = exc.report
        code = EXIT_THEOREM
        print(f"theorem assertion failed: {exc}", file=sys.stderr)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        out = Path(args.out)
        out.write_text(report.to_json())
        out.with_suffix(".csv").write_text(report.to_csv())
    else:
        sys.stdout.write(report.to_json())
    return code


def cmd_counterexample(args: argparse.Namespace) -> int:
    if args.out:
        save_alist(counterexample_graph(), args.out)
    _emit(run_counterexample())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expander-lp", description="LP decoding experiments on small expander codes")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p, required=True):
        p.add_argument("--epsilon", type=_rational, required=required)
        p.add_argument("--delta", type=_rational, required=required)

    p = sub.add_parser("gen", help="generate and certify an expander instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    add_params(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=10**4)
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--method", choices=("sample", "search"), default="sample")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("certify", help="brute-force expansion certificate")
    p.add_argument("--alist", required=True)
    add_params(p)
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("decode", help="decode one word (JSON request/response)")
    p.add_argument("--alist", required=True)
    p.add_argument("--request", help='JSON such as {"y": "0101", "algo": "lp"}; default stdin')
    p.add_argument("--y", help="received word as a 0/1 string")
    p.add_argument("--algo", default="lp", choices=("lp", "flip"))
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("witness", help="build and verify a dual witness for an error set")
    p.add_argument("--alist", required=True)
    p.add_argument("--errors", "--U", dest="errors", type=_index_list, default=[])
    add_params(p)
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("experiment", help="sweep error weights and report")
    p.add_argument("--alist")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--graph-seed", type=int, default=0)
    add_params(p)
    p.add_argument("--weights", type=_index_list)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_trials, default=EXHAUSTIVE)
    p.add_argument("--algo", default="lp,flip")
    p.add_argument("--codewords", default="2", help="codewords per error set, or 'all'")
    p.add_argument("--no-witness", action="store_true")
    p.add_argument("--allow-uncertified", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("counterexample", help="distance-2 regression instance")
    p.add_argument("--out", help="also write the graph as alist")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (AlistError, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
