"""Command line front end.  Exit codes: 0 done, 1 usage error, 2 limit hit."""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .bench import WORKLOADS, bench
from .catalog import catalog_list, check_entry, get_entry
from .family import run_family
from .maps import constancy_depth, extract_maps, find_certificate
from .periodicity import (DEFAULT_LIMIT, CandidateError, ClosureViolation,
                          EnumerationLimitError, Periodic, brute_force_oracle, check_period,
                          gamma_shift_check, minimal_period, sub_two_graph)
from .report import Report, fill_verdict, theta_info
from .tails import (EventuallyPeriodic, TailError, build_aperiodic_tail,
                    build_minimal_symmetry_tail, detect_symmetries, lattice_window,
                    render_window, square_violations, standard_form, tail_from_dict)
from .words import ThetaError, parse_theta, parse_word

EXIT_OK, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pair(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def _common():
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--theta-file", metavar="PATH")
    src.add_argument("--catalog", metavar="NAME")
    p.add_argument("--period", type=_pair, metavar="a,b")
    p.add_argument("--max-k", type=int, default=12)
    # None means exhaustive, except for family where it picks by size
    p.add_argument("--mode", choices=("exhaustive", "sampled"))
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.add_argument("--json", metavar="PATH", help="write the report here ('-' for stdout)")
    p.add_argument("--window", type=int, default=12, metavar="T")
    p.add_argument("--bounds", type=_pair, default=(4, 4), metavar="p,q")
    return p


def build_parser():
    common = _common()
    parser = _Parser(prog="twograph", description="periodicity of single-vertex 2-graphs")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("check", parents=[common], help="test one candidate (a,b)")
    sub.add_parser("minimal-period", parents=[common], help="search k(a0,b0) for k <= max-k")
    sub.add_parser("criterion", parents=[common], help="idempotent-rank certificate")
    sub.add_parser("gamma", parents=[common], help="print gamma and test the shift identity")
    sub.add_parser("oracle", parents=[common], help="pairwise brute-force check")
    sg = sub.add_parser("subgraph", parents=[common], help="2-graph on chosen words")
    sg.add_argument("--e-words", required=True, help="comma separated digit strings, e.g. 11,12")
    sg.add_argument("--f-words", required=True)
    sg.add_argument("--out", metavar="PATH", help="write the theta file here")

    tail = sub.add_parser("tail", help="lattice windows and symmetries of tails")
    tsub = tail.add_subparsers(dest="tail_command", required=True, parser_class=_Parser)
    tail_src = argparse.ArgumentParser(add_help=False)
    tail_src.add_argument("--tail", default="e1 f1 | e2 f2",
                          help="eventually periodic word 'PREPERIOD | PERIOD'")
    tail_src.add_argument("--tail-file", metavar="PATH", help="tail JSON (as written by build-*)")
    tail_src.add_argument("--margin", type=int)
    build = argparse.ArgumentParser(add_help=False)
    build.add_argument("--segments", type=int, default=40)
    build.add_argument("--search-bound", type=int, default=100_000)
    build.add_argument("--out", metavar="PATH", help="write the tail JSON here")
    tsub.add_parser("window", parents=[common, tail_src])
    tsub.add_parser("symmetries", parents=[common, tail_src])
    tsub.add_parser("build-aperiodic", parents=[common, build])
    tsub.add_parser("build-minimal", parents=[common, build])

    cat = sub.add_parser("catalog", help="named examples")
    csub = cat.add_subparsers(dest="catalog_command", required=True, parser_class=_Parser)
    csub.add_parser("list", parents=[common])
    run = csub.add_parser("run", parents=[common])
    run.add_argument("name")
    run.add_argument("--full", action="store_true", help="include slow items")

    fam = sub.add_parser("family", parents=[common], help="the m x m flip family")
    fam.add_argument("--m", type=int, required=True)

    b = sub.add_parser("bench", parents=[common], help="timing workloads")
    b.add_argument("workload", choices=sorted(WORKLOADS))
    b.add_argument("--repetitions", type=int, default=1)
    b.add_argument("--size", type=int)
    return parser


def _theta(args, required=True):
    if args.theta_file:
        with open(args.theta_file) as fh:
            return parse_theta(fh.read())
    if args.catalog:
        return get_entry(args.catalog).theta
    if required:
        raise UsageError("give --theta-file or --catalog")
    return None


def _need_period(args):
    if args.period is None:
        raise UsageError("--period a,b is required")
    return args.period


def _tail(args, theta):
    if getattr(args, "tail_file", None):
        with open(args.tail_file) as fh:
            return tail_from_dict(json.load(fh))
    pre, bar, per = args.tail.partition("|")
    if not bar:
        pre, per = "", pre
    return standard_form(theta, parse_word(pre), parse_word(per))


def _cmd_check(args, rep):
    theta = _theta(args)
    v = check_period(theta, _need_period(args), args.mode, samples=args.samples,
                     seed=args.seed, workers=args.workers, limit=args.limit)
    fill_verdict(rep, v)
    if args.mode == "sampled":
        rep.seed = args.seed


def _cmd_minimal(args, rep):
    theta = _theta(args)
    v = minimal_period(theta, args.max_k, samples=args.samples, seed=args.seed,
                       workers=args.workers, limit=args.limit)
    fill_verdict(rep, v)


def _cmd_criterion(args, rep):
    theta = _theta(args)
    cert = find_certificate(theta)
    alphas, betas = extract_maps(theta)
    depth = [constancy_depth(alphas, args.max_k), constancy_depth(betas, args.max_k)]
    rep.verdict = "Aperiodic" if cert else "NoCertificate"
    rep.certificate = cert.to_dict() if cert else None
    rep.extra["constancy_depth"] = depth
    rep.message = (f"{cert.side} word {list(cert.word)} maps B = {sorted(cert.B)} onto itself"
                   if cert else "no certificate") + f"; constancy depths {depth}"


def _cmd_gamma(args, rep):
    theta = _theta(args)
    v = check_period(theta, _need_period(args), "exhaustive", workers=args.workers,
                     limit=args.limit)
    fill_verdict(rep, v)
    if isinstance(v, Periodic):
        ok = gamma_shift_check(theta, v.gamma, args.mode, samples=args.samples, seed=args.seed)
        rep.extra["gamma_shift"] = ok
        rep.message += f"; shift identity {'holds' if ok else 'FAILS'} ({args.mode})"
        if rep.gamma is not None:
            rep.message += "\n" + "\n".join(f"  {u} -> {w}" for u, w in rep.gamma.items())


def _cmd_oracle(args, rep):
    theta = _theta(args)
    fill_verdict(rep, brute_force_oracle(theta, _need_period(args)))


def _digits_list(text):
    return [tuple(int(c) for c in w.strip()) for w in text.split(",") if w.strip()]


def _cmd_subgraph(args, rep):
    theta = _theta(args)
    U, V = _digits_list(args.e_words), _digits_list(args.f_words)
    if not U or not V:
        raise UsageError("need at least one e-word and one f-word")
    try:
        sub = sub_two_graph(theta, len(U[0]), len(V[0]), U, V)
    except ClosureViolation as exc:
        rep.verdict = "ClosureViolation"
        rep.message = str(exc)
        return
    rep.verdict = "SubGraph"
    rep.extra["subgraph"] = {"m": sub.m, "n": sub.n, "digest": sub.digest(), "text": sub.to_text()}
    rep.message = sub.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(sub.to_text())


def _cmd_tail(args, rep):
    theta = _theta(args)
    tc = args.tail_command
    if tc in ("window", "symmetries"):
        tail = _tail(args, theta)
        win = lattice_window(theta, tail, args.window)
        bad = square_violations(theta, win)
        rep.extra["tail"] = tail.to_dict()
        rep.extra["square_violations"] = [list(c) for c in bad]
        if tc == "window":
            rep.verdict = "Window"
            rep.extra["window"] = win.to_dict()
            rep.message = render_window(win)
        else:
            sym = detect_symmetries(win, *args.bounds, margin=args.margin)
            rep.verdict = "Symmetries"
            rep.symmetries = sym.to_dict()
            rep.message = (f"strict: {sorted(sym.passing)}\n"
                           f"eventual (margin {sym.margin}): {sorted(sym.eventual)}")
        return
    if tc == "build-aperiodic":
        tail = build_aperiodic_tail(theta, args.segments, args.search_bound)
    else:
        tail = build_minimal_symmetry_tail(theta, args.segments, args.search_bound,
                                           period=args.period, k_max=args.max_k)
    rep.verdict = "Tail"
    rep.extra["tail"] = tail.to_dict()
    depth = min(args.window, tail.depth())
    win = lattice_window(theta, tail, depth)
    bounds = tuple(min(x, depth - 1) for x in args.bounds)
    sym = detect_symmetries(win, *bounds)
    rep.symmetries = sym.to_dict()
    rep.message = (f"{tail.description}; {tail.depth()} blocks; window {depth} "
                   f"symmetries within {bounds}: {sorted(sym.passing)}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(tail.to_dict(), fh, indent=1)


def _cmd_catalog(args, rep):
    if args.catalog_command == "list":
        rep.verdict = "Catalog"
        rep.extra["entries"] = catalog_list()
        rep.message = "\n".join(f"{e:24s} {get_entry(e).description}" for e in catalog_list())
        return
    entry = get_entry(args.name)
    rep.theta = theta_info(entry.theta)
    results = check_entry(entry, full=args.full, workers=args.workers,
                          samples=args.samples, seed=args.seed)
    rep.extra["checks"] = [[item, ok, detail] for item, ok, detail in results]
    failed = [item for item, ok, _ in results if ok is False]
    rep.verdict = "GoldenFail" if failed else "GoldenPass"
    mark = {True: "PASS", False: "FAIL", None: "SKIP"}
    rep.message = "\n".join(f"{mark[ok]} {item}: {detail}" for item, ok, detail in results)


def _cmd_family(args, rep):
    mode = "auto" if args.mode is None else args.mode
    fam = run_family(args.m, mode, samples=args.samples, seed=args.seed,
                     workers=args.workers, limit=args.limit, max_k=min(args.max_k, 8),
                     command=rep.command)
    for k, v in vars(fam).items():
        if k != "elapsed_ms":
            setattr(rep, k, v)


def _cmd_bench(args, rep):
    stats = bench(args.workload, args.repetitions, size=args.size, workers=args.workers,
                  seed=args.seed)
    rep.verdict = "Bench"
    rep.extra["bench"] = stats
    rep.seed = args.seed
    rep.message = (f"{args.workload}: best {stats['best_s']:.3f} s over {args.repetitions} "
                   f"run(s), {stats['words_per_s']:.0f} words/s, workers {args.workers}")


COMMANDS = {
    "check": _cmd_check, "minimal-period": _cmd_minimal, "criterion": _cmd_criterion,
    "gamma": _cmd_gamma, "oracle": _cmd_oracle, "subgraph": _cmd_subgraph,
    "tail": _cmd_tail, "catalog": _cmd_catalog, "family": _cmd_family, "bench": _cmd_bench,
}


def run_check(argv):
    """Parse and dispatch; returns ``(report or None, exit code)``."""
    rep, code, _ = _run(argv)
    return rep, code


def _run(argv):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE, None
    rep = Report(list(argv))
    t0 = time.perf_counter()
    if args.command != "family" and getattr(args, "mode", None) is None:
        args.mode = "exhaustive"
    try:
        theta = _theta(args, required=False) if hasattr(args, "theta_file") else None
        if theta is not None:
            rep.theta = theta_info(theta)
        COMMANDS[args.command](args, rep)
    except EnumerationLimitError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return None, EXIT_LIMIT, args
    except (UsageError, CandidateError, ThetaError, TailError, KeyError, ValueError,
            OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE, args
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep, EXIT_OK, args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    rep, code, args = _run(argv)
    if rep is not None:
        if rep.message:
            print(rep.message)
        if rep.seed is not None and rep.verdict in ("SampledPass", "UndecidedUpToBound"):
            print(f"seed {rep.seed}")
        if getattr(args, "json", None):
            rep.write(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
