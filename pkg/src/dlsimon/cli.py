"""Command-line front end.

Subcommands: search, transform, verify, emit-model, enumerate-diff,
enumerate-lin, middle. Exit codes: 0 success, 1 nothing found, 2 usage
error (argparse default).
"""

import argparse
import math
import os
import sys

from . import diff as diff_engine
from . import lin as lin_engine
from . import middle as middle_engine
from . import search as search_engine
from . import trailfile, verify
from .cipher import format_pair, get_spec, parse_pair
from .model import (build_diff_model, build_full_model, build_lin_model,
                    build_middle_model, emit_model)
from .search import RoundConfig

EXIT_OK = 0
EXIT_NOT_FOUND = 1


def _add_cipher(p):
    p.add_argument("--cipher", required=True,
                   help="simon32/48/64/96/128 or simeck32/48/64")


def _threads_default():
    env = os.environ.get("DLSIMON_THREADS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dlsimon",
        description="Differential-linear distinguisher toolkit for "
                    "Simon and Simeck")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="run a DL trail search strategy")
    _add_cipher(p)
    p.add_argument("--config", required=True, help="rd,rm,rl")
    p.add_argument("--strategy", choices=("dfs", "lfs"), required=True)
    p.add_argument("--lin-cap", type=int, default=None,
                   help="linear weight cap (dfs)")
    p.add_argument("--diff-cap", type=int, default=None,
                   help="differential weight cap (lfs)")
    p.add_argument("--out", help="write the trail document here")
    p.add_argument("--threads", type=int, default=_threads_default())

    p = sub.add_parser("transform",
                       help="transform a DL trail into a distinguisher")
    p.add_argument("--trail", required=True, help="trail document file")
    p.add_argument("--pbar", type=int, required=True,
                   help="probability bound exponent (16 means 2^-16)")
    p.add_argument("--qbar", type=int, required=True,
                   help="correlation bound exponent (8 means 2^-8)")
    p.add_argument("--out", help="write the distinguisher document here")
    p.add_argument("--hist", help="write the contribution histogram CSV")
    p.add_argument("--threads", type=int, default=_threads_default())

    p = sub.add_parser("verify", help="Monte Carlo correlation estimate")
    p.add_argument("--trail", help="trail document (plan from its anchors)")
    p.add_argument("--cipher")
    p.add_argument("--delta", help="input difference left,right")
    p.add_argument("--lambda", dest="lam", help="output mask left,right")
    p.add_argument("--rounds", type=int)
    p.add_argument("--samples", type=int, default=1 << 22)
    p.add_argument("--keys", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--key-mode", choices=("real", "independent"),
                   default="real")
    p.add_argument("--out", help="append a CSV row here")
    p.add_argument("--threads", type=int, default=_threads_default())

    p = sub.add_parser("emit-model", help="write a solver-ready model file")
    _add_cipher(p)
    p.add_argument("--config", required=True, help="rd,rm,rl")
    p.add_argument("--part", choices=("diff", "middle", "lin", "full"),
                   required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("enumerate-diff",
                       help="enumerate differential trails from an input "
                            "difference")
    _add_cipher(p)
    p.add_argument("--delta-in", required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--bound", type=int, required=True,
                   help="total weight bound")
    p.add_argument("--out")

    p = sub.add_parser("enumerate-lin",
                       help="enumerate linear trails into an output mask")
    _add_cipher(p)
    p.add_argument("--lambda-out", required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("middle", help="propagate a continuous difference")
    _add_cipher(p)
    p.add_argument("--delta", required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--lambda", dest="lam",
                   help="optionally evaluate this mask")
    return parser


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _print_trail(trail, spec):
    mag = trail.log2_magnitude
    print("cipher        %s" % spec.name)
    print("config        %d,%d,%d" % (trail.config.rd, trail.config.rm,
                                      trail.config.rl))
    print("delta_in      %s" % format_pair(trail.delta_in))
    print("delta_mid     %s" % format_pair(trail.delta_mid))
    print("lambda_mid    %s" % format_pair(trail.lambda_mid))
    print("lambda_out    %s" % format_pair(trail.lambda_out))
    print("log2_p        %d" % trail.log2_p)
    print("r_mid         %.6f (|r| = 2^%.2f)"
          % (trail.r_mid, math.log2(abs(trail.r_mid))
             if trail.r_mid else float("-inf")))
    print("log2_q        %d" % trail.log2_q)
    print("cor_total     %.6e (|cor| = 2^%.2f)" % (trail.cor_total, mag))


def cmd_search(args):
    spec = get_spec(args.cipher)
    config = RoundConfig.parse(args.config)
    if args.strategy == "dfs":
        trail = search_engine.dfs_search(config, spec,
                                         lin_weight_cap=args.lin_cap)
    else:
        trail = search_engine.lfs_search(config, spec,
                                         diff_weight_cap=args.diff_cap)
    if trail is None:
        print("no DL trail found within the caps", file=sys.stderr)
        return EXIT_NOT_FOUND
    _print_trail(trail, spec)
    cor = trail.cor_total
    needed = search_engine.samples_needed(cor)
    flag = " (theoretical-only: exceeds the 2^%d codebook)" % (2 * spec.n) \
        if search_engine.is_theoretical_only(cor, spec) else ""
    print("data          about 2^%.2f pairs%s"
          % (math.log2(needed), flag))
    if args.out:
        _write(args.out, trailfile.dump_trail(trail, spec))
    return EXIT_OK


def cmd_transform(args):
    with open(args.trail, encoding="utf-8") as fh:
        spec, seed, _ = trailfile.load(fh.read())
    dist = search_engine.transform(seed, spec, -abs(args.pbar),
                                   -abs(args.qbar))
    print("cipher        %s" % spec.name)
    print("delta_in      %s" % format_pair(dist.delta_in))
    print("lambda_out    %s" % format_pair(dist.lambda_out))
    print("bounds        p_bar=2^%d q_bar=2^%d" % (dist.p_bar, dist.q_bar))
    print("cor_sum       %.6e (|cor| = 2^%.2f)"
          % (dist.cor_sum, dist.log2_magnitude))
    print("cells         %d (diff weight x lin weight)" % len(dist.cells))
    if args.out:
        _write(args.out, trailfile.dump_distinguisher(dist, seed, spec))
    if args.hist:
        _write(args.hist, trailfile.histogram_csv(dist))
    return EXIT_OK


def cmd_verify(args):
    if args.trail:
        with open(args.trail, encoding="utf-8") as fh:
            spec, trail, _ = trailfile.load(fh.read())
        delta, lam = trail.delta_in, trail.lambda_out
        rounds = trail.config.total
    else:
        if not (args.cipher and args.delta and args.lam
                and args.rounds is not None):
            print("verify needs --trail or --cipher/--delta/--lambda/"
                  "--rounds", file=sys.stderr)
            return 2
        spec = get_spec(args.cipher)
        delta = parse_pair(args.delta, spec)
        lam = parse_pair(args.lam, spec)
        rounds = args.rounds
    plan = verify.ExperimentPlan(spec, delta, lam, rounds, args.samples,
                                 args.keys, key_mode=args.key_mode,
                                 seed=args.seed)
    result = verify.estimate(plan, threads=args.threads)
    print("cipher        %s  rounds %d" % (spec.name, rounds))
    print("delta_in      %s" % format_pair(delta))
    print("lambda_out    %s" % format_pair(lam))
    print("N=%d  K=%d  seed=%d  mode=%s"
          % (args.samples, args.keys, args.seed, plan.key_mode))
    print("mean |cor|    %.6e (2^%.2f)  stderr %.2e"
          % (result.mean_abs, result.log2_mean_abs, result.stderr))
    if args.out:
        new = not os.path.exists(args.out)
        with open(args.out, "a", encoding="utf-8") as fh:
            if new:
                fh.write(verify.CSV_HEADER + "\n")
            fh.write(result.csv_row() + "\n")
    return EXIT_OK


def cmd_emit_model(args):
    spec = get_spec(args.cipher)
    config = RoundConfig.parse(args.config)
    if args.part == "diff":
        model = build_diff_model(config.rd, spec)
    elif args.part == "lin":
        model = build_lin_model(config.rl, spec)
    elif args.part == "middle":
        model = build_middle_model(config.rm, spec)
    else:
        model = build_full_model(config, spec)
    emit_model(model, args.out)
    stats = model.stats()
    print("wrote %s: %d variables, %d constraints "
          "(%d linear, %d quadratic, %d general)"
          % (args.out, stats["variables"], stats["constraints"],
             stats["linear_constraints"], stats["quadratic_constraints"],
             stats["general_constraints"]))
    return EXIT_OK


def cmd_enumerate_diff(args):
    spec = get_spec(args.cipher)
    delta_in = parse_pair(args.delta_in, spec)
    entries = diff_engine.enumerate_diff_trails_from(
        delta_in, args.rounds, args.bound, spec)
    lines = ["delta_out,weight"]
    for delta, w in entries:
        lines.append("%s;%s,%d" % ("0x%x" % delta[0], "0x%x" % delta[1], w))
    body = "\n".join(lines) + "\n"
    print("%d trails (weight <= %d)" % (len(entries), args.bound))
    for delta, w in entries[:20]:
        print("  %-22s weight %d" % (format_pair(delta), w))
    if len(entries) > 20:
        print("  ...")
    if args.out:
        _write(args.out, body)
    return EXIT_OK if entries else EXIT_NOT_FOUND


def cmd_enumerate_lin(args):
    spec = get_spec(args.cipher)
    lam_out = parse_pair(args.lambda_out, spec)
    entries = lin_engine.enumerate_lin_trails_to(
        lam_out, args.rounds, args.bound, spec)
    lines = ["lambda_in,weight"]
    for masks, w in entries:
        lines.append("%s;%s,%d" % ("0x%x" % masks[0], "0x%x" % masks[1], w))
    body = "\n".join(lines) + "\n"
    print("%d trails (weight <= %d)" % (len(entries), args.bound))
    for masks, w in entries[:20]:
        print("  %-22s weight %d" % (format_pair(masks), w))
    if len(entries) > 20:
        print("  ...")
    if args.out:
        _write(args.out, body)
    return EXIT_OK if entries else EXIT_NOT_FOUND


def cmd_middle(args):
    spec = get_spec(args.cipher)
    delta = parse_pair(args.delta, spec)
    state = middle_engine.propagate(
        middle_engine.init_from_difference(delta, spec), args.rounds, spec)
    print("cipher        %s  rounds %d" % (spec.name, args.rounds))
    print("delta         %s" % format_pair(delta))
    print("left   " + " ".join("%+.4f" % v for v in state.left))
    print("right  " + " ".join("%+.4f" % v for v in state.right))
    if args.lam:
        lam = parse_pair(args.lam, spec)
        r = middle_engine.middle_correlation(state, lam, spec)
        mag = math.log2(abs(r)) if r else float("-inf")
        print("lambda        %s" % format_pair(lam))
        print("correlation   %.6e (|r| = 2^%.2f)" % (r, mag))
    return EXIT_OK


_COMMANDS = {
    "search": cmd_search,
    "transform": cmd_transform,
    "verify": cmd_verify,
    "emit-model": cmd_emit_model,
    "enumerate-diff": cmd_enumerate_diff,
    "enumerate-lin": cmd_enumerate_lin,
    "middle": cmd_middle,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_NOT_FOUND


if __name__ == "__main__":
    sys.exit(main())
