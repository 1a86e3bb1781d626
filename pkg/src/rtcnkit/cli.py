"""Command-line surface: counting, enumeration, sampling, conversion,
containment queries, verification suites, statistics, and DOT export.

Exit codes: 0 success, 1 input or validation error, 2 verification
failure.  Payload lines use the text grammars; `-` reads standard input.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .boat import boat_to_rtcn, rtcn_to_boat
from .codecs import (
    format_boat,
    format_perm,
    format_phylo,
    format_rtcn,
    parse_object,
)
from .containment import expand, contains, pair_to_phylo, phylo_to_pair
from .core import (
    BoatSequence,
    DecisionVector,
    EventCode,
    ParseError,
    Permutation,
    PhyloTree,
    ValidationError,
)
from .dot import export_dot
from .enumeration import (
    containing_count,
    enumerate_codes,
    enumerate_ranked_trees,
    rtc_count,
    rtc_count_by_branching,
    sample_uniform,
)
from .stats import boat_return_experiment, normality_report, samples_to_csv
from .treeperm import rtcn_to_treeperm, treeperm_to_rtcn
from .verify import DEFAULT_SEED, SUITES, run_suite


class _Parser(argparse.ArgumentParser):
    # the contract reserves exit code 2 for verification failures, so
    # usage errors must exit 1 instead of argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _thread_cap():
    raw = os.environ.get("RTCNKIT_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ValidationError("RTCNKIT_THREADS must be a positive integer")
    # execution is sequential; the variable only caps parallelism
    return 1


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_objects(path):
    objs = []
    for line in _read_text(path).splitlines():
        line = line.strip()
        if line:
            objs.append(parse_object(line))
    if not objs:
        raise ValidationError("no objects found in the input")
    return objs


def _load_tree(path):
    objs = _read_objects(path)
    if len(objs) != 1 or not isinstance(objs[0], EventCode):
        raise ValidationError("the tree input must hold one ranked tree code")
    if not objs[0].is_ranked_tree:
        raise ValidationError("the tree input must be branching-only")
    return objs[0]


def _cmd_count(args):
    if args.contain is not None:
        tree = _load_tree(args.contain)
        print(containing_count(tree.leaves))
        return 0
    if args.leaves is None:
        raise ValidationError("count needs --leaves or --contain")
    if args.branching is not None:
        print(rtc_count_by_branching(args.leaves, args.branching))
    else:
        print(rtc_count(args.leaves))
    return 0


def _cmd_enum(args):
    codes = (enumerate_ranked_trees(args.leaves) if args.trees_only
             else enumerate_codes(args.leaves))
    for code in codes:
        if args.format == "dot":
            sys.stdout.write(export_dot(code))
        else:
            print(format_rtcn(code))
    return 0


def _cmd_sample(args):
    rng = random.Random(args.seed)
    for _ in range(args.count):
        print(format_rtcn(sample_uniform(args.leaves, rng=rng)))
    return 0


def _convert_one(obj, target, tree):
    if target == "rtcn":
        if isinstance(obj, EventCode):
            return [format_rtcn(obj)]
        if isinstance(obj, BoatSequence):
            return [format_rtcn(boat_to_rtcn(obj))]
        if isinstance(obj, PhyloTree):
            if tree is None:
                raise ValidationError("converting a plain tree needs --tree")
            return [format_rtcn(phylo_to_pair(tree, obj))]
        raise ValidationError(f"cannot convert {type(obj).__name__} to rtcn")
    if target == "boat":
        if isinstance(obj, EventCode):
            return [format_boat(rtcn_to_boat(obj))]
        raise ValidationError("boat conversion expects a network code")
    if target == "treeperm":
        if isinstance(obj, EventCode):
            t, perm = rtcn_to_treeperm(obj)
            return [format_rtcn(t), format_perm(perm)]
        raise ValidationError("treeperm conversion expects a network code")
    if target == "phylo":
        if isinstance(obj, EventCode):
            if tree is None:
                raise ValidationError("phylo conversion needs --tree")
            return [format_phylo(pair_to_phylo(tree, obj))]
        raise ValidationError("phylo conversion expects a network code")
    raise ValidationError(f"unknown conversion target {target!r}")


def _cmd_convert(args):
    tree = _load_tree(args.tree) if args.tree else None
    objs = _read_objects(args.input)
    # a ranked tree line followed by a permutation line is one pair
    if (args.to == "rtcn" and len(objs) == 2
            and isinstance(objs[0], EventCode) and objs[0].is_ranked_tree
            and isinstance(objs[1], Permutation)):
        print(format_rtcn(treeperm_to_rtcn(objs[0], objs[1])))
        return 0
    for obj in objs:
        for line in _convert_one(obj, args.to, tree):
            print(line)
    return 0


def _cmd_contain(args):
    tree = _load_tree(args.tree)
    objs = _read_objects(args.input)
    for obj in objs:
        if args.expand:
            if not isinstance(obj, DecisionVector):
                raise ValidationError("--expand expects decision vectors")
            print(format_rtcn(expand(tree, obj)))
        else:
            if not isinstance(obj, EventCode):
                raise ValidationError("--check expects network codes")
            print("yes" if contains(tree, obj) else "no")
    return 0


def _cmd_verify(args):
    results = run_suite(args.suite, max_leaves=args.max_leaves, seed=args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 2 if failed else 0


def _cmd_stats(args):
    samples = boat_return_experiment(args.leaves, args.count, args.seed)
    report = normality_report(samples, args.leaves, seed=args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(samples_to_csv(samples))
    print(report.as_json())
    return 0


def _cmd_dot(args):
    for obj in _read_objects(args.input):
        sys.stdout.write(export_dot(obj))
    return 0


def _build_parser():
    parser = _Parser(prog="rtcnkit",
                     description="Ranked tree-child networks: counting, "
                                 "bijections, sampling, verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count networks", parents=[], add_help=True)
    p.add_argument("--leaves", type=int)
    p.add_argument("--branching", type=int)
    p.add_argument("--contain", metavar="FILE",
                   help="count networks containing the ranked tree in FILE")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enum", help="enumerate all codes")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--trees-only", action="store_true")
    p.add_argument("--format", choices=("rtcn", "dot"), default="rtcn")
    p.set_defaults(func=_cmd_enum)

    p = sub.add_parser("sample", help="draw uniform networks")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("-n", "--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("convert", help="convert between representations")
    p.add_argument("--to", choices=("rtcn", "boat", "treeperm", "phylo"),
                   required=True)
    p.add_argument("--tree", metavar="FILE",
                   help="ranked tree for containment conversions")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("contain", help="containment queries")
    p.add_argument("--tree", metavar="FILE", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--expand", action="store_true",
                      help="expand decision vectors into networks")
    mode.add_argument("--check", action="store_true",
                      help="check whether networks contain the tree")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=_cmd_contain)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-leaves", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stats", help="return-count experiment")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("-n", "--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", metavar="FILE", help="write samples as CSV")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("dot", help="render objects as DOT")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=_cmd_dot)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        _thread_cap()
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except (ParseError, ValidationError) as exc:
        print(f"rtcnkit: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"rtcnkit: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"rtcnkit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
