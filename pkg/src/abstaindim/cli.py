"""Command-line surface.

Exit codes: 0 success, 1 failed verification (invalid or insufficiently
difficult tree, closed-form mismatch, recurrence cross-check mismatch,
unmet l-mistake assumption), 2 usage or input errors. All output is
byte-deterministic for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .adversaries import MinimaxAdversary, RandomizedAdversary, TreeAdversary
from .dimensions import (
    NEG_INF,
    DimCache,
    SizeGuardExceeded,
    binom_leq,
    eldim,
    eldim_alg_form,
    ldim,
    shatter_enumerative,
    shatter_recursive,
)
from .experts import l_mistake_check, read_advice_csv, reduce as reduce_experts
from .game import check_szb, run, run_randomized, stream_run, transcript_to_jsonl
from .hypotheses import (
    FormatError,
    VersionSpace,
    bias_expand,
    class_to_csv,
    read_class_file,
    singleton_unions,
)
from .learners import SOA, SOADK, FractionalWrapper
from .trees import (
    DomainTooSmall,
    Leaf,
    check_difficulty,
    singleton_tree,
    to_dot,
    tree_from_json,
    validate,
    witness,
)


def _fmt_dim(v) -> str:
    return "-inf" if v == NEG_INF else str(int(v))


def _closed_form(n: int, k: int) -> int:
    t = 0
    while binom_leq(t + 1, k + 1) <= n:
        t += 1
    return t


def _tree_depth(tree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(_tree_depth(tree.left), _tree_depth(tree.right))


def _cmd_ldim(args) -> int:
    cls = read_class_file(args.klass)
    print(_fmt_dim(ldim(VersionSpace.full(cls))))
    return 0


def _cmd_eldim(args) -> int:
    cls = read_class_file(args.klass)
    vs = VersionSpace.full(cls)
    cache = DimCache()
    value = eldim(vs, args.k, cache)
    print(_fmt_dim(value))
    if args.alg_form and args.k >= 1:
        alt = eldim_alg_form(vs, args.k, cache)
        if alt != value:
            print(f"recurrence cross-check failed: {_fmt_dim(alt)} != {_fmt_dim(value)}", file=sys.stderr)
            return 1
    if args.witness:
        if vs.is_empty:
            print("cannot export a witness for an empty class", file=sys.stderr)
            return 2
        with open(args.witness, "w", encoding="utf-8") as f:
            f.write(to_dot(witness(vs, args.k, cache)))
    return 0


def _cmd_shatter(args) -> int:
    cls = read_class_file(args.klass)
    value = shatter_recursive(cls, args.t)
    print(value)
    if args.exact:
        exact = shatter_enumerative(cls, args.t)
        if exact != value:
            print(f"enumerative oracle disagrees: {exact} != {value}", file=sys.stderr)
            return 1
    return 0


def _cmd_witness(args) -> int:
    cls = read_class_file(args.klass)
    vs = VersionSpace.full(cls)
    if vs.is_empty:
        print("cannot build a witness for an empty class", file=sys.stderr)
        return 2
    cache = DimCache()
    tree = witness(vs, args.k, cache)
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(to_dot(tree))
    print(_fmt_dim(eldim(vs, args.k, cache)))
    return 0


def _cmd_verify_tree(args) -> int:
    cls = read_class_file(args.klass)
    with open(args.tree, "r", encoding="utf-8") as f:
        tree = tree_from_json(f.read())
    report = validate(tree, cls)
    if not report.ok:
        for p in report.problems:
            print(p, file=sys.stderr)
        print("invalid")
        return 1
    diff = check_difficulty(tree, args.k, args.m)
    if diff.is_difficult:
        print(f"valid and ({args.k},{args.m})-difficult")
        return 0
    path, depth, solids = diff.violating_leaf
    print(f"valid but not ({args.k},{args.m})-difficult")
    print(
        f"violating leaf: depth {depth}, {solids} solid edges, path "
        + (" ".join(f"({x},{y:+d})" for x, y in path) or "(root)"),
        file=sys.stderr,
    )
    return 1


def _cmd_bias_expand(args) -> int:
    cls = read_class_file(args.klass)
    expanded = bias_expand(cls, args.l)
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(class_to_csv(expanded))
    print(f"wrote {args.out} (|H|={len(expanded)})")
    return 0


def _cmd_simulate(args) -> int:
    cls = read_class_file(args.klass)
    adv_kind = args.adversary
    cache = DimCache()

    if adv_kind == "randomized":
        if args.l is None or args.m is None:
            print("randomized adversary requires -l and -m", file=sys.stderr)
            return 2
        k_real = float(args.k)
        tree = singleton_tree(cls.domain, args.l, args.m)
        adversary = RandomizedAdversary(args.l, k_real, tree)
        # the adversary reveals streams realizable by flipping <= l points, so
        # the learner must run over that class; refuse domains too big to build
        total = binom_leq(len(cls.domain), args.l)
        if total > 20_000:
            print(
                f"unions-of-singletons class needs {total} rows over this domain; "
                "use a smaller domain for simulation",
                file=sys.stderr,
            )
            return 2
        base = singleton_unions(cls.domain, args.l)
        hard = SOA(base, cache) if args.learner == "soa" else SOADK(base, int(k_real), cache)
        learner = FractionalWrapper(hard)
        cap = args.max_rounds if args.max_rounds is not None else _tree_depth(tree) + 1
        tr, ledger = run_randomized(learner, adversary, cap)
        print(
            f"rounds={len(tr.rounds)} mistake_penalty={ledger.mistake_total:.6f} "
            f"abstention_penalty={ledger.abstention_total:.6f} status={tr.status}"
        )
        if args.transcript:
            with open(args.transcript, "w", encoding="utf-8") as f:
                f.write(transcript_to_jsonl(tr))
        return 0

    if adv_kind == "bias":
        if args.l is None:
            print("bias adversary requires -l", file=sys.stderr)
            return 2
        expanded = bias_expand(cls, args.l)
        game_class = expanded
        adversary = TreeAdversary(witness(VersionSpace.full(expanded), args.k, cache))
    elif adv_kind == "minimax":
        game_class = cls
        adversary = MinimaxAdversary(VersionSpace.full(cls), args.k, cache)
    elif adv_kind.startswith("tree:"):
        with open(adv_kind[len("tree:"):], "r", encoding="utf-8") as f:
            tree = tree_from_json(f.read())
        report = validate(tree, cls)
        if not report.ok:
            for p in report.problems:
                print(p, file=sys.stderr)
            return 1
        game_class = cls
        adversary = TreeAdversary(tree)
    else:
        print(f"unknown adversary {adv_kind!r}", file=sys.stderr)
        return 2

    learner = (
        SOA(game_class, cache) if args.learner == "soa" else SOADK(game_class, args.k, cache)
    )
    tr = run(learner, adversary, args.max_rounds)
    print(
        f"rounds={len(tr.rounds)} mistakes={tr.mistakes} abstentions={tr.abstentions} "
        f"nontrivial={tr.nontrivial_rounds} status={tr.status}"
    )
    if not tr.truncated:
        m = eldim(VersionSpace.full(game_class), args.k, cache)
        verdict = check_szb(tr, args.k, m if m != NEG_INF else 0)
        print(f"szb(k={args.k},m={_fmt_dim(m)}): {'pass' if verdict else 'fail'}")
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as f:
            f.write(transcript_to_jsonl(tr))
    return 0


def _threshold_row(task: tuple[int, int]) -> list:
    n, k_max = task
    from .hypotheses import thresholds  # local import keeps workers lightweight

    vs = VersionSpace.full(thresholds(n))
    cache = DimCache()
    return [eldim(vs, k, cache) for k in range(k_max + 1)]


def _cmd_table(args) -> int:
    if args.family != "thresholds":
        print(f"unknown family {args.family!r}", file=sys.stderr)
        return 2
    n_max, k_max = args.n_max, args.k_max
    if n_max < 1 or k_max < 0:
        print("need --n-max >= 1 and --k-max >= 0", file=sys.stderr)
        return 2
    env = os.environ.get("ABSTAIN_DIM_THREADS")
    if env is None:
        workers = os.cpu_count() or 1
    else:
        try:
            workers = int(env)
        except ValueError:
            print(f"ABSTAIN_DIM_THREADS={env!r} is not an integer", file=sys.stderr)
            return 2
        if workers < 1:
            print("ABSTAIN_DIM_THREADS must be >= 1", file=sys.stderr)
            return 2
    tasks = [(n, k_max) for n in range(1, n_max + 1)]
    if workers > 1 and n_max > 16:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_threshold_row, tasks))
    else:
        rows = [_threshold_row(t) for t in tasks]
    print("n," + ",".join(f"k={k}" for k in range(k_max + 1)))
    failures = []
    for n, row in zip(range(1, n_max + 1), rows):
        print(f"{n}," + ",".join(_fmt_dim(v) for v in row))
        if args.check_closed_form:
            for k, v in enumerate(row):
                expect = _closed_form(n, k)
                if v != expect:
                    failures.append((n, k, v, expect))
    for n, k, v, expect in failures:
        print(f"closed-form mismatch at (n={n}, k={k}): got {_fmt_dim(v)}, expected {expect}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_experts_reduce(args) -> int:
    stream = read_advice_csv(args.advice)
    ok, idx = l_mistake_check(stream, args.l)
    if ok:
        print(f"l-mistake assumption holds (l={args.l}, witness expert e{idx + 1})")
    else:
        print(f"l-mistake assumption fails (l={args.l})")
        return 1
    klass, seq = reduce_experts(stream)
    print(f"reduced: |H_N|={len(klass)} over {len(klass.domain)} points")
    if args.simulate:
        if args.k is None:
            print("--simulate requires -k", file=sys.stderr)
            return 2
        if args.k < args.l:
            print(f"budget k={args.k} below l={args.l}; no mistake guarantee", file=sys.stderr)
        cache = DimCache()
        expanded = bias_expand(klass, args.l)
        learner = SOADK(expanded, args.k, cache)
        tr = stream_run(learner, seq)
        m = eldim(VersionSpace.full(expanded), args.k, cache)
        print(
            f"soadk(k={args.k}) on expanded class: mistakes={tr.mistakes} "
            f"abstentions={tr.abstentions} nontrivial={tr.nontrivial_rounds} bound={_fmt_dim(m)}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="abstain-dim",
        description="dimensions, difficult trees, and learner/adversary games "
        "for online classification with abstention",
    )
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("ldim", help="Littlestone dimension of a class file")
    q.add_argument("klass", metavar="class")
    q.set_defaults(fn=_cmd_ldim)

    q = sub.add_parser("eldim", help="budgeted dimension of a class file")
    q.add_argument("klass", metavar="class")
    q.add_argument("-k", type=int, required=True, help="mistake budget")
    q.add_argument("--witness", metavar="OUT.dot", help="export a witness tree")
    q.add_argument("--alg-form", action="store_true", help="cross-check the alternative recurrence")
    q.set_defaults(fn=_cmd_eldim)

    q = sub.add_parser("shatter", help="tree shattering coefficient")
    q.add_argument("klass", metavar="class")
    q.add_argument("-t", type=int, required=True, help="tree depth")
    q.add_argument("--exact", action="store_true", help="also run the guarded enumerative oracle")
    q.set_defaults(fn=_cmd_shatter)

    q = sub.add_parser("witness", help="export a maximal-difficulty tree as DOT")
    q.add_argument("klass", metavar="class")
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-o", dest="out", required=True, metavar="OUT.dot")
    q.set_defaults(fn=_cmd_witness)

    q = sub.add_parser("verify-tree", help="validate a tree JSON and check its difficulty")
    q.add_argument("tree", metavar="tree.json")
    q.add_argument("klass", metavar="class")
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-m", type=int, required=True)
    q.set_defaults(fn=_cmd_verify_tree)

    q = sub.add_parser("bias-expand", help="write the distance-l expansion of a class")
    q.add_argument("klass", metavar="class")
    q.add_argument("-l", type=int, required=True)
    q.add_argument("-o", dest="out", required=True, metavar="OUT.csv")
    q.set_defaults(fn=_cmd_bias_expand)

    q = sub.add_parser("simulate", help="run a learner against an adversary")
    q.add_argument("--learner", choices=("soa", "soadk"), required=True)
    q.add_argument("--adversary", required=True, help="minimax | tree:<file> | bias | randomized")
    q.add_argument("--class", dest="klass", required=True)
    q.add_argument("-k", type=float, required=True, help="mistake budget (real for randomized)")
    q.add_argument("-l", type=int, help="bias budget (bias and randomized adversaries)")
    q.add_argument("-m", type=int, help="tree depth (randomized adversary)")
    q.add_argument("--max-rounds", type=int)
    q.add_argument("--transcript", metavar="OUT.jsonl")
    q.add_argument("--seed", type=int, default=0, help="seed for any sampled components")
    q.set_defaults(fn=_cmd_simulate)

    q = sub.add_parser("table", help="family sweep of budgeted dimensions as CSV")
    q.add_argument("family", choices=("thresholds",))
    q.add_argument("--n-max", type=int, required=True)
    q.add_argument("--k-max", type=int, required=True)
    q.add_argument("--check-closed-form", action="store_true")
    q.set_defaults(fn=_cmd_table)

    q = sub.add_parser("experts-reduce", help="expert-advice stream to classification instance")
    q.add_argument("advice", metavar="advice.csv")
    q.add_argument("-l", type=int, required=True)
    q.add_argument("-k", type=int)
    q.add_argument("--simulate", action="store_true")
    q.set_defaults(fn=_cmd_experts_reduce)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.adversary != "randomized":
        if args.k != int(args.k):
            print("non-integer budget is only valid with the randomized adversary", file=sys.stderr)
            return 2
        args.k = int(args.k)
    try:
        return args.fn(args)
    except (FormatError, DomainTooSmall, SizeGuardExceeded, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
