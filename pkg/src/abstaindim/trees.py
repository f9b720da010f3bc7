"""Extended mistake trees: adversary strategies as explicit data.

A tree is a full binary tree whose internal nodes carry domain points and
whose leaves carry hypothesis names. Edges to the left child are labeled -1,
to the right child +1. Each internal node of an extended tree additionally
marks one side as carrying a dashed edge (the abstention response); the two
solid edges are the mistake responses. A plain mistake tree is the same
structure with no dashed marks, complete to a uniform depth.

A tree is (k, m)-difficult when every root-to-leaf path that can be walked
with at most k solid edges has length at least m; stepping to the dashed-side
child is free, any other step costs one solid edge. check_difficulty computes
minimal solid counts per path, and witness() extracts a tree achieving
difficulty (k, eldim(V, k)) by recording the argmax choices of the dimension
recursion. Ties break toward the lowest point index and label +1 so witness
trees, and the on-the-fly adversary that mirrors them, are reproducible.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .dimensions import NEG_INF, Dim, DimCache, SizeGuardExceeded, binom_leq, eldim, ldim
from .hypotheses import Domain, FormatError, HypothesisClass, VersionSpace, union_name


@dataclass(frozen=True)
class Leaf:
    hypothesis: str


@dataclass(frozen=True)
class Node:
    point: str
    left: "Node | Leaf"    # label -1 side
    right: "Node | Leaf"   # label +1 side
    dashed: int | None = None  # -1, +1, or None for plain mistake trees


Tree = Node | Leaf


class DomainTooSmall(ValueError):
    """The requested construction needs more distinct points than provided."""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...] = ()


@dataclass(frozen=True)
class DifficultyReport:
    is_difficult: bool
    # (path as ((point, label), ...), depth, minimal solid count) of a
    # too-short reachable leaf; present exactly when not difficult
    violating_leaf: tuple[tuple[tuple[str, int], ...], int, int] | None = None


def _path_str(path) -> str:
    if not path:
        return "(root)"
    return " ".join(f"({x},{'+1' if y == 1 else '-1'})" for x, y in path)


def validate(tree: Tree, klass: HypothesisClass, require_dashed: bool = True) -> ValidationReport:
    """Structural and consistency check of a tree against a class.

    Verifies dashed marks (unless checking a plain mistake tree), that points
    exist in the domain, that every leaf names a class member, and that each
    leaf's hypothesis agrees with every (point, label) pair on its root path.
    A single leaf with a member hypothesis is a valid zeroth-order tree.
    """
    problems: list[str] = []

    def walk(t, path):
        if isinstance(t, Leaf):
            if t.hypothesis not in klass.names:
                problems.append(
                    f"leaf {t.hypothesis!r} at {_path_str(path)}: not a member of the class"
                )
                return
            for x, y in path:
                if klass.label(t.hypothesis, x) != y:
                    problems.append(
                        f"leaf {t.hypothesis!r} at {_path_str(path)}: "
                        f"disagrees with ({x},{'+1' if y == 1 else '-1'})"
                    )
            return
        if t.point not in klass.domain:
            problems.append(f"node at {_path_str(path)}: unknown point {t.point!r}")
            return
        if require_dashed and t.dashed not in (-1, 1):
            problems.append(f"node {t.point!r} at {_path_str(path)}: missing dashed side")
        walk(t.left, path + ((t.point, -1),))
        walk(t.right, path + ((t.point, 1),))

    walk(tree, ())
    return ValidationReport(ok=not problems, problems=tuple(problems))


def check_difficulty(tree: Tree, k: int, m: int) -> DifficultyReport:
    """Is every root-to-leaf path using at most k solid edges of length >= m?

    Each path's solid count is minimal: a step to the dashed-side child is
    free, any other step costs one. Subtrees whose prefix already exceeds k
    solid edges cannot produce a qualifying path and are skipped.
    """
    if k < 0 or m < 0:
        raise ValueError("check_difficulty requires k, m >= 0")

    def walk(t, path, depth, solids):
        if isinstance(t, Leaf):
            if depth < m:
                return (path, depth, solids)
            return None
        if t.dashed not in (-1, 1):
            raise ValueError(f"node {t.point!r} has no dashed side; not an extended tree")
        for side, child in ((-1, t.left), (1, t.right)):
            cost = 0 if side == t.dashed else 1
            if solids + cost <= k:
                bad = walk(child, path + ((t.point, side),), depth + 1, solids + cost)
                if bad is not None:
                    return bad
        return None

    bad = walk(tree, (), 0, 0)
    if bad is None:
        return DifficultyReport(is_difficult=True)
    return DifficultyReport(is_difficult=False, violating_leaf=bad)


def max_difficulty(tree: Tree, k: int) -> int:
    """Largest m for which the tree is (k, m)-difficult.

    Equals the minimum length over root-to-leaf paths walkable with at most
    k solid edges; the all-dashed path always qualifies, so this is finite.
    """
    if isinstance(tree, Leaf):
        return 0
    if tree.dashed not in (-1, 1):
        raise ValueError(f"node {tree.point!r} has no dashed side; not an extended tree")
    dashed_child = tree.left if tree.dashed == -1 else tree.right
    solid_child = tree.right if tree.dashed == -1 else tree.left
    best = 1 + max_difficulty(dashed_child, k)
    if k >= 1:
        alt = 1 + max_difficulty(solid_child, k - 1)
        if alt < best:
            best = alt
    return best


def best_move(vs: VersionSpace, k: int, cache: DimCache | None = None) -> tuple[str, int] | None:
    """Argmax (x, y) of the dimension recursion at (vs, k); None when no disagreement.

    y is the dashed label: abstaining reveals y and keeps budget k on the
    (x, y) branch, while the (x, -y) branch costs a mistake. Ties break by
    lowest point index, then label +1.
    """
    cache = cache if cache is not None else DimCache()
    best = None
    best_val = NEG_INF
    for x in vs.dis():
        for y in (1, -1):
            vy = vs.restrict(x, y)
            if k == 0:
                val = eldim(vy, 0, cache)
            else:
                val = min(eldim(vy, k, cache), eldim(vs.restrict(x, -y), k - 1, cache))
            if val > best_val:
                best_val = val
                best = (x, y)
    return best


def witness(v: VersionSpace, k: int, cache: DimCache | None = None) -> Tree:
    """A (k, eldim(v, k))-difficult extended mistake tree for v.

    Built by recording the argmax choices of the recursion: the dashed edge
    points to the budget-k child; the opposite child carries the budget-(k-1)
    subtree, or a zeroth-order leaf when k = 0.
    """
    if v.is_empty:
        raise ValueError("cannot build a witness tree for an empty version space")
    if k < 0:
        raise ValueError("mistake budget k must be >= 0")
    cache = cache if cache is not None else DimCache()

    def build(vs, budget):
        move = best_move(vs, budget, cache)
        if move is None:
            return Leaf(vs.first_member())
        x, y = move
        dashed_child = build(vs.restrict(x, y), budget)
        if budget == 0:
            other = Leaf(vs.restrict(x, -y).first_member())
        else:
            other = build(vs.restrict(x, -y), budget - 1)
        left, right = (dashed_child, other) if y == -1 else (other, dashed_child)
        return Node(x, left, right, dashed=y)

    return build(v, k)


def exhaustive_max_difficulty(h: HypothesisClass, k: int, depth_cap: int) -> Dim:
    """Ground-truth optimum: enumerate every extended mistake tree up to depth_cap.

    Returns the largest m with a (k, m)-difficult tree among them, assessed by
    the same path-walking difficulty metric used everywhere else. Guarded to
    |H| <= 4, D <= 3, depth_cap <= 3; this oracle exists to pin down the
    dimension recursion on tiny instances, not to scale.
    """
    if k < 0:
        raise ValueError("mistake budget k must be >= 0")
    if len(h) > 4 or len(h.domain) > 3 or depth_cap > 3:
        raise SizeGuardExceeded("enumeration limited to |H| <= 4, D <= 3, depth <= 3")
    if len(h) == 0:
        return NEG_INF

    memo: dict[tuple[int, int], list] = {}

    def gen(vs: VersionSpace, depth: int) -> list:
        key = (vs.mask, depth)
        got = memo.get(key)
        if got is not None:
            return got
        out: list = [Leaf(name) for name in vs.members()]
        if depth >= 1:
            for x in vs.dis():
                lefts = gen(vs.restrict(x, -1), depth - 1)
                rights = gen(vs.restrict(x, 1), depth - 1)
                for dashed in (-1, 1):
                    for lt in lefts:
                        for rt in rights:
                            out.append(Node(x, lt, rt, dashed=dashed))
        memo[key] = out
        return out

    return max(max_difficulty(t, k) for t in gen(VersionSpace.full(h), depth_cap))


def threshold_tree(n: int, k: int, m: int) -> Tree:
    """The explicit (k, m)-difficult tree over the n threshold classifiers.

    Requires binom_leq(m, k+1) <= n. Base case k = 0 is the dashed chain over
    consecutive thresholds; the inductive case roots between a block of
    binom_leq(m-1, k) thresholds (solid left, budget k-1) and a block of
    binom_leq(m-1, k+1) thresholds (dashed right, budget k), consuming
    threshold indices in order.
    """
    if n < 1 or k < 0 or m < 0:
        raise ValueError("threshold_tree requires n >= 1, k >= 0, m >= 0")
    if binom_leq(m, k + 1) > n:
        raise ValueError(
            f"construction needs binom_leq({m},{k + 1}) = {binom_leq(m, k + 1)} <= n = {n}"
        )

    def build(lo: int, kk: int, mm: int) -> Tree:
        if mm == 0:
            return Leaf(f"h{lo}")
        if kk == 0:
            # chain on points lo+1 .. lo+mm, all dashed edges toward +1
            node: Tree = Leaf(f"h{lo + mm}")
            for i in range(lo + mm, lo, -1):
                node = Node(str(i), Leaf(f"h{i - 1}"), node, dashed=1)
            return node
        r_minus = binom_leq(mm - 1, kk)
        root_pt = str(lo + r_minus)
        left = build(lo, kk - 1, mm - 1)
        right = build(lo + r_minus, kk, mm - 1)
        return Node(root_pt, left, right, dashed=1)

    return build(1, k, m)


def _need_points(l: int, m: int) -> int:
    if m == 0:
        return 0
    if l == 1:
        return m
    return 1 + 2 * max(_need_points(l, m - 1), _need_points(l - 1, m - 1))


def singleton_tree(domain: Domain, l: int, m: int) -> Tree:
    """An (l-1, m)-difficult tree over the unions-of-at-most-l-singletons class.

    All dashed edges are labeled +1. The base class (l = 1) is a chain whose
    left leaves flip the chain's own points; the inductive case roots at a
    fresh point, sends label -1 (one flip spent) into a construction for l-1
    over half the remaining points, and label +1 into a construction for l
    over the other half. Leaves accumulate the flips of the -1 edges above
    them, so their names match the singleton_unions naming scheme.
    """
    if l < 1:
        raise ValueError("singleton_tree requires l >= 1")
    if m < 0:
        raise ValueError("depth target m must be >= 0")
    need = _need_points(l, m)
    if need > len(domain):
        raise DomainTooSmall(
            f"construction for l={l}, m={m} needs {need} points, domain has {len(domain)}"
        )

    def name(flips: frozenset[str]) -> str:
        ordered = sorted(flips, key=domain.index)
        return union_name(ordered)

    def build(points: tuple[str, ...], ll: int, mm: int, flips: frozenset[str]) -> Tree:
        if mm == 0:
            return Leaf(name(flips))
        if ll == 1:
            node: Tree = Leaf(name(flips))
            for x in reversed(points[:mm]):
                node = Node(x, Leaf(name(flips | {x})), node, dashed=1)
            return node
        x = points[0]
        rest = points[1:]
        first_half = rest[: (len(rest) + 1) // 2]
        second_half = rest[(len(rest) + 1) // 2 :]
        left = build(second_half, ll - 1, mm - 1, flips | {x})
        right = build(first_half, ll, mm - 1, flips)
        return Node(x, left, right, dashed=1)

    return build(domain.points, l, m, frozenset())


def singleton_leaf_flips(name: str) -> frozenset[str]:
    """Invert the union naming scheme: leaf name back to its flipped points."""
    if name == "h+":
        return frozenset()
    if not name.startswith("h-"):
        raise ValueError(f"{name!r} is not a union-of-singletons name")
    return frozenset(name[2:].split("-"))


def mistake_tree_witness(v: VersionSpace, cache: DimCache | None = None) -> Tree:
    """A complete mistake tree of depth ldim(v), with no dashed marks."""
    if v.is_empty:
        raise ValueError("cannot build a mistake tree for an empty version space")
    cache = cache if cache is not None else DimCache()

    def build(vs, depth):
        if depth == 0:
            return Leaf(vs.first_member())
        chosen = None
        for x in vs.dis():
            worse = min(ldim(vs.restrict(x, -1), cache), ldim(vs.restrict(x, 1), cache))
            if worse >= depth - 1:
                chosen = x
                break
        left = build(vs.restrict(chosen, -1), depth - 1)
        right = build(vs.restrict(chosen, 1), depth - 1)
        return Node(chosen, left, right, dashed=None)

    return build(v, ldim(v, cache))


def add_dashed_right(tree: Tree) -> Tree:
    """Mark every internal node's right child as the dashed side."""
    if isinstance(tree, Leaf):
        return tree
    return Node(tree.point, add_dashed_right(tree.left), add_dashed_right(tree.right), dashed=1)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def _dot_unescape(label: str) -> str:
    return label.replace('\\"', '"').replace("\\\\", "\\")


def to_dot(tree: Tree) -> str:
    """Graphviz DOT export: solid edges for both children, plus a parallel
    dashed edge to the dashed-side child; edge labels are -1 / +1."""
    lines = ["digraph mistake_tree {"]
    counter = [0]

    def emit(t) -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        if isinstance(t, Leaf):
            lines.append(f'  {nid} [label="{_dot_escape(t.hypothesis)}", shape=box];')
            return nid
        lines.append(f'  {nid} [label="{_dot_escape(t.point)}"];')
        left_id = emit(t.left)
        right_id = emit(t.right)
        lines.append(f'  {nid} -> {left_id} [label="-1", style=solid];')
        lines.append(f'  {nid} -> {right_id} [label="+1", style=solid];')
        if t.dashed == -1:
            lines.append(f'  {nid} -> {left_id} [label="-1", style=dashed];')
        elif t.dashed == 1:
            lines.append(f'  {nid} -> {right_id} [label="+1", style=dashed];')
        return nid

    emit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r'^\s*(\w+)\s*\[label="((?:[^"\\]|\\.)*)"(,\s*shape=box)?\];\s*$')
_DOT_EDGE = re.compile(r'^\s*(\w+)\s*->\s*(\w+)\s*\[label="([+-]1)",\s*style=(solid|dashed)\];\s*$')


def from_dot(text: str) -> Tree:
    """Parse the DOT shape emitted by to_dot back into a tree."""
    labels: dict[str, tuple[str, bool]] = {}
    solid: dict[tuple[str, int], str] = {}
    dashed: dict[str, str] = {}
    has_child = set()
    for raw in text.splitlines():
        line = raw.strip()
        if line in ("", "digraph mistake_tree {", "}"):
            continue
        m = _DOT_NODE.match(line)
        if m:
            labels[m.group(1)] = (_dot_unescape(m.group(2)), m.group(3) is not None)
            continue
        m = _DOT_EDGE.match(line)
        if m:
            src, dst, lab, style = m.group(1), m.group(2), int(m.group(3)), m.group(4)
            if style == "solid":
                if (src, lab) in solid:
                    raise FormatError(f"duplicate solid edge {src} -> label {lab}")
                solid[(src, lab)] = dst
            else:
                dashed[src] = dst
            has_child.add(dst)
            continue
        raise FormatError(f"unrecognized DOT line: {raw!r}")
    roots = [nid for nid in labels if nid not in has_child]
    if len(roots) != 1:
        raise FormatError(f"expected a single root, found {len(roots)}")

    def build(nid: str) -> Tree:
        label, is_leaf = labels[nid]
        if is_leaf:
            return Leaf(label)
        try:
            left_id = solid[(nid, -1)]
            right_id = solid[(nid, 1)]
        except KeyError:
            raise FormatError(f"internal node {nid} is missing a solid edge") from None
        d = dashed.get(nid)
        if d == left_id:
            side = -1
        elif d == right_id:
            side = 1
        else:
            raise FormatError(f"internal node {nid} has no dashed edge to a child")
        return Node(label, build(left_id), build(right_id), dashed=side)

    return build(roots[0])


def tree_to_obj(tree: Tree) -> dict:
    if isinstance(tree, Leaf):
        return {"leaf": tree.hypothesis}
    obj = {
        "point": tree.point,
        "dashed": "+1" if tree.dashed == 1 else "-1",
        "left": tree_to_obj(tree.left),
        "right": tree_to_obj(tree.right),
    }
    return obj


def tree_from_obj(obj) -> Tree:
    if not isinstance(obj, dict):
        raise FormatError(f"tree node must be an object, got {type(obj).__name__}")
    if "leaf" in obj:
        return Leaf(str(obj["leaf"]))
    for field in ("point", "dashed", "left", "right"):
        if field not in obj:
            raise FormatError(f"tree node missing {field!r}")
    if obj["dashed"] not in ("+1", "-1"):
        raise FormatError(f"dashed side must be '+1' or '-1', got {obj['dashed']!r}")
    return Node(
        str(obj["point"]),
        tree_from_obj(obj["left"]),
        tree_from_obj(obj["right"]),
        dashed=1 if obj["dashed"] == "+1" else -1,
    )


def tree_to_json(tree: Tree) -> str:
    return json.dumps(tree_to_obj(tree))


def tree_from_json(text: str) -> Tree:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return tree_from_obj(obj)
