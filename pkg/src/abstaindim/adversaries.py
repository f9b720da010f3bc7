"""Adversary strategies: tree walkers, the on-the-fly optimum, and the
soft-prediction lower-bound adversary.

All adversaries expose the same two-call protocol driven by the game loop:
next() returns the round's example or None once the interaction has reached
a leaf, and respond(prediction) reveals the label and advances the state.
Against a tree-driven adversary every round is nontrivial by construction:
a label prediction is answered with the opposite label (a mistake, following
the solid edge on that side), and an abstention is answered with the dashed
edge's label.
"""

from __future__ import annotations

from .dimensions import DimCache
from .hypotheses import HypothesisClass, VersionSpace, bias_expand
from .learners import ABSTAIN
from .trees import Leaf, Tree, best_move, witness


class AdversaryProtocolError(RuntimeError):
    """next/respond called out of turn, or play continued past a leaf."""


class TreeAdversary:
    """Walks a validated extended mistake tree."""

    def __init__(self, tree: Tree):
        self.cursor = tree
        self._awaiting = False

    @property
    def done(self) -> bool:
        return isinstance(self.cursor, Leaf)

    @property
    def leaf_hypothesis(self) -> str:
        if not self.done:
            raise AdversaryProtocolError("interaction has not reached a leaf")
        return self.cursor.hypothesis

    def next(self) -> str | None:
        if self._awaiting:
            raise AdversaryProtocolError("respond to the pending example first")
        if self.done:
            return None
        self._awaiting = True
        return self.cursor.point

    def respond(self, pred) -> int:
        if not self._awaiting:
            raise AdversaryProtocolError("respond called before next, or after the leaf")
        node = self.cursor
        if node.dashed not in (-1, 1):
            raise ValueError(f"node {node.point!r} has no dashed side; not an extended tree")
        if pred == ABSTAIN:
            y = node.dashed
        elif pred in (-1, 1):
            y = -pred
        else:
            raise ValueError(f"prediction must be -1, +1, or abstain, got {pred!r}")
        self.cursor = node.left if y == -1 else node.right
        self._awaiting = False
        return y


class MinimaxAdversary:
    """Optimal adversary realized lazily, without materializing the tree.

    Each round it picks the argmax (x, y) of the dimension recursion at its
    current (V, k) with the same tie rule as witness(), so its play is
    trace-equivalent to TreeAdversary(witness(v, k)) under identical learner
    replies. Budget bookkeeping mirrors the tree: a mistake landing on the
    dashed-side child keeps budget k (that subtree was built at k), any other
    mistake costs a budget; at budget 0 a mistake onto the non-dashed side
    reaches a zeroth-order leaf and ends the game.
    """

    def __init__(self, v: VersionSpace, k: int, cache: DimCache | None = None):
        if v.is_empty:
            raise ValueError("adversary requires a nonempty version space")
        if k < 0:
            raise ValueError("mistake budget k must be >= 0")
        self.version_space = v
        self.budget = k
        self.cache = cache if cache is not None else DimCache()
        self._move: tuple[str, int] | None = None
        self._awaiting = False
        self._forced_leaf: str | None = None

    @property
    def done(self) -> bool:
        if self._forced_leaf is not None:
            return True
        return best_move(self.version_space, self.budget, self.cache) is None

    @property
    def leaf_hypothesis(self) -> str:
        if self._forced_leaf is not None:
            return self._forced_leaf
        if not self.done:
            raise AdversaryProtocolError("interaction has not reached a leaf")
        return self.version_space.first_member()

    def next(self) -> str | None:
        if self._awaiting:
            raise AdversaryProtocolError("respond to the pending example first")
        if self._forced_leaf is not None:
            return None
        self._move = best_move(self.version_space, self.budget, self.cache)
        if self._move is None:
            return None
        self._awaiting = True
        return self._move[0]

    def respond(self, pred) -> int:
        if not self._awaiting or self._move is None:
            raise AdversaryProtocolError("respond called before next, or after the leaf")
        x, dashed_y = self._move
        if pred == ABSTAIN:
            y = dashed_y
        elif pred in (-1, 1):
            y = -pred
        else:
            raise ValueError(f"prediction must be -1, +1, or abstain, got {pred!r}")
        if y != dashed_y:
            # solid-only child: built one budget lower; a leaf when budget is 0
            if self.budget == 0:
                self._forced_leaf = self.version_space.restrict(x, y).first_member()
            else:
                self.budget -= 1
        self.version_space = self.version_space.restrict(x, y)
        self._move = None
        self._awaiting = False
        return y


def bias_adversary(
    h_base: HypothesisClass, l: int, k_assumed: int, cache: DimCache | None = None
) -> TreeAdversary:
    """Tree adversary over the witness for the bias-expanded class H * C^l.

    Its revealed sequence is realizable by some hypothesis within Hamming
    distance l of h_base, i.e. it satisfies the l-bias assumption.
    """
    expanded = bias_expand(h_base, l)
    return TreeAdversary(witness(VersionSpace.full(expanded), k_assumed, cache))


def _all_dashed_plus(tree: Tree) -> bool:
    if isinstance(tree, Leaf):
        return True
    return tree.dashed == 1 and _all_dashed_plus(tree.left) and _all_dashed_plus(tree.right)


class RandomizedAdversary:
    """Threshold adversary for the soft prediction model.

    Built for a real mistake-penalty budget k < l on a tree over the
    unions-of-at-most-l-singletons class whose dashed edges are all +1.
    With eps = 1 - k/l: when the learner's +1 weight exceeds 1 - eps the
    adversary reveals -1 and follows the solid left edge; otherwise it
    reveals +1 and follows the dashed edge.
    """

    def __init__(self, l: int, k: float, tree: Tree):
        if l < 1:
            raise ValueError("l must be >= 1")
        if not (0 <= k < l):
            raise ValueError(f"requires 0 <= k < l, got k={k}, l={l}")
        if not _all_dashed_plus(tree):
            raise ValueError("tree must have every dashed edge labeled +1")
        self.l = l
        self.k = float(k)
        self.epsilon = 1.0 - self.k / l
        self.cursor = tree
        self._awaiting = False

    @property
    def done(self) -> bool:
        return isinstance(self.cursor, Leaf)

    @property
    def leaf_hypothesis(self) -> str:
        if not self.done:
            raise AdversaryProtocolError("interaction has not reached a leaf")
        return self.cursor.hypothesis

    def next(self) -> str | None:
        if self._awaiting:
            raise AdversaryProtocolError("respond to the pending example first")
        if self.done:
            return None
        self._awaiting = True
        return self.cursor.point

    def respond(self, fractional: tuple[float, float]) -> int:
        if not self._awaiting:
            raise AdversaryProtocolError("respond called before next, or after the leaf")
        p_minus, p_plus = fractional
        if p_minus < 0 or p_plus < 0 or p_minus + p_plus > 1 + 1e-12:
            raise ValueError(f"invalid soft prediction ({p_minus}, {p_plus})")
        node = self.cursor
        if p_plus > 1 - self.epsilon:
            y = -1
            self.cursor = node.left
        else:
            y = 1
            self.cursor = node.right
        self._awaiting = False
        return y
