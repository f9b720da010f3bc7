"""Littlestone dimension, its abstention-budgeted extension, and growth bounds.

The central quantity is the budgeted dimension eldim(V, k): the optimal
worst-case number of nontrivial rounds (mistakes plus abstentions) when a
deterministic learner on version space V may make at most k mistakes. For
finite classes it satisfies

    eldim(V, k) = -inf                      if V is empty
    eldim(V, k) = 0                         if V has one behavior
    eldim(V, 0) = 1 + max_{x in DIS} max_y eldim(V[(x,y)], 0)
    eldim(V, k) = 1 + max_{x in DIS} max_y min(eldim(V[(x,y)], k-1),
                                               eldim(V[(x,-y)], k))   k >= 1

Candidates x range over the disagreement region only: for any other x one
restriction is empty, its branch evaluates to -inf, and it can never win
while DIS is nonempty. All recursions memoize on (version-space key, budget).

-inf is represented by float("-inf"), which gives the required algebra
(1 + -inf == -inf, max/min lift) without a sentinel integer. Finite classes
never produce +inf: every step restricts at a disagreement point, so both
branches are strictly smaller version spaces.
"""

from __future__ import annotations

from itertools import product as iter_product
from math import comb
from typing import Sequence

from .hypotheses import HypothesisClass, VersionSpace

NEG_INF = float("-inf")

Dim = int | float  # extended integer: a count or -inf


class SizeGuardExceeded(RuntimeError):
    """An enumerative oracle was asked to search beyond its hard cap."""


class SearchCapExceeded(RuntimeError):
    """A bounded search hit its cap without certifying the supremum."""


def binom_leq(t: int, k: int) -> int:
    """Sum of C(t, i) for i = 0..min(k, t), in exact integer arithmetic."""
    if t < 0 or k < 0:
        raise ValueError("binom_leq requires t, k >= 0")
    return sum(comb(t, i) for i in range(0, min(k, t) + 1))


class DimCache:
    """Memo table keyed by (kind, class token, member mask, budget/depth)."""

    def __init__(self):
        self.table: dict = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self.table)


def _ldim_masks(plus_masks, mask, table, token, hm):
    key = ("L", token, mask)
    v = table.get(key)
    if v is not None:
        hm[0] += 1
        return v
    if mask == 0:
        return NEG_INF
    hm[1] += 1
    best = NEG_INF
    split = False
    for pm in plus_masks:
        a = mask & pm
        b = mask & ~pm
        if a and b:
            split = True
            va = _ldim_masks(plus_masks, a, table, token, hm)
            vb = _ldim_masks(plus_masks, b, table, token, hm)
            m = va if va < vb else vb
            if m > best:
                best = m
    v = best + 1 if split else 0
    table[key] = v
    return v


def ldim(v: VersionSpace, cache: DimCache | None = None) -> Dim:
    """Littlestone dimension of the version space (max mistake-tree depth)."""
    cache = cache if cache is not None else DimCache()
    hm = [0, 0]
    out = _ldim_masks(v.klass.plus_masks, v.mask, cache.table, v.klass.token, hm)
    cache.hits += hm[0]
    cache.misses += hm[1]
    return out


def _eldim_masks(plus_masks, mask, k, table, token, hm):
    key = ("E", token, mask, k)
    v = table.get(key)
    if v is not None:
        hm[0] += 1
        return v
    if mask == 0:
        return NEG_INF
    hm[1] += 1
    best = NEG_INF
    split = False
    if k == 0:
        for pm in plus_masks:
            a = mask & pm
            b = mask & ~pm
            if a and b:
                split = True
                va = _eldim_masks(plus_masks, a, 0, table, token, hm)
                vb = _eldim_masks(plus_masks, b, 0, table, token, hm)
                m = va if va > vb else vb
                if m > best:
                    best = m
    else:
        for pm in plus_masks:
            a = mask & pm      # label +1 side
            b = mask & ~pm     # label -1 side
            if a and b:
                split = True
                # dashed label +1: abstaining keeps budget k on the +1 side
                ak = _eldim_masks(plus_masks, a, k, table, token, hm)
                bk1 = _eldim_masks(plus_masks, b, k - 1, table, token, hm)
                m1 = ak if ak < bk1 else bk1
                # dashed label -1
                bk = _eldim_masks(plus_masks, b, k, table, token, hm)
                ak1 = _eldim_masks(plus_masks, a, k - 1, table, token, hm)
                m2 = bk if bk < ak1 else ak1
                m = m1 if m1 > m2 else m2
                if m > best:
                    best = m
    v = best + 1 if split else 0
    table[key] = v
    return v


def eldim(v: VersionSpace, k: int, cache: DimCache | None = None) -> Dim:
    """Budgeted dimension: optimal nontrivial rounds with at most k mistakes."""
    if k < 0:
        raise ValueError("mistake budget k must be >= 0")
    cache = cache if cache is not None else DimCache()
    hm = [0, 0]
    out = _eldim_masks(v.klass.plus_masks, v.mask, k, cache.table, v.klass.token, hm)
    cache.hits += hm[0]
    cache.misses += hm[1]
    return out


def _eldim_alg_masks(plus_masks, mask, k, table, token):
    # Independent route used only as a cross-check against _eldim_masks:
    # per candidate x, a three-way min of the two mistake branches (budget
    # k-1) against the max of the two abstention branches (budget k).
    key = ("A", token, mask, k)
    v = table.get(key)
    if v is not None:
        return v
    if mask == 0:
        return NEG_INF
    best = NEG_INF
    split = False
    if k == 0:
        for pm in plus_masks:
            a = mask & pm
            b = mask & ~pm
            if a and b:
                split = True
                m = max(
                    _eldim_alg_masks(plus_masks, a, 0, table, token),
                    _eldim_alg_masks(plus_masks, b, 0, table, token),
                )
                if m > best:
                    best = m
    else:
        for pm in plus_masks:
            a = mask & pm
            b = mask & ~pm
            if a and b:
                split = True
                m = min(
                    _eldim_alg_masks(plus_masks, b, k - 1, table, token),
                    _eldim_alg_masks(plus_masks, a, k - 1, table, token),
                    max(
                        _eldim_alg_masks(plus_masks, a, k, table, token),
                        _eldim_alg_masks(plus_masks, b, k, table, token),
                    ),
                )
                if m > best:
                    best = m
    v = best + 1 if split else 0
    table[key] = v
    return v


def eldim_alg_form(v: VersionSpace, k: int, cache: DimCache | None = None) -> Dim:
    """Alternative recurrence for eldim, valid for k >= 1; cross-check only."""
    if k < 1:
        raise ValueError("the alternative recurrence requires k >= 1")
    cache = cache if cache is not None else DimCache()
    return _eldim_alg_masks(v.klass.plus_masks, v.mask, k, cache.table, v.klass.token)


def eldim_upper_finite(h: HypothesisClass, k: int) -> int:
    """max{t : binom_leq(t, k+1) <= |H|}, the finite-class upper bound."""
    if len(h) < 1:
        raise ValueError("bound requires a nonempty class")
    if k < 0:
        raise ValueError("mistake budget k must be >= 0")
    n = len(h)
    t = 0
    while binom_leq(t + 1, k + 1) <= n:
        t += 1
    return t


def bound_finiteub(h_size: int, k: int, l: int) -> float:
    """Bias-expansion bound for finite classes: e * (k+1) * |H|^(1/(k+1-l)).

    Caps eldim of the distance-l expansion of a size-h_size class at budget
    k >= l. A plain inequality, evaluated in double precision.
    """
    if h_size < 1:
        raise ValueError("bound requires a nonempty class")
    if l < 0 or k < l:
        raise ValueError(f"bound requires k >= l >= 0, got k={k}, l={l}")
    from math import e

    return e * (k + 1) * h_size ** (1.0 / (k + 1 - l))


def bound_infiniteub(d: int, k: int, l: int) -> float:
    """Bias-expansion bound for classes of Littlestone dimension d:
    (k+1) * e^((2k+2)/(k+1-l-d)), valid for k >= l + d."""
    if d < 0 or l < 0:
        raise ValueError("d and l must be >= 0")
    if k < l + d:
        raise ValueError(f"bound requires k >= l + d, got k={k}, l={l}, d={d}")
    from math import exp

    return (k + 1) * exp((2 * k + 2) / (k + 1 - l - d))


def _shatter_masks(plus_masks, mask, t, table, token):
    key = ("S", token, mask, t)
    v = table.get(key)
    if v is not None:
        return v
    if mask == 0:
        return 0
    if t == 0:
        return 1
    best = 0
    for pm in plus_masks:
        a = mask & pm
        b = mask & ~pm
        s = _shatter_masks(plus_masks, a, t - 1, table, token) + _shatter_masks(
            plus_masks, b, t - 1, table, token
        )
        if s > best:
            best = s
    table[key] = best
    return best


def shatter_recursive(
    h: HypothesisClass | VersionSpace, t: int, cache: DimCache | None = None
) -> int:
    """Tree shattering coefficient via the max-sum recursion, memoized."""
    if t < 0:
        raise ValueError("depth t must be >= 0")
    v = h if isinstance(h, VersionSpace) else VersionSpace.full(h)
    if v.mask == 0:
        return 0
    if len(v.klass.domain) == 0 or t == 0:
        return 1  # single behavior, or the depth-0 convention
    cache = cache if cache is not None else DimCache()
    return _shatter_masks(v.klass.plus_masks, v.mask, t, cache.table, v.klass.token)


def eldim_upper_growth(h: HypothesisClass, k: int, t_max: int | None = None) -> Dim:
    """Largest t <= t_max with binom_leq(t, k+1) <= shatter_recursive(h, t).

    For a nonempty finite class the default cap eldim_upper_finite(h,k) + 1 is
    always sufficient, since the shattering coefficient is at most |H|. If the
    inequality still holds at t_max the supremum is not certified and
    SearchCapExceeded is raised rather than silently truncating.
    """
    if k < 0:
        raise ValueError("mistake budget k must be >= 0")
    if len(h) == 0:
        return NEG_INF
    if t_max is None:
        t_max = eldim_upper_finite(h, k) + 1
    cache = DimCache()
    best = NEG_INF
    for t in range(t_max + 1):
        if binom_leq(t, k + 1) <= shatter_recursive(h, t, cache):
            best = t
    if best == t_max:
        raise SearchCapExceeded(
            f"inequality still satisfied at t_max={t_max}; raise the cap to certify"
        )
    return best


def labelings_on_tree(h: HypothesisClass, layout: Sequence[str]) -> int:
    """Count sign paths of a point-valued tree realized by members of h.

    `layout` lists the complete tree's internal-node points in heap order
    (root first; node i has children 2i+1 and 2i+2, zero-based; left means
    label -1). Each hypothesis walks the tree by its own labels and realizes
    exactly one sign path; distinct walks are counted.
    """
    n = len(layout)
    t = (n + 1).bit_length() - 1
    if n != (1 << t) - 1:
        raise ValueError("layout must fill a complete tree (length 2^t - 1)")
    cols = [h.domain.index(p) for p in layout]
    realized = set()
    for row in h.rows:
        idx = 0
        path = []
        for _ in range(t):
            lab = row[cols[idx]]
            path.append(lab)
            idx = 2 * idx + (2 if lab == 1 else 1)
        realized.add(tuple(path))
    return len(realized)


def shatter_enumerative(h: HypothesisClass, t: int, max_trees: int = 200_000) -> int:
    """Ground-truth shattering coefficient by enumerating every depth-t tree.

    Refuses when t > 3 or the D^(2^t - 1) candidate trees exceed max_trees;
    this oracle exists only to validate the recursion on small cases.
    """
    if t < 0:
        raise ValueError("depth t must be >= 0")
    if len(h) == 0:
        return 0
    if t == 0:
        return 1
    d = len(h.domain)
    if d == 0:
        return 1
    n_nodes = (1 << t) - 1
    if t > 3 or d**n_nodes > max_trees:
        raise SizeGuardExceeded(
            f"{d}^{n_nodes} candidate trees exceed the enumeration guard"
        )
    pts = h.domain.points
    best = 0
    for assignment in iter_product(range(d), repeat=n_nodes):
        count = labelings_on_tree(h, [pts[i] for i in assignment])
        if count > best:
            best = count
    return best


def egg_drop(n: int, k: int) -> int:
    """Minimax nontrivial rounds for n totally ordered candidates, k mistakes.

    G(1,k) = 0, G(n,0) = n-1, and for n >= 2, k >= 1
        G(n,k) = 1 + max_{1 <= a <= n//2} min(G(a, k-1), G(n-a, k)).
    """
    if n < 1 or k < 0:
        raise ValueError("egg_drop requires n >= 1, k >= 0")
    prev = [max(0, m - 1) for m in range(n + 1)]  # budget 0 row
    for _ in range(1, k + 1):
        cur = [0] * (n + 1)
        for m in range(2, n + 1):
            cur[m] = 1 + max(min(prev[a], cur[m - a]) for a in range(1, m // 2 + 1))
        prev = cur
    return prev[n]
