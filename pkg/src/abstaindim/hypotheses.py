"""Finite hypothesis classes over finite instance domains.

Everything downstream (dimension computations, adversary trees, learners)
runs on the two objects defined here:

* HypothesisClass: an immutable table of {-1,+1} labelings over a finite
  ordered domain. Rows are deduplicated by default, because every dimension
  and game in this package depends only on labeling behavior, never on names.
* VersionSpace: a subset of one class, stored as an integer bitmask over
  hypothesis indices. Restriction by a labeled example is a single mask
  intersection, which keeps the dimension recursions cheap and gives a
  canonical memoization key for free.

Also here: the named families (threshold classifiers, unions of at most l
singletons), pointwise products of classes, the l-bias expansion H * C^l,
realizability / l-bias checks, and CSV / JSON readers and writers.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Example = tuple[str, int]  # (point identifier, label)

LABELS = (-1, 1)

_class_tokens = itertools.count()


class FormatError(ValueError):
    """Malformed class or stream file; message carries line/column context."""


@dataclass(frozen=True)
class Domain:
    """Ordered tuple of distinct point identifiers."""

    points: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("domain points must be pairwise distinct")
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def index(self, point: str) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise ValueError(f"unknown point {point!r}") from None

    def __contains__(self, point: str) -> bool:
        return point in self._index

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def domain_of(points: Iterable[str]) -> Domain:
    return Domain(tuple(str(p) for p in points))


class HypothesisClass:
    """Immutable set of named {-1,+1} labelings over a Domain.

    Internally hypotheses and points are index addressed; names are surface
    only. Per-point bitmasks of the +1-labeling hypotheses are precomputed so
    that version-space restriction is a mask intersection.
    """

    def __init__(self, domain: Domain, names: Sequence[str], rows: Sequence[Sequence[int]]):
        if len(names) != len(rows):
            raise ValueError("names and rows must have equal length")
        seen = set()
        for name in names:
            if name in seen:
                raise ValueError(f"duplicate hypothesis name {name!r}")
            seen.add(name)
        frozen_rows = []
        for name, row in zip(names, rows):
            row = tuple(int(v) for v in row)
            if len(row) != len(domain):
                raise ValueError(
                    f"hypothesis {name!r}: expected {len(domain)} labels, got {len(row)}"
                )
            for j, v in enumerate(row):
                if v not in LABELS:
                    raise ValueError(
                        f"hypothesis {name!r}, point {domain.points[j]!r}: label {v!r} not in {{-1,+1}}"
                    )
            frozen_rows.append(row)
        self.domain = domain
        self.names = tuple(names)
        self.rows = tuple(frozen_rows)
        self._name_index = {n: i for i, n in enumerate(self.names)}
        # plus_masks[j] = bitmask of hypotheses labeling point j with +1
        plus = []
        for j in range(len(domain)):
            m = 0
            for i, row in enumerate(self.rows):
                if row[j] == 1:
                    m |= 1 << i
            plus.append(m)
        self.plus_masks = tuple(plus)
        self.full_mask = (1 << len(self.rows)) - 1
        self.token = next(_class_tokens)

    def __len__(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"HypothesisClass(|H|={len(self.rows)}, D={len(self.domain)})"

    def name_index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise ValueError(f"unknown hypothesis {name!r}") from None

    def label(self, name: str, point: str) -> int:
        return self.rows[self.name_index(name)][self.domain.index(point)]

    def row(self, name: str) -> tuple[int, ...]:
        return self.rows[self.name_index(name)]


def from_table(
    domain: Domain,
    rows: Mapping[str, Sequence[int]] | Iterable[tuple[str, Sequence[int]]],
    dedup: bool = True,
) -> HypothesisClass:
    """Build a class from named label vectors; duplicate rows collapse when dedup is on."""
    items = rows.items() if isinstance(rows, Mapping) else list(rows)
    names: list[str] = []
    vecs: list[tuple[int, ...]] = []
    seen_rows: dict[tuple[int, ...], str] = {}
    seen_names = set()
    for name, vec in items:
        if name in seen_names:
            raise ValueError(f"duplicate hypothesis name {name!r}")
        seen_names.add(name)
        vec = tuple(int(v) for v in vec)
        if dedup:
            if vec in seen_rows:
                continue
            seen_rows[vec] = name
        names.append(name)
        vecs.append(vec)
    return HypothesisClass(domain, names, vecs)


def thresholds(n: int) -> HypothesisClass:
    """The n threshold classifiers h_i(x) = 2*I(x <= i) - 1 over points "1".."n"."""
    if n < 1:
        raise ValueError("thresholds requires n >= 1")
    dom = Domain(tuple(str(j) for j in range(1, n + 1)))
    names = [f"h{i}" for i in range(1, n + 1)]
    rows = [tuple(1 if j <= i else -1 for j in range(1, n + 1)) for i in range(1, n + 1)]
    return HypothesisClass(dom, names, rows)


def union_name(flips: Sequence[str]) -> str:
    """Canonical name for the union-of-singletons hypothesis flipping `flips` to -1."""
    if not flips:
        return "h+"
    return "h-" + "-".join(flips)


def singleton_unions(domain: Domain, l: int) -> HypothesisClass:
    """C^l: all labelings that are +1 except on at most l points of the domain."""
    if l < 0 or l > len(domain):
        raise ValueError(f"need 0 <= l <= {len(domain)}, got l={l}")
    names = []
    rows = []
    pts = domain.points
    for size in range(l + 1):
        for subset in itertools.combinations(range(len(pts)), size):
            flips = set(subset)
            names.append(union_name([pts[i] for i in subset]))
            rows.append(tuple(-1 if j in flips else 1 for j in range(len(pts))))
    return HypothesisClass(domain, names, rows)


def product(a: HypothesisClass, b: HypothesisClass, dedup: bool = True) -> HypothesisClass:
    """Pointwise-product class {g*h : g in a, h in b} over their shared domain."""
    if a.domain != b.domain:
        raise ValueError("product requires both classes over the same domain")
    pairs = []
    for i, ra in enumerate(a.rows):
        for j, rb in enumerate(b.rows):
            name = f"{a.names[i]}·{b.names[j]}"
            pairs.append((name, tuple(x * y for x, y in zip(ra, rb))))
    return from_table(a.domain, pairs, dedup=dedup)


def bias_expand(h: HypothesisClass, l: int) -> HypothesisClass:
    """H^l = H * C^l: labelings within Hamming distance l of some member of h."""
    return product(h, singleton_unions(h.domain, l))


@dataclass(frozen=True)
class VersionSpace:
    """Subset of a HypothesisClass selected by an index bitmask."""

    klass: HypothesisClass
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask & ~self.klass.full_mask:
            raise ValueError("mask selects indices outside the class")

    @classmethod
    def full(cls, klass: HypothesisClass) -> "VersionSpace":
        return cls(klass, klass.full_mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def key(self) -> tuple[int, int]:
        """Canonical memoization key: class identity plus member bitmask."""
        return (self.klass.token, self.mask)

    def restrict(self, x: str, y: int) -> "VersionSpace":
        """Members of self labeling x with y. May be empty."""
        if y not in LABELS:
            raise ValueError(f"label must be -1 or +1, got {y!r}")
        pm = self.klass.plus_masks[self.klass.domain.index(x)]
        new = self.mask & pm if y == 1 else self.mask & ~pm
        return VersionSpace(self.klass, new)

    def dis(self) -> tuple[str, ...]:
        """Disagreement region: points where both label restrictions are nonempty."""
        pts = self.klass.domain.points
        return tuple(pts[j] for j in self.dis_indices())

    def dis_indices(self) -> tuple[int, ...]:
        mask = self.mask
        out = []
        for j, pm in enumerate(self.klass.plus_masks):
            if mask & pm and mask & ~pm:
                out.append(j)
        return tuple(out)

    def unanimous_label(self, x: str) -> int | None:
        """The single label all members give x, or None if x splits the space."""
        if self.mask == 0:
            raise ValueError("empty version space has no labels")
        pm = self.klass.plus_masks[self.klass.domain.index(x)]
        if self.mask & pm == self.mask:
            return 1
        if self.mask & pm == 0:
            return -1
        return None

    def members(self) -> tuple[str, ...]:
        names = self.klass.names
        m = self.mask
        out = []
        while m:
            low = m & (-m)
            out.append(names[low.bit_length() - 1])
            m ^= low
        return tuple(out)

    def first_member(self) -> str:
        if self.mask == 0:
            raise ValueError("empty version space")
        return self.klass.names[(self.mask & -self.mask).bit_length() - 1]


def realizable_check(h: HypothesisClass, seq: Sequence[Example]) -> tuple[bool, str | None]:
    """True plus a witness name iff some hypothesis agrees with every (point,label)."""
    cols = [(h.domain.index(x), y) for x, y in seq]
    for i, row in enumerate(h.rows):
        if all(row[j] == y for j, y in cols):
            return True, h.names[i]
    return False, None


def bias_check(h: HypothesisClass, l: int, seq: Sequence[Example]) -> bool:
    """True iff some member of h disagrees with seq on at most l distinct points.

    A point shown with both labels defeats every function, so such sequences
    are never realizable under any bias budget.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    observed: dict[int, int] = {}
    for x, y in seq:
        j = h.domain.index(x)
        if observed.setdefault(j, y) != y:
            return False
    for row in h.rows:
        bad = sum(1 for j, y in observed.items() if row[j] != y)
        if bad <= l:
            return True
    return False


# ---------------------------------------------------------------------------
# class file formats
# ---------------------------------------------------------------------------

def _parse_label(cell: str, line_no: int, col_no: int) -> int:
    cell = cell.strip()
    if cell in ("1", "+1"):
        return 1
    if cell == "-1":
        return -1
    raise FormatError(f"line {line_no}, column {col_no}: label {cell!r} is not -1 or +1")


def parse_class_csv(text: str, dedup: bool = True) -> HypothesisClass:
    """Parse the `x,<p1>,...,<pD>` / `<hname>,v1,...,vD` class table format."""
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise FormatError("line 1: empty class file")
    header = [c.strip() for c in lines[0].split(",")]
    if header[0] != "x":
        raise FormatError("line 1, column 1: header must start with 'x'")
    try:
        dom = Domain(tuple(header[1:]))
    except ValueError as e:
        raise FormatError(f"line 1: {e}") from None
    pairs = []
    for line_no, ln in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in ln.split(",")]
        if len(cells) != len(dom) + 1:
            raise FormatError(
                f"line {line_no}: expected {len(dom) + 1} cells, got {len(cells)}"
            )
        labels = [_parse_label(c, line_no, col) for col, c in enumerate(cells[1:], start=2)]
        pairs.append((cells[0], labels))
    try:
        return from_table(dom, pairs, dedup=dedup)
    except ValueError as e:
        raise FormatError(str(e)) from None


def class_to_csv(h: HypothesisClass) -> str:
    lines = ["x," + ",".join(h.domain.points)]
    for name, row in zip(h.names, h.rows):
        lines.append(name + "," + ",".join("+1" if v == 1 else "-1" for v in row))
    return "\n".join(lines) + "\n"


def parse_class_json(text: str, dedup: bool = True) -> HypothesisClass:
    """Parse {"domain": [...], "hypotheses": {"name": [...]}}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict) or "domain" not in obj or "hypotheses" not in obj:
        raise FormatError("class JSON must have 'domain' and 'hypotheses' keys")
    if not isinstance(obj["hypotheses"], dict):
        raise FormatError("'hypotheses' must be an object of name -> label vector")
    try:
        dom = Domain(tuple(str(p) for p in obj["domain"]))
        return from_table(dom, obj["hypotheses"], dedup=dedup)
    except ValueError as e:
        raise FormatError(str(e)) from None


def class_to_json(h: HypothesisClass) -> str:
    obj = {
        "domain": list(h.domain.points),
        "hypotheses": {name: list(row) for name, row in zip(h.names, h.rows)},
    }
    return json.dumps(obj)


def read_class_file(path: str, dedup: bool = True) -> HypothesisClass:
    """Read a class from CSV or JSON, chosen by file extension."""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    if path.endswith(".json"):
        return parse_class_json(text, dedup=dedup)
    return parse_class_csv(text, dedup=dedup)
