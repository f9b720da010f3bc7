"""Reduction from prediction-with-expert-advice to online classification.

A stream of advice vectors with outcomes satisfies the l-mistake assumption
when some expert is wrong on at most l rounds. Synthesizing one fresh domain
point per round (the advice pattern plus the round index, so repeats stay
distinct) and taking the coordinate-projection class H_N turns that into the
l-bias assumption over H_N: the two checks agree round for round.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .hypotheses import Domain, Example, FormatError, HypothesisClass, from_table


@dataclass(frozen=True)
class AdviceStream:
    n_experts: int
    rounds: tuple[tuple[tuple[int, ...], int], ...]  # ((advice vector), outcome)

    def __post_init__(self):
        if self.n_experts < 1:
            raise ValueError("need at least one expert")
        for t, (advice, y) in enumerate(self.rounds, start=1):
            if len(advice) != self.n_experts:
                raise ValueError(
                    f"round {t}: advice vector has length {len(advice)}, expected {self.n_experts}"
                )
            if y not in (-1, 1) or any(a not in (-1, 1) for a in advice):
                raise ValueError(f"round {t}: entries must be -1 or +1")


def advice_stream(rounds: Sequence[tuple[Sequence[int], int]], n_experts: int | None = None) -> AdviceStream:
    frozen = tuple((tuple(int(a) for a in adv), int(y)) for adv, y in rounds)
    if n_experts is None:
        if not frozen:
            raise ValueError("cannot infer expert count from an empty stream")
        n_experts = len(frozen[0][0])
    return AdviceStream(n_experts, frozen)


def l_mistake_check(s: AdviceStream, l: int) -> tuple[bool, int | None]:
    """True plus a witness expert index iff some expert errs on <= l rounds."""
    if l < 0:
        raise ValueError("l must be >= 0")
    for i in range(s.n_experts):
        wrong = sum(1 for advice, y in s.rounds if advice[i] != y)
        if wrong <= l:
            return True, i
    return False, None


def _point_name(advice: tuple[int, ...], t: int) -> str:
    pattern = "".join("+" if a == 1 else "-" for a in advice)
    return f"{pattern}@{t}"


def reduce(s: AdviceStream) -> tuple[HypothesisClass, list[Example]]:
    """Materialize the coordinate-projection class and the replay sequence.

    One domain point per observed round; expert i becomes the hypothesis
    reading coordinate i of the advice pattern. Identical advice vectors in
    different rounds map to distinct points via the round index.
    """
    points = [_point_name(advice, t) for t, (advice, _) in enumerate(s.rounds, start=1)]
    dom = Domain(tuple(points))
    rows = [
        (f"e{i + 1}", [advice[i] for advice, _ in s.rounds])
        for i in range(s.n_experts)
    ]
    klass = from_table(dom, rows, dedup=True)
    seq = [(points[t], y) for t, (_, y) in enumerate(s.rounds)]
    return klass, seq


def parse_advice_csv(text: str) -> AdviceStream:
    """Parse the `y,e1,...,eN` / `<label>,<advice...>` stream format."""
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise FormatError("line 1: empty advice file")
    header = [c.strip() for c in lines[0].split(",")]
    if header[0] != "y" or len(header) < 2:
        raise FormatError("line 1: header must be y,e1,...,eN")
    n = len(header) - 1
    rounds = []
    for line_no, ln in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in ln.split(",")]
        if len(cells) != n + 1:
            raise FormatError(f"line {line_no}: expected {n + 1} cells, got {len(cells)}")
        vals = []
        for col, cell in enumerate(cells, start=1):
            if cell in ("1", "+1"):
                vals.append(1)
            elif cell == "-1":
                vals.append(-1)
            else:
                raise FormatError(f"line {line_no}, column {col}: {cell!r} is not -1 or +1")
        rounds.append((tuple(vals[1:]), vals[0]))
    return AdviceStream(n, tuple(rounds))


def read_advice_csv(path: str) -> AdviceStream:
    with open(path, "r", encoding="utf-8") as f:
        return parse_advice_csv(f.read())
