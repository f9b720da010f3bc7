"""Game engine: couples a learner with an adversary and audits the result.

A Transcript records one Round per interaction step. A round is nontrivial
when the learner abstained or predicted the wrong label; totals are stored
alongside and always equal a recount over the rounds. Runs stopped by the
round cap carry status "truncated" and refuse to give a bound verdict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .hypotheses import Example
from .learners import ABSTAIN


class TruncatedRunError(RuntimeError):
    """A bound verdict was requested for a run that hit its round cap."""


@dataclass(frozen=True)
class Round:
    t: int          # 1-based round index
    x: str
    pred: object    # -1, +1, ABSTAIN, or a (p_minus, p_plus) tuple
    y: int
    nontrivial: bool


@dataclass(frozen=True)
class Transcript:
    rounds: tuple[Round, ...]
    mistakes: int
    abstentions: int
    nontrivial_rounds: int
    status: str  # "done" or "truncated"

    @property
    def truncated(self) -> bool:
        return self.status == "truncated"

    def recount(self) -> tuple[int, int, int]:
        """Recompute (mistakes, abstentions, nontrivial) from the rounds."""
        m = sum(1 for r in self.rounds if _is_mistake(r.pred, r.y))
        a = sum(1 for r in self.rounds if _is_abstention(r.pred))
        nt = sum(1 for r in self.rounds if r.nontrivial)
        return m, a, nt


def _hardened(pred):
    """Collapse an integral soft prediction to its hard equivalent."""
    if isinstance(pred, tuple):
        if pred == (0.0, 1.0):
            return 1
        if pred == (1.0, 0.0):
            return -1
        if pred == (0.0, 0.0):
            return ABSTAIN
    return pred


def _is_mistake(pred, y: int) -> bool:
    return _hardened(pred) == -y


def _is_abstention(pred) -> bool:
    return _hardened(pred) == ABSTAIN


def _finish(rounds: list[Round], status: str) -> Transcript:
    m = sum(1 for r in rounds if _is_mistake(r.pred, r.y))
    a = sum(1 for r in rounds if _is_abstention(r.pred))
    nt = sum(1 for r in rounds if r.nontrivial)
    return Transcript(tuple(rounds), m, a, nt, status)


def _round_cap(learner, max_rounds):
    if max_rounds is not None:
        if max_rounds < 0:
            raise ValueError("max_rounds must be >= 0")
        return max_rounds
    cap = getattr(learner, "default_round_cap", None)
    if cap is None:
        raise ValueError("learner has no default round cap; pass max_rounds explicitly")
    return cap()


def run(learner, adversary, max_rounds: int | None = None) -> Transcript:
    """Drive next/predict/respond/observe until the adversary is done.

    Defaults max_rounds to the learner's cap (4x its dimension upper bound);
    hitting the cap yields a "truncated" transcript rather than an error.
    """
    cap = _round_cap(learner, max_rounds)
    rounds: list[Round] = []
    t = 0
    while True:
        x = adversary.next()
        if x is None:
            return _finish(rounds, "done")
        if t >= cap:
            return _finish(rounds, "truncated")
        t += 1
        pred = learner.predict(x)
        y = adversary.respond(pred)
        learner.observe(x, pred, y)
        nontrivial = _is_abstention(pred) or _is_mistake(pred, y)
        rounds.append(Round(t, x, pred, y, nontrivial))


def stream_run(learner, seq: Sequence[Example]) -> Transcript:
    """Replay a fixed (point, label) sequence; trivial rounds are recorded too."""
    rounds: list[Round] = []
    for t, (x, y) in enumerate(seq, start=1):
        pred = learner.predict(x)
        learner.observe(x, pred, y)
        nontrivial = _is_abstention(pred) or _is_mistake(pred, y)
        rounds.append(Round(t, x, pred, int(y), nontrivial))
    return _finish(rounds, "done")


def check_szb(tr: Transcript, k: int, m: int) -> bool:
    """Mistakes at most k and nontrivial rounds at most m.

    Truncated runs never get a verdict; only their partial counts are usable.
    """
    if tr.truncated:
        raise TruncatedRunError("truncated run: partial counts only, no bound verdict")
    return tr.mistakes <= k and tr.nontrivial_rounds <= m


@dataclass(frozen=True)
class PenaltyLedger:
    """Per-round and cumulative penalties for the soft prediction model."""

    per_round: tuple[tuple[float, float], ...]  # (mistake penalty, abstention penalty)
    mistake_total: float
    abstention_total: float


def run_randomized(
    learner, adversary, max_rounds: int | None = None
) -> tuple[Transcript, PenaltyLedger]:
    """Soft-prediction game: the learner emits (p_minus, p_plus) tuples.

    A round charges mistake penalty p_plus if y = -1 and p_minus if y = +1,
    plus abstention penalty 1 - p_plus - p_minus. Integral predictions
    reproduce the hard model's mistake/abstention counts exactly.
    """
    if max_rounds is None:
        raise ValueError("run_randomized requires an explicit max_rounds")
    rounds: list[Round] = []
    penalties: list[tuple[float, float]] = []
    t = 0
    status = "done"
    while True:
        x = adversary.next()
        if x is None:
            break
        if t >= max_rounds:
            status = "truncated"
            break
        t += 1
        p_minus, p_plus = learner.predict(x)
        if p_minus < 0 or p_plus < 0 or p_minus + p_plus > 1 + 1e-12:
            raise ValueError(f"invalid soft prediction ({p_minus}, {p_plus})")
        pred = (float(p_minus), float(p_plus))
        y = adversary.respond(pred)
        learner.observe(x, pred, y)
        mistake_pen = p_plus if y == -1 else p_minus
        abstain_pen = 1.0 - p_plus - p_minus
        penalties.append((mistake_pen, abstain_pen))
        hard = _hardened(pred)
        nontrivial = not (hard in (-1, 1) and hard == y)
        rounds.append(Round(t, x, pred, y, nontrivial))
    ledger = PenaltyLedger(
        per_round=tuple(penalties),
        mistake_total=sum(p for p, _ in penalties),
        abstention_total=sum(a for _, a in penalties),
    )
    return _finish(rounds, status), ledger


def _pred_str(pred) -> str:
    hard = _hardened(pred)
    if hard == ABSTAIN:
        return ABSTAIN
    if hard in (-1, 1):
        return f"{hard:+d}"
    return f"({pred[0]},{pred[1]})"


def transcript_to_jsonl(tr: Transcript) -> str:
    """One JSON object per round plus a trailing summary object."""
    lines = []
    for r in tr.rounds:
        lines.append(
            json.dumps(
                {
                    "t": r.t,
                    "x": r.x,
                    "pred": _pred_str(r.pred),
                    "y": f"{r.y:+d}",
                    "nontrivial": r.nontrivial,
                },
                ensure_ascii=False,
            )
        )
    lines.append(
        json.dumps(
            {
                "mistakes": tr.mistakes,
                "abstentions": tr.abstentions,
                "nontrivial_rounds": tr.nontrivial_rounds,
                "status": tr.status,
            }
        )
    )
    return "\n".join(lines) + "\n"
