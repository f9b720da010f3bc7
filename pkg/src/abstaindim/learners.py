"""Deterministic online learners behind a common predict/observe interface.

Both learners maintain a version space. predict(x) returns -1, +1, or the
ABSTAIN constant; observe(x, pred, y) applies the update rule for the round.
They are deterministic functions of their state and inputs, so replaying a
transcript reproduces identical predictions. State updates happen only on
nontrivial rounds (a mistake or an abstention); correct label predictions
leave the learner untouched.
"""

from __future__ import annotations

from .dimensions import DimCache, eldim, eldim_upper_finite, ldim
from .hypotheses import HypothesisClass, VersionSpace

ABSTAIN = "⊥"

Prediction = int | str  # -1, +1, or ABSTAIN


class RealizabilityViolation(RuntimeError):
    """A revealed label contradicted every remaining hypothesis."""


def _as_space(h: HypothesisClass | VersionSpace) -> VersionSpace:
    v = h if isinstance(h, VersionSpace) else VersionSpace.full(h)
    if v.is_empty:
        raise ValueError("learner requires a nonempty version space")
    return v


class SOA:
    """Standard optimal learner: never abstains, each mistake shrinks ldim.

    Predicts the label y minimizing ldim of the opposite-label restriction
    (equivalently, the y whose own restriction has maximal ldim); ties go to
    +1. On a mistake the version space restricts to the revealed label.
    """

    def __init__(self, h: HypothesisClass | VersionSpace, cache: DimCache | None = None):
        self.version_space = _as_space(h)
        self.cache = cache if cache is not None else DimCache()

    def predict(self, x: str) -> int:
        v = self.version_space
        u = v.unanimous_label(x)
        if u is not None:
            return u
        best_y = 1
        best = ldim(v.restrict(x, -1), self.cache)  # risk of predicting +1
        other = ldim(v.restrict(x, 1), self.cache)  # risk of predicting -1
        if other < best:
            best_y = -1
        return best_y

    def observe(self, x: str, pred, y: int) -> None:
        if pred == ABSTAIN:
            raise ValueError("SOA never abstains; got an abstention in observe")
        if pred == -y:
            new = self.version_space.restrict(x, y)
            if new.is_empty:
                raise RealizabilityViolation(
                    f"label {y:+d} at point {x!r} contradicts every remaining hypothesis"
                )
            self.version_space = new

    def default_round_cap(self) -> int:
        return 4 * (eldim_upper_finite(self.version_space.klass, 0) + 1)


class SOADK:
    """Budgeted optimal learner: abstains to protect its k-mistake guarantee.

    At a unanimous point it predicts the agreed label. At a disagreement
    point with no budget it abstains. Otherwise it compares
        m_plus  = eldim(V[(x,-1)], k-1)   risk of predicting +1
        m_minus = eldim(V[(x,+1)], k-1)   risk of predicting -1
        m_bot   = max over both labels of eldim(V[(x,y)], k)
    and plays the argmin, preferring +1, then -1, then abstention on ties.
    The version space restricts on every nontrivial round; the budget drops
    only on mistakes.
    """

    def __init__(self, h: HypothesisClass | VersionSpace, k: int, cache: DimCache | None = None):
        if k < 0:
            raise ValueError("mistake budget k must be >= 0")
        self.version_space = _as_space(h)
        self.budget = k
        self.cache = cache if cache is not None else DimCache()

    def predict(self, x: str):
        v = self.version_space
        u = v.unanimous_label(x)
        if u is not None:
            return u
        k = self.budget
        if k == 0:
            return ABSTAIN
        minus_side = v.restrict(x, -1)
        plus_side = v.restrict(x, 1)
        m_plus = eldim(minus_side, k - 1, self.cache)
        m_minus = eldim(plus_side, k - 1, self.cache)
        m_bot = max(eldim(minus_side, k, self.cache), eldim(plus_side, k, self.cache))
        best, best_val = 1, m_plus
        if m_minus < best_val:
            best, best_val = -1, m_minus
        if m_bot < best_val:
            best = ABSTAIN
        return best

    def observe(self, x: str, pred, y: int) -> None:
        if pred == ABSTAIN or pred == -y:
            new = self.version_space.restrict(x, y)
            if new.is_empty:
                raise RealizabilityViolation(
                    f"label {y:+d} at point {x!r} contradicts every remaining hypothesis"
                )
            self.version_space = new
        if pred == -y:
            self.budget -= 1

    def default_round_cap(self) -> int:
        return 4 * (eldim_upper_finite(self.version_space.klass, self.budget) + 1)


class ConstantFractional:
    """Scripted soft learner emitting a fixed (p_minus, p_plus) every round."""

    def __init__(self, p_minus: float, p_plus: float):
        self.p_minus = p_minus
        self.p_plus = p_plus

    def predict(self, x: str) -> tuple[float, float]:
        return (self.p_minus, self.p_plus)

    def observe(self, x: str, pred, y: int) -> None:
        pass


def as_fractional(pred) -> tuple[float, float]:
    """Map a hard prediction to its soft encoding; soft predictions pass through."""
    if pred == ABSTAIN:
        return (0.0, 0.0)
    if pred == 1:
        return (0.0, 1.0)
    if pred == -1:
        return (1.0, 0.0)
    if isinstance(pred, tuple) and len(pred) == 2:
        return (float(pred[0]), float(pred[1]))
    raise ValueError(f"cannot interpret prediction {pred!r}")


class FractionalWrapper:
    """Adapter running a hard learner inside the soft prediction protocol."""

    def __init__(self, learner):
        self.learner = learner

    def predict(self, x: str) -> tuple[float, float]:
        self._last = self.learner.predict(x)
        return as_fractional(self._last)

    def observe(self, x: str, pred, y: int) -> None:
        self.learner.observe(x, self._last, y)
