"""Game engine: transcripts, bound auditing, streams, and soft-penalty runs."""

import json
import random

import pytest

from abstaindim import (
    ABSTAIN,
    SOA,
    SOADK,
    ConstantFractional,
    DimCache,
    Domain,
    Leaf,
    MinimaxAdversary,
    RandomizedAdversary,
    TreeAdversary,
    TruncatedRunError,
    VersionSpace,
    add_dashed_right,
    bias_expand,
    check_szb,
    eldim,
    from_table,
    ldim,
    mistake_tree_witness,
    run,
    run_randomized,
    singleton_tree,
    stream_run,
    thresholds,
    transcript_to_jsonl,
)


def full(h):
    return VersionSpace.full(h)


def test_soadk_vs_minimax_thresholds4():
    h = thresholds(4)
    cache = DimCache()
    learner = SOADK(h, 1, cache)
    adv = MinimaxAdversary(full(h), 1, cache)
    tr = run(learner, adv)
    assert tr.nontrivial_rounds == 2
    assert tr.mistakes <= 1
    assert check_szb(tr, 1, 2)


def test_soa_vs_converted_mistake_tree_makes_exactly_d_mistakes():
    h = thresholds(4)
    cache = DimCache()
    d = int(ldim(full(h), cache))
    adv = TreeAdversary(add_dashed_right(mistake_tree_witness(full(h), cache)))
    learner = SOA(h, cache)
    tr = run(learner, adv)
    assert tr.mistakes == d
    assert tr.abstentions == 0
    assert len(tr.rounds) == d


def test_done_immediately_adversary_yields_empty_transcript():
    learner = SOADK(thresholds(3), 1)
    tr = run(learner, TreeAdversary(Leaf("h2")))
    assert tr.rounds == ()
    assert (tr.mistakes, tr.abstentions, tr.nontrivial_rounds) == (0, 0, 0)
    assert check_szb(tr, 0, 0)


def test_recount_identity():
    rng = random.Random(40)
    h = thresholds(6)
    for k in (0, 1, 2):
        cache = DimCache()
        tr = run(SOADK(h, k, cache), MinimaxAdversary(full(h), k, cache))
        assert tr.recount() == (tr.mistakes, tr.abstentions, tr.nontrivial_rounds)
    stream = [(rng.choice(h.domain.points), rng.choice((-1, 1))) for _ in range(6)]
    tr = stream_run(SOADK(bias_expand(h, 2), 3), stream)
    assert tr.recount() == (tr.mistakes, tr.abstentions, tr.nontrivial_rounds)


def test_truncated_runs_give_no_verdict():
    h = thresholds(8)
    cache = DimCache()
    learner = SOADK(h, 0, cache)
    adv = MinimaxAdversary(full(h), 0, cache)
    tr = run(learner, adv, max_rounds=2)
    assert tr.truncated and len(tr.rounds) == 2
    with pytest.raises(TruncatedRunError):
        check_szb(tr, 0, 100)


def test_default_round_cap_requires_capable_learner():
    class Bare:
        def predict(self, x):
            return 1

        def observe(self, x, pred, y):
            pass

    with pytest.raises(ValueError):
        run(Bare(), TreeAdversary(Leaf("h1")))


def test_check_szb_boundaries():
    h = thresholds(4)
    cache = DimCache()
    tr = run(SOADK(h, 1, cache), MinimaxAdversary(full(h), 1, cache))
    assert check_szb(tr, 1, 2)
    assert not check_szb(tr, 0, 2) or tr.mistakes == 0
    assert not check_szb(tr, 1, tr.nontrivial_rounds - 1)


def test_check_szb_rejects_budget_overrun():
    from abstaindim import Round, Transcript

    rounds = tuple(
        Round(t, "1", 1, -1, True) for t in range(1, 4)
    )  # three straight mistakes
    tr = Transcript(rounds, 3, 0, 3, "done")
    assert not check_szb(tr, 2, 10)
    assert check_szb(tr, 3, 3)


# --- stream replay -------------------------------------------------------------------

def test_stream_run_realizable_into_soa():
    rng = random.Random(41)
    h = thresholds(5)
    bound = ldim(full(h))
    for _ in range(20):
        name = rng.choice(h.names)
        seq = [(x, h.label(name, x)) for x in rng.choices(h.domain.points, k=10)]
        tr = stream_run(SOA(h), seq)
        assert tr.mistakes <= bound
        assert len(tr.rounds) == 10  # trivial rounds recorded too


def test_stream_run_bias_stream_into_soadk():
    rng = random.Random(42)
    h = thresholds(3)
    for l, k in ((1, 1), (1, 2)):
        expanded = bias_expand(h, l)
        cache = DimCache()
        m = int(eldim(full(expanded), k, cache))
        for _ in range(15):
            base = rng.choice(h.names)
            flip = set(rng.sample(h.domain.points, l))
            seq = [
                (x, -h.label(base, x) if x in flip else h.label(base, x))
                for x in rng.choices(h.domain.points, k=8)
            ]
            tr = stream_run(SOADK(expanded, k, cache), seq)
            assert check_szb(tr, k, m)


def test_stream_run_empty():
    tr = stream_run(SOA(thresholds(2)), [])
    assert tr.rounds == () and tr.status == "done"


def test_soadk_bound_against_random_realizable_streams():
    rng = random.Random(43)
    for _ in range(30):
        d = rng.randint(2, 5)
        dom = Domain(tuple(str(j) for j in range(d)))
        rows = [(f"g{i}", [rng.choice((-1, 1)) for _ in range(d)]) for i in range(6)]
        h = from_table(dom, rows)
        cache = DimCache()
        k = rng.randint(0, 2)
        m = int(eldim(full(h), k, cache))
        name = rng.choice(h.names)
        seq = [(x, h.label(name, x)) for x in rng.choices(h.domain.points, k=9)]
        tr = stream_run(SOADK(h, k, cache), seq)
        assert check_szb(tr, k, m)


# --- soft prediction runs --------------------------------------------------------------

def small_tree(l=2, m=3):
    dom = Domain(tuple(str(j) for j in range(1, 8)))
    return singleton_tree(dom, l, m)


def test_integral_soft_predictions_reproduce_hard_counts():
    class HardAbstainer:
        def predict(self, x):
            return (0.0, 0.0)

        def observe(self, x, pred, y):
            pass

    tree = small_tree()
    tr, ledger = run_randomized(HardAbstainer(), RandomizedAdversary(2, 1.0, tree), 16)
    assert tr.abstentions == len(tr.rounds) == 3
    assert tr.mistakes == 0
    assert ledger.abstention_total == pytest.approx(3.0)
    assert ledger.mistake_total == 0.0


def test_integral_soft_predictions_match_counts_for_all_three_moves():
    class Cycler:
        def __init__(self):
            self.moves = [(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)]
            self.i = 0

        def predict(self, x):
            p = self.moves[self.i % 3]
            self.i += 1
            return p

        def observe(self, x, pred, y):
            pass

    dom = Domain(tuple(str(j) for j in range(1, 16)))
    tree = singleton_tree(dom, 3, 3)
    tr, ledger = run_randomized(Cycler(), RandomizedAdversary(3, 2.0, tree), 16)
    assert len(tr.rounds) >= 3
    # with only integral predictions the penalties are exactly the counts
    assert ledger.mistake_total == pytest.approx(float(tr.mistakes))
    assert ledger.abstention_total == pytest.approx(float(tr.abstentions))
    assert tr.recount() == (tr.mistakes, tr.abstentions, tr.nontrivial_rounds)


def test_all_zero_learner_pays_one_abstention_per_round():
    tree = small_tree(2, 3)
    tr, ledger = run_randomized(ConstantFractional(0.0, 0.0), RandomizedAdversary(2, 1.0, tree), 32)
    n = len(tr.rounds)
    assert ledger.abstention_total == pytest.approx(float(n))
    assert ledger.mistake_total == 0.0


def test_half_half_learner_pays_half_mistake_per_round():
    tree = small_tree(2, 3)
    tr, ledger = run_randomized(ConstantFractional(0.5, 0.5), RandomizedAdversary(2, 1.0, tree), 32)
    n = len(tr.rounds)
    assert n == 3  # (0.5 <= 1 - eps) keeps the dashed path, labels +1
    assert ledger.abstention_total == pytest.approx(0.0)
    assert ledger.mistake_total == pytest.approx(0.5 * n)
    assert all(r.nontrivial for r in tr.rounds)


def test_run_randomized_rejects_bad_predictions_and_missing_cap():
    tree = small_tree()
    with pytest.raises(ValueError):
        run_randomized(ConstantFractional(0.9, 0.9), RandomizedAdversary(2, 1.0, tree), 8)
    with pytest.raises(ValueError):
        run_randomized(ConstantFractional(0.0, 0.0), RandomizedAdversary(2, 1.0, tree), None)


def test_penalty_ledger_nonnegative_and_cumulative():
    tree = small_tree(2, 3)
    tr, ledger = run_randomized(ConstantFractional(0.2, 0.3), RandomizedAdversary(2, 1.0, tree), 32)
    assert all(mp >= 0 and ap >= 0 for mp, ap in ledger.per_round)
    assert ledger.mistake_total == pytest.approx(sum(p for p, _ in ledger.per_round))
    assert ledger.abstention_total == pytest.approx(sum(a for _, a in ledger.per_round))


# --- export ------------------------------------------------------------------------------

def test_transcript_jsonl_shape():
    h = thresholds(4)
    cache = DimCache()
    tr = run(SOADK(h, 1, cache), MinimaxAdversary(full(h), 1, cache))
    text = transcript_to_jsonl(tr)
    lines = text.strip().split("\n")
    assert len(lines) == len(tr.rounds) + 1
    first = json.loads(lines[0])
    assert set(first) == {"t", "x", "pred", "y", "nontrivial"}
    assert first["t"] == 1 and first["y"] in ("+1", "-1")
    summary = json.loads(lines[-1])
    assert summary == {
        "mistakes": tr.mistakes,
        "abstentions": tr.abstentions,
        "nontrivial_rounds": tr.nontrivial_rounds,
        "status": "done",
    }


def test_transcript_jsonl_renders_abstention():
    h = thresholds(4)
    cache = DimCache()
    tr = run(SOADK(h, 0, cache), MinimaxAdversary(full(h), 0, cache))
    assert tr.abstentions == len(tr.rounds) > 0
    first = json.loads(transcript_to_jsonl(tr).splitlines()[0])
    assert first["pred"] == ABSTAIN
