import json
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import moments_from_weights
from wshift.errors import PositiveConeError, SequenceError
from wshift.shifts import (
    Constant,
    RationalInN,
    Recursive,
    WeightSequence,
    bergman_shift,
    flat_shift,
    gamma,
    is_hyponormal_up_to,
    perturb,
    weight_sq,
)


def test_bergman_weights_and_moments(bergman):
    assert bergman.weights(4) == [Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(4, 5)]
    assert [gamma(bergman, n) for n in range(6)] == [Fraction(1, n + 1) for n in range(6)]


def test_recursive_tail_continues_from_seeds():
    seq = WeightSequence([Fraction(1, 2), 2, 3, Fraction(10, 3)], Recursive((-2, 4)))
    assert seq.weights(8)[4:] == [Fraction(17, 5), Fraction(58, 17), Fraction(99, 29), Fraction(338, 99)]


def test_recursive_moments_obey_recursion():
    seq = WeightSequence([1, 2, 3], Recursive((-2, 4)))
    g = seq.moments(25)
    for n in range(23):
        assert g[n + 2] == -2 * g[n] + 4 * g[n + 1]


def test_recursive_needs_enough_seeds():
    with pytest.raises(SequenceError, match="needs 2 seed weights"):
        WeightSequence([1], Recursive((-2, 4)))


def test_leaving_positive_cone_is_reported():
    # alpha_{n+1}^2 = 1 - 2/alpha_n^2 goes negative right away
    seq = WeightSequence([1, 1], Recursive((-2, 1)))
    with pytest.raises(PositiveConeError, match="leaves positive cone at 2"):
        seq.weight_sq(2)


def test_rational_in_n_validation():
    RationalInN((1, 1), (2, 1)).validate(0)
    with pytest.raises(SequenceError, match="unbounded"):
        WeightSequence([], RationalInN((0, 0, 1), (1, 1)))
    with pytest.raises(SequenceError, match="not positive"):
        WeightSequence([], RationalInN((-3, 1), (1, 1)))
    # (n - 3)/(n + 1) is fine from index 4 on
    WeightSequence([1, 1, 1, 1], RationalInN((-3, 1), (1, 1)))


def test_prefix_must_be_positive():
    with pytest.raises(SequenceError):
        WeightSequence([1, 0], Constant(1))
    with pytest.raises(SequenceError):
        WeightSequence([], Constant(-1))


def test_perturb_changes_only_one_index(bergman):
    p = perturb(bergman, 1, Fraction(7, 10))
    assert p.weights(5) == [Fraction(1, 2), Fraction(7, 10), Fraction(3, 4), Fraction(4, 5), Fraction(5, 6)]
    deep = perturb(bergman, 4, Fraction(1, 3))
    assert deep.weights(6) == [Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(4, 5), Fraction(1, 3), Fraction(6, 7)]


def test_perturbing_a_seed_keeps_the_generated_tail():
    seq = WeightSequence([1, 2, 3], Recursive((-2, 4)))
    p = perturb(seq, 2, Fraction(5, 2))
    assert p.weights(5) == [1, 2, Fraction(5, 2), Fraction(10, 3), Fraction(17, 5)]
    assert p.to_json()["tail"]["seeds"] == ["2", "3"]
    again = WeightSequence.from_json(json.loads(json.dumps(p.to_json())))
    assert again.weights(7) == p.weights(7)


def test_hyponormality_witness(bergman):
    assert is_hyponormal_up_to(bergman, 30).holds
    bad = perturb(bergman, 2, Fraction(1, 2))
    v = is_hyponormal_up_to(bad, 30)
    assert v.fails and v.n == 1 and v.witness == Fraction(1, 2) - Fraction(2, 3)


def test_json_round_trip():
    for seq in (bergman_shift(), flat_shift(Fraction(3, 2)), WeightSequence(["1/2", "7/10"], RationalInN((1, 1), (2, 1)))):
        data = json.loads(json.dumps(seq.to_json()))
        assert WeightSequence.from_json(data).weights(10) == seq.weights(10)


@pytest.mark.parametrize(
    "data, msg",
    [
        ({"prefix_sq": []}, "needs a tail"),
        ({"prefix_sq": [], "tail": {"kind": "spline"}}, "unknown tail kind"),
        ({"prefix_sq": ["x"], "tail": {"kind": "constant", "c": 1}}, "bad prefix_sq"),
        ({"prefix_sq": [], "tail": {"kind": "constant"}}, "missing field"),
        ({"prefix_sq": [], "tail": {"kind": "recursive", "phi": [1]}}, "seed weights"),
        ([], "must be an object"),
    ],
)
def test_from_json_errors(data, msg):
    with pytest.raises(SequenceError, match=msg):
        WeightSequence.from_json(data)


@given(st.lists(st.fractions(min_value=Fraction(1, 9), max_value=5, max_denominator=9), min_size=1, max_size=6))
def test_moments_are_weight_products(prefix):
    seq = WeightSequence(prefix, Constant(2))
    weights = seq.weights(12)
    assert seq.moments(12) == moments_from_weights(weights, 12)
    assert weight_sq(seq, 0) == prefix[0]


def test_concurrent_moment_queries_agree():
    seq = WeightSequence([1, 2, 3], Recursive((-2, 4)))
    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(seq.gamma, [40 - (i % 40) for i in range(200)]))
    fresh = WeightSequence([1, 2, 3], Recursive((-2, 4)))
    assert results == [fresh.gamma(40 - (i % 40)) for i in range(200)]


def test_strict_increase_and_norm(bergman):
    assert bergman.is_strictly_increasing(20)
    assert not flat_shift().is_strictly_increasing(3)
    assert bergman.norm_sq_estimate(10) == 1
