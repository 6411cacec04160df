import itertools
import random

import pytest

from gaussdioph.errors import BadVariables, PreconditionFailed
from gaussdioph.expr import Const, Var, degree_bound, evaluate, free_vars, parse, render
from gaussdioph.gadgets import eval_F
from gaussdioph.gaussian import GaussianInt, I
from gaussdioph.reduction import (
    build_F_template,
    combine_depth,
    combine_system,
    full_assignment,
    lift_witness,
    reduce_to_gaussian,
    unknown_names,
)

SAMPLES = [
    ("z1 - z10", 5, [1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    ("z0 - z1 - z10", 3, [2, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    ("z1^2 - 2*z2^2 - z10*z10 + z0", 0, [3, 2, 0, 0, 0, 0, 0, 0, 0, -1]),
]


def test_template_examples():
    t = build_F_template()
    assert evaluate(t, {"v": 65, "w": 362, "x": 0, "y": 209, "z": 0}) == 0
    assert evaluate(t, {"v": 1, "w": 1, "x": 0, "y": 0, "z": 0}) == 20449
    assert free_vars(t) == ["v", "w", "x", "y", "z"]


def test_template_matches_eval_F():
    t = build_F_template()
    rng = random.Random(11)
    for _ in range(1000):
        vals = [GaussianInt(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)) for _ in range(5)]
        assert evaluate(t, dict(zip("vwxyz", vals))) == eval_F(*vals)


def test_combine_system_small_cases():
    a, b = Var("a"), Var("b")
    assert combine_system([a]) is a
    assert combine_system([a, b]) == a**2 + 2 * b**2


def test_combine_system_degree_for_twelve():
    eqs = [Var(f"e{k}") ** 3 for k in range(12)]
    assert combine_depth(12) == 4
    assert degree_bound(combine_system(eqs)) == 16 * 3


def test_combine_system_shape_is_balanced_left_leaning():
    names = [Var(f"e{k}") for k in range(5)]
    expected = ((names[0] ** 2 + 2 * names[1] ** 2) ** 2 + 2 * names[2] ** 2) ** 2 + 2 * (
        names[3] ** 2 + 2 * names[4] ** 2) ** 2
    assert combine_system(names) == expected


def test_combine_system_zero_iff_all_zero_exhaustive_pairs():
    box = [GaussianInt(a, b) for a in range(-3, 4) for b in range(-3, 4)]
    e = combine_system([Var("p"), Var("q")])
    for p, q in itertools.product(box, repeat=2):
        assert evaluate(e, {"p": p, "q": q}).is_zero == (p.is_zero and q.is_zero)


def test_combine_system_zero_iff_all_zero_random():
    rng = random.Random(5)
    for _ in range(400):
        length = rng.randint(1, 12)
        names = [f"e{k}" for k in range(length)]
        sigma = {}
        for n in names:
            if rng.random() < 0.7:
                sigma[n] = GaussianInt(0)
            else:
                sigma[n] = GaussianInt(rng.randint(-4, 4), rng.randint(-4, 4))
        value = evaluate(combine_system([Var(n) for n in names]), sigma)
        assert value.is_zero == all(v.is_zero for v in sigma.values())


@pytest.mark.parametrize("src, a, zvals", SAMPLES)
def test_reduce_counts_52_unknowns(src, a, zvals):
    out = reduce_to_gaussian(parse(src))
    assert len(out.unknowns) == 52
    names = set(free_vars(out.P)) - {out.parameter}
    assert names == set(out.unknowns)
    assert out.stats["constituents"] == 12
    assert out.parameter == ("z0" if "z0" in src else None)


def test_unknown_manifest_order():
    names = unknown_names()
    assert names[:3] == ["v1", "v2", "v3"] and names[-2:] == ["s", "t"]
    assert names[40:50] == [f"z{k}" for k in range(1, 11)]


def test_reduce_bad_variables():
    with pytest.raises(BadVariables) as info:
        reduce_to_gaussian(parse("q1 + z1"))
    assert info.value.names == ["q1"]
    with pytest.raises(BadVariables):
        reduce_to_gaussian(parse("z11"))


def test_reduce_degree_bound():
    out = reduce_to_gaussian(parse("z1 - z10"))
    # F has degree 12, the product equation degree 11; four levels of squaring
    assert out.stats["degree_bound"] == 16 * 12


def test_reduce_output_round_trips_through_text():
    f = parse("z0 - z1 - z10")
    out = reduce_to_gaussian(f)
    back = parse(render(out.P))
    sigma = full_assignment(lift_witness(f, 3, SAMPLES[1][2]), 3)
    assert evaluate(back, sigma) == 0
    sigma["s"] = sigma["s"] + 1
    assert evaluate(back, sigma) == evaluate(out.P, sigma) != 0


@pytest.mark.parametrize("src, a, zvals", SAMPLES)
def test_lift_witness_solves_P(src, a, zvals):
    f = parse(src)
    out = reduce_to_gaussian(f)
    assignment = lift_witness(f, a, zvals)
    assert set(assignment) == set(out.unknowns)
    sigma = full_assignment(assignment, a)
    assert evaluate(out.P, sigma) == 0
    for eq in out.constituents:
        assert evaluate(eq, sigma) == 0


@pytest.mark.parametrize("src, a, zvals", SAMPLES)
def test_perturbations_break_P(src, a, zvals):
    f = parse(src)
    out = reduce_to_gaussian(f)
    sigma = full_assignment(lift_witness(f, a, zvals), a)
    broken = 0
    total = 0
    for name in out.unknowns:
        for delta in (GaussianInt(1), I):
            trial = dict(sigma)
            trial[name] = trial[name] + delta
            total += 1
            broken += not evaluate(out.P, trial).is_zero
    assert broken / total >= 0.95
    for k in range(1, 11):
        trial = dict(sigma)
        trial[f"z{k}"] = trial[f"z{k}"] + I
        assert not evaluate(out.P, trial).is_zero


def test_lift_preconditions():
    f = parse("z1 - z10")
    with pytest.raises(PreconditionFailed):
        lift_witness(f, 0, [1] + [0] * 8 + [0])
    with pytest.raises(PreconditionFailed):
        lift_witness(f, 0, [2] + [0] * 8 + [1])
    with pytest.raises(PreconditionFailed):
        lift_witness(f, 0, [1, 1])


def test_nonzero_factor_never_vanishes():
    box = [GaussianInt(a, b) for a in range(-5, 6) for b in range(-5, 6)]
    for s in box:
        for t in box:
            assert not ((2 * s + 1) * (3 * t + 1)).is_zero


def test_per_k_variant():
    f = parse("z1 - z10")
    out = reduce_to_gaussian(f, per_k_nonzero=True)
    assert len(out.unknowns) == 72
    assert set(free_vars(out.P)) == set(out.unknowns)
    sigma = lift_witness(f, 0, [1] + [0] * 8 + [1], per_k_nonzero=True)
    assert evaluate(out.P, sigma) == 0


def test_constant_f():
    # f = 0 is solvable; f = 1 never is, so P stays nonzero under any lift attempt
    out = reduce_to_gaussian(Const(0))
    assert out.parameter is None and len(out.unknowns) == 52
    with pytest.raises(PreconditionFailed):
        lift_witness(Const(1), 0, [0] * 9 + [1])
